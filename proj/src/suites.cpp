#include "pivasym/suites.hpp"

#include <limits>
#include <random>

#include "pivasym/boutroux.hpp"
#include "pivasym/monodromy.hpp"

namespace pivasym {

namespace {

SuiteResult finish(std::string name, double worst, double tol, std::string detail = {}) {
  SuiteResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.tol = tol;
  r.passed = worst <= tol;
  r.detail = std::move(detail);
  return r;
}

SuiteResult failed(std::string name, const std::exception& e) {
  SuiteResult r;
  r.name = std::move(name);
  r.passed = false;
  r.worst = std::numeric_limits<double>::infinity();
  r.detail = e.what();
  return r;
}

const MonodromyData& sample_monodromy() {
  static const MonodromyData md =
      complete_monodromy(0.3, 0.7, 0.5, cplx(0.8, 0.3), cplx(-0.4, 0.2));
  return md;
}

}  // namespace

SuiteResult suite_legendre(int points) {
  try {
    std::vector<double> grid;
    for (int k = 0; k < points; ++k) {
      double phi = -kPi / 4 + 0.03 + (kPi / 2 - 0.06) * k / (points - 1);
      if (std::abs(phi) < 0.02) continue;
      grid.push_back(phi);
    }
    double worst = 0.0;
    for (const auto& bp : trajectory(grid))
      worst = std::max(worst, std::abs(bp.periods.legendre_residual()));
    return finish("legendre", worst, 1e-8);
  } catch (const std::exception& e) {
    return failed("legendre", e);
  }
}

SuiteResult suite_theta() {
  try {
    double phi = -kPi / 8;
    cplx A = solve_A(phi, {0.148, 0.129}).A;
    auto ep = make_elliptic_P(phi, A);
    auto W = Weierstrass::from_invariants(ep.inv.g2, ep.inv.g3);
    auto iv = W.invariants();
    double worst = std::max(std::abs(iv.g2 - ep.inv.g2), std::abs(iv.g3 - ep.inv.g3));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    const Lattice& L = W.lattice();
    for (int i = 0; i < 40; ++i) {
      cplx u = U(rng) * L.w1 + U(rng) * L.w2, v = U(rng) * L.w1 + U(rng) * L.w2;
      if (std::abs(lattice_offset(u, L)) < 0.05 || std::abs(lattice_offset(v, L)) < 0.05 ||
          std::abs(lattice_offset(u + v, L)) < 0.05 || std::abs(lattice_offset(u - v, L)) < 0.05)
        continue;
      cplx pu = W(u), pv = W(v), du = W.prime(u), dv = W.prime(v);
      cplx add = -pu - pv + 0.25 * std::pow((du - dv) / (pu - pv), 2);
      double scale = 1.0 + std::abs(W(u + v));
      worst = std::max(worst, std::abs(W(u + v) - add) / scale);
      cplx de = du * du - (4.0 * pu * pu * pu - ep.inv.g2 * pu - ep.inv.g3);
      worst = std::max(worst, std::abs(de) / (1.0 + std::abs(du * du)));
      worst = std::max(worst, std::abs(W(u + L.w1) - pu) / (1.0 + std::abs(pu)));
      worst = std::max(worst, std::abs(W(u + L.w2) - pu) / (1.0 + std::abs(pu)));
    }
    return finish("theta", worst, 1e-9, "invariants, addition theorem, wp'^2, periodicity");
  } catch (const std::exception& e) {
    return failed("theta", e);
  }
}

SuiteResult suite_residues() {
  try {
    double phi = -kPi / 8;
    cplx A = solve_A(phi, {0.148, 0.129}).A;
    auto ep = make_elliptic_P(phi, A);
    double r = 0.01 * std::abs(ep.periods.omega_a);
    cplx rp = P_residue(ep.periods.omega_b / 3.0, ep, r);
    cplx rm = P_residue(-ep.periods.omega_b / 3.0, ep, r);
    double worst = std::max(std::abs(rp - 1.0), std::abs(rm + 1.0));
    worst = std::max(worst, std::abs(P_eval(0.0, ep)));
    return finish("residues", worst, 1e-6,
                  "library convention: +1 at +Omega_b/3, -1 at -Omega_b/3; P(0) = 0");
  } catch (const std::exception& e) {
    return failed("residues", e);
  }
}

SuiteResult suite_gamma() {
  try {
    const auto& md = sample_monodromy();
    double worst = 0.0;
    for (double phi : {-kPi / 8, kPi / 8}) {
      auto as = asymptotic_solution(md, phi);
      cplx q = gamma_quadrature(md.alpha, md.beta, as.ep.periods, as.C_a, as.C_b);
      worst = std::max(worst, std::abs(q - as.Gamma_ab));
    }
    return finish("gamma", worst, 1e-8, "quadrature vs (2/3)(alpha-beta) Omega_b");
  } catch (const std::exception& e) {
    return failed("gamma", e);
  }
}

SuiteResult suite_third_kind() {
  try {
    double worst = 0.0;
    for (double phi : {-kPi / 8, -0.3, 0.5}) {
      cplx A = trajectory({phi})[0].A;
      CurveSpec spec = make_curve(phi, A);
      for (cplx z0 : {cplx(0.4, 0.9), cplx(-1.1, -0.6)})
        for (const auto& rep : third_kind_identities(spec, z0))
          worst = std::max(worst, rep.residual / (1.0 + std::abs(rep.rhs)));
    }
    return finish("third-kind", worst, 1e-8);
  } catch (const std::exception& e) {
    return failed("third-kind", e);
  }
}

SuiteResult suite_w_integrals() {
  try {
    const auto& md = sample_monodromy();
    double worst = 0.0;
    for (double phi : {-kPi / 8, kPi / 8}) {
      auto as = asymptotic_solution(md, phi);
      cplx t(200.0, 0.3);
      auto s = ansatz_sample(t, as);
      cplx a = a_phi_of_t(s.psi, s.psi_star, t, phi, md.alpha, md.beta);
      CurveSpec spec = make_curve(phi, a);
      auto [zp, zm] = z_pm(s.psi, s.psi_star, phi);
      cplx e = expi(phi);
      auto sheet = [&](cplx z) {
        cplx w = w_eval(spec, z), ref = z * (z + 2.0 * e + 2.0 * s.psi);
        return std::abs(w - ref) <= std::abs(w + ref) ? w : -w;
      };
      auto wi = W_identity(spec, zp, sheet(zp), zm, sheet(zm));
      double sc = 1.0 + std::abs(wi.cycle);
      worst = std::max({worst, std::abs(wi.cycle - wi.third_kind) / sc,
                        std::abs(wi.cycle - wi.theta) / sc});
    }
    return finish("W-integrals", worst, 1e-8, "cycle quadrature vs third-kind vs theta form");
  } catch (const std::exception& e) {
    return failed("W-integrals", e);
  }
}

SuiteResult suite_m0() {
  try {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      cplx al(U(rng), U(rng)), be(U(rng), U(rng));
      cplx s1(U(rng), U(rng)), s2(U(rng), U(rng)), s3(U(rng), U(rng));
      MonodromyData md;
      try {
        md = complete_monodromy(al, be, s1, s2, s3);
      } catch (const UnderdeterminedError&) {
        continue;
      }
      double scale = 1.0;
      for (cplx v : md.s) scale = std::max(scale, std::abs(v) * std::abs(v));
      worst = std::max(worst, std::abs(m0_residual(md)) / scale);
      auto ms = mstar_residuals(md);
      worst = std::max({worst, std::abs(ms[0]) / scale, std::abs(ms[1]) / scale});
      cplx c(U(rng), U(rng));
      MonodromyData g = md;
      g.s = gauge_action(c, md.s);
      worst = std::max(worst, std::abs(m0_residual(g)) /
                                  (scale * std::max(1.0, std::pow(std::abs(c), 4)) *
                                   std::max(1.0, std::pow(std::abs(c), -4))));
    }
    return finish("M0", worst, 1e-12, "M0 and product-surface residuals, gauge orbits");
  } catch (const std::exception& e) {
    return failed("M0", e);
  }
}

std::vector<SuiteResult> all_suites() {
  return {suite_legendre(), suite_theta(),      suite_residues(), suite_gamma(),
          suite_third_kind(), suite_w_integrals(), suite_m0()};
}

}  // namespace pivasym
