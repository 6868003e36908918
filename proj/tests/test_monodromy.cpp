#include <doctest.h>

#include <random>

#include "pivasym/monodromy.hpp"

using namespace pivasym;

namespace {
const MonodromyData& generic() {
  static const MonodromyData md =
      complete_monodromy(0.3, 0.7, 0.5, cplx(0.8, 0.3), cplx(-0.4, 0.2));
  return md;
}

// distance from c to the nearest lattice point m omega_a + n omega_b
double lattice_distance(cplx c, const Periods& p) {
  double det = (std::conj(p.omega_a) * p.omega_b).imag();
  double m = (std::conj(c) * p.omega_b).imag() / det;
  double n = (std::conj(p.omega_a) * c).imag() / det;
  return std::abs(c - std::round(m) * p.omega_a - std::round(n) * p.omega_b);
}

// (1+s1s2)(1+s2s3) = 1; s4 is irrelevant for the phase
MonodromyData nongeneric() {
  MonodromyData md;
  md.alpha = 0.3;
  md.beta = 0.7;
  md.s = {1.0, 1.0, -0.5, 0.3};
  return md;
}
}  // namespace

TEST_CASE("M0 residual and solve_s4") {
  MonodromyData md;
  md.s = {1.0, 0.0, 1.0, 0.0};
  CHECK(std::abs(m0_residual(md)) < 1e-15);
  CHECK(std::abs(solve_s4(0.0, 0.0, 1.0, 0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(solve_s4(0.0, 0.0, 0.0, 0.0, 0.0), UnderdeterminedError);

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 50; ++i) {
    cplx al(U(rng), U(rng)), be(U(rng), U(rng));
    auto m = complete_monodromy(al, be, {U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)});
    CHECK(std::abs(m0_residual(m)) < 1e-12);
    auto ms = mstar_residuals(m);
    CHECK(std::abs(ms[0]) < 1e-12);
    CHECK(std::abs(ms[1]) < 1e-12);
  }
}

TEST_CASE("M0 residual is sensitive off the manifold") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 20; ++i) {
    MonodromyData m = generic();
    cplx d(U(rng), U(rng));
    m.s[i % 4] += 1e-3 * d / std::abs(d);
    CHECK(std::abs(m0_residual(m)) >= 1e-4);
  }
}

TEST_CASE("shift law of the extended multipliers") {
  const auto& md = generic();
  cplx c = 2.0 * kPi * kI * (md.alpha - md.beta);
  for (int k = 1; k <= 4; ++k) {
    double sg = (k % 2 == 0) ? 1.0 : -1.0;
    CHECK(std::abs(md.s_ext(k + 4) + md.s_ext(k) * std::exp(sg * c)) < 1e-13);
    CHECK(md.s_ext(k) == md.s[k - 1]);
  }
}

TEST_CASE("gauge action") {
  const auto& md = generic();
  auto id = gauge_action(1.0, md.s);
  for (int k = 0; k < 4; ++k) CHECK(id[k] == md.s[k]);
  MonodromyData g = md;
  g.s = gauge_action(cplx(0.4, -1.3), md.s);
  auto p0 = md.products(), p1 = g.products();
  for (int k = 0; k < 4; ++k) CHECK(std::abs(p0[k] - p1[k]) < 1e-15 * (1 + std::abs(p0[k])));
  CHECK(std::abs(m0_residual(g)) < 1e-12);
  CHECK_THROWS_AS(gauge_action(0.0, md.s), DomainError);
}

TEST_CASE("singular point iff alpha - 1/2 is an integer") {
  for (double a : {0.5, -0.5, 1.5, 3.5}) {
    cplx be(0.3, 0.2);
    auto p = singular_point(a, be);
    REQUIRE(p.has_value());
    auto r = mstar_residuals(a, be, *p);
    CHECK(std::abs(r[0]) < 1e-12);
    CHECK(std::abs(r[1]) < 1e-12);
    CHECK(is_singular(a, be, *p));
  }
  for (cplx a : {cplx(0.3), cplx(0.5001), cplx(0.5, 0.1), cplx(1.0)})
    CHECK_FALSE(singular_point(a, 0.3).has_value());
  CHECK_FALSE(is_singular(generic().alpha, generic().beta, generic().products()));
}

TEST_CASE("phase shift") {
  double phi = -kPi / 8;
  auto md = complete_monodromy(0.3, 0.7, 0.0, 1.0, 1.0);
  auto as = asymptotic_solution(md, phi);
  CHECK(std::abs(as.chi_raw - (md.alpha - md.beta) * as.ep.periods.omega_b / 3.0) < 1e-12);

  const auto& g = generic();
  auto p = g.products();
  auto am = asymptotic_solution(g, -kPi / 8), ap = asymptotic_solution(g, kPi / 8);
  CHECK(std::abs(am.branch_l - std::log(1.0 + p[0])) < 1e-15);
  CHECK(std::abs(ap.branch_l + std::log(1.0 + p[1])) < 1e-15);
  CHECK(std::abs(am.log_gen - std::log((1.0 + p[0]) * (1.0 + p[1]) - 1.0)) < 1e-15);
  // Gamma from its quadrature definition; sign as in the phase of the ansatz
  for (const auto* a : {&am, &ap}) {
    cplx q = gamma_quadrature(g.alpha, g.beta, a->ep.periods, a->C_a, a->C_b);
    CHECK(std::abs(q - a->Gamma_ab) < 1e-8);
    CHECK(std::abs(a->Gamma_ab - 2.0 / 3.0 * (g.alpha - g.beta) * a->ep.periods.omega_b) < 1e-15);
  }
  // single-valued in the sector index
  auto a4 = asymptotic_solution(g, -kPi / 8 + 2 * kPi, 4);
  CHECK(lattice_distance(a4.chi - am.chi, am.ep.periods) < 1e-9);

  CHECK_THROWS_AS(asymptotic_solution(nongeneric(), phi), NonGenericError);
  // the same hypothesis makes the s4 coefficient vanish
  CHECK_THROWS_AS(complete_monodromy(0.3, 0.7, 1.0, 1.0, -0.5), UnderdeterminedError);
  CHECK_THROWS_AS(asymptotic_solution(g, 0.0), DegeneracyError);
}

TEST_CASE("lattice reduction") {
  auto as = asymptotic_solution(generic(), -kPi / 8);
  const auto& p = as.ep.periods;
  CHECK(std::abs(lattice_reduce(p.omega_a + p.omega_b, p)) < 1e-12);
  CHECK(std::abs(lattice_reduce(0.5 * p.omega_a, p) - 0.5 * p.omega_a) < 1e-12);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(-5, 5);
  for (int i = 0; i < 100; ++i) {
    cplx c = U(rng) * p.omega_a + U(rng) * p.omega_b;
    cplx r = lattice_reduce(c, p);
    CHECK(std::abs(lattice_reduce(r, p) - r) < 1e-12);
  }
}

TEST_CASE("z_pm and a_phi on the elliptic ansatz") {
  const auto& g = generic();
  double phi = -kPi / 8;
  auto as = asymptotic_solution(g, phi);
  cplx e = expi(phi);
  for (double tr : {50.0, 100.0, 200.0, 400.0}) {
    cplx t(tr, 0.3);
    auto s = ansatz_sample(t, as);
    auto [zp, zm] = z_pm(s.psi, s.psi_star, phi);
    CHECK(std::abs(zp + zm + s.psi + 2.0 * e) < 1e-12 * (1 + std::abs(s.psi)));
    cplx prod = zp * zm + e * e * e * as.A_phi / s.psi;
    CHECK(std::abs(prod) * tr < 50.0 * (1 + std::abs(s.psi) + 1 / std::abs(s.psi)));
    cplx a = a_phi_of_t(s.psi, s.psi_star, t, phi, g.alpha, g.beta);
    CHECK(std::abs(a - as.A_phi - s.B / t) < 1e-10);
    CHECK(std::abs(s.B) < 50.0);
  }
  CHECK_THROWS_AS(a_phi_of_t(0.0, 1.0, 100.0, phi, g.alpha, g.beta), DomainError);
}

TEST_CASE("W-integral and J splitting identities") {
  const auto& g = generic();
  for (double phi : {-kPi / 8, kPi / 8}) {
    auto as = asymptotic_solution(g, phi);
    cplx t(200.0, 0.3);
    auto s = ansatz_sample(t, as);
    auto dm = direct_monodromy_leading(s.psi, s.psi_star, t, phi, g.alpha, g.beta);
    CHECK(std::abs(dm.j_split_residual[0]) < 1e-7);
    CHECK(std::abs(dm.j_split_residual[1]) < 1e-7);
    CurveSpec spec = make_curve(phi, dm.a_phi);
    auto [zp, zm] = z_pm(s.psi, s.psi_star, phi);
    cplx e = expi(phi);
    auto sheet = [&](cplx z) {
      cplx w = w_eval(spec, z), ref = z * (z + 2.0 * e + 2.0 * s.psi);
      return std::abs(w - ref) <= std::abs(w + ref) ? w : -w;
    };
    auto wi = W_identity(spec, zp, sheet(zp), zm, sheet(zm));
    CHECK(std::abs(wi.cycle - wi.theta) < 1e-7 * (1 + std::abs(wi.cycle)));
    CHECK(std::abs(wi.cycle - wi.third_kind) < 1e-7 * (1 + std::abs(wi.cycle)));
  }
}

TEST_CASE("trigonometric approximation") {
  const auto& g = generic();
  auto p = g.products();
  cplx X = (1.0 + p[0]) * (1.0 + p[1]);
  cplx t(300.0, 0.0);
  auto r = trig_approx(t, g, 1e-3);
  CHECK(r.log_coeff_sine == std::log(X - 1.0) / (2.0 * kPi));
  CHECK(std::abs(r.y_cosine + 2.0 / 3.0 -
                 2.0 / std::sqrt(t) * (std::exp(kI * r.phase_cosine) + std::exp(-kI * r.phase_cosine))) <
        1e-14);
  CHECK(r.valid);
  CHECK_FALSE(trig_approx(t, g, 0.1).valid);
  CHECK_THROWS_AS(trig_approx(t, nongeneric(), 1e-3), NonGenericError);
}
