#include <doctest.h>

#include <random>

#include "pivasym/boutroux.hpp"
#include "pivasym/elliptic.hpp"
#include "pivasym/theta.hpp"

using namespace pivasym;

namespace {
const EllipticP& sample_P() {
  static const EllipticP ep = make_elliptic_P(-kPi / 8, trajectory({-kPi / 8})[0].A);
  return ep;
}
}  // namespace

TEST_CASE("theta: periodicity and reference value") {
  ThetaContext ctx(cplx(0.3, 1.1));
  cplx z(0.21, -0.37);
  CHECK(std::abs(theta(z + 1.0, ctx) - theta(z, ctx)) < 1e-13);
  cplx q = std::exp(-kPi * kI * ctx.tau - 2.0 * kPi * kI * z);
  CHECK(std::abs(theta(z + ctx.tau, ctx) - q * theta(z, ctx)) < 1e-12 * std::abs(theta(z + ctx.tau, ctx)));
  // sum of exp(-pi n^2), brute force
  CHECK(std::abs(theta(0.0, ThetaContext(kI)) - 1.0864348112133080) < 1e-13);
  cplx h = 1e-6;
  cplx fd = (std::log(theta(z + h, ctx)) - std::log(theta(z - h, ctx))) / (2.0 * h);
  CHECK(std::abs(theta_logderiv(z, ctx) - fd) < 1e-7);
}

TEST_CASE("invariants") {
  auto iv = curve_invariants(0.0, kA0);
  CHECK(std::abs(iv.g2 - 4.0 / 27.0) < 1e-15);
  CHECK(std::abs(iv.g3 - 8.0 / 729.0) < 1e-15);
  CHECK(std::abs(iv.discriminant()) < 1e-15);
  double phi = 0.3;
  cplx A(0.1, -0.05);
  auto g = curve_invariants(phi, A);
  CHECK(std::abs(g.g2 + 4.0 * expi(4 * phi) * (A - 1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(g.g3 - expi(6 * phi) * (-A * A + 4.0 / 3.0 * A - 8.0 / 27.0)) < 1e-15);
}

TEST_CASE("Weierstrass function") {
  Weierstrass W(cplx(2.0, 0.0), cplx(0.7, 1.9));
  cplx u(0.31, 0.42), v(-0.27, 0.58);
  CHECK(std::abs(W(-u) - W(u)) < 1e-12);
  cplx add = -W(u) - W(v) + 0.25 * std::pow((W.prime(u) - W.prime(v)) / (W(u) - W(v)), 2);
  CHECK(std::abs(W(u + v) - add) < 1e-8);
  auto iv = W.invariants();
  cplx p = W(u), dp = W.prime(u);
  CHECK(std::abs(dp * dp - (4.0 * p * p * p - iv.g2 * p - iv.g3)) < 1e-9 * std::abs(dp * dp));
  auto W2 = Weierstrass::from_invariants(iv.g2, iv.g3);
  CHECK(std::abs(W2(u) - p) < 1e-9);
  CHECK(std::abs(wp(u, iv.g2, iv.g3) - p) < 1e-9);
}

TEST_CASE("P: zero, ODE, routes, periods") {
  const auto& ep = sample_P();
  CHECK(P_eval(0.0, ep) == 0.0);
  cplx u = 0.31 * ep.periods.omega_a + 0.17 * ep.periods.omega_b;
  cplx P = P_eval(u, ep), dP = P_deriv(u, ep);
  CHECK(std::abs(P_ode_residual(P, dP, ep.phi, ep.A)) < 1e-8);
  cplx Pw = P_eval(u, ep, PRoute::wp), dPw = P_deriv(u, ep, PRoute::wp);
  CHECK(std::abs(P_ode_residual(Pw, dPw, ep.phi, ep.A)) < 1e-8);
  CHECK(std::abs(P - Pw) < 1e-9);
  CHECK(std::abs(P_eval(u + ep.periods.omega_a, ep) - P) < 1e-9);
  CHECK(std::abs(P_eval(u + ep.periods.omega_b, ep) - P) < 1e-9);
  cplx C = ep.C_P;
  ThetaContext ctx(ep.periods.tau);
  cplx ref = -theta_logderiv(ep.periods.tau / 3.0 + ctx.nu, ctx) +
             theta_logderiv(-ep.periods.tau / 3.0 + ctx.nu, ctx);
  CHECK(std::abs(C - ref) < 1e-12);
}

TEST_CASE("P: residues in the adopted orientation") {
  // +1 at +Omega_b/3, -1 at -Omega_b/3 with J_a(8/27) = +4i/sqrt3
  const auto& ep = sample_P();
  double r = 0.01 * std::abs(ep.periods.omega_a);
  CHECK(std::abs(P_residue(ep.periods.omega_b / 3.0, ep, r) - 1.0) < 1e-6);
  CHECK(std::abs(P_residue(-ep.periods.omega_b / 3.0, ep, r) + 1.0) < 1e-6);
  auto [d, pole] = nearest_pole(ep.periods.omega_b / 3.0 + 0.01, ep);
  CHECK(d == doctest::Approx(0.01));
  CHECK_THROWS_AS(P_eval(pole, ep), PoleError);
}

TEST_CASE("chi transform") {
  const auto& ep = sample_P();
  cplx e = expi(ep.phi);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 10; ++i) {
    cplx u = U(rng) * ep.periods.omega_a + U(rng) * ep.periods.omega_b;
    cplx v = u + ep.periods.omega_b / 3.0;
    if (nearest_pole(u, ep).first < 0.1 || nearest_pole(v, ep).first < 0.1) continue;
    cplx eta = P_eval(v, ep);
    auto [cp, cm] = chi_transform(eta, P_deriv(v, ep), ep.phi);
    CHECK(std::abs(cp + cm + eta + 2.0 * e) < 1e-12 * (1 + std::abs(eta)));
    CHECK(std::abs(cp * cm + e * e * e * ep.A / eta) < 1e-9 * (1 + std::abs(cp * cm)));
    CHECK(std::abs(chi_relation_residual(eta, cp, ep.phi, ep.A)) < 1e-9 * (1 + std::norm(eta) * std::abs(cp)));
    // shift property, sign as in the adopted orientation
    CHECK(std::abs(cp - P_eval(u, ep)) < 1e-8 * (1 + std::abs(cp)));
  }
}

TEST_CASE("trigonometric degeneration") {
  double om = kPi / 2;
  cplx omp = kI * std::log(1e4) / 2.0;
  Weierstrass F(2.0 * om, 2.0 * omp);
  double worst = 0.0, h = 0.0;
  for (int i = 1; i < 10; ++i)
    for (int j = -3; j <= 3; ++j) {
      cplx u(0.3 * i, 0.3 * j);
      auto d = wp_degenerate(u, DegenerateMode::sine, om, omp);
      CHECK(d.accurate);
      h = std::abs(d.h);
      worst = std::max(worst, std::abs(F(u) - d.value));
    }
  CHECK(h == doctest::Approx(1e-4));
  CHECK(worst < 10 * h);
  auto c = wp_degenerate(omp, DegenerateMode::cosine, om, omp);
  cplx hh = c.h;
  CHECK(std::abs(c.value - (-1.0 / 3.0 - 8.0 * hh)) < 100 * std::norm(hh));
  CHECK(std::abs(F(omp) - c.value) < 10 * h);

  // h -> 0: pure sine form
  cplx far = kI * 20.0;
  auto s = wp_degenerate(0.4, DegenerateMode::sine, om, far);
  CHECK(std::abs(s.value - (-1.0 / 3.0 + 1.0 / std::pow(std::sin(0.4), 2))) < 1e-12);
  CHECK_FALSE(wp_degenerate(0.4, DegenerateMode::sine, om, kI * 0.5).accurate);
}
