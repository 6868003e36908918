#include <doctest.h>

#include "pivasym/boutroux.hpp"
#include "pivasym/verify.hpp"

#include <algorithm>
#include <sstream>

using namespace pivasym;

TEST_CASE("Boutroux residual at the boundary points") {
  auto r0 = boutroux_residual(0.0, kA0);
  CHECK(std::abs(r0[0]) < 1e-9);
  CHECK(std::abs(r0[1]) < 1e-9);
  auto rq = boutroux_residual(kPi / 4, 0.0);
  CHECK(std::abs(rq[0]) < 1e-9);
  auto ru = boutroux_residual(0.0, 0.5);
  CHECK(std::max(std::abs(ru[0]), std::abs(ru[1])) > 1e-3);
}

TEST_CASE("solve_A: convergence, Jacobian, domain") {
  BoutrouxOptions o;
  o.check_jacobian = true;
  auto bp = solve_A(-kPi / 8, {0.15, 0.13}, o);
  CHECK(std::abs(bp.residual[0]) < 1e-12);
  CHECK(std::abs(bp.residual[1]) < 1e-12);
  CHECK(bp.newton_iters <= 8);
  CHECK(bp.jacobian_check < 1e-4);
  CHECK_THROWS_AS(solve_A(1e-4, {0.29, 0.01}), DomainError);
  CHECK_THROWS_AS(solve_A(kPi / 4 - 1e-4, {0.01, 0.01}), DomainError);
}

TEST_CASE("solve_A agrees with the grid oracle") {
  double phi = -kPi / 8;
  auto o = boutroux_oracle_scan(phi, {0.0, kA0, 0.0, 0.2}, 60);
  auto bp = solve_A(phi, o.coarse);
  CHECK(std::abs(bp.A - o.A) < 1e-6);
}

TEST_CASE("trajectory: invariants and symmetries") {
  std::vector<double> g, m, s;
  for (int k = 1; k < 20; ++k) {
    double phi = -kPi / 4 + kPi / 2 * k / 20.0;
    if (std::abs(phi) < 2e-3) continue;
    g.push_back(phi);
  }
  for (double p : g) m.push_back(-p), s.push_back(p + kPi / 2);
  auto tg = trajectory(g), tm = trajectory(m), ts = trajectory(s);
  for (size_t i = 0; i < g.size(); ++i) {
    const auto& b = tg[i];
    CHECK(std::abs(b.residual[0]) < 1e-10);
    CHECK(std::abs(b.residual[1]) < 1e-10);
    CHECK(b.A.real() >= 0.0);
    CHECK(b.A.real() <= kA0 + 1e-8);
    if (b.phi < 0) CHECK(b.A.imag() > 0);
    if (b.phi > 0) CHECK(b.A.imag() < 0);
    CHECK(std::abs(tm[i].A - std::conj(b.A)) < 1e-8);
    CHECK(std::abs(ts[i].A - b.A) < 1e-8);
  }
}

TEST_CASE("trajectory limits") {
  auto t = trajectory({-1e-3, kPi / 4 - 1e-3});
  CHECK(std::abs(t[0].A - kA0) < 5e-3);
  CHECK(std::abs(t[1].A) < 5e-3);
  auto e = trajectory({0.0, kPi / 4, -kPi / 4});
  CHECK(e[0].analytic);
  CHECK(e[0].A == kA0);
  CHECK(e[1].A == 0.0);
  CHECK(e[2].A == 0.0);
  CHECK_THROWS(trajectory({5e-4}));
}

TEST_CASE("small-phi law: ratio approaches 1 as phi -> 0") {
  // R(phi) = (A - 8/27) ln(1/|phi|) / (-(8i/3) phi)
  auto t = trajectory({-1e-1, -1e-2, -1e-3});
  double prev = 1e9;
  for (const auto& b : t) {
    double R = -((b.A - kA0) * std::log(1.0 / std::abs(b.phi)) / (8.0 * kI * b.phi / 3.0)).real();
    double dev = std::abs(R - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
}

TEST_CASE("I ratio") {
  auto bp = trajectory({-kPi / 8})[0];
  auto I = I_ratio(bp.A);
  CHECK_FALSE(I.reciprocal);
  CHECK(std::abs(I.value.imag()) < 1e-7);
  CHECK(std::abs(I_ratio(kA0).value) == 0.0);

  cplx A(0.2, 0.05), h = 1e-6;
  auto p = periods(make_curve(0.0, A, Frame::zeta));
  cplx d = (I_ratio(A + h).value - I_ratio(A - h).value) / (2.0 * h);
  CHECK(std::abs(d + 8.0 * kPi * kI / (p.J_a * p.J_a)) < 1e-6 * std::abs(d));

  // I(A) / ((3/2) pi i (A - 8/27)) -> 1 with log corrections
  double prev = 1e9;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    cplx a = kA0 - eps * cplx(1.0, 0.5);
    double dev = std::abs(I_ratio(a).value / (1.5 * kPi * kI * (a - kA0)) - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 0.1);
}

TEST_CASE("trajectory CSV") {
  std::ostringstream os;
  write_trajectory_csv(os, trajectory({-0.3, 0.3}));
  std::string s = os.str();
  CHECK(s.rfind("phi,re_A,im_A,", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}

TEST_CASE("J_b tends to 4 as A -> 0") {
  auto s = make_curve(kPi / 4, cplx(1e-4, -1e-4), Frame::zeta);
  cplx Jb = cycle_integral(s, CycleKind::b, Integrand::w_over_z);
  CHECK(std::abs(Jb - 4.0) < 1e-2);
  auto r = boutroux_residual(kPi / 4, 0.0);
  CHECK(std::abs(r[1]) < 1e-15);
}
