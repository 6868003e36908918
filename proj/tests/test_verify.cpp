#include <doctest.h>

#include "pivasym/verify.hpp"

using namespace pivasym;

namespace {
const MonodromyData& generic() {
  static const MonodromyData md =
      complete_monodromy(0.3, 0.7, 0.5, cplx(0.8, 0.3), cplx(-0.4, 0.2));
  return md;
}
const AsymptoticSolution& sample() {
  static const AsymptoticSolution as = asymptotic_solution(generic(), -kPi / 8);
  return as;
}
}  // namespace

TEST_CASE("P_IV right-hand side") {
  // linear solutions y = c x: c = -2 with (1/2, 2), c = -2/3 with (1/6, 2/3)
  for (cplx x : {cplx(1.0), cplx(2.0, 1.0), cplx(5.0)}) {
    CHECK(std::abs(p4_rhs(x, -2.0 * x, -2.0, 0.5, 2.0)) < 1e-12);
    CHECK(std::abs(p4_rhs(x, -2.0 / 3.0 * x, -2.0 / 3.0, 1.0 / 6.0, 2.0 / 3.0)) < 1e-12);
  }
  cplx x(0.4, -0.3), y(1.1, 0.2), yp(-0.5, 0.7), al(0.3, 0.1), be(0.7, -0.2);
  CHECK(std::abs(p4_rhs(-x, -y, yp, al, be) + p4_rhs(x, y, yp, al, be)) < 1e-13);
  CHECK_THROWS_AS(p4_rhs(x, 0.0, yp, al, be), SingularityError);
}

TEST_CASE("rational solution y = -2x") {
  ODEOptions o;
  o.arithmetic = Arithmetic::extended;
  auto tr = integrate_p4(-2.0, -2.0, {1.0, 5.0}, 0.5, 2.0, o);
  CHECK(std::abs(tr.y.back() + 10.0) < 1e-8);
  CHECK(tr.pole_events.empty());
  CHECK_FALSE(tr.halted);
}

TEST_CASE("fixed-step order") {
  // generic data: the linear solution would be integrated exactly
  cplx x0(1.0, 0.2), x1(1.6, 0.5), y0(0.7, 0.1), yp0(-0.3, 0.4);
  cplx ref = integrate_p4_fixed(x0, y0, yp0, x1, 2048, 0.3, 0.7).first;
  auto err = [&](int n) { return std::abs(integrate_p4_fixed(x0, y0, yp0, x1, n, 0.3, 0.7).first - ref); };
  CHECK(std::log2(err(32) / err(64)) >= 4.0);
}

TEST_CASE("change of variables") {
  double phi = -kPi / 8;
  cplx t(120.0, 0.3);
  cplx x = x_of_t(t, phi);
  CHECK(std::abs(std::pow(std::conj(expi(phi)) * x, 2) - 2.0 * t) < 1e-12);
  CHECK(std::abs(t_of_x(x, phi) - t) < 1e-12);
}

TEST_CASE("seed and consistency on the ansatz") {
  const auto& as = sample();
  const auto& md = generic();
  cplx t0(300.0, 0.3);
  auto sd = seed_from_asymptotics(as, t0);
  auto [psi, psi_t] = psi_of_state(sd.x, sd.y, sd.yp, as.phi);
  cplx a = a_phi_of_t(psi, psi_t, t0, as.phi, md.alpha, md.beta);
  CHECK(std::abs(a - as.A_phi) < 20.0 / std::abs(t0));

  // psi_t of the seed against a difference quotient of the ansatz; the other
  // sheet is the negative control (a_phi only sees psi_t squared)
  cplx h = 1e-4;
  cplx fd = (ansatz_sample(t0 + h, as).psi - ansatz_sample(t0 - h, as).psi) / (2.0 * h);
  CHECK(std::abs(psi_t - fd) < 5.0 / std::abs(t0) * std::abs(fd));
  auto bad = seed_from_asymptotics(as, t0, true);
  cplx bpt = psi_of_state(bad.x, bad.y, bad.yp, as.phi).second;
  CHECK(std::abs(bpt - fd) > 0.5 * std::abs(fd));
}

TEST_CASE("pole event toward a predicted pole") {
  const auto& as = sample();
  auto poles = predicted_points(as, 200, 260, -0.5, 1.1, true);
  REQUIRE_FALSE(poles.empty());
  cplx tp = poles[0];
  auto sd = seed_from_asymptotics(as, tp + cplx(3.0, 0.0));
  std::vector<cplx> path{sd.x};
  for (int k = 1; k <= 60; ++k) path.push_back(x_of_t(tp + cplx(3.0 - 3.0 * k / 60.0, 0.0), as.phi));
  ODEOptions o;
  o.pole_max = 1e3;  // |y| stays below 100 until 0.3 before the pole
  auto tr = integrate_p4(sd.y, sd.yp, path, as.monodromy.alpha, as.monodromy.beta, o);
  REQUIRE(tr.pole_events.size() == 1);
  CHECK(tr.halted);
  CHECK(tr.pole_events[0].reason == "pole");
  CHECK(std::abs(t_of_x(tr.pole_events[0].x, as.phi) - tp) < 0.05);
}

TEST_CASE("pole location") {
  const auto& as = sample();
  auto poles = predicted_points(as, 200, 260, -0.5, 1.1, true);
  REQUIRE_FALSE(poles.empty());
  auto r = residual_scan(as, {poles[0].real()});
  cplx x = x_of_t(r.rows[0].t, as.phi);
  auto pl = locate_pole(x, r.traj.y.back(), r.traj.yp.back(), as.monodromy.alpha,
                        as.monodromy.beta);
  CHECK(std::abs(t_of_x(pl.x, as.phi) - poles[0]) < 0.1);
  CHECK(std::abs(std::abs(pl.residue) - 1.0) < 1e-3);
  CHECK(std::abs(pl.exponent + 1.0) < 0.05);
}

TEST_CASE("residual scan decays") {
  std::vector<double> ts{100, 141, 200, 283, 400};
  auto r = residual_scan(sample(), ts);
  REQUIRE(r.rows.size() == ts.size());
  CHECK(r.slope_residual <= -0.1);
  std::vector<double> tv, rv;
  for (const auto& row : r.rows) tv.push_back(row.t.real()), rv.push_back(row.residual);
  CHECK(median_trend_decreasing(tv, rv, 2));
}

TEST_CASE("residual table is gauge invariant") {
  MonodromyData g = generic();
  g.s = gauge_action(cplx(0.6, 1.2), g.s);
  auto ag = asymptotic_solution(g, -kPi / 8);
  auto r0 = residual_scan(sample(), {150, 250});
  auto r1 = residual_scan(ag, {150, 250});
  for (size_t i = 0; i < r0.rows.size(); ++i)
    CHECK(std::abs(r0.rows[i].residual - r1.rows[i].residual) < 1e-8);
}

TEST_CASE("fit helpers") {
  std::vector<double> t{1, 2, 4, 8}, v{1, 0.5, 0.25, 0.125};
  CHECK(loglog_slope(t, v) == doctest::Approx(-1.0));
  CHECK(median_trend_decreasing(t, v, 2));
  CHECK_FALSE(median_trend_decreasing(t, {1, 2, 3, 4}, 2));
}

TEST_CASE("oracle scan") {
  ScanRect box{0.0, kA0, 0.0, 0.2};
  auto c = boutroux_oracle_scan(-kPi / 8, box, 40);
  auto f = boutroux_oracle_scan(-kPi / 8, box, 80);
  CHECK(std::abs(c.coarse - f.coarse) < 2.0 * std::hypot(kA0 / 40, 0.2 / 40));
  CHECK(std::abs(c.A - f.A) < 1e-8);
  CHECK(std::abs(f.A - trajectory({-kPi / 8})[0].A) < 1e-6);
}
