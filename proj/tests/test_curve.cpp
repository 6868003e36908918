#include <doctest.h>

#include "pivasym/boutroux.hpp"
#include "pivasym/curve.hpp"

using namespace pivasym;

namespace {
cplx A_at(double phi) { return trajectory({phi})[0].A; }
}  // namespace

TEST_CASE("cubic roots at the degenerate points") {
  auto r = cubic_roots(0.0, kA0);
  CHECK(std::abs(r[0] + 2.0 / 3.0) < 1e-7);
  CHECK(std::abs(r[1] + 2.0 / 3.0) < 1e-7);
  CHECK(std::abs(r[2] + 8.0 / 3.0) < 1e-12);

  cplx e = expi(kPi / 4);
  auto q = cubic_roots(kPi / 4, 0.0);
  CHECK(std::abs(q[0]) < 1e-12);
  CHECK(std::abs(q[1] + 2.0 * e) < 1e-7);
  CHECK(std::abs(q[2] + 2.0 * e) < 1e-7);
}

TEST_CASE("Vieta relations and ordering") {
  double phi = 0.3;
  cplx A = 0.2, e = expi(phi);
  auto r = cubic_roots(phi, A);
  CHECK(std::abs(r[0] + r[1] + r[2] + 4.0 * e) < 1e-12);
  CHECK(std::abs(r[0] * r[1] + r[0] * r[2] + r[1] * r[2] - 4.0 * e * e) < 1e-12);
  CHECK(std::abs(r[0] * r[1] * r[2] + 4.0 * e * e * e * A) < 1e-12);
  cplx ec = std::conj(e);
  CHECK((ec * r[2]).real() <= (ec * r[1]).real());
  CHECK((ec * r[1]).real() <= (ec * r[0]).real());
}

TEST_CASE("zeta frame is the rotated z frame") {
  double phi = -0.3;
  cplx A = A_at(phi);
  auto z = make_curve(phi, A, Frame::z);
  auto s = make_curve(phi, A, Frame::zeta);
  auto zr = z.zeta_roots();
  CHECK(std::abs(zr[0] - s.z1) < 1e-12);
  CHECK(std::abs(zr[1] - s.z3) < 1e-12);
  CHECK(std::abs(zr[2] - s.z5) < 1e-12);
}

TEST_CASE("root tracking keeps labels") {
  std::array<cplx, 3> prev{cplx(0, 0), cplx(1, 0), cplx(2, 0)};
  std::array<cplx, 3> fresh{cplx(2.01, 0), cplx(0.01, 0), cplx(0.99, 0)};
  auto t = track_roots(prev, fresh);
  CHECK(t[0] == fresh[1]);
  CHECK(t[1] == fresh[2]);
  CHECK(t[2] == fresh[0]);
}

TEST_CASE("w on the curve") {
  auto s = make_curve(0.0, kA0, Frame::zeta);
  cplx w = w_eval(s, -1.0);
  CHECK(std::abs(w * w + 5.0 / 27.0) < 1e-14);
  CHECK(std::abs(w.real()) < 1e-14);

  auto g = make_curve(-0.3, A_at(-0.3));
  cplx z(1e6, 0.0);
  CHECK(std::abs(w_eval(g, z) / (z * z) - 1.0) < 1e-5);
  cplx z0(0.3, -0.7);
  CHECK(w_eval(g, z0, -1) == -w_eval(g, z0, 1));
}

TEST_CASE("cycle topology") {
  double phi = -0.3;
  auto s = make_curve(phi, A_at(phi));
  auto [a, b] = build_cycles(s);
  CHECK(a.nodes.front() == a.nodes.back());
  CHECK(std::abs(winding_number(a, s.z3)) == doctest::Approx(1.0));
  CHECK(std::abs(winding_number(a, s.z5)) == doctest::Approx(1.0));
  CHECK(winding_number(a, s.z1) == doctest::Approx(0.0));
  CHECK(winding_number(a, 0.0) == doctest::Approx(0.0));

  auto s2 = make_curve(0.2, A_at(0.2));
  auto [a2, b2] = build_cycles(s2);
  CHECK(count_crossings(b2, s2.z5, s2.z3) == 1);
  CHECK(count_crossings(b2, s2.z1, 0.0) == 1);

  CHECK_THROWS_AS(build_cycles(make_curve(kPi / 4, 0.0)), DegeneracyError);
}

TEST_CASE("exact cycle integrals at the boundary values") {
  auto s = make_curve(0.0, kA0, Frame::zeta);
  cplx Ja = cycle_integral(s, CycleKind::a, Integrand::w_over_z);
  cplx Jb = cycle_integral(s, CycleKind::b, Integrand::w_over_z);
  CHECK(std::abs(Ja - cplx(0.0, 2.309401076758503)) < 1e-9);
  CHECK(std::abs(Jb) < 1e-9);
  auto s0 = make_curve(0.0, 0.0, Frame::zeta);
  CHECK(std::abs(cycle_integral(s0, CycleKind::a, Integrand::w_over_z)) < 1e-9);
}

TEST_CASE("periods: Legendre relation, tau, frames") {
  for (double phi : {-0.6, -0.3, -0.05, 0.1, 0.4, 0.7}) {
    cplx A = A_at(phi);
    auto pz = periods(make_curve(phi, A, Frame::z));
    auto pw = periods(make_curve(phi, A, Frame::zeta));
    CHECK(pz.tau.imag() > 0);
    CHECK(std::abs(pz.omega_b * pz.J_a - pz.omega_a * pz.J_b + 4.0 * kPi * kI * expi(phi)) < 1e-8);
    CHECK(std::abs(pw.omega_b * pw.J_a - pw.omega_a * pw.J_b + 4.0 * kPi * kI) < 1e-8);
    auto conv = to_frame(pw, Frame::z, phi);
    CHECK(std::abs(conv.J_a - pz.J_a) < 1e-9);
    CHECK(std::abs(conv.omega_b - pz.omega_b) < 1e-9);
    CHECK(std::abs(pz.J_a - expi(2 * phi) * pw.J_a) < 1e-9);
    CHECK(std::abs(pz.omega_a - expi(-phi) * pw.omega_a) < 1e-9);
  }
}

TEST_CASE("dJ/dA = 2 Omega") {
  double phi = -0.3;
  cplx A = A_at(phi), h = 1e-5;
  auto J = [&](cplx a) { return periods(make_curve(phi, a, Frame::zeta)); };
  auto p = J(A), pp = J(A + h), pm = J(A - h);
  cplx da = (pp.J_a - pm.J_a) / (2.0 * h), db = (pp.J_b - pm.J_b) / (2.0 * h);
  CHECK(std::abs(da - 2.0 * p.omega_a) / std::abs(p.omega_a) < 1e-6);
  CHECK(std::abs(db - 2.0 * p.omega_b) / std::abs(p.omega_b) < 1e-6);
}

TEST_CASE("periods near phi = 0 on the trajectory") {
  // Omega*_b -> -sqrt(3) pi; Omega*_a grows like -(i sqrt3/2) ln phi
  double p1 = 1e-2, p2 = 1e-3;
  auto tr = trajectory({p1, p2});
  auto a = periods(make_curve(p1, tr[0].A, Frame::zeta));
  auto b = periods(make_curve(p2, tr[1].A, Frame::zeta));
  CHECK(std::abs(b.omega_b + std::sqrt(3.0) * kPi) < 0.1);
  cplx slope = (a.omega_a - b.omega_a) / (std::log(p1) - std::log(p2));
  CHECK(std::abs(slope + kI * std::sqrt(3.0) / 2.0) < 0.1);
}

TEST_CASE("third-kind identities") {
  for (double phi : {-0.3, -kPi / 8, 0.5}) {
    auto s = make_curve(phi, A_at(phi));
    for (cplx z0 : {cplx(0.4, 0.9), cplx(-1.1, -0.6)})
      for (const auto& r : third_kind_identities(s, z0)) {
        INFO(r.name, " phi=", phi);
        CHECK(r.residual < 1e-7 * (1 + std::abs(r.rhs)));
      }
  }
}

TEST_CASE("path integral refinement is stable") {
  double phi = -0.3;
  auto s = make_curve(phi, A_at(phi));
  auto [a1, b1] = build_cycles(s, 1e-3, 160);
  auto [a2, b2] = build_cycles(s, 1e-3, 320);
  cplx z0(0.4, 0.9);
  cplx i1 = path_integral(s, a1, Integrand::third_kind, z0);
  cplx i2 = path_integral(s, a2, Integrand::third_kind, z0);
  CHECK(std::abs(i1 - i2) < 1e-7 * (1 + std::abs(i1)));
  CHECK(std::abs(i1 - cycle_integral(s, CycleKind::a, Integrand::third_kind, z0)) <
        1e-7 * (1 + std::abs(i1)));
}
