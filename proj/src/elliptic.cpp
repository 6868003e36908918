#include "pivasym/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "pivasym/quadrature.hpp"

namespace pivasym {

Lattice lattice_reduce(cplx w1, cplx w2) {
  if (std::abs(w1) == 0.0 || std::abs(w2) == 0.0)
    throw DomainError("lattice_reduce: zero period");
  if ((w2 / w1).imag() == 0.0) throw DomainError("lattice_reduce: collinear periods");
  if ((w2 / w1).imag() < 0.0) w2 = -w2;
  for (int it = 0; it < 200; ++it) {
    cplx t = w2 / w1;
    double n = std::round(t.real());
    w2 -= n * w1;
    if (std::abs(w2) < std::abs(w1) * (1.0 - 1e-15)) {
      cplx tmp = w1;
      w1 = w2;
      w2 = -tmp;
    } else {
      break;
    }
  }
  return {w1, w2};
}

cplx lattice_offset(cplx u, const Lattice& L) {
  double a = L.w1.real(), b = L.w2.real(), c = L.w1.imag(), d = L.w2.imag();
  double det = a * d - b * c;
  double x = (d * u.real() - b * u.imag()) / det;
  double y = (-c * u.real() + a * u.imag()) / det;
  double x0 = std::round(x), y0 = std::round(y);
  cplx best = u;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      cplx r = u - (x0 + i) * L.w1 - (y0 + j) * L.w2;
      if (std::abs(r) < std::abs(best)) best = r;
    }
  return best;
}

Invariants curve_invariants(double phi, cplx A) {
  return {-4.0 * expi(4.0 * phi) * (A - 1.0 / 3.0),
          expi(6.0 * phi) * (-A * A + 4.0 / 3.0 * A - 8.0 / 27.0)};
}

// ------------------------------------------------------------ Weierstrass

Weierstrass::Weierstrass(cplx period1, cplx period2)
    : lat_(lattice_reduce(period1, period2)), ctx_(lat_.tau()) {
  auto d = theta_derivs_raw(ctx_.nu, ctx_);
  c0_ = d[3] / (3.0 * d[1]) - d[2] * d[2] / (4.0 * d[1] * d[1]);
}

namespace {

std::array<cplx, 3> cubic_roots_wp(cplx g2, cplx g3) {
  // 4x^3 - g2 x - g3 = 0, Durand-Kerner then Newton polish
  auto f = [&](cplx x) { return (4.0 * x * x - g2) * x - g3; };
  auto df = [&](cplx x) { return 12.0 * x * x - g2; };
  double s = std::max({1.0, std::sqrt(std::abs(g2)), std::cbrt(std::abs(g3))});
  std::array<cplx, 3> r{cplx(0.4, 0.9) * s, cplx(-0.7, 0.3) * s,
                        cplx(0.2, -0.8) * s};
  for (int it = 0; it < 500; ++it) {
    double move = 0.0;
    for (int k = 0; k < 3; ++k) {
      cplx den = 4.0;
      for (int j = 0; j < 3; ++j)
        if (j != k) den *= r[k] - r[j];
      cplx step = f(r[k]) / den;
      r[k] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-16 * s) break;
  }
  for (auto& x : r)
    for (int it = 0; it < 3; ++it) {
      cplx d = df(x);
      if (std::abs(d) < 1e-300) break;
      x -= f(x) / d;
    }
  return r;
}

cplx sqrt_ray(cplx x, cplx u) { return std::sqrt(-u) * std::sqrt(x / (-u)); }

// Full period around the cut [p,q], branch of sqrt(x - e) continuous on it.
cplx wp_period(cplx p, cplx q, cplx e) {
  cplx m = 0.5 * (p + q), r = 0.5 * (q - p);
  cplx dir = m - e;
  cplx u = -dir / std::abs(dir);
  auto f = [&](double th) {
    cplx x = m - r * std::cos(th);
    return 1.0 / (kI * sqrt_ray(x - e, u));
  };
  return integrate_checked(f, 0.0, kPi, 1e-12, "wp period");
}

}  // namespace

Weierstrass Weierstrass::from_invariants(cplx g2, cplx g3, double deg_tol) {
  Invariants inv{g2, g3};
  double scale = std::max(std::norm(g2) * std::abs(g2), 27.0 * std::norm(g3));
  if (std::abs(inv.discriminant()) <= deg_tol * scale)
    throw DegeneracyError("Weierstrass: degenerate invariants");
  auto e = cubic_roots_wp(g2, g3);
  return Weierstrass(wp_period(e[0], e[1], e[2]), wp_period(e[1], e[2], e[0]));
}

cplx Weierstrass::operator()(cplx u) const {
  auto l = theta_logderivs(u / lat_.w1 + ctx_.nu, ctx_);
  return (-l[1] + c0_) / (lat_.w1 * lat_.w1);
}

cplx Weierstrass::prime(cplx u) const {
  auto l = theta_logderivs(u / lat_.w1 + ctx_.nu, ctx_);
  return -l[2] / (lat_.w1 * lat_.w1 * lat_.w1);
}

Invariants Weierstrass::invariants() const {
  cplx q2 = std::exp(2.0 * kPi * kI * lat_.tau());
  cplx e4 = 1.0, e6 = 1.0, qn = 1.0;
  for (int n = 1; n < 200; ++n) {
    qn *= q2;
    if (std::abs(qn) * std::pow(double(n), 5) < 1e-18) break;
    double s3 = 0.0, s5 = 0.0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        s3 += std::pow(double(d), 3);
        s5 += std::pow(double(d), 5);
      }
    e4 += 240.0 * s3 * qn;
    e6 -= 504.0 * s5 * qn;
  }
  cplx k = 2.0 * kPi / lat_.w1;
  cplx k2 = k * k;
  return {k2 * k2 * e4 / 12.0, k2 * k2 * k2 * e6 / 216.0};
}

// --------------------------------------------------------------- wp free

namespace {

// wp for Delta = 0: a - 3a / sin^2(sqrt(-3a) u), a the double root.
std::pair<cplx, cplx> wp_trig(cplx u, cplx g2, cplx g3) {
  if (std::abs(g2) < 1e-300 && std::abs(g3) < 1e-300)
    return {1.0 / (u * u), -2.0 / (u * u * u)};
  cplx a = -3.0 * g3 / (2.0 * g2);
  cplx k = std::sqrt(-3.0 * a);
  cplx s = std::sin(k * u), c = std::cos(k * u);
  return {a - 3.0 * a / (s * s), 6.0 * a * k * c / (s * s * s)};
}

}  // namespace

cplx wp(cplx u, cplx g2, cplx g3) {
  try {
    return Weierstrass::from_invariants(g2, g3)(u);
  } catch (const DegeneracyError&) {
    return wp_trig(u, g2, g3).first;
  }
}

cplx wp_prime(cplx u, cplx g2, cplx g3) {
  try {
    return Weierstrass::from_invariants(g2, g3).prime(u);
  } catch (const DegeneracyError&) {
    return wp_trig(u, g2, g3).second;
  }
}

DegenerateValue wp_degenerate(cplx u, DegenerateMode mode, cplx omega,
                              cplx omega_prime, double h_threshold) {
  cplx wh = kPi / (2.0 * omega);
  cplx h = std::exp(kI * kPi * omega_prime / omega);
  DegenerateValue out;
  out.h = h;
  out.accurate = std::abs(h) <= h_threshold;
  if (mode == DegenerateMode::sine) {
    cplx s = std::sin(wh * u);
    out.value = -wh * wh / 3.0 + wh * wh / (s * s);
  } else {
    out.value = -wh * wh / 3.0 -
                8.0 * wh * wh * h * std::cos(2.0 * wh * (u - omega_prime));
  }
  return out;
}

// ---------------------------------------------------------------------- P

EllipticP make_elliptic_P(double phi, cplx A, const Tolerances& tol) {
  EllipticP ep;
  ep.phi = phi;
  ep.A = A;
  ep.periods = periods(make_curve(phi, A, Frame::z), tol);
  ep.ctx = ThetaContext(ep.periods.tau);
  cplx t3 = ep.periods.tau / 3.0;
  ep.C_P = -theta_logderiv(t3 + ep.ctx.nu, ep.ctx) +
           theta_logderiv(-t3 + ep.ctx.nu, ep.ctx);
  ep.inv = curve_invariants(phi, A);
  ep.lattice = lattice_reduce(ep.periods.omega_a, ep.periods.omega_b);
  ep.pole_radius = 1e-3 * std::abs(ep.periods.omega_a);
  return ep;
}

namespace {

struct PVal {
  cplx P, dP;
};

PVal p_theta(cplx u, const EllipticP& ep, bool deriv) {
  const cplx Oa = ep.periods.omega_a;
  const cplx x = u / Oa, t3 = ep.periods.tau / 3.0, nu = ep.ctx.nu;
  if (!deriv) {
    cplx Lp = theta_logderiv(x + t3 + nu, ep.ctx);
    cplx Lm = theta_logderiv(x - t3 + nu, ep.ctx);
    return {-(Lp - Lm + ep.C_P) / Oa, 0.0};
  }
  auto lp = theta_logderivs(x + t3 + nu, ep.ctx);
  auto lm = theta_logderivs(x - t3 + nu, ep.ctx);
  return {-(lp[0] - lm[0] + ep.C_P) / Oa, -(lp[1] - lm[1]) / (Oa * Oa)};
}

const Weierstrass& wp_of(const EllipticP& ep) {
  // one lattice per (phi, A); cached on the last EllipticP seen per thread
  thread_local double phi = std::nan("");
  thread_local cplx A{};
  thread_local Weierstrass W(1.0, kI);
  if (!(phi == ep.phi && A == ep.A)) {
    W = Weierstrass::from_invariants(ep.inv.g2, ep.inv.g3);
    phi = ep.phi;
    A = ep.A;
  }
  return W;
}

PVal p_wp(cplx u, const EllipticP& ep) {
  if (lattice_offset(u, ep.lattice) == 0.0) return {0.0, 0.0};
  const Weierstrass& W = wp_of(ep);
  cplx e = expi(ep.phi);
  cplx num = e * e * e * ep.A;
  cplx den = W(u) - e * e / 3.0;
  return {num / den, -num * W.prime(u) / (den * den)};
}

PVal p_checked(cplx u, const EllipticP& ep, PRoute route, bool deriv) {
  auto [d, pole] = nearest_pole(u, ep);
  if (d < ep.pole_radius) throw PoleError("P: too close to a pole", pole);
  return route == PRoute::theta ? p_theta(u, ep, deriv) : p_wp(u, ep);
}

}  // namespace

std::pair<double, cplx> nearest_pole(cplx u, const EllipticP& ep) {
  double best = 1e300;
  cplx at{};
  for (double s : {1.0, -1.0}) {
    cplx c = s * ep.periods.omega_b / 3.0;
    cplx off = lattice_offset(u - c, ep.lattice);
    if (std::abs(off) < best) {
      best = std::abs(off);
      at = u - off;
    }
  }
  return {best, at};
}

cplx P_eval(cplx u, const EllipticP& ep, PRoute route) {
  return p_checked(u, ep, route, false).P;
}

cplx P_deriv(cplx u, const EllipticP& ep, PRoute route) {
  return p_checked(u, ep, route, true).dP;
}

cplx P_residue(cplx at, const EllipticP& ep, double radius, int nodes) {
  cplx s = 0.0;
  for (int k = 0; k < nodes; ++k) {
    cplx e = expi(2.0 * kPi * k / nodes);
    s += p_theta(at + radius * e, ep, false).P * e;
  }
  return s * radius / double(nodes);
}

cplx P_ode_residual(cplx P, cplx dP, double phi, cplx A) {
  cplx e = expi(phi);
  cplx t = P + 2.0 * e;
  return dP * dP - P * P * t * t - 4.0 * e * e * e * A * P;
}

std::pair<cplx, cplx> chi_transform(cplx eta, cplx eta_deriv, double phi) {
  if (eta == 0.0) throw DomainError("chi_transform: eta = 0");
  cplx q = eta_deriv / (2.0 * eta);
  cplx base = -0.5 * eta - expi(phi);
  return {-q + base, q + base};
}

cplx chi_relation_residual(cplx eta, cplx chi, double phi, cplx A) {
  cplx e = expi(phi);
  return eta * eta * chi + eta * chi * chi + 2.0 * e * eta * chi -
         e * e * e * A;
}

}  // namespace pivasym
