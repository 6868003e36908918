#include "pivasym/monodromy.hpp"

#include <algorithm>
#include <cmath>

#include "pivasym/boutroux.hpp"

namespace pivasym {

// ------------------------------------------------------------ manifold

cplx MonodromyData::s_ext(int k) const {
  const cplx c = 2.0 * kPi * kI * (alpha - beta);
  auto sgn = [](int j) { return (j % 2 == 0) ? 1.0 : -1.0; };
  // walk k into 1..4
  cplx factor = 1.0;
  while (k > 4) {
    k -= 4;
    factor *= -std::exp(sgn(k) * c);
  }
  while (k < 1) {
    factor *= -std::exp(-sgn(k) * c);
    k += 4;
  }
  return factor * s[k - 1];
}

SVec MonodromyData::products() const {
  return {s[0] * s[1], s[1] * s[2], s[2] * s[3], s[3] * s[0]};
}

cplx m0_residual(const MonodromyData& md) {
  const auto& s = md.s;
  cplx d = md.alpha - md.beta;
  return ((1.0 + s[0] * s[1]) * (1.0 + s[2] * s[3]) + s[0] * s[3]) *
             std::exp(-kI * kPi * d) -
         (1.0 + s[1] * s[2]) * std::exp(kI * kPi * d) +
         2.0 * kI * std::sin(kPi * md.alpha);
}

std::array<cplx, 2> mstar_residuals(cplx alpha, cplx beta, const SVec& p) {
  cplx d = alpha - beta;
  cplx f = ((1.0 + p[0]) * (1.0 + p[2]) + p[3]) * std::exp(-kI * kPi * d) -
           (1.0 + p[1]) * std::exp(kI * kPi * d) + 2.0 * kI * std::sin(kPi * alpha);
  return {f, p[0] * p[2] - p[1] * p[3]};
}

std::array<cplx, 2> mstar_residuals(const MonodromyData& md) {
  return mstar_residuals(md.alpha, md.beta, md.products());
}

cplx solve_s4(cplx alpha, cplx beta, cplx s1, cplx s2, cplx s3) {
  cplx coef = (1.0 + s1 * s2) * s3 + s1;
  double scale = 1.0 + std::abs(s1) + std::abs(s1 * s2 * s3);
  if (std::abs(coef) < 1e-14 * scale)
    throw UnderdeterminedError("solve_s4: coefficient (1+s1s2)s3+s1 vanishes");
  cplx d = alpha - beta;
  cplx rhs = (1.0 + s2 * s3) * std::exp(2.0 * kI * kPi * d) -
             2.0 * kI * std::sin(kPi * alpha) * std::exp(kI * kPi * d) -
             (1.0 + s1 * s2);
  return rhs / coef;
}

MonodromyData complete_monodromy(cplx alpha, cplx beta, cplx s1, cplx s2, cplx s3) {
  return {alpha, beta, {s1, s2, s3, solve_s4(alpha, beta, s1, s2, s3)}};
}

SVec gauge_action(cplx c, const SVec& s) {
  if (c == 0.0) throw DomainError("gauge_action: c = 0");
  cplx c2 = c * c;
  return {c2 * s[0], s[1] / c2, c2 * s[2], s[3] / c2};
}

SVec s_from_products(const SVec& p) {
  if (p[0] == 0.0) throw DomainError("s_from_products: s12 = 0");
  return {1.0, p[0], p[1] / p[0], p[3]};
}

std::optional<SVec> singular_point(cplx alpha, cplx beta, double tol) {
  cplx h = alpha - 0.5;
  if (std::abs(h.imag()) > tol || std::abs(h.real() - std::round(h.real())) > tol)
    return std::nullopt;
  cplx em = std::exp(-kI * kPi * beta), ep = std::exp(kI * kPi * beta);
  return SVec{em - 1.0, ep - 1.0, em - 1.0, em - em * em};
}

bool is_singular(cplx alpha, cplx beta, const SVec& p, double tol) {
  auto r = mstar_residuals(alpha, beta, p);
  if (std::abs(r[0]) > tol || std::abs(r[1]) > tol) return false;
  cplx x = 1.0 + p[0], y = 1.0 + p[1], z = 1.0 + p[2], u = 1.0 + p[3];
  cplx em = std::exp(-kI * kPi * (alpha - beta));
  cplx epl = std::exp(kI * kPi * (alpha - beta));
  // gradients in (x, y, z, u); f scaled so that the first surface equation
  // reads em (xz + u - 1) - epl y + 2i sin(pi alpha)
  std::array<cplx, 4> gf{em * z, -epl, em * x, em};
  std::array<cplx, 4> gg{z - 1.0, -(u - 1.0), x - 1.0, -(y - 1.0)};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(gf[i] * gg[j] - gf[j] * gg[i]) > tol) return false;
  return true;
}

// ------------------------------------------------------------ phase shift

cplx lattice_reduce(cplx chi, const Periods& p) {
  if (!(p.tau.imag() > 0.0)) throw DomainError("lattice_reduce: Im tau <= 0");
  cplx a = p.omega_a, b = p.omega_b;
  double det = a.real() * b.imag() - b.real() * a.imag();
  double x = (b.imag() * chi.real() - b.real() * chi.imag()) / det;
  double y = (-a.imag() * chi.real() + a.real() * chi.imag()) / det;
  double fx = std::floor(x), fy = std::floor(y);
  cplx r = chi - fx * a - fy * b;
  // guard against x - floor(x) rounding to 1
  double rx = x - fx, ry = y - fy;
  if (rx >= 1.0) r -= a;
  if (ry >= 1.0) r -= b;
  return r;
}

cplx gamma_quadrature(cplx alpha, cplx beta, const Periods& p, cplx C_a, cplx C_b) {
  return (alpha - beta) / (2.0 * kPi * kI) * (p.omega_a * C_b - p.omega_b * C_a);
}

AsymptoticSolution phase_shift(const MonodromyData& md, double phi, int n,
                               const EllipticP& ep, const Tolerances& tol) {
  double loc = phi - n * kPi / 2;
  if (!(std::abs(loc) < kPi / 4) || loc == 0.0)
    throw DomainError("phase_shift: phi - n pi/2 must lie in (-pi/4, 0) or (0, pi/4)");
  cplx p12 = md.s_ext(1 + n) * md.s_ext(2 + n);
  cplx p23 = md.s_ext(2 + n) * md.s_ext(3 + n);
  cplx gen = (1.0 + p12) * (1.0 + p23) - 1.0;
  if (gen == 0.0)
    throw NonGenericError("phase_shift: (1+s1s2)(1+s2s3) - 1 = 0");
  cplx eta = loc < 0.0 ? 1.0 + p12 : 1.0 / (1.0 + p23);
  if (eta == 0.0 || !std::isfinite(std::abs(eta)))
    throw NonGenericError(loc < 0.0 ? "phase_shift: 1 + s1s2 = 0"
                                    : "phase_shift: 1 + s2s3 = 0");
  AsymptoticSolution as;
  as.phi = phi;
  as.n = n;
  as.monodromy = md;
  as.A_phi = ep.A;
  as.ep = ep;
  as.log_gen = std::log(gen);
  as.branch_l = loc < 0.0 ? std::log(1.0 + p12) : -std::log(1.0 + p23);
  CurveSpec spec = make_curve(phi, ep.A, Frame::z);
  as.C_a = cycle_integral(spec, CycleKind::a, Integrand::z_over_w, 0.0, tol);
  as.C_b = cycle_integral(spec, CycleKind::b, Integrand::z_over_w, 0.0, tol);
  const Periods& p = ep.periods;
  as.Gamma_ab = 2.0 / 3.0 * (md.alpha - md.beta) * p.omega_b;
  as.chi_raw = (p.omega_a * as.log_gen - p.omega_b * as.branch_l) / (2.0 * kPi * kI) +
               0.5 * as.Gamma_ab;
  as.chi = lattice_reduce(as.chi_raw, p);
  return as;
}

AsymptoticSolution asymptotic_solution(const MonodromyData& md, double phi, int n,
                                       const Tolerances& tol) {
  auto tr = trajectory({phi});
  if (tr[0].analytic)
    throw DegeneracyError("asymptotic_solution: phi is a degenerate direction");
  return phase_shift(md, phi, n, make_elliptic_P(phi, tr[0].A, tol), tol);
}

// -------------------------------------------------------------- ansatz

std::pair<cplx, cplx> z_pm(cplx psi, cplx psi_t, double phi) {
  if (psi == 0.0) throw DomainError("z_pm: psi = 0");
  cplx e = expi(phi);
  cplx q = 0.5 * psi_t / (e * psi);
  cplx base = -0.5 * psi - e;
  return {-q + base, q + base};
}

cplx a_phi_of_t(cplx psi, cplx psi_t, cplx t, double phi, cplx alpha, cplx beta) {
  if (psi == 0.0) throw DomainError("a_phi_of_t: psi = 0");
  if (t == 0.0) throw DomainError("a_phi_of_t: t = 0");
  cplx e = expi(phi), em2 = expi(-2.0 * phi);
  cplx s = psi + 2.0 * e;
  cplx v = em2 * psi_t * psi_t / psi - s * s * psi +
           (em2 * psi_t + (4.0 * alpha - beta) * psi + 2.0 * (2.0 * alpha - beta) * e) / t +
           0.25 * (em2 * psi - beta * beta / psi) / (t * t);
  return v / (4.0 * e * e * e);
}

cplx correction_B(cplx t, const AsymptoticSolution& as) {
  cplx e = expi(as.phi);
  cplx u = e * t + as.chi_raw;
  auto [d, pole] = nearest_pole(u, as.ep);
  if (d < as.ep.pole_radius)
    throw PoleError("correction_B: e^{i phi} t + chi near a pole", pole);
  const Periods& p = as.ep.periods;
  cplx x = u / p.omega_a, t3 = p.tau / 3.0, nu = as.ep.ctx.nu;
  cplx L = theta_logderiv(x + t3 + nu, as.ep.ctx) + theta_logderiv(x - t3 + nu, as.ep.ctx);
  cplx ab = as.monodromy.alpha - as.monodromy.beta;
  return std::conj(e * e * e) / (2.0 * p.omega_a) *
         (L - t * p.J_a + 2.0 * kPi * kI - ab * as.C_a - 2.0 * as.branch_l);
}

AnsatzSample ansatz_sample(cplx t, const AsymptoticSolution& as) {
  cplx e = expi(as.phi);
  cplx u = e * t + as.chi_raw;
  AnsatzSample s;
  s.t = t;
  s.psi = P_eval(u, as.ep);
  s.psi_t = e * P_deriv(u, as.ep);
  s.B = correction_B(t, as);
  cplx al = as.monodromy.alpha, be = as.monodromy.beta;
  cplx e3 = e * e * e;
  cplx psi = s.psi;
  cplx Delta = psi * (4.0 * e3 * s.B - (4.0 * al - be) * psi - 2.0 * (2.0 * al - be) * e) +
               be * be / (4.0 * t);
  cplx S = std::sqrt(psi * ((psi + 2.0 * e) * (psi + 2.0 * e) * psi + 4.0 * e3 * as.A_phi) +
                     Delta / t);
  cplx base = -0.5 * std::conj(e) * psi / t;
  cplx c1 = e * (base + S), c2 = e * (base - S);
  s.psi_star = std::abs(c1 - s.psi_t) <= std::abs(c2 - s.psi_t) ? c1 : c2;
  return s;
}

// ---------------------------------------------------- direct monodromy

namespace {

// w at z on the sheet whose value is nearest to `approx`.
cplx w_near(const CurveSpec& spec, cplx z, cplx approx) {
  cplx w = w_eval(spec, z, 1);
  return std::abs(w - approx) <= std::abs(w + approx) ? w : -w;
}

CurveFn W_fn(cplx zp, cplx wp, cplx zm, cplx wm) {
  return [=](cplx z, cplx w) {
    return (zp - zm + wp / (z - zp) - wm / (z - zm)) / w;
  };
}

// F(z0^-, z0^+) for the point (z0, w0).
cplx F_pair(const CurveSpec& spec, cplx z0, cplx w0, cplx omega_a, const Tolerances& tol) {
  cplx I = integral_from_zero(spec, z0, tol);
  cplx sgn = std::abs(w0 - w_eval(spec, z0, 1)) <= std::abs(w0 + w_eval(spec, z0, 1)) ? 1.0 : -1.0;
  return 2.0 * sgn * I / omega_a;
}

}  // namespace

DirectMonodromy direct_monodromy_leading(cplx psi, cplx psi_t, cplx t, double phi,
                                         cplx alpha, cplx beta, const Tolerances& tol) {
  if (phi == 0.0 || std::abs(phi) >= kPi / 4)
    throw DomainError("direct_monodromy_leading: need 0 < |phi| < pi/4");
  DirectMonodromy dm;
  dm.a_phi = a_phi_of_t(psi, psi_t, t, phi, alpha, beta);
  CurveSpec spec = make_curve(phi, dm.a_phi, Frame::z);
  cplx e = expi(phi);
  auto [zp, zm] = z_pm(psi, psi_t, phi);
  cplx wp = w_near(spec, zp, zp * (zp + 2.0 * e + 2.0 * psi));
  cplx wm = w_near(spec, zm, zm * (zm + 2.0 * e + 2.0 * psi));
  CurveFn W = W_fn(zp, wp, zm, wm);
  auto I = [&](CycleKind k, Integrand f) { return cycle_integral(spec, k, f, 0.0, tol); };
  cplx Ja = I(CycleKind::a, Integrand::w_over_z), Jb = I(CycleKind::b, Integrand::w_over_z);
  dm.omega_a = I(CycleKind::a, Integrand::inv_w);
  dm.omega_b = I(CycleKind::b, Integrand::inv_w);
  cplx Ca = 0.5 * (alpha - beta) * I(CycleKind::a, Integrand::z_over_w);
  cplx Cb = 0.5 * (alpha - beta) * I(CycleKind::b, Integrand::z_over_w);
  dm.W_a = cycle_integral_fn(spec, CycleKind::a, W, tol);
  dm.W_b = cycle_integral_fn(spec, CycleKind::b, W, tol);
  if (phi < 0.0)
    dm.l_a = -0.5 * t * Ja + 0.25 * dm.W_a - Ca + kPi * kI;
  else
    dm.l_a = 0.5 * t * Ja - 0.25 * dm.W_a + Ca + kPi * kI;
  dm.l_b = -0.5 * t * Jb + 0.25 * dm.W_b - Cb;
  cplx e3 = e * e * e, e4 = e3 * e;
  cplx a = dm.a_phi;
  dm.j_split_residual = {
      0.5 * Ja - (e4 * a * I(CycleKind::a, Integrand::inv_zw) + 1.5 * e3 * a * dm.omega_a),
      0.5 * Jb - (e4 * a * I(CycleKind::b, Integrand::inv_zw) + 1.5 * e3 * a * dm.omega_b)};
  return dm;
}

WIdentity W_identity(const CurveSpec& spec, cplx zp, cplx wp, cplx zm, cplx wm,
                     const Tolerances& tol) {
  WIdentity out;
  out.cycle = cycle_integral_fn(spec, CycleKind::a, W_fn(zp, wp, zm, wm), tol);
  Periods p = periods(spec, tol);
  ThetaContext ctx(p.tau);
  cplx Fp = F_pair(spec, zp, wp, p.omega_a, tol);
  cplx Fm = F_pair(spec, zm, wm, p.omega_a, tol);
  auto dw = [&](cplx z, cplx w) { return quartic_deriv(spec, z) / (2.0 * w); };
  out.third_kind = (zp - 0.5 * dw(zp, wp)) * p.omega_a + theta_logderiv(Fp + ctx.nu, ctx) -
                   (zm - 0.5 * dw(zm, wm)) * p.omega_a - theta_logderiv(Fm + ctx.nu, ctx);
  cplx sh = 0.5 + p.tau / 6.0;
  out.theta = 2.0 * (theta_logderiv(0.5 * Fp + sh, ctx) - theta_logderiv(0.5 * Fm + sh, ctx));
  return out;
}

// ---------------------------------------------------------------- trig

TrigApprox trig_approx(cplx t, const MonodromyData& md, double phi) {
  TrigApprox r;
  SVec p = md.products();
  cplx X = (1.0 + p[0]) * (1.0 + p[1]);
  if (X == 1.0) throw NonGenericError("trig_approx: (1+s1s2)(1+s2s3) - 1 = 0");
  const double s3 = std::sqrt(3.0);
  cplx lt = std::log(t);
  cplx shift = -2.0 / 3.0 * kPi * (md.alpha - md.beta);
  r.log_coeff_sine = std::log(X - 1.0) / (2.0 * kPi);
  r.log_coeff_cosine = std::log(1.0 - X) / (2.0 * kPi);
  r.phase_sine = 2.0 * t / s3 + r.log_coeff_sine * lt + shift;
  r.phase_cosine = 2.0 * t / s3 + r.log_coeff_cosine * lt + shift;
  r.y_sine = std::sqrt(2.0 * t) * (1.0 / (0.5 + std::cos(r.phase_sine)) - 2.0 / 3.0);
  r.y_cosine = 4.0 * std::cos(r.phase_cosine) / std::sqrt(t) - 2.0 / 3.0;
  r.valid = std::abs(t) >= 10.0 && std::abs(phi) * std::abs(t) <= 1.0;
  return r;
}

}  // namespace pivasym
