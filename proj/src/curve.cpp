#include "pivasym/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pivasym/quadrature.hpp"
#include "pivasym/theta.hpp"

namespace pivasym {

namespace {

constexpr double kTieTol = 1e-10;

// sqrt(z-p) sqrt(z-q) with the cut on the straight segment [p,q] and
// value ~ z at infinity. zp, zq are z-p and z-q, passed in so that callers
// can supply them without cancellation.
cplx sqrtcut(cplx z, cplx p, cplx q, cplx zp, cplx zq) {
  cplx d = z - 0.5 * (p + q);
  return d * std::sqrt(zp * zq / (d * d));
}

// Upper-sheet branch in the zeta frame: cuts [z5,z3] and [z1,0].
cplx v_plus(const std::array<cplx, 3>& r, cplx z) {
  const cplx &z1 = r[0], &z3 = r[1], &z5 = r[2];
  return sqrtcut(z, z5, z3, z - z5, z - z3) * sqrtcut(z, z1, 0.0, z - z1, z);
}

// sqrt(x) with the cut along the ray {t u : t >= 0}, u a unit vector.
cplx sqrt_ray(cplx x, cplx u) { return std::sqrt(-u) * std::sqrt(x / (-u)); }

bool lex_less(cplx a, cplx b) {
  if (std::abs(a.real() - b.real()) < kTieTol) return a.imag() < b.imag();
  return a.real() < b.real();
}

struct SegPoint {
  cplx z, w, dz;
};

// Points on the collapsed a-segment [z5,z3] (left boundary value) or the
// b-segment [z3,z1] (upper sheet), parametrised by theta in (0, pi).
SegPoint seg_point(const std::array<cplx, 3>& r, CycleKind kind, double th) {
  const cplx &z1 = r[0], &z3 = r[1], &z5 = r[2];
  double c = std::cos(th), s = std::sin(th);
  double sh2 = std::sin(0.5 * th), ch2 = std::cos(0.5 * th);
  if (kind == CycleKind::a) {
    cplx m = 0.5 * (z5 + z3), rr = 0.5 * (z3 - z5);
    cplx z = m - rr * c;
    cplx zm3 = -2.0 * rr * ch2 * ch2;
    cplx g = sqrtcut(z, z1, 0.0, zm3 + (z3 - z1), z);
    return {z, kI * rr * s * g, rr * s};
  }
  cplx m = 0.5 * (z3 + z1), rr = 0.5 * (z1 - z3);
  cplx z = m - rr * c;
  cplx zm3 = 2.0 * rr * sh2 * sh2;
  cplx zm1 = -2.0 * rr * ch2 * ch2;
  cplx w = sqrtcut(z, z5, z3, zm3 + (z3 - z5), zm3) * sqrtcut(z, z1, 0.0, zm1, z);
  return {z, w, rr * s};
}

cplx named(Integrand f, cplx z, cplx w, cplx z0) {
  switch (f) {
    case Integrand::w_over_z: return w / z;
    case Integrand::inv_w: return 1.0 / w;
    case Integrand::z_over_w: return z / w;
    case Integrand::inv_zw: return 1.0 / (z * w);
    case Integrand::third_kind: return 1.0 / ((z - z0) * w);
    case Integrand::z_over_w3: break;
  }
  throw DomainError("named integrand not pointwise-evaluable");
}

const char* kind_name(CycleKind k) {
  return k == CycleKind::a ? "cycle a" : (k == CycleKind::b ? "cycle b" : "segment");
}

// Raw (unoriented) segment integral in the frame of spec, times 2.
cplx raw_cycle(const CurveSpec& spec, CycleKind kind, const CurveFn& g,
               double tol) {
  auto r = spec.zeta_roots();
  if (kind == CycleKind::b && std::abs(r[0] - r[1]) < 1e-15) return 0.0;
  cplx rot = spec.rotation();
  auto f = [&](double th) -> cplx {
    SegPoint p = seg_point(r, kind, th);
    return g(rot * p.z, rot * rot * p.w) * rot * p.dz;
  };
  return 2.0 * integrate_checked(f, 0.0, kPi, tol, kind_name(kind));
}

int b_orientation(const CurveSpec& spec, double tol) {
  if (spec.b_sign != 0) return spec.b_sign;
  CurveFn inv = [](cplx, cplx w) { return 1.0 / w; };
  cplx oa = raw_cycle(spec, CycleKind::a, inv, tol);
  cplx ob = raw_cycle(spec, CycleKind::b, inv, tol);
  return (ob / oa).imag() >= 0.0 ? 1 : -1;
}

}  // namespace

cplx CurveSpec::rotation() const {
  return frame == Frame::z ? expi(phi) : cplx(1.0, 0.0);
}

std::array<cplx, 3> CurveSpec::zeta_roots() const {
  cplx rinv = 1.0 / rotation();
  return {z1 * rinv, z3 * rinv, z5 * rinv};
}

std::array<cplx, 3> cubic_roots(double phi, cplx A) {
  // zeta^3 + 4 zeta^2 + 4 zeta + 4A = 0 via zeta = (4/3)(cos(theta) - 1).
  cplx c0 = 1.0 - 27.0 * A / 4.0;
  cplx ac = std::acos(c0);
  std::array<cplx, 3> z{};
  const double shifts[3] = {0.0, -2.0 * kPi, 2.0 * kPi};
  for (int k = 0; k < 3; ++k) {
    cplx r = 4.0 / 3.0 * (std::cos((ac + shifts[k]) / 3.0) - 1.0);
    for (int it = 0; it < 4; ++it) {
      cplx f = ((r + 4.0) * r + 4.0) * r + 4.0 * A;
      cplx d = (3.0 * r + 8.0) * r + 4.0;
      if (std::abs(d) < 1e-10) break;
      cplx step = f / d;
      r -= step;
      if (std::abs(step) < 1e-17) break;
    }
    z[k] = r;
  }
  // Ascending lexicographic order gives (z5, z3, z1).
  std::sort(z.begin(), z.end(), lex_less);
  cplx e = expi(phi);
  return {e * z[2], e * z[1], e * z[0]};
}

std::array<cplx, 3> track_roots(const std::array<cplx, 3>& prev,
                                const std::array<cplx, 3>& fresh) {
  std::array<int, 3> perm{0, 1, 2}, best{0, 1, 2};
  double best_cost = 1e300;
  do {
    double c = 0.0;
    for (int k = 0; k < 3; ++k) c += std::abs(prev[k] - fresh[perm[k]]);
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {fresh[best[0]], fresh[best[1]], fresh[best[2]]};
}

CurveSpec make_curve(double phi, cplx A, Frame frame) {
  CurveSpec s;
  s.phi = phi;
  s.A = A;
  s.frame = frame;
  auto r = cubic_roots(frame == Frame::z ? phi : 0.0, A);
  s.z1 = r[0];
  s.z3 = r[1];
  s.z5 = r[2];
  return s;
}

CurveSpec make_curve_tracked(double phi, cplx A, const CurveSpec& prev) {
  CurveSpec s = make_curve(phi, A, prev.frame);
  auto r = track_roots(prev.roots(), s.roots());
  s.z1 = r[0];
  s.z3 = r[1];
  s.z5 = r[2];
  s.b_sign = prev.b_sign;
  return s;
}

bool is_degenerate(cplx A, double tol) {
  return std::abs(A) < tol || std::abs(A - kA0) < tol;
}

cplx quartic(const CurveSpec& spec, cplx z) {
  cplx e = spec.rotation();
  return z * (((z + 4.0 * e) * z + 4.0 * e * e) * z + 4.0 * e * e * e * spec.A);
}

cplx quartic_deriv(const CurveSpec& spec, cplx z) {
  cplx e = spec.rotation();
  return ((4.0 * z + 12.0 * e) * z + 8.0 * e * e) * z + 4.0 * e * e * e * spec.A;
}

cplx w_eval(const CurveSpec& spec, cplx z, int sheet) {
  double scale = 1.0 + std::abs(z);
  for (cplx b : {cplx(0.0), spec.z1, spec.z3, spec.z5})
    if (std::abs(z - b) < 1e-14 * scale)
      throw SingularityError("w_eval: z is a branch point");
  cplx rot = spec.rotation();
  cplx v = v_plus(spec.zeta_roots(), z / rot);
  return double(sheet >= 0 ? 1 : -1) * rot * rot * v;
}

// ---------------------------------------------------------------- cycles

namespace {

// Intersection parameter of segments [p0,p1] and [q0,q1]; returns the
// fraction along p, or -1 if they do not cross.
double seg_cross(cplx p0, cplx p1, cplx q0, cplx q1) {
  cplx d = p1 - p0, e = q1 - q0;
  double den = d.real() * e.imag() - d.imag() * e.real();
  if (std::abs(den) < 1e-300) return -1.0;
  cplx f = q0 - p0;
  double s = (f.real() * e.imag() - f.imag() * e.real()) / den;
  double u = (f.real() * d.imag() - f.imag() * d.real()) / den;
  if (s >= 0.0 && s < 1.0 && u >= 0.0 && u <= 1.0) return s;
  return -1.0;
}

bool inside_ellipse(cplx p, cplx m, cplx r, double ea, double eb) {
  cplx q = (p - m) / r;
  double x = q.real() / ea, y = q.imag() / eb;
  return x * x + y * y <= 1.0;
}

double ellipse_distance(cplx p, cplx m, cplx r, double ea, double eb) {
  double d = 1e300;
  for (int k = 0; k < 720; ++k) {
    double th = 2.0 * kPi * k / 720.0;
    cplx z = m + r * cplx(ea * std::cos(th), eb * std::sin(th));
    d = std::min(d, std::abs(z - p));
  }
  return d;
}

// Ellipse around the segment [p,q] avoiding the `others`.
std::vector<cplx> loop_around(cplx p, cplx q, const std::vector<cplx>& others,
                              double clearance, int n, bool reverse) {
  cplx m = 0.5 * (p + q), r = 0.5 * (q - p);
  double eps = 0.3;
  for (int tries = 0; tries < 60; ++tries, eps *= 0.8) {
    bool ok = eps * std::abs(r) >= clearance;
    for (cplx o : others) {
      if (inside_ellipse(o, m, r, 1.0 + eps, eps) ||
          ellipse_distance(o, m, r, 1.0 + eps, eps) < clearance)
        ok = false;
    }
    if (ok) break;
    if (tries == 59) throw DegeneracyError("build_cycles: no clearance for loop");
  }
  std::vector<cplx> nodes;
  for (int k = 0; k <= n; ++k) {
    double th = 0.5 * kPi + (reverse ? -1.0 : 1.0) * 2.0 * kPi * k / n;
    if (k == n) th = 0.5 * kPi + (reverse ? -2.0 : 2.0) * kPi;
    nodes.push_back(m + r * cplx((1.0 + eps) * std::cos(th), eps * std::sin(th)));
  }
  nodes.back() = nodes.front();
  return nodes;
}

}  // namespace

std::pair<CyclePath, CyclePath> build_cycles(const CurveSpec& spec_in,
                                             double clearance, int n) {
  if (is_degenerate(spec_in.A))
    throw DegeneracyError("build_cycles: degenerate curve (A near 0 or 8/27)");
  CurveSpec spec = spec_in;
  Tolerances tol;
  spec.b_sign = b_orientation(spec, tol.quad);
  CyclePath a, b;
  a.kind = CycleKind::a;
  b.kind = CycleKind::b;
  // The orientation with J_a(8/27) = +4i/sqrt(3) is the clockwise loop on
  // the upper sheet, i.e. the counterclockwise loop on the lower sheet.
  a.nodes = loop_around(spec.z5, spec.z3, {spec.z1, 0.0}, clearance, n, false);
  a.sheet.assign(a.nodes.size(), -1);
  b.nodes = loop_around(spec.z3, spec.z1, {spec.z5, 0.0}, clearance, n,
                        spec.b_sign > 0);
  b.sheet.assign(b.nodes.size(), 1);
  int sh = 1;
  for (size_t k = 1; k < b.nodes.size(); ++k) {
    cplx p = b.nodes[k - 1], q = b.nodes[k];
    if (seg_cross(p, q, spec.z5, spec.z3) >= 0.0) sh = -sh;
    if (seg_cross(p, q, spec.z1, 0.0) >= 0.0) sh = -sh;
    b.sheet[k] = sh;
  }
  return {a, b};
}

double winding_number(const CyclePath& path, cplx p) {
  double total = 0.0;
  for (size_t k = 1; k < path.nodes.size(); ++k)
    total += std::arg((path.nodes[k] - p) / (path.nodes[k - 1] - p));
  return total / (2.0 * kPi);
}

int count_crossings(const CyclePath& path, cplx p, cplx q) {
  int c = 0;
  for (size_t k = 1; k < path.nodes.size(); ++k)
    if (seg_cross(path.nodes[k - 1], path.nodes[k], p, q) >= 0.0) ++c;
  return c;
}

// ------------------------------------------------------------- integrals

cplx cycle_integral_fn(const CurveSpec& spec, CycleKind kind, const CurveFn& g,
                       const Tolerances& tol) {
  if (kind == CycleKind::segment)
    throw DomainError("cycle_integral: kind must be a or b");
  cplx v = raw_cycle(spec, kind, g, tol.quad);
  // Orientation of b is undefined (and irrelevant) once the b-segment
  // has collapsed.
  if (kind == CycleKind::b && v != 0.0)
    v *= double(b_orientation(spec, tol.quad));
  return v;
}

cplx cycle_integral(const CurveSpec& spec, CycleKind kind, Integrand f, cplx z0,
                    const Tolerances& tol) {
  if (f != Integrand::z_over_w3)
    return cycle_integral_fn(
        spec, kind, [f, z0](cplx z, cplx w) { return named(f, z, w, z0); }, tol);
  // int z/w^3 dz = -(e^{-3i phi}/2) dOmega/dA; central differences with one
  // Richardson step.
  CurveSpec base = spec;
  base.b_sign = b_orientation(spec, tol.quad);
  auto omega = [&](cplx A) {
    CurveSpec s = make_curve_tracked(spec.phi, A, base);
    return cycle_integral(s, kind, Integrand::inv_w, 0.0, tol);
  };
  double h = 1e-3 * std::max(1e-2, std::min(std::abs(spec.A),
                                            std::abs(spec.A - kA0)));
  cplx d1 = (omega(spec.A + h) - omega(spec.A - h)) / (2.0 * h);
  cplx d2 = (omega(spec.A + 0.5 * h) - omega(spec.A - 0.5 * h)) / h;
  cplx dO = (4.0 * d2 - d1) / 3.0;
  cplx e = spec.rotation();
  return -0.5 * dO / (e * e * e);
}

cplx cycle_integral(const CurveSpec& spec, const CyclePath& path, Integrand f,
                    cplx z0, const Tolerances& tol) {
  return cycle_integral(spec, path.kind, f, z0, tol);
}

cplx path_integral(const CurveSpec& spec, const CyclePath& path, Integrand f,
                   cplx z0, const Tolerances& tol) {
  if (f == Integrand::z_over_w3)
    throw DomainError("path_integral: z/w^3 is evaluated by differentiation");
  cplx total = 0.0;
  auto piece = [&](cplx p, cplx q, int sheet) {
    auto g = [&](double s) {
      cplx z = p + s * (q - p);
      return named(f, z, w_eval(spec, z, sheet), z0) * (q - p);
    };
    total += integrate_checked(g, 0.0, 1.0, tol.quad, "path edge");
  };
  for (size_t k = 1; k < path.nodes.size(); ++k) {
    cplx p = path.nodes[k - 1], q = path.nodes[k];
    int s0 = path.sheet[k - 1], s1 = path.sheet[k];
    if (s0 == s1) {
      piece(p, q, s0);
      continue;
    }
    double lam = seg_cross(p, q, spec.z5, spec.z3);
    if (lam < 0.0) lam = seg_cross(p, q, spec.z1, 0.0);
    if (lam < 0.0) lam = 0.5;
    cplx c = p + lam * (q - p);
    piece(p, c, s0);
    piece(c, q, s1);
  }
  return total;
}

cplx integral_from_zero(const CurveSpec& spec, cplx z0, const Tolerances& tol) {
  if (std::abs(z0) < 1e-14) return 0.0;
  std::array<cplx, 3> br = spec.roots();
  std::array<cplx, 3> dir{};
  for (int j = 0; j < 3; ++j) {
    // Closest point of [0, z0] to the branch point; cut points away from it.
    double t = std::clamp((br[j] * std::conj(z0)).real() / std::norm(z0), 0.0, 1.0);
    cplx c = t * z0;
    double d = std::abs(br[j] - c);
    if (d < 1e-13 * (1.0 + std::abs(z0)))
      throw SingularityError("integral_from_zero: path hits a branch point");
    dir[j] = (br[j] - c) / d;
  }
  auto R = [&](double s) {
    cplx z = z0 * s * s;
    cplx v = 1.0;
    for (int j = 0; j < 3; ++j) v *= sqrt_ray(z - br[j], dir[j]);
    return v;
  };
  cplx sq = std::sqrt(z0);
  cplx wend = sq * R(1.0);
  double sigma = std::abs(wend - w_eval(spec, z0, 1)) <
                         std::abs(wend + w_eval(spec, z0, 1))
                     ? 1.0
                     : -1.0;
  auto f = [&](double s) { return 2.0 * sq / (sigma * R(s)); };
  return integrate_checked(f, 0.0, 1.0, tol.quad, "integral_from_zero");
}

// --------------------------------------------------------------- periods

cplx Periods::legendre_residual() const {
  cplx e = frame == Frame::z ? expi(phi) : cplx(1.0);
  return omega_b * J_a - omega_a * J_b + 4.0 * kPi * kI * e;
}

Periods periods(const CurveSpec& spec_in, const Tolerances& tol,
                bool with_extras) {
  if (is_degenerate(spec_in.A))
    throw DegeneracyError("periods: degenerate curve (A near 0 or 8/27)");
  CurveSpec spec = spec_in;
  spec.b_sign = b_orientation(spec, tol.quad);
  Periods p;
  p.frame = spec.frame;
  p.phi = spec.phi;
  p.omega_a = cycle_integral(spec, CycleKind::a, Integrand::inv_w, 0.0, tol);
  p.omega_b = cycle_integral(spec, CycleKind::b, Integrand::inv_w, 0.0, tol);
  p.J_a = cycle_integral(spec, CycleKind::a, Integrand::w_over_z, 0.0, tol);
  p.J_b = cycle_integral(spec, CycleKind::b, Integrand::w_over_z, 0.0, tol);
  p.tau = p.omega_b / p.omega_a;
  if (with_extras) {
    for (auto [k, nm] : {std::pair{CycleKind::a, "a"}, std::pair{CycleKind::b, "b"}}) {
      p.extras[std::string("z/w:") + nm] =
          cycle_integral(spec, k, Integrand::z_over_w, 0.0, tol);
      p.extras[std::string("1/(zw):") + nm] =
          cycle_integral(spec, k, Integrand::inv_zw, 0.0, tol);
      p.extras[std::string("z/w3:") + nm] =
          cycle_integral(spec, k, Integrand::z_over_w3, 0.0, tol);
    }
  }
  return p;
}

Periods to_frame(const Periods& p, Frame target, double phi) {
  if (p.frame == target) return p;
  // factor for the z frame relative to the zeta frame, per integrand weight
  cplx e = expi(phi);
  double sgn = target == Frame::z ? 1.0 : -1.0;
  auto f = [&](int k) { return std::pow(e, sgn * k); };
  Periods q = p;
  q.frame = target;
  q.phi = phi;
  q.omega_a = p.omega_a * f(-1);
  q.omega_b = p.omega_b * f(-1);
  q.J_a = p.J_a * f(2);
  q.J_b = p.J_b * f(2);
  for (auto& [k, v] : q.extras) {
    if (k.rfind("z/w3", 0) == 0) v *= f(-4);
    else if (k.rfind("z/w", 0) == 0) v *= 1.0;
    else if (k.rfind("1/(zw)", 0) == 0) v *= f(-2);
  }
  return q;
}

std::vector<IdentityReport> third_kind_identities(const CurveSpec& spec_in,
                                                  cplx z0,
                                                  const Tolerances& tol) {
  if (std::abs(z0) < 1e-12)
    throw DomainError("third_kind_identities: z0 must not be 0");
  CurveSpec spec = spec_in;
  Periods p = periods(spec, tol);
  spec.b_sign = b_orientation(spec, tol.quad);
  ThetaContext ctx(p.tau);
  cplx w0 = w_eval(spec, z0, 1);
  cplx q0 = quartic(spec, z0);
  cplx dq = quartic_deriv(spec, z0);
  cplx F = 2.0 * integral_from_zero(spec, z0, tol) / p.omega_a;
  cplx g0 = dq / (4.0 * q0) -
            (kPi * kI + theta_logderiv(F + ctx.nu, ctx)) / (p.omega_a * w0);
  cplx Ia = cycle_integral(spec, CycleKind::a, Integrand::third_kind, z0, tol);
  cplx Ib = cycle_integral(spec, CycleKind::b, Integrand::third_kind, z0, tol);
  cplx Za = cycle_integral(spec, CycleKind::a, Integrand::inv_zw, 0.0, tol);
  cplx Zb = cycle_integral(spec, CycleKind::b, Integrand::inv_zw, 0.0, tol);
  cplx e = spec.rotation();
  std::vector<IdentityReport> out;
  auto add = [&](const char* n, cplx l, cplx r) {
    out.push_back({n, l, r, std::abs(l - r)});
  };
  add("third-kind a-period", Ia, -g0 * p.omega_a);
  // The straight path 0 -> z0 may wind differently from the cycles; F is only
  // fixed modulo 2 and 2 tau.
  {
    cplx k = (Ib - p.tau * Ia) * w0 / (2.0 * kPi * kI) - F;
    double n = std::round(k.imag() / (2.0 * p.tau.imag()));
    double m = std::round((k.real() - 2.0 * n * p.tau.real()) / 2.0);
    F += 2.0 * m + 2.0 * n * p.tau;
  }
  add("third-kind b - tau a", Ib - p.tau * Ia, 2.0 * kPi * kI / w0 * F);
  add("1/(zw) b - tau a", Zb - p.tau * Za,
      2.0 * kPi * kI / (spec.A * p.omega_a * e * e * e));
  return out;
}

}  // namespace pivasym
