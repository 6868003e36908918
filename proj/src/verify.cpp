#include "pivasym/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_complex.hpp>

namespace pivasym {

cplx p4_rhs(cplx x, cplx y, cplx yp, cplx alpha, cplx beta) {
  if (y == 0.0) throw SingularityError("p4_rhs: y = 0");
  return (yp * yp - beta * beta) / (2.0 * y) +
         y * ((1.5 * y + 4.0 * x) * y + (-4.0 * alpha + beta + 2.0 * x * x));
}

namespace {

template <class R>
struct Complex {
  using type = std::complex<R>;
};
template <>
struct Complex<boost::multiprecision::cpp_bin_float_quad> {
  using type = boost::multiprecision::cpp_complex_quad;
};
template <class R>
using C = typename Complex<R>::type;
template <class R>
using State = std::array<C<R>, 2>;

template <class Z>
double mag(const Z& z) {
  using std::abs;
  return static_cast<double>(abs(z));
}

// Dormand-Prince 5(4), coefficients as exact fractions in R.
template <class R>
struct Tableau {
  static R q(int a, int b) { return R(a) / R(b); }
  R c2 = q(1, 5), c3 = q(3, 10), c4 = q(4, 5), c5 = q(8, 9);
  R a21 = q(1, 5);
  R a31 = q(3, 40), a32 = q(9, 40);
  R a41 = q(44, 45), a42 = q(-56, 15), a43 = q(32, 9);
  R a51 = q(19372, 6561), a52 = q(-25360, 2187), a53 = q(64448, 6561), a54 = q(-212, 729);
  R a61 = q(9017, 3168), a62 = q(-355, 33), a63 = q(46732, 5247), a64 = q(49, 176),
    a65 = q(-5103, 18656);
  R b1 = q(35, 384), b3 = q(500, 1113), b4 = q(125, 192), b5 = q(-2187, 6784),
    b6 = q(11, 84);
  R e1 = b1 - q(5179, 57600), e3 = b3 - q(7571, 16695), e4 = b4 - q(393, 640),
    e5 = b5 + q(92097, 339200), e6 = b6 - q(187, 2100), e7 = q(-1, 40);
};

template <class R>
const Tableau<R>& tableau() {
  static const Tableau<R> t;
  return t;
}

template <class Z>
std::array<Z, 2> operator+(const std::array<Z, 2>& a, const std::array<Z, 2>& b) {
  return {a[0] + b[0], a[1] + b[1]};
}
template <class R>
State<R> scale(const C<R>& s, const State<R>& a) {
  return {s * a[0], s * a[1]};
}
template <class R>
State<R> lin(std::initializer_list<std::pair<R, const State<R>*>> terms) {
  State<R> out{C<R>(0), C<R>(0)};
  for (const auto& [w, k] : terms) {
    out[0] += w * (*k)[0];
    out[1] += w * (*k)[1];
  }
  return out;
}

template <class R>
struct System {
  C<R> alpha, beta;
  State<R> f(C<R> x, const State<R>& Y) const {
    const C<R>& y = Y[0];
    const C<R>& yp = Y[1];
    if (mag(y) == 0.0) throw SingularityError("p4_rhs: y = 0");
    C<R> ypp = (yp * yp - beta * beta) / (R(2) * y) +
               y * ((R(1.5) * y + R(4) * x) * y + (-R(4) * alpha + beta + R(2) * x * x));
    return {yp, ypp};
  }
};

// One DP5 step of complex length h from x; k1 = f(x, Y). Returns the new
// state, its derivative (FSAL) and the embedded error vector.
template <class R>
struct StepOut {
  State<R> Y, k7, err;
};
template <class R>
StepOut<R> dp_step(const System<R>& sys, const C<R>& x, const State<R>& Y,
                   const State<R>& k1, const C<R>& h) {
  const Tableau<R>& T = tableau<R>();
  State<R> k2 = sys.f(x + T.c2 * h, Y + scale<R>(h, lin<R>({{T.a21, &k1}})));
  State<R> k3 = sys.f(x + T.c3 * h, Y + scale<R>(h, lin<R>({{T.a31, &k1}, {T.a32, &k2}})));
  State<R> k4 = sys.f(x + T.c4 * h,
                      Y + scale<R>(h, lin<R>({{T.a41, &k1}, {T.a42, &k2}, {T.a43, &k3}})));
  State<R> k5 = sys.f(x + T.c5 * h,
                      Y + scale<R>(h, lin<R>({{T.a51, &k1}, {T.a52, &k2}, {T.a53, &k3},
                                              {T.a54, &k4}})));
  State<R> k6 = sys.f(x + h, Y + scale<R>(h, lin<R>({{T.a61, &k1}, {T.a62, &k2}, {T.a63, &k3},
                                                     {T.a64, &k4}, {T.a65, &k5}})));
  State<R> Yn = Y + scale<R>(h, lin<R>({{T.b1, &k1}, {T.b3, &k3}, {T.b4, &k4},
                                        {T.b5, &k5}, {T.b6, &k6}}));
  State<R> k7 = sys.f(x + h, Yn);
  State<R> err = scale<R>(h, lin<R>({{T.e1, &k1}, {T.e3, &k3}, {T.e4, &k4}, {T.e5, &k5},
                                     {T.e6, &k6}, {T.e7, &k7}}));
  return {Yn, k7, err};
}

// Cubic Hermite between (Y0, F0) at s = 0 and (Y1, F1) at s = 1, F scaled
// by the step.
template <class R>
State<R> hermite(const State<R>& Y0, const State<R>& F0, const State<R>& Y1,
                 const State<R>& F1, double s) {
  R h00((1 + 2 * s) * (1 - s) * (1 - s)), h10(s * (1 - s) * (1 - s));
  R h01(s * s * (3 - 2 * s)), h11(s * s * (s - 1));
  State<R> out;
  for (int i = 0; i < 2; ++i) out[i] = h00 * Y0[i] + h10 * F0[i] + h01 * Y1[i] + h11 * F1[i];
  return out;
}

template <class R>
C<R> up(cplx z) {
  return C<R>(R(z.real()), R(z.imag()));
}
template <class Z>
cplx down(const Z& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class R>
ODETrajectory integrate_impl(cplx y0, cplx yp0, const std::vector<cplx>& path,
                             cplx alpha, cplx beta, const ODEOptions& opt) {
  System<R> sys{up<R>(alpha), up<R>(beta)};
  ODETrajectory tr;
  State<R> Y{up<R>(y0), up<R>(yp0)};
  C<R> x = up<R>(path[0]);
  tr.x.push_back(path[0]);
  tr.y.push_back(y0);
  tr.yp.push_back(yp0);
  State<R> K = sys.f(x, Y);
  double habs = 0.0;  // carried step length
  double err_prev = 1e-4;

  for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
    C<R> xa = up<R>(path[seg]), xb = up<R>(path[seg + 1]);
    C<R> span = xb - xa;
    double len = mag(span);
    if (len == 0.0) continue;
    R s(0);  // fraction of the segment done
    if (habs <= 0) habs = opt.h_init * len;
    int next_dense = 1;
    while (s < R(1)) {
      if (tr.accepted + tr.rejected >= opt.max_steps)
        throw IntegrationFailure("integrate_p4: step budget exhausted", tr);
      R h(habs / len);
      bool last = false;
      if (s + h >= R(1 - 1e-14)) {
        h = R(1) - s;
        last = true;
      }
      double hlen = static_cast<double>(h) * len;
      if (hlen < opt.h_min * std::max(1.0, len))
        throw IntegrationFailure("integrate_p4: step underflow near x = (" +
                                     fmt_sci(static_cast<double>(x.real())) + ", " +
                                     fmt_sci(static_cast<double>(x.imag())) + ")",
                                 tr);
      C<R> hd = h * span;
      StepOut<R> so;
      double err = std::numeric_limits<double>::infinity();
      try {
        so = dp_step(sys, x, Y, K, hd);
        err = 0.0;
        for (int i = 0; i < 2; ++i) {
          double sc = opt.atol + opt.rtol * std::max(mag(Y[i]), mag(so.Y[i]));
          err = std::max(err, mag(so.err[i]) / sc);
        }
        if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
      } catch (const SingularityError&) {
      }
      if (err > 1.0) {
        ++tr.rejected;
        double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
        habs = hlen * fac;
        continue;
      }
      ++tr.accepted;
      R s_new = last ? R(1) : s + h;
      C<R> xn = last ? xb : xa + s_new * span;
      // dense outputs inside this step
      if (opt.dense > 0) {
        while (next_dense <= opt.dense) {
          R sd = R(next_dense) / R(opt.dense + 1);
          if (sd > s_new || (last && sd >= R(1))) break;
          State<R> Yd = hermite<R>(Y, scale<R>(hd, K), so.Y, scale<R>(hd, so.k7),
                                   static_cast<double>((sd - s) / h));
          tr.x.push_back(down(xa + sd * span));
          tr.y.push_back(down(Yd[0]));
          tr.yp.push_back(down(Yd[1]));
          ++next_dense;
        }
      }
      s = s_new;
      x = xn;
      Y = so.Y;
      K = so.k7;
      double ay = mag(Y[0]);
      if (ay > opt.pole_max || ay < opt.zero_min) {
        tr.x.push_back(down(x));
        tr.y.push_back(down(Y[0]));
        tr.yp.push_back(down(Y[1]));
        tr.pole_events.push_back({down(x), ay > opt.pole_max ? "pole" : "zero"});
        tr.halted = true;
        return tr;
      }
      // PI control
      double e = std::max(err, 1e-10);
      double fac = 0.9 * std::pow(e, -0.17) * std::pow(err_prev, 0.04);
      err_prev = e;
      fac = std::clamp(fac, 0.2, 5.0);
      // a clipped final step keeps the proposal unless it grows it
      habs = last ? std::max(habs, hlen * fac) : hlen * fac;
    }
    tr.x.push_back(path[seg + 1]);
    tr.y.push_back(down(Y[0]));
    tr.yp.push_back(down(Y[1]));
  }
  return tr;
}

}  // namespace

ODETrajectory integrate_p4(cplx y0, cplx yp0, const std::vector<cplx>& path,
                           cplx alpha, cplx beta, const ODEOptions& opt) {
  if (path.empty()) throw DomainError("integrate_p4: empty path");
  if (y0 == 0.0) throw SingularityError("integrate_p4: y0 = 0");
  switch (opt.arithmetic) {
    case Arithmetic::extended:
      return integrate_impl<long double>(y0, yp0, path, alpha, beta, opt);
    case Arithmetic::quad:
      return integrate_impl<boost::multiprecision::cpp_bin_float_quad>(y0, yp0, path, alpha,
                                                                        beta, opt);
    default:
      return integrate_impl<double>(y0, yp0, path, alpha, beta, opt);
  }
}

std::pair<cplx, cplx> integrate_p4_fixed(cplx x0, cplx y0, cplx yp0, cplx x1, int n,
                                         cplx alpha, cplx beta) {
  System<double> sys{alpha, beta};
  State<double> Y{y0, yp0};
  cplx h = (x1 - x0) / double(n);
  cplx x = x0;
  State<double> K = sys.f(x, Y);
  for (int i = 0; i < n; ++i) {
    StepOut<double> so = dp_step(sys, x, Y, K, h);
    Y = so.Y;
    K = so.k7;
    x = x0 + double(i + 1) * h;
  }
  return {Y[0], Y[1]};
}

cplx x_of_t(cplx t, double phi) { return expi(phi) * std::sqrt(2.0 * t); }
cplx t_of_x(cplx x, double phi) {
  cplx u = std::conj(expi(phi)) * x;
  return 0.5 * u * u;
}

Seed seed_from_asymptotics(const AsymptoticSolution& as, cplx t0, bool flip_sheet) {
  AnsatzSample s = ansatz_sample(t0, as);
  cplx e = expi(as.phi);
  Seed out;
  out.t = t0;
  out.x = x_of_t(t0, as.phi);
  cplx ps = flip_sheet ? -s.psi_star : s.psi_star;
  out.y = std::conj(e) * out.x * s.psi;
  // dy/dx = e^{-i phi}(psi + 2t psi_t)
  out.yp = std::conj(e) * (s.psi + 2.0 * t0 * ps);
  return out;
}

std::pair<cplx, cplx> psi_of_state(cplx x, cplx y, cplx yp, double phi) {
  cplx e = expi(phi);
  cplx t = t_of_x(x, phi);
  cplx psi = e * y / x;
  cplx psi_t = (e * yp - psi) / (2.0 * t);
  return {psi, psi_t};
}

std::vector<cplx> predicted_points(const AsymptoticSolution& as, double re_lo,
                                   double re_hi, double im_lo, double im_hi,
                                   bool poles) {
  const Periods& p = as.ep.periods;
  cplx e = expi(as.phi);
  std::vector<cplx> base = poles ? std::vector<cplx>{p.omega_b / 3.0, -p.omega_b / 3.0}
                                 : std::vector<cplx>{0.0};
  // lattice coordinates of the box corners bound the index range
  auto coords = [&](cplx u) {
    // u = m Omega_a + n Omega_b
    double det = std::imag(std::conj(p.omega_a) * p.omega_b);
    double m = std::imag(std::conj(u) * p.omega_b) / det;
    double n = std::imag(std::conj(p.omega_a) * u) / det;
    return std::pair{m, n};
  };
  double mlo = 1e300, mhi = -1e300, nlo = 1e300, nhi = -1e300;
  for (cplx t : {cplx{re_lo, im_lo}, cplx{re_lo, im_hi}, cplx{re_hi, im_lo},
                 cplx{re_hi, im_hi}}) {
    auto [m, n] = coords(e * t + as.chi_raw);
    mlo = std::min(mlo, m);
    mhi = std::max(mhi, m);
    nlo = std::min(nlo, n);
    nhi = std::max(nhi, n);
  }
  std::vector<cplx> out;
  for (long m = long(std::floor(mlo)) - 1; m <= long(std::ceil(mhi)) + 1; ++m)
    for (long n = long(std::floor(nlo)) - 1; n <= long(std::ceil(nhi)) + 1; ++n)
      for (cplx b : base) {
        cplx u = b + double(m) * p.omega_a + double(n) * p.omega_b;
        cplx t = std::conj(e) * (u - as.chi_raw);
        if (t.real() >= re_lo && t.real() <= re_hi && t.imag() >= im_lo &&
            t.imag() <= im_hi)
          out.push_back(t);
      }
  std::sort(out.begin(), out.end(),
            [](cplx a, cplx b) { return a.real() < b.real(); });
  return out;
}

namespace {

std::vector<cplx> bad_points(const AsymptoticSolution& as, double lo, double hi,
                             double im, double margin) {
  auto P = predicted_points(as, lo - margin, hi + margin, im - margin, im + margin, true);
  auto Z = predicted_points(as, lo - margin, hi + margin, im - margin, im + margin, false);
  P.insert(P.end(), Z.begin(), Z.end());
  std::sort(P.begin(), P.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  return P;
}

cplx push_out(cplx t, const std::vector<cplx>& bad, double clearance) {
  for (int it = 0; it < 8; ++it) {
    auto lo = std::lower_bound(bad.begin(), bad.end(), t.real() - clearance,
                               [](cplx a, double v) { return a.real() < v; });
    bool moved = false;
    for (auto q = lo; q != bad.end() && q->real() <= t.real() + clearance; ++q) {
      double d = std::abs(t - *q);
      if (d < clearance) {
        cplx dir = d > 0 ? (t - *q) / d : cplx{0.0, 1.0};
        t = *q + clearance * 1.0001 * dir;
        moved = true;
      }
    }
    if (!moved) break;
  }
  return t;
}

}  // namespace

std::vector<cplx> strip_path(const AsymptoticSolution& as, double t_from, double t_to,
                             double im, double clearance, double spacing) {
  double lo = std::min(t_from, t_to), hi = std::max(t_from, t_to);
  auto bad = bad_points(as, lo, hi, im, clearance + 1.0);
  int n = std::max(1, int(std::ceil((hi - lo) / spacing)));
  std::vector<cplx> out;
  for (int k = 0; k <= n; ++k) {
    double re = t_from + (t_to - t_from) * k / n;
    out.push_back(push_out({re, im}, bad, clearance));
  }
  return out;
}

double loglog_slope(const std::vector<double>& t, const std::vector<double>& v) {
  double mx = 0, my = 0;
  int n = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (!(v[i] > 0)) continue;
    mx += std::log(t[i]);
    my += std::log(v[i]);
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (!(v[i] > 0)) continue;
    double dx = std::log(t[i]) - mx;
    sxy += dx * (std::log(v[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

bool median_trend_decreasing(const std::vector<double>& t, const std::vector<double>& v,
                             int bins) {
  if (t.empty() || bins < 2) return false;
  double lo = std::log(*std::min_element(t.begin(), t.end()));
  double hi = std::log(*std::max_element(t.begin(), t.end()));
  std::vector<std::vector<double>> b(bins);
  for (size_t i = 0; i < t.size(); ++i) {
    int k = std::min(bins - 1, int((std::log(t[i]) - lo) / (hi - lo + 1e-300) * bins));
    b[k].push_back(v[i]);
  }
  double prev = std::numeric_limits<double>::infinity();
  for (auto& bin : b) {
    if (bin.empty()) return false;
    std::nth_element(bin.begin(), bin.begin() + bin.size() / 2, bin.end());
    double med = bin[bin.size() / 2];
    if (!(med < prev)) return false;
    prev = med;
  }
  return true;
}

ScanResult residual_scan(const AsymptoticSolution& as, std::vector<double> t_values,
                         const ScanOptions& opt) {
  ScanResult res;
  const double phi = as.phi;
  auto bad = bad_points(as, std::min(opt.t_seed, *std::min_element(t_values.begin(), t_values.end())),
                        std::max(opt.t_seed, *std::max_element(t_values.begin(), t_values.end())),
                        opt.im, opt.clearance + 1.0);
  cplx t_seed = push_out({opt.t_seed, opt.im}, bad, opt.clearance);
  Seed sd = seed_from_asymptotics(as, t_seed);

  std::vector<double> down, up;
  for (double t : t_values) (t <= opt.t_seed ? down : up).push_back(t);
  std::sort(down.begin(), down.end(), std::greater<>());
  std::sort(up.begin(), up.end());

  auto run = [&](const std::vector<double>& targets) {
    cplx y = sd.y, yp = sd.yp;
    cplx t_cur = t_seed;
    bool dead = false;
    for (double target : targets) {
      ScanRow row;
      cplx t_goal = push_out({target, opt.im}, bad, opt.clearance);
      row.t = t_goal;
      if (dead) {
        row.ok = false;
        row.note = "skipped after integration failure";
        res.rows.push_back(row);
        continue;
      }
      std::vector<cplx> tpath = strip_path(as, t_cur.real(), target, opt.im, opt.clearance);
      tpath.front() = t_cur;
      tpath.back() = t_goal;
      std::vector<cplx> xpath;
      for (cplx t : tpath) xpath.push_back(x_of_t(t, phi));
      try {
        ODETrajectory tr = integrate_p4(y, yp, xpath, as.monodromy.alpha, as.monodromy.beta,
                                        opt.ode);
        res.traj.accepted += tr.accepted;
        res.traj.rejected += tr.rejected;
        for (auto& ev : tr.pole_events) res.traj.pole_events.push_back(ev);
        res.traj.x.insert(res.traj.x.end(), tr.x.begin(), tr.x.end());
        res.traj.y.insert(res.traj.y.end(), tr.y.begin(), tr.y.end());
        res.traj.yp.insert(res.traj.yp.end(), tr.yp.begin(), tr.yp.end());
        if (tr.halted) {
          row.ok = false;
          row.note = "pole event";
          dead = true;
          res.rows.push_back(row);
          continue;
        }
        y = tr.y.back();
        yp = tr.yp.back();
        t_cur = t_goal;
      } catch (const IntegrationError& e) {
        row.ok = false;
        row.note = e.what();
        dead = true;
        res.rows.push_back(row);
        continue;
      }
      cplx x = x_of_t(t_goal, phi);
      row.y_num = y;
      try {
        AnsatzSample s = ansatz_sample(t_goal, as);
        row.y_asym = std::conj(expi(phi)) * x * s.psi;
        auto [psi, psi_t] = psi_of_state(x, y, yp, phi);
        row.residual = std::abs(psi - s.psi);
        row.a_num = a_phi_of_t(psi, psi_t, t_goal, phi, as.monodromy.alpha, as.monodromy.beta);
        row.b_residual = std::abs(t_goal * (row.a_num - as.A_phi) - s.B);
      } catch (const Error& e) {
        row.ok = false;
        row.note = e.what();
      }
      res.rows.push_back(row);
    }
  };
  run(down);
  run(up);
  std::sort(res.rows.begin(), res.rows.end(),
            [](const ScanRow& a, const ScanRow& b) { return a.t.real() < b.t.real(); });

  std::vector<double> ts, rs, bs;
  for (const auto& r : res.rows)
    if (r.ok) {
      ts.push_back(r.t.real());
      rs.push_back(r.residual);
      bs.push_back(r.b_residual);
    }
  res.slope_residual = loglog_slope(ts, rs);
  res.slope_b = loglog_slope(ts, bs);
  return res;
}

PoleLocation locate_pole(cplx x0, cplx y0, cplx yp0, cplx alpha, cplx beta,
                         const ODEOptions& opt) {
  PoleLocation pl;
  cplx x = x0, y = y0, yp = yp0;
  std::vector<std::pair<cplx, double>> samples;  // (x, |y|)
  for (int it = 0; it < 60; ++it) {
    pl.iterations = it + 1;
    samples.emplace_back(x, std::abs(y));
    cplx est = x + y / yp;
    if (std::abs(y) > 1e-2 * opt.pole_max || std::abs(est - x) < 1e-9) break;
    cplx target = x + 0.9 * (est - x);
    ODETrajectory tr = integrate_p4(y, yp, {x, target}, alpha, beta, opt);
    x = tr.x.back();
    y = tr.y.back();
    yp = tr.yp.back();
    if (tr.halted) {
      samples.emplace_back(x, std::abs(y));
      break;
    }
  }
  pl.x = x + y / yp;
  pl.residue = -y * y / yp;
  std::vector<double> d, v;
  for (auto [xs, ay] : samples) {
    double dist = std::abs(xs - pl.x);
    if (dist < 0.05 && dist > 0) {
      d.push_back(dist);
      v.push_back(ay);
    }
  }
  pl.exponent = loglog_slope(d, v);
  return pl;
}

OracleResult boutroux_oracle_scan(double phi, const ScanRect& rect, int grid_n,
                                  int sweeps) {
  const Tolerances tol{1e-12, 1e-12};
  auto objective = [&](cplx A) {
    try {
      auto r = boutroux_residual(phi, A, tol);
      return r[0] * r[0] + r[1] * r[1];
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  double dx = (rect.re1 - rect.re0) / grid_n, dy = (rect.im1 - rect.im0) / grid_n;
  OracleResult best;
  double fbest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      cplx A{rect.re0 + (i + 0.5) * dx, rect.im0 + (j + 0.5) * dy};
      double f = objective(A);
      if (f < fbest) {
        fbest = f;
        best.coarse = A;
      }
    }
  // alternating golden-section over the best cell and its neighbours
  cplx A = best.coarse;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double wx = dx, wy = dy;
  for (int sw = 0; sw < sweeps; ++sw) {
    for (int axis = 0; axis < 2; ++axis) {
      double w = axis == 0 ? wx : wy;
      cplx unit = axis == 0 ? cplx{1, 0} : cplx{0, 1};
      double a = -w, b = w;
      double c = b - g * (b - a), d = a + g * (b - a);
      double fc = objective(A + c * unit), fd = objective(A + d * unit);
      for (int k = 0; k < 60 && b - a > 1e-15; ++k) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - g * (b - a);
          fc = objective(A + c * unit);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + g * (b - a);
          fd = objective(A + d * unit);
        }
      }
      double s = 0.5 * (a + b);
      if (objective(A + s * unit) <= objective(A)) A += s * unit;
    }
    wx *= 0.5;
    wy *= 0.5;
  }
  best.A = A;
  auto r = boutroux_residual(phi, A, tol);
  best.objective = std::abs(r[0]) + std::abs(r[1]);
  return best;
}

}  // namespace pivasym
