#include "pivasym/boutroux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pivasym {

namespace {

struct Eval {
  std::array<double, 2> r;
  Periods p;
};

Eval evaluate(double phi, cplx A, const Tolerances& tol) {
  Periods p = periods(make_curve(phi, A, Frame::zeta), tol);
  cplx c = expi(2.0 * phi);
  return {{(c * p.J_a).real(), (c * p.J_b).real()}, p};
}

// d r / d(Re A, Im A) from dJ/dA = 2 Omega.
std::array<double, 4> jacobian(double phi, const Periods& p) {
  cplx c = expi(2.0 * phi);
  cplx ga = 2.0 * c * p.omega_a, gb = 2.0 * c * p.omega_b;
  return {ga.real(), (kI * ga).real(), gb.real(), (kI * gb).real()};
}

double cond2(const std::array<double, 4>& m) {
  // singular values of a real 2x2 matrix
  double a = m[0], b = m[1], c = m[2], d = m[3];
  double s1 = a * a + b * b + c * c + d * d;
  double det = std::abs(a * d - b * c);
  double disc = std::sqrt(std::max(0.0, s1 * s1 - 4.0 * det * det));
  double smax = std::sqrt(0.5 * (s1 + disc));
  double smin = det / smax;
  return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

double scan_value(double phi, cplx A, const Tolerances& tol) {
  try {
    auto r = boutroux_residual(phi, A, tol);
    return std::abs(r[0]) + std::abs(r[1]);
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

std::array<double, 2> boutroux_residual(double phi, cplx A,
                                        const Tolerances& tol) {
  cplx c = expi(2.0 * phi);
  if (std::abs(A) < 1e-9) {
    // w/zeta = zeta + 2: J_a = 0, J_b = 2 int_{-2}^{0} (zeta + 2) = 4
    return {0.0, (4.0 * c).real()};
  }
  if (is_degenerate(A)) {
    // periods blow up but the J integrals stay finite
    CurveSpec spec = make_curve(phi, A, Frame::zeta);
    return {(c * cycle_integral(spec, CycleKind::a, Integrand::w_over_z, 0.0, tol)).real(),
            (c * cycle_integral(spec, CycleKind::b, Integrand::w_over_z, 0.0, tol)).real()};
  }
  return evaluate(phi, A, tol).r;
}

BoutrouxPoint solve_A(double phi, cplx A_init, const BoutrouxOptions& opt) {
  double pr = reduce_phi(phi).first;
  for (double e : {-kPi / 4, 0.0, kPi / 4})
    if (std::abs(pr - e) < 1e-3)
      throw DomainError("solve_A: phi within 1e-3 of a degenerate direction");
  if (is_degenerate(A_init)) throw DegeneracyError("solve_A: degenerate seed");

  BoutrouxPoint bp;
  bp.phi = phi;
  cplx A = A_init;
  for (int it = 0; it < opt.max_iters; ++it) {
    Eval e = evaluate(phi, A, opt.tol);
    auto J = jacobian(phi, e.p);
    double cond = cond2(J);
    if (!(cond < opt.max_condition))
      throw ConditioningError("solve_A: Jacobian near singular", cond);
    if (opt.check_jacobian) {
      double h = 1e-6 * std::max(1.0, std::abs(A));
      auto rx = boutroux_residual(phi, A + h, opt.tol);
      auto ry = boutroux_residual(phi, A + kI * h, opt.tol);
      std::array<double, 4> fd{(rx[0] - e.r[0]) / h, (ry[0] - e.r[0]) / h,
                               (rx[1] - e.r[1]) / h, (ry[1] - e.r[1]) / h};
      double num = 0.0, den = 0.0;
      for (int k = 0; k < 4; ++k) {
        num = std::max(num, std::abs(fd[k] - J[k]));
        den = std::max(den, std::abs(J[k]));
      }
      bp.jacobian_check = std::max(bp.jacobian_check, num / den);
    }
    double det = J[0] * J[3] - J[1] * J[2];
    double dx = -(J[3] * e.r[0] - J[1] * e.r[1]) / det;
    double dy = -(-J[2] * e.r[0] + J[0] * e.r[1]) / det;
    cplx step(dx, dy);
    // keep the iterate off the degenerate points
    while (is_degenerate(A + step) && std::abs(step) > 1e-16) step *= 0.5;
    A += step;
    bp.newton_iters = it + 1;
    if (std::abs(step) < opt.tol.newton * std::max(1.0, std::abs(A))) {
      Eval f = evaluate(phi, A, opt.tol);
      bp.A = A;
      bp.residual = f.r;
      bp.periods = f.p;
      bp.condition = cond2(jacobian(phi, f.p));
      return bp;
    }
  }
  throw SolverError("solve_A: Newton did not converge", A);
}

ScanRect default_scan_rect(double phi) {
  double pr = reduce_phi(phi).first;
  if (pr < 0.0) return {0.0, kA0, 0.0, 0.2};
  return {0.0, kA0, -0.2, 0.0};
}

cplx boutroux_scan(double phi, const ScanRect& rect, int grid_n,
                   int refine_rounds) {
  if (grid_n < 2) throw DomainError("boutroux_scan: grid_n < 2");
  Tolerances coarse{1e-8, 1e-12};
  double hx = (rect.re1 - rect.re0) / grid_n;
  double hy = (rect.im1 - rect.im0) / grid_n;
  double best = std::numeric_limits<double>::infinity();
  cplx arg{};
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      cplx A(rect.re0 + (i + 0.5) * hx, rect.im0 + (j + 0.5) * hy);
      double v = scan_value(phi, A, coarse);
      if (v < best) {
        best = v;
        arg = A;
      }
    }
  if (!std::isfinite(best))
    throw SolverError("boutroux_scan: no admissible grid point", arg);
  // compass refinement
  Tolerances fine{1e-12, 1e-12};
  best = scan_value(phi, arg, fine);
  double sx = hx, sy = hy;
  for (int round = 0; round < refine_rounds;) {
    bool moved = false;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        if (!dx && !dy) continue;
        cplx c = arg + cplx(dx * sx, dy * sy);
        double v = scan_value(phi, c, fine);
        if (v < best) {
          best = v;
          arg = c;
          moved = true;
        }
      }
    if (!moved) {
      sx *= 0.5;
      sy *= 0.5;
      ++round;
    }
  }
  return arg;
}

std::pair<double, int> reduce_phi(double phi) {
  int k = static_cast<int>(std::floor(phi / (kPi / 2) + 0.5));
  double r = phi - k * kPi / 2;
  if (r <= -kPi / 4) {
    r += kPi / 2;
    --k;
  }
  return {r, k};
}

std::optional<cplx> endpoint_value(double phi, double tol) {
  double r = reduce_phi(phi).first;
  if (std::abs(r) < tol) return cplx(kA0);
  if (std::abs(std::abs(r) - kPi / 4) < tol) return cplx(0.0);
  return std::nullopt;
}

std::vector<BoutrouxPoint> trajectory(const std::vector<double>& phi_grid,
                                      const TrajectoryOptions& opt) {
  std::vector<BoutrouxPoint> out(phi_grid.size());
  // group indices by (shift k, side of 0)
  std::map<std::pair<int, int>, std::vector<size_t>> groups;
  for (size_t i = 0; i < phi_grid.size(); ++i) {
    auto [r, k] = reduce_phi(phi_grid[i]);
    if (auto e = endpoint_value(phi_grid[i])) {
      out[i].phi = phi_grid[i];
      out[i].A = *e;
      out[i].analytic = true;
      continue;
    }
    if (std::abs(r) < opt.margin || kPi / 4 - std::abs(r) < opt.margin)
      throw DomainError("trajectory: grid point within margin of k pi/4");
    groups[{k, r < 0 ? -1 : 1}].push_back(i);
  }

  auto continue_to = [&](BoutrouxPoint cur, double target) {
    double step = target - cur.phi;
    while (cur.phi != target) {
      double next = std::abs(target - cur.phi) <= std::abs(step)
                        ? target
                        : cur.phi + step;
      bool ok = false;
      try {
        BoutrouxPoint p = solve_A(next, cur.A, opt.newton);
        if (p.newton_iters <= opt.max_newton_per_step) {
          cur = p;
          ok = true;
        }
      } catch (const Error&) {
      }
      if (!ok) {
        step *= 0.5;
        if (std::abs(step) < opt.min_step)
          throw SolverError("trajectory: continuation step below minimum",
                            cur.A);
      } else if (std::abs(step) < std::abs(target - cur.phi)) {
        step *= 1.5;  // regain length after successful steps
      }
    }
    return cur;
  };

  for (auto& [key, idx] : groups) {
    auto [k, side] = key;
    double seed_phi = side * kPi / 8 + k * kPi / 2;
    cplx A0 = boutroux_scan(seed_phi, default_scan_rect(seed_phi), opt.seed_grid);
    BoutrouxPoint seed = solve_A(seed_phi, A0, opt.newton);
    std::vector<size_t> lo, hi;
    for (size_t i : idx) (phi_grid[i] < seed_phi ? lo : hi).push_back(i);
    std::sort(lo.begin(), lo.end(),
              [&](size_t a, size_t b) { return phi_grid[a] > phi_grid[b]; });
    std::sort(hi.begin(), hi.end(),
              [&](size_t a, size_t b) { return phi_grid[a] < phi_grid[b]; });
    for (auto* part : {&lo, &hi}) {
      BoutrouxPoint cur = seed;
      for (size_t i : *part) {
        cur = continue_to(cur, phi_grid[i]);
        out[i] = cur;
      }
    }
  }
  return out;
}

IRatio I_ratio(cplx A, const Tolerances& tol) {
  if (std::abs(A - kA0) < 1e-15) return {0.0, false};
  Periods p = periods(make_curve(0.0, A, Frame::zeta), tol);
  if (p.J_a == 0.0 && p.J_b == 0.0)
    throw DomainError("I_ratio: both J_a and J_b vanish");
  if (std::abs(p.J_a) < 1e-300) return {p.J_a / p.J_b, true};
  return {p.J_b / p.J_a, false};
}

void write_trajectory_csv(std::ostream& os,
                          const std::vector<BoutrouxPoint>& pts) {
  auto old = os.precision(17);
  os << "phi,re_A,im_A,re_omega_a,im_omega_a,re_omega_b,im_omega_b,residual_a,"
        "residual_b,newton_iters\n";
  for (const auto& p : pts)
    os << p.phi << ',' << p.A.real() << ',' << p.A.imag() << ','
       << p.periods.omega_a.real() << ',' << p.periods.omega_a.imag() << ','
       << p.periods.omega_b.real() << ',' << p.periods.omega_b.imag() << ','
       << p.residual[0] << ',' << p.residual[1] << ',' << p.newton_iters
       << '\n';
  os.precision(old);
}

}  // namespace pivasym
