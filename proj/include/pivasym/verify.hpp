#pragma once

#include <string>
#include <vector>

#include "pivasym/boutroux.hpp"
#include "pivasym/monodromy.hpp"

namespace pivasym {

// y'' of P_IV. SingularityError at y = 0.
cplx p4_rhs(cplx x, cplx y, cplx yp, cplx alpha, cplx beta);

struct PoleEvent {
  cplx x{};
  std::string reason;  // "pole" or "zero"
};

struct ODETrajectory {
  std::vector<cplx> x, y, yp;  // output nodes
  int accepted = 0, rejected = 0;
  std::vector<PoleEvent> pole_events;
  bool halted = false;
};

enum class Arithmetic { binary64, extended, quad };

struct ODEOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double h_init = 1e-3;     // fraction of a segment
  double h_min = 1e-14;     // fraction of a segment
  double pole_max = 1e8;
  double zero_min = 1e-8;
  int max_steps = 2000000;
  int dense = 0;            // extra Hermite outputs per segment
  Arithmetic arithmetic = Arithmetic::binary64;
};

// Carries the trajectory computed before the failure.
class IntegrationFailure : public IntegrationError {
 public:
  IntegrationFailure(const std::string& what, ODETrajectory partial)
      : IntegrationError(what), partial_(std::move(partial)) {}
  const ODETrajectory& partial() const { return partial_; }

 private:
  ODETrajectory partial_;
};

// Dormand-Prince 5(4) along the polyline path (path[0] is the start x0).
ODETrajectory integrate_p4(cplx y0, cplx yp0, const std::vector<cplx>& path,
                           cplx alpha, cplx beta, const ODEOptions& opt = {});

// Classical fixed-step DP5 from x0 to x1 in n steps; returns (y, y') at x1.
std::pair<cplx, cplx> integrate_p4_fixed(cplx x0, cplx y0, cplx yp0, cplx x1, int n,
                                         cplx alpha, cplx beta);

// x = e^{i phi} sqrt(2t) and back, principal branch.
cplx x_of_t(cplx t, double phi);
cplx t_of_x(cplx x, double phi);

struct Seed {
  cplx t{}, x{}, y{}, yp{};
};
// y = e^{-i phi} x psi, y' from psi and psi_star. flip_sheet negates psi_star
// (wrong branch, for negative controls).
Seed seed_from_asymptotics(const AsymptoticSolution& as, cplx t0, bool flip_sheet = false);

// (psi, psi_t) of a numerical state at x.
std::pair<cplx, cplx> psi_of_state(cplx x, cplx y, cplx yp, double phi);

// Points e^{i phi} t + chi = +-Omega_b/3 (poles) or 0 (zeros) modulo the
// lattice, with t in the given box.
std::vector<cplx> predicted_points(const AsymptoticSolution& as, double re_lo,
                                   double re_hi, double im_lo, double im_hi,
                                   bool poles);

// Path in the t plane from t_from to t_to along Im t = im, bent around
// predicted poles and zeros by at least `clearance`.
std::vector<cplx> strip_path(const AsymptoticSolution& as, double t_from, double t_to,
                             double im, double clearance, double spacing = 0.05);

struct ScanRow {
  cplx t{};
  cplx y_num{}, y_asym{};
  double residual = 0.0;     // |psi_num - psi_asym|
  cplx a_num{};              // a_phi from the numerical state
  double b_residual = 0.0;   // |t (a_num - A_phi) - B(t)|
  bool ok = true;
  std::string note;
};

struct ScanOptions {
  double t_seed = 3200.0;
  double im = 0.3;
  double clearance = 0.3;
  ODEOptions ode{1e-12, 1e-14};
};

struct ScanResult {
  std::vector<ScanRow> rows;
  ODETrajectory traj;
  double slope_residual = 0.0;   // log-log fit of residual vs t
  double slope_b = 0.0;          // log-log fit of b_residual vs t
};

// Seeds at t_seed, integrates to each requested t (real parts) along the
// strip, and compares with the ansatz there.
ScanResult residual_scan(const AsymptoticSolution& as, std::vector<double> t_values,
                         const ScanOptions& opt = {});

// Least-squares slope of log(v) against log(t).
double loglog_slope(const std::vector<double>& t, const std::vector<double>& v);
// Monotone decay of binned medians: bins of equal size in log t.
bool median_trend_decreasing(const std::vector<double>& t, const std::vector<double>& v,
                             int bins);

struct PoleLocation {
  cplx x{};             // located pole
  cplx residue{};       // lim (x - x_p) y
  double exponent = 0;  // fitted exponent of |y| against |x - x_p|
  int iterations = 0;
};

// Newton-type approach x_p = x + y/y' with short integrations in between.
PoleLocation locate_pole(cplx x0, cplx y0, cplx yp0, cplx alpha, cplx beta,
                         const ODEOptions& opt = {});

// Brute-force minimiser of r_a^2 + r_b^2 on a grid_n x grid_n grid, then
// golden-section refinement of the best cell. objective is |r_a| + |r_b| at A.
struct OracleResult {
  cplx A{};
  double objective = 0.0;
  cplx coarse{};
};
OracleResult boutroux_oracle_scan(double phi, const ScanRect& rect, int grid_n,
                                  int sweeps = 12);

}  // namespace pivasym
