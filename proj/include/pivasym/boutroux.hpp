#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <vector>

#include "pivasym/curve.hpp"

namespace pivasym {

struct BoutrouxPoint {
  double phi = 0.0;
  cplx A{};
  std::array<double, 2> residual{};
  Periods periods;  // zeta frame
  int newton_iters = 0;
  double condition = 0.0;
  bool analytic = false;       // endpoint constant, not solved
  double jacobian_check = 0.0; // max rel. mismatch vs finite differences
};

struct BoutrouxOptions {
  Tolerances tol{1e-12, 1e-12};
  int max_iters = 30;
  double max_condition = 1e12;
  bool check_jacobian = false;
};

// (Re e^{2i phi} J_a, Re e^{2i phi} J_b) in the zeta frame.
std::array<double, 2> boutroux_residual(double phi, cplx A,
                                        const Tolerances& tol = {});

BoutrouxPoint solve_A(double phi, cplx A_init, const BoutrouxOptions& opt = {});

// Grid minimiser of |r_a| + |r_b| over [re0,re1] x [im0,im1], followed by a
// local pattern refinement.
struct ScanRect {
  double re0, re1, im0, im1;
};
cplx boutroux_scan(double phi, const ScanRect& rect, int grid_n,
                   int refine_rounds = 40);

// Default scan rectangle for the sector containing phi.
ScanRect default_scan_rect(double phi);

struct TrajectoryOptions {
  BoutrouxOptions newton;
  double margin = 1e-3;     // distance kept from k pi/4
  double min_step = 1e-7;
  int seed_grid = 60;
  int max_newton_per_step = 8;
};

// phi reduced to (-pi/4, pi/4] and the shift k with phi = phi_r + k pi/2.
std::pair<double, int> reduce_phi(double phi);

// A at the degenerate endpoints: 8/27 at phi = k pi/2, 0 at pi/4 + k pi/2.
std::optional<cplx> endpoint_value(double phi, double tol = 1e-12);

std::vector<BoutrouxPoint> trajectory(const std::vector<double>& phi_grid,
                                      const TrajectoryOptions& opt = {});

struct IRatio {
  cplx value{};
  bool reciprocal = false;  // value is J_a/J_b because J_a vanished
};
IRatio I_ratio(cplx A, const Tolerances& tol = {});

void write_trajectory_csv(std::ostream& os,
                          const std::vector<BoutrouxPoint>& pts);

}  // namespace pivasym
