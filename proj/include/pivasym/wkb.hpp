#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pivasym/common.hpp"

namespace pivasym {

// mu^2 at t = infinity: lambda^6 + 4e^{i phi} lambda^4 + 4e^{2i phi} lambda^2
// + 4e^{3i phi} A.
cplx mu_inf_squared(double phi, cplx A, cplx lambda);
cplx mu_inf_squared_deriv(double phi, cplx A, cplx lambda);

// lambda_1..lambda_6 (index 0..5); lambda_{2k} = -lambda_{2k-1} and
// lambda_{2k-1}^2 = z_{2k-1}, taken in the upper half plane.
std::array<cplx, 6> turning_points(double phi, cplx A);
// Same labels, matched to `prev` for continuation in phi.
std::array<cplx, 6> turning_points_tracked(double phi, cplx A,
                                           const std::array<cplx, 6>& prev);

struct TraceOptions {
  double capture = 1e-3;
  double r_max = 12.0;
  double r_probe = 10.0;
  double start = 2e-3;      // initial offset from the turning point
  double max_step = 0.05;
  double min_step = 1e-10;
  int max_steps = 200000;
};

struct StokesCurve {
  std::vector<cplx> points;
  int from = -1;              // turning point index 0..5
  int to_point = -1;          // turning point index, or -1
  int to_ray = -1;            // ray index k of pi/8 + k pi/4, or -1
  double probe_arg = 0.0;     // arg lambda where |lambda| = r_probe
  double ray_deviation = 0.0;
  double max_level_error = 0.0;  // max |Re int mu| along the trace
};

// Traces Re int_{lambda_from}^{lambda} mu dlambda = 0 starting in direction
// theta. Throws TraceError (with the partial curve in the message count)
// on step collapse.
StokesCurve stokes_trace(double phi, cplx A, const std::array<cplx, 6>& tps,
                         int from, double theta, const TraceOptions& opt = {});

// The three initial directions at a simple turning point.
std::array<double, 3> initial_directions(double phi, cplx A, cplx lambda_j);

// Re of int mu dlambda along a polyline, continuous branch.
double level_error(double phi, cplx A, const std::vector<cplx>& poly);

struct StokesGraph {
  double phi = 0.0;
  cplx A{};
  std::array<cplx, 6> tps{};
  std::vector<StokesCurve> curves;
  std::vector<double> rays;  // pi/8 + k pi/4
};

StokesGraph stokes_graph(double phi, cplx A, const TraceOptions& opt = {});

struct Adjacency {
  std::vector<std::pair<int, int>> edges;  // turning point pairs, i < j (1-based)
  std::vector<std::pair<int, int>> rays;   // (turning point, ray k), 1-based tp
  bool has_edge(int i, int j) const;
};
Adjacency graph_topology(const StokesGraph& g);
// Image of an adjacency under lambda -> -conj(lambda).
Adjacency mirror(const Adjacency& a);
bool same_adjacency(const Adjacency& a, const Adjacency& b);

struct SvgOptions {
  int width = 800, height = 800;
  double x0 = -3, x1 = 3, y0 = -3, y1 = 3;
};
void write_svg(std::ostream& os, const StokesGraph& g, const SvgOptions& opt = {});
std::string adjacency_json(const StokesGraph& g);

}  // namespace pivasym
