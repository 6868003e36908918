#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pivasym/common.hpp"

namespace pivasym {

enum class Frame { z, zeta };

// Point (phi, A) of the family w^2 = z^4 + 4e^{i phi}z^3 + 4e^{2i phi}z^2
// + 4e^{3i phi}A z. In the zeta frame the curve is the phi = 0 member.
struct CurveSpec {
  double phi = 0.0;
  cplx A{};
  cplx z1{}, z3{}, z5{};
  Frame frame = Frame::z;
  int b_sign = 0;  // orientation of b relative to the raw segment; 0 = unset

  // e^{i phi} in the z frame, 1 in the zeta frame.
  cplx rotation() const;
  double frame_phi() const { return frame == Frame::z ? phi : 0.0; }
  std::array<cplx, 3> roots() const { return {z1, z3, z5}; }
  // Roots rotated back to the zeta frame.
  std::array<cplx, 3> zeta_roots() const;
};

// Ordered roots (z1, z3, z5) of the cubic factor w^2/z.
std::array<cplx, 3> cubic_roots(double phi, cplx A);

// Relabel `fresh` so each root is matched to the nearest of `prev`.
std::array<cplx, 3> track_roots(const std::array<cplx, 3>& prev,
                                 const std::array<cplx, 3>& fresh);

CurveSpec make_curve(double phi, cplx A, Frame frame = Frame::z);
CurveSpec make_curve_tracked(double phi, cplx A, const CurveSpec& prev);

// True when A sits on the boundary {0, 8/27} within tol.
bool is_degenerate(cplx A, double tol = 1e-9);

cplx quartic(const CurveSpec& spec, cplx z);
cplx quartic_deriv(const CurveSpec& spec, cplx z);
cplx w_eval(const CurveSpec& spec, cplx z, int sheet = 1);

enum class CycleKind { a, b, segment };

struct CyclePath {
  std::vector<cplx> nodes;
  CycleKind kind = CycleKind::segment;
  std::vector<int> sheet;
};

std::pair<CyclePath, CyclePath> build_cycles(const CurveSpec& spec,
                                             double clearance = 1e-3,
                                             int nodes = 160);

double winding_number(const CyclePath& path, cplx p);
int count_crossings(const CyclePath& path, cplx p, cplx q);

enum class Integrand { w_over_z, inv_w, z_over_w, inv_zw, z_over_w3, third_kind };

using CurveFn = std::function<cplx(cplx z, cplx w)>;

// Collapsed-segment evaluation of a cycle integral in the frame of `spec`.
cplx cycle_integral(const CurveSpec& spec, CycleKind kind, Integrand f,
                    cplx z0 = {}, const Tolerances& tol = {});
cplx cycle_integral(const CurveSpec& spec, const CyclePath& path, Integrand f,
                    cplx z0 = {}, const Tolerances& tol = {});
cplx cycle_integral_fn(const CurveSpec& spec, CycleKind kind, const CurveFn& g,
                       const Tolerances& tol = {});

// Integral along the explicit polyline of a CyclePath, sheets as recorded.
cplx path_integral(const CurveSpec& spec, const CyclePath& path, Integrand f,
                   cplx z0 = {}, const Tolerances& tol = {});

// Integral of dz/w from the branch point 0 to the upper-sheet point over z0,
// along the straight segment.
cplx integral_from_zero(const CurveSpec& spec, cplx z0,
                        const Tolerances& tol = {});

struct Periods {
  cplx omega_a{}, omega_b{}, tau{};
  cplx J_a{}, J_b{};
  std::map<std::string, cplx> extras;
  Frame frame = Frame::z;
  double phi = 0.0;

  cplx legendre_residual() const;
};

// extras keys: "z/w:a", "z/w:b", "1/(zw):a", "1/(zw):b", "z/w3:a", "z/w3:b".
Periods periods(const CurveSpec& spec, const Tolerances& tol = {},
                bool with_extras = false);

// Convert between frames: J_z = e^{2i phi} J_zeta, Omega_z = e^{-i phi}
// Omega_zeta.
Periods to_frame(const Periods& p, Frame target, double phi);

struct IdentityReport {
  std::string name;
  cplx lhs{}, rhs{};
  double residual = 0.0;
};

std::vector<IdentityReport> third_kind_identities(const CurveSpec& spec,
                                                  cplx z0,
                                                  const Tolerances& tol = {});

}  // namespace pivasym
