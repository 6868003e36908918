#pragma once

#include <utility>

#include "pivasym/curve.hpp"
#include "pivasym/theta.hpp"

namespace pivasym {

// Period lattice Z w1 + Z w2 with Im(w2/w1) > 0.
struct Lattice {
  cplx w1{}, w2{};
  cplx tau() const { return w2 / w1; }
};

// Gauss reduction: |Re tau| <= 1/2, |tau| >= 1, same lattice.
Lattice lattice_reduce(cplx w1, cplx w2);

// u minus the nearest lattice point.
cplx lattice_offset(cplx u, const Lattice& L);

struct Invariants {
  cplx g2{}, g3{};
  cplx discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }
};

// g2 = -4e^{4i phi}(A - 1/3), g3 = e^{6i phi}(-A^2 + 4A/3 - 8/27).
Invariants curve_invariants(double phi, cplx A);

// Weierstrass function for a fixed lattice, evaluated through theta.
class Weierstrass {
 public:
  // Lattice given by two periods (any basis).
  Weierstrass(cplx period1, cplx period2);
  // Lattice determined by the invariants; DegeneracyError if |Delta| is
  // below deg_tol * max(|g2|^3, |g3|^2).
  static Weierstrass from_invariants(cplx g2, cplx g3, double deg_tol = 1e-12);

  cplx operator()(cplx u) const;
  cplx prime(cplx u) const;
  const Lattice& lattice() const { return lat_; }
  Invariants invariants() const;  // from the q-series of the lattice

 private:
  Lattice lat_;
  ThetaContext ctx_;
  cplx c0_{};  // constant making the Laurent series start 1/u^2 + O(u^2)
};

// wp and wp' from invariants; the degenerate case Delta = 0 uses the
// closed trigonometric form.
cplx wp(cplx u, cplx g2, cplx g3);
cplx wp_prime(cplx u, cplx g2, cplx g3);

enum class DegenerateMode { sine, cosine };

struct DegenerateValue {
  cplx value{};
  cplx h{};
  bool accurate = true;  // false when |h| exceeds the threshold
};

// Small-h forms of wp for half periods (omega, omega'), omega_hat = pi/(2
// omega), h = exp(i pi omega'/omega).
DegenerateValue wp_degenerate(cplx u, DegenerateMode mode, cplx omega,
                              cplx omega_prime, double h_threshold = 1e-2);

enum class PRoute { theta, wp };

struct EllipticP {
  double phi = 0.0;
  cplx A{};
  Periods periods;  // z frame
  cplx C_P{};
  Invariants inv;
  ThetaContext ctx;
  Lattice lattice;
  double pole_radius = 0.0;
};

EllipticP make_elliptic_P(double phi, cplx A, const Tolerances& tol = {});

// Poles of P are at +-Omega_b/3 modulo the lattice. Evaluation throws
// PoleError within ep.pole_radius of one.
cplx P_eval(cplx u, const EllipticP& ep, PRoute route = PRoute::theta);
cplx P_deriv(cplx u, const EllipticP& ep, PRoute route = PRoute::theta);

// Distance from u to the nearest pole and that pole.
std::pair<double, cplx> nearest_pole(cplx u, const EllipticP& ep);

// Residue of P at the pole `at` by trapezoidal quadrature on a circle.
cplx P_residue(cplx at, const EllipticP& ep, double radius, int nodes = 64);

// Residual of P'^2 = P^2 (P + 2e^{i phi})^2 + 4e^{3i phi} A P.
cplx P_ode_residual(cplx P, cplx dP, double phi, cplx A);

// chi_{+-} = -+ eta'/(2 eta) - eta/2 - e^{i phi}.
std::pair<cplx, cplx> chi_transform(cplx eta, cplx eta_deriv, double phi);

// eta^2 chi + eta chi^2 + 2 e^{i phi} eta chi - e^{3i phi} A.
cplx chi_relation_residual(cplx eta, cplx chi, double phi, cplx A);

}  // namespace pivasym
