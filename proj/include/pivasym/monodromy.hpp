#pragma once

#include <array>
#include <optional>
#include <utility>

#include "pivasym/elliptic.hpp"

namespace pivasym {

using SVec = std::array<cplx, 4>;

struct MonodromyData {
  cplx alpha{}, beta{};
  SVec s{};

  // s_k for any integer k, extended by s_{k+4} = -s_k e^{(-1)^k 2 pi i (alpha-beta)}.
  cplx s_ext(int k) const;
  // (s1 s2, s2 s3, s3 s4, s4 s1)
  SVec products() const;
};

// ((1+s1s2)(1+s3s4)+s1s4) e^{-i pi (alpha-beta)} - (1+s2s3) e^{i pi (alpha-beta)}
// + 2i sin(pi alpha)
cplx m0_residual(const MonodromyData& md);
// Residuals of the two equations on the product variables.
std::array<cplx, 2> mstar_residuals(cplx alpha, cplx beta, const SVec& prod);
std::array<cplx, 2> mstar_residuals(const MonodromyData& md);

// Solves the M0 relation (linear in s4).
cplx solve_s4(cplx alpha, cplx beta, cplx s1, cplx s2, cplx s3);
MonodromyData complete_monodromy(cplx alpha, cplx beta, cplx s1, cplx s2, cplx s3);

// [c]: odd-index entries scale by c^2, even by c^{-2}.
SVec gauge_action(cplx c, const SVec& s);

// Representative s = (1, s12, s23/s12, s41) of a product point.
SVec s_from_products(const SVec& prod);

// Product point of the singular point, present iff alpha - 1/2 is an integer.
std::optional<SVec> singular_point(cplx alpha, cplx beta, double tol = 1e-12);
// Both surface equations vanish and their gradients are dependent.
bool is_singular(cplx alpha, cplx beta, const SVec& prod, double tol = 1e-10);

// chi - m Omega_a - n Omega_b with lattice coordinates in [0,1)^2.
cplx lattice_reduce(cplx chi, const Periods& p);

struct AsymptoticSolution {
  double phi = 0.0;
  int n = 0;
  MonodromyData monodromy;
  cplx A_phi{};
  EllipticP ep;       // periods in the z frame
  cplx chi{};         // reduced
  cplx chi_raw{};     // as assembled, used by correction_B
  cplx branch_l{};    // l(s, phi)
  cplx log_gen{};     // ln((1+s_{1+n}s_{2+n})(1+s_{2+n}s_{3+n}) - 1)
  cplx Gamma_ab{};
  cplx C_a{}, C_b{};  // integrals of z/w over a and b
};

// Gamma from its quadrature definition.
cplx gamma_quadrature(cplx alpha, cplx beta, const Periods& p, cplx C_a, cplx C_b);

AsymptoticSolution phase_shift(const MonodromyData& md, double phi, int n,
                               const EllipticP& ep, const Tolerances& tol = {});
// Solves for A_phi first.
AsymptoticSolution asymptotic_solution(const MonodromyData& md, double phi,
                                       int n = 0, const Tolerances& tol = {});

std::pair<cplx, cplx> z_pm(cplx psi, cplx psi_t, double phi);
cplx a_phi_of_t(cplx psi, cplx psi_t, cplx t, double phi, cplx alpha, cplx beta);

cplx correction_B(cplx t, const AsymptoticSolution& as);

struct AnsatzSample {
  cplx t{}, psi{}, psi_t{}, psi_star{}, B{};
};
// psi = P(e^{i phi} t + chi); psi_star is the root of the quadratic
// a_phi(t, psi, psi*) = A_phi + B/t nearest to psi_t.
AnsatzSample ansatz_sample(cplx t, const AsymptoticSolution& as);

struct DirectMonodromy {
  cplx a_phi{};
  cplx l_a{};      // ln(1+s1s2) for phi < 0, ln(1+s2s3) for phi > 0
  cplx l_b{};      // ln((1+s1s2)(1+s2s3) - 1)
  cplx W_a{}, W_b{};
  cplx omega_a{}, omega_b{};
  // J/2 - (e^{4 i phi} a int dz/(z w) + (3/2) e^{3 i phi} a Omega) on a and b
  std::array<cplx, 2> j_split_residual{};
};

DirectMonodromy direct_monodromy_leading(cplx psi, cplx psi_t, cplx t,
                                         double phi, cplx alpha, cplx beta,
                                         const Tolerances& tol = {});

// Three evaluations of the integral of W over a on the curve `spec`: the
// cycle quadrature, the third-kind form and the theta form.
struct WIdentity {
  cplx cycle{}, third_kind{}, theta{};
};
WIdentity W_identity(const CurveSpec& spec, cplx zp, cplx wp, cplx zm, cplx wm,
                     const Tolerances& tol = {});

struct TrigApprox {
  cplx y_sine{}, y_cosine{};
  cplx phase_sine{}, phase_cosine{};   // 2 tau/sqrt3 and 2 tau_hat/sqrt3
  cplx log_coeff_sine{}, log_coeff_cosine{};
  bool valid = true;
};
TrigApprox trig_approx(cplx t, const MonodromyData& md, double phi);

}  // namespace pivasym
