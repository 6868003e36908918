#pragma once

#include <array>

#include "pivasym/common.hpp"

namespace pivasym {

// theta(z, tau) = sum_n exp(pi i tau n^2 + 2 pi i z n), with nu = (1+tau)/2.
struct ThetaContext {
  cplx tau{};
  cplx nu{};
  int N = 0;  // truncation, chosen so that |q|^{N^2} < 1e-18

  explicit ThetaContext(cplx tau);
  ThetaContext() = default;
};

cplx theta(cplx z, const ThetaContext& ctx);

// theta'/theta, exact (quasi-periodic shifts are accounted for, not reduced).
cplx theta_logderiv(cplx z, const ThetaContext& ctx);

// (log theta)^{(k)} at z for k = 1, 2, 3.
std::array<cplx, 3> theta_logderivs(cplx z, const ThetaContext& ctx);

// theta^{(k)}(z) for k = 0..3, without argument reduction.
std::array<cplx, 4> theta_derivs_raw(cplx z, const ThetaContext& ctx);

}  // namespace pivasym
