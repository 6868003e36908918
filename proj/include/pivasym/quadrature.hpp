#pragma once

#include <functional>

#include "pivasym/common.hpp"

namespace pivasym {

struct QuadResult {
  cplx value;
  double error;
};

// Adaptive Gauss-Kronrod on [a,b] for a complex integrand.
QuadResult gk_integrate(const std::function<cplx(double)>& f, double a,
                        double b, double rel_tol = 1e-13, unsigned depth = 22);

// Same, but throws PrecisionError when the estimate exceeds tol*max(1,|I|).
cplx integrate_checked(const std::function<cplx(double)>& f, double a,
                       double b, double tol, const char* what);

}  // namespace pivasym
