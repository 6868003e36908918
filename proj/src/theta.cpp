#include "pivasym/theta.hpp"

#include <cmath>

namespace pivasym {

namespace {

// Sums S_k = sum (2 pi i n)^k q^{n^2} e^{2 pi i n z}, k = 0..3.
std::array<cplx, 4> sums(cplx z, const ThetaContext& ctx) {
  std::array<cplx, 4> s{};
  const cplx tpi = 2.0 * kPi * kI;
  for (int n = -ctx.N; n <= ctx.N; ++n) {
    cplx e = std::exp(kPi * kI * ctx.tau * double(n) * double(n) +
                      tpi * z * double(n));
    cplx f = tpi * double(n);
    s[0] += e;
    s[1] += f * e;
    s[2] += f * f * e;
    s[3] += f * f * f * e;
  }
  return s;
}

struct Reduced {
  cplx z;
  double m;  // z_in = z + m tau + integer
};

Reduced reduce(cplx z, const ThetaContext& ctx) {
  double m = std::round(z.imag() / ctx.tau.imag());
  cplx zr = z - m * ctx.tau;
  zr -= std::round(zr.real());
  return {zr, m};
}

}  // namespace

ThetaContext::ThetaContext(cplx t) : tau(t), nu(0.5 * (1.0 + t)) {
  if (!(t.imag() > 0.0)) throw DomainError("theta: Im tau must be positive");
  // Terms after reduction are bounded by exp(-pi Im tau (n^2 - |n|)).
  double lq = kPi * t.imag();
  N = int(std::ceil(std::sqrt(std::log(1e18) / lq))) + 2;
  if (N < 3) N = 3;
}

cplx theta(cplx z, const ThetaContext& ctx) {
  Reduced r = reduce(z, ctx);
  auto s = sums(r.z, ctx);
  return s[0] * std::exp(-kPi * kI * r.m * r.m * ctx.tau -
                         2.0 * kPi * kI * r.m * r.z);
}

cplx theta_logderiv(cplx z, const ThetaContext& ctx) {
  Reduced r = reduce(z, ctx);
  auto s = sums(r.z, ctx);
  return s[1] / s[0] - 2.0 * kPi * kI * r.m;
}

std::array<cplx, 3> theta_logderivs(cplx z, const ThetaContext& ctx) {
  Reduced r = reduce(z, ctx);
  auto s = sums(r.z, ctx);
  cplx l1 = s[1] / s[0];
  cplx r2 = s[2] / s[0];
  cplx r3 = s[3] / s[0];
  cplx l2 = r2 - l1 * l1;
  cplx l3 = r3 - 3.0 * l1 * r2 + 2.0 * l1 * l1 * l1;
  return {l1 - 2.0 * kPi * kI * r.m, l2, l3};
}

std::array<cplx, 4> theta_derivs_raw(cplx z, const ThetaContext& ctx) {
  return sums(z, ctx);
}

}  // namespace pivasym
