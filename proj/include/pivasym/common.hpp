#pragma once

#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pivasym {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kA0 = 8.0 / 27.0;

inline cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

struct Tolerances {
  double quad = 1e-10;
  double newton = 1e-12;
};

// Error hierarchy. Every numeric failure derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

inline std::string fmt_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, double estimate)
      : Error(what + " (error estimate " + fmt_sci(estimate) + ")"),
        estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, cplx last) : Error(what), last_(last) {}
  cplx last_iterate() const { return last_; }

 private:
  cplx last_;
};

class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double cond)
      : Error(what), cond_(cond) {}
  double condition() const { return cond_; }

 private:
  double cond_;
};

class PoleError : public Error {
 public:
  PoleError(const std::string& what, cplx nearest)
      : Error(what), nearest_(nearest) {}
  cplx nearest_pole() const { return nearest_; }

 private:
  cplx nearest_;
};

class NonGenericError : public Error {
 public:
  using Error::Error;
};

class UnderdeterminedError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class TraceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pivasym
