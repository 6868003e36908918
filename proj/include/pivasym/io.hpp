#pragma once

#include <string>

#include "pivasym/monodromy.hpp"

namespace pivasym {

// JSON text with complex numbers as [re, im].
std::string to_json(const CurveSpec& spec);
std::string to_json(const Periods& p);
std::string to_json(const MonodromyData& md);
std::string to_json(const AsymptoticSolution& as);

// DomainError on malformed input.
MonodromyData monodromy_from_json(const std::string& text);
// Rebuilds the elliptic data from phi and A_phi; the stored chi is kept.
AsymptoticSolution asymptotic_from_json(const std::string& text,
                                        const Tolerances& tol = {});

}  // namespace pivasym
