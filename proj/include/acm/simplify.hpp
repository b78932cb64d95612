#pragma once

#include "acm/expr.hpp"

namespace acm::sym {

/// Value-preserving normalization: constant folding, 0/1 absorption, like-term
/// collection, merging of exp factors. Best effort, not a zero test; the
/// result is a fixed point of simplify (below the internal expansion cap).
Expr simplify(const Expr& e);

}  // namespace acm::sym
