#pragma once

#include <optional>
#include <span>

#include "mare/matrix.hpp"

namespace mare::lp {

/// Phase-one dense simplex (Bland's rule): returns some x >= 0 with A x >= b,
/// or nullopt when the system is infeasible.
std::optional<Vector> find_feasible_point(const Matrix& a, std::span<const double> b);

}  // namespace mare::lp
