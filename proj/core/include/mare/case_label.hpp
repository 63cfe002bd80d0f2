#pragma once

#include <optional>
#include <string_view>

namespace mare {

/// Outcome of the three-way split on u1^T v1 - u2^T v2 for a singular K.
enum class CaseLabel { NonsingularK, CaseI, CaseII, CaseIII, DegenerateNullSpace };

/// "NonsingularK", "I", "II", "III", "Degenerate".
std::string_view to_string(CaseLabel label) noexcept;
std::optional<CaseLabel> parse_case_label(std::string_view text) noexcept;

}  // namespace mare
