#pragma once

#include <string_view>

namespace qca {

inline constexpr std::string_view kToolName = "qcasim";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace qca
