#ifndef FPKS_VERSION_HPP
#define FPKS_VERSION_HPP

#include <string_view>

namespace fpks {

inline constexpr std::string_view kToolName = "fpks";
inline constexpr std::string_view kVersion = "1.0.0";

} // namespace fpks

#endif
