#pragma once

#include <string_view>

namespace adsgeom {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kReportSchema = "adsgeom.report/1";

}  // namespace adsgeom
