#pragma once

#include <string_view>

namespace rds {

#ifndef RDS_VERSION_STRING
#define RDS_VERSION_STRING "0.0.0"
#endif

constexpr std::string_view version() noexcept { return RDS_VERSION_STRING; }

}  // namespace rds
