#pragma once

#define NETCOMP_VERSION_MAJOR 0
#define NETCOMP_VERSION_MINOR 1
#define NETCOMP_VERSION_PATCH 0

namespace netcomp {
inline constexpr const char* version_string = "0.1.0";
}
