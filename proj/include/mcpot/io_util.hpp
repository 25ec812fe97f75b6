#pragma once

#include <cstdio>
#include <string>

namespace mcpot {

/// Doubles serialized with 17 significant digits round-trip bit-faithfully.
inline std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace mcpot
