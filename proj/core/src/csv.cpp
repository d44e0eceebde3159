#include <cmath>
#include <cstdio>

#include <gifnet/csv.hpp>

namespace gifnet {

std::string fmt_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0? "inf": "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace gifnet
