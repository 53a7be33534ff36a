#include "conlift/report_format.hpp"

#include <charconv>
#include <cmath>

namespace conlift {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 14);
    return std::string(buf, res.ptr);
}

}  // namespace conlift
