#pragma once

#include <string>

namespace conlift {

/// Scientific notation with 15 significant digits ("nan"/"inf" for
/// non-finite values). Locale independent, so output is byte-stable.
[[nodiscard]] std::string format_number(double v);

}  // namespace conlift
