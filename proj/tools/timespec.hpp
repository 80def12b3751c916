#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace revivalkit::cli {

/// Parses one real: a decimal literal, or a multiple of pi such as "pi",
/// "pi/4", "3pi/4", "3*pi/4", "-pi/2", "0.5pi". Throws DomainError.
double parse_real(std::string_view text);

/// Comma-separated list of entries, each a real or an inclusive range
/// "start:stop:step" (stop is kept when it lies on the grid within 1e-9 steps).
std::vector<double> parse_times(std::string_view text);

} // namespace revivalkit::cli
