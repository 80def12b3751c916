#include "timespec.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "revivalkit/errors.hpp"

namespace revivalkit::cli {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_decimal(std::string_view s, std::string_view whole)
{
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw DomainError("cannot parse number '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

double parse_real(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s.empty()) {
        throw DomainError("empty number");
    }
    const auto at = s.find("pi");
    if (at == std::string_view::npos) {
        return parse_decimal(s, text);
    }

    std::string_view coef = s.substr(0, at);
    if (!coef.empty() && coef.back() == '*') {
        coef.remove_suffix(1);
    }
    double numerator = 1.0;
    if (coef == "-") {
        numerator = -1.0;
    } else if (coef == "+") {
        numerator = 1.0;
    } else if (!coef.empty()) {
        numerator = parse_decimal(coef, text);
    }

    std::string_view rest = s.substr(at + 2);
    double denominator = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw DomainError("cannot parse number '" + std::string(text) + "'");
        }
        denominator = parse_decimal(rest.substr(1), text);
        if (denominator == 0.0) {
            throw DomainError("division by zero in '" + std::string(text) + "'");
        }
    }
    return numerator * std::numbers::pi / denominator;
}

std::vector<double> parse_times(std::string_view text)
{
    std::vector<double> out;
    std::string_view rest = trim(text);
    if (rest.empty()) {
        return out;
    }
    for (;;) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        const auto c1 = item.find(':');
        if (c1 == std::string_view::npos) {
            out.push_back(parse_real(item));
        } else {
            const auto c2 = item.find(':', c1 + 1);
            if (c2 == std::string_view::npos || item.find(':', c2 + 1) != std::string_view::npos) {
                throw DomainError("range must be start:stop:step, got '" + std::string(item) + "'");
            }
            const double start = parse_real(item.substr(0, c1));
            const double stop = parse_real(item.substr(c1 + 1, c2 - c1 - 1));
            const double step = parse_real(item.substr(c2 + 1));
            if (!(step > 0.0) || stop < start) {
                throw DomainError("range needs step > 0 and stop >= start");
            }
            const double span = (stop - start) / step;
            if (span > 1e7) {
                throw DomainError("range has too many points");
            }
            const auto count = static_cast<long>(std::floor(span + 1e-9));
            for (long k = 0; k <= count; ++k) {
                out.push_back(start + static_cast<double>(k) * step);
            }
        }
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    return out;
}

} // namespace revivalkit::cli
