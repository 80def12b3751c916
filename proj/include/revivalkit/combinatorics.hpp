#pragma once

#include <cmath>
#include <cstdint>

namespace revivalkit {

/// Exact binomial coefficient; 0 outside 0 <= k <= n. Exact for n <= 62.
constexpr std::uint64_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n-k+i) is divisible by i at every step
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

/// Multinomial N! / (a! b! (N-a-b)!); 0 when (a,b) is outside the triangle.
constexpr std::uint64_t multinomial(int n, int a, int b)
{
    if (a < 0 || b < 0 || a + b > n) {
        return 0;
    }
    return binomial(n, a) * binomial(n - a, b);
}

/// Rising factorial (a)_k computed term by term. Stops at the first zero
/// factor, so negative integer bases terminate cleanly.
inline double pochhammer(double a, int k)
{
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        const double f = a + i;
        if (f == 0.0) {
            return 0.0;
        }
        r *= f;
    }
    return r;
}

inline double factorial(int n)
{
    return std::tgamma(static_cast<double>(n) + 1.0);
}

} // namespace revivalkit
