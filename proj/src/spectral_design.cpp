#include "revivalkit/spectral_design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "revivalkit/errors.hpp"

namespace revivalkit {

namespace {

using Poly = std::vector<double>;

double wrap_angle(double a)
{
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a;
}

// Affine map of the spectrum onto [-1,1]: y = (x - center) / half_width.
struct Scaling {
    double center;
    double half_width;
};

Scaling scaling_for(const Spectrum& spectrum)
{
    const auto pts = spectrum.points();
    return {(pts.front() + pts.back()) / 2.0, (pts.back() - pts.front()) / 2.0};
}

// prod (y - roots[s])
Poly from_roots(std::span<const double> roots)
{
    Poly p{1.0};
    for (double r : roots) {
        Poly q(p.size() + 1, 0.0);
        for (std::size_t k = 0; k < p.size(); ++k) {
            q[k + 1] += p[k];
            q[k] -= r * p[k];
        }
        p = std::move(q);
    }
    return p;
}

// Synthetic division of p by (y - r), dropping the remainder.
Poly deflate(const Poly& p, double r)
{
    const std::size_t deg = p.size() - 1;
    Poly q(deg, 0.0);
    double carry = p[deg];
    for (std::size_t k = deg; k-- > 0;) {
        q[k] = carry;
        carry = p[k] + r * carry;
    }
    return q;
}

double horner(const Poly& p, double y)
{
    double acc = 0.0;
    for (std::size_t k = p.size(); k-- > 0;) {
        acc = acc * y + p[k];
    }
    return acc;
}

struct DownwardResult {
    MonicFamily family;
    std::vector<double> fields;     // scaled B_n
    std::vector<double> couplings2; // scaled J_n^2
};

DownwardResult downward(const Spectrum& spectrum, const Scaling& sc)
{
    const int N = spectrum.degree();
    std::vector<double> y(static_cast<std::size_t>(N + 1));
    for (int s = 0; s <= N; ++s) {
        y[static_cast<std::size_t>(s)] = (spectrum[s] - sc.center) / sc.half_width;
    }

    std::vector<Poly> P(static_cast<std::size_t>(N + 2));
    P[static_cast<std::size_t>(N + 1)] = from_roots(y);

    // Lagrange interpolation of sigma_s = (-1)^{N+s}; the leading coefficient
    // sum_s sigma_s / prod_{r!=s}(y_s - y_r) is positive and fixes kappa.
    Poly interp(static_cast<std::size_t>(N + 1), 0.0);
    double lead = 0.0;
    for (int s = 0; s <= N; ++s) {
        double denom = 1.0;
        for (int r = 0; r <= N; ++r) {
            if (r != s) {
                denom *= y[static_cast<std::size_t>(s)] - y[static_cast<std::size_t>(r)];
            }
        }
        if (denom == 0.0 || !std::isfinite(denom)) {
            throw DomainError("interpolation nodes coincide at s=" + std::to_string(s));
        }
        const double sigma = ((N + s) % 2 == 0) ? 1.0 : -1.0;
        const Poly basis = deflate(P[static_cast<std::size_t>(N + 1)], y[static_cast<std::size_t>(s)]);
        const double c = sigma / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            interp[k] += c * basis[k];
        }
        lead += c;
    }
    for (double& c : interp) {
        c /= lead;
    }
    interp.back() = 1.0;
    P[static_cast<std::size_t>(N)] = std::move(interp);

    std::vector<double> fields(static_cast<std::size_t>(N + 1));
    std::vector<double> couplings2(static_cast<std::size_t>(N));
    // P_{n+1} = (y - B_n) P_n - J_n^2 P_{n-1}
    for (int n = N; n >= 0; --n) {
        const Poly& hi = P[static_cast<std::size_t>(n + 1)];
        const Poly& mid = P[static_cast<std::size_t>(n)];
        const double b = (n > 0 ? mid[static_cast<std::size_t>(n - 1)] : 0.0) - hi[static_cast<std::size_t>(n)];
        fields[static_cast<std::size_t>(n)] = b;
        if (n == 0) {
            break;
        }
        // remainder r = (y - b) mid - hi, degree n-1
        Poly rem(static_cast<std::size_t>(n), 0.0);
        for (int k = 0; k < n; ++k) {
            const double shifted = k > 0 ? mid[static_cast<std::size_t>(k - 1)] : 0.0;
            rem[static_cast<std::size_t>(k)] = shifted - b * mid[static_cast<std::size_t>(k)] - hi[static_cast<std::size_t>(k)];
        }
        const double j2 = rem[static_cast<std::size_t>(n - 1)];
        if (!(j2 > 0.0)) {
            throw InfeasibleError("spectrum infeasible for PST: J_" + std::to_string(n) + "^2 <= 0", n);
        }
        couplings2[static_cast<std::size_t>(n - 1)] = j2;
        for (double& c : rem) {
            c /= j2;
        }
        rem.back() = 1.0;
        P[static_cast<std::size_t>(n - 1)] = std::move(rem);
    }
    return {MonicFamily{std::move(P)}, std::move(fields), std::move(couplings2)};
}

} // namespace

Spectrum::Spectrum(std::vector<double> points) : points_(std::move(points))
{
    if (points_.size() < 2) {
        throw DomainError("a spectrum needs at least two points");
    }
    if (points_.size() > static_cast<std::size_t>(kMaxDegree) + 1) {
        throw DomainError("spectrum exceeds the cap N <= " + std::to_string(kMaxDegree));
    }
    for (std::size_t s = 0; s < points_.size(); ++s) {
        if (!std::isfinite(points_[s])) {
            throw DomainError("spectrum point x_" + std::to_string(s) + " is not finite");
        }
        if (s > 0 && !(points_[s] > points_[s - 1])) {
            throw DomainError("spectrum not strictly increasing at s=" + std::to_string(s));
        }
    }
}

bool FRCertificate::is_pst(double tol) const
{
    return 1.0 - std::abs(std::sin(angle)) <= tol;
}

double MonicFamily::evaluate(int n, double x) const
{
    return horner(polynomials.at(static_cast<std::size_t>(n)), x);
}

Spectrum bilattice_spectrum(int N, double beta, double delta)
{
    if (N < 1 || N > kMaxDegree) {
        throw DomainError("bilattice degree must be in 1.." + std::to_string(kMaxDegree));
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be positive");
    }
    if (!(delta > 0.0 && delta < 2.0)) {
        throw DomainError("delta must lie in (0,2); otherwise bilattice points collide or reorder");
    }
    std::vector<double> x(static_cast<std::size_t>(N + 1));
    for (int s = 0; s <= N; ++s) {
        const double odd = (s % 2 == 1) ? 1.0 : 0.0; // (1 - (-1)^s) / 2
        x[static_cast<std::size_t>(s)] = beta * (s + (delta - 1.0) * odd - 0.5 * (N - 1 + delta));
    }
    return Spectrum(std::move(x));
}

FRCheck check_fr_condition(const Spectrum& spectrum, double T, double tol)
{
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw DomainError("revival time T must be positive");
    }
    const int N = spectrum.degree();
    const double x0 = spectrum[0];
    const double x1 = spectrum[1];
    const double parity = (N % 2 == 0) ? 1.0 : -1.0;
    const double phi = wrap_angle(-T * (x0 + x1) / 2.0);
    const double theta = wrap_angle(parity * T * (x1 - x0) / 2.0);
    const std::complex<double> phase = std::polar(1.0, phi);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);

    FRCheck result;
    for (int s = 0; s <= N; ++s) {
        const double sigma = ((N + s) % 2 == 0) ? 1.0 : -1.0;
        const std::complex<double> predicted = phase * std::complex<double>(c, sigma * sn);
        const double dev = std::abs(std::polar(1.0, -T * spectrum[s]) - predicted);
        result.max_deviation = std::max(result.max_deviation, dev);
        if (dev > tol) {
            result.violating_index = s;
            return result;
        }
    }
    const std::complex<double> i(0.0, 1.0);
    result.certificate = FRCertificate{T, phi, theta, phase * c, i * phase * sn};
    return result;
}

std::vector<int> pst_signs(int N)
{
    if (N < 1) {
        throw DomainError("N must be at least 1");
    }
    std::vector<int> sigma(static_cast<std::size_t>(N + 1));
    for (int s = 0; s <= N; ++s) {
        sigma[static_cast<std::size_t>(s)] = ((N + s) % 2 == 0) ? 1 : -1;
    }
    return sigma;
}

MonicFamily monic_family(const Spectrum& spectrum)
{
    return downward(spectrum, scaling_for(spectrum)).family;
}

RecurrenceCoefficients reconstruct_jacobi_euclidean(const Spectrum& spectrum)
{
    const Scaling sc = scaling_for(spectrum);
    const DownwardResult r = downward(spectrum, sc);
    std::vector<double> J(r.couplings2.size());
    std::vector<double> B(r.fields.size());
    for (std::size_t n = 0; n < J.size(); ++n) {
        J[n] = sc.half_width * std::sqrt(r.couplings2[n]);
    }
    for (std::size_t n = 0; n < B.size(); ++n) {
        B[n] = sc.center + sc.half_width * r.fields[n];
    }
    return RecurrenceCoefficients(std::move(J), std::move(B));
}

std::vector<double> pst_weights(const Spectrum& spectrum)
{
    const int N = spectrum.degree();
    std::vector<double> logw(static_cast<std::size_t>(N + 1));
    for (int s = 0; s <= N; ++s) {
        double acc = 0.0;
        for (int r = 0; r <= N; ++r) {
            if (r != s) {
                acc -= std::log(std::abs(spectrum[s] - spectrum[r]));
            }
        }
        logw[static_cast<std::size_t>(s)] = acc;
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    double total = 0.0;
    for (double& v : logw) {
        v = std::exp(v - top);
        total += v;
    }
    for (double& v : logw) {
        v /= total;
    }
    return logw;
}

RecurrenceCoefficients reconstruct_jacobi_lanczos(const Spectrum& spectrum)
{
    // binary128 Lanczos with full reorthogonalization
    using quad = __float128;
    const int n = spectrum.degree() + 1;
    const auto un = static_cast<std::size_t>(n);
    std::vector<quad> x(un);
    for (std::size_t s = 0; s < un; ++s) {
        x[s] = spectrum[static_cast<int>(s)];
    }
    auto dot = [un](const std::vector<quad>& a, const std::vector<quad>& b) {
        quad acc = 0;
        for (std::size_t s = 0; s < un; ++s) {
            acc += a[s] * b[s];
        }
        return acc;
    };
    auto qsqrt = [](quad v) {
        quad r = std::sqrt(static_cast<double>(v));
        for (int it = 0; it < 3; ++it) {
            r = (r + v / r) / 2;
        }
        return r;
    };

    std::vector<std::vector<quad>> Q;
    // sqrt(w_s), w_s = 1 / prod_{r != s} |x_s - x_r|
    Q.emplace_back(un);
    for (std::size_t s = 0; s < un; ++s) {
        quad prod = 1;
        for (std::size_t r = 0; r < un; ++r) {
            if (r != s) {
                prod *= x[s] > x[r] ? x[s] - x[r] : x[r] - x[s];
            }
        }
        Q[0][s] = 1 / qsqrt(prod);
    }
    {
        const quad norm = qsqrt(dot(Q[0], Q[0]));
        for (quad& c : Q[0]) {
            c /= norm;
        }
    }
    std::vector<double> B(un);
    std::vector<double> J(un - 1);
    for (int k = 0; k < n; ++k) {
        const auto& q = Q[static_cast<std::size_t>(k)];
        std::vector<quad> v(un);
        for (std::size_t s = 0; s < un; ++s) {
            v[s] = x[s] * q[s];
        }
        B[static_cast<std::size_t>(k)] = static_cast<double>(dot(q, v));
        if (k + 1 == n) {
            break;
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : Q) {
                const quad c = dot(b, v);
                for (std::size_t s = 0; s < un; ++s) {
                    v[s] -= c * b[s];
                }
            }
        }
        const quad norm2 = dot(v, v);
        if (!(norm2 > 0)) {
            throw InfeasibleError("spectrum infeasible for PST: J_" + std::to_string(k + 1) + " vanishes", k + 1);
        }
        const quad norm = qsqrt(norm2);
        J[static_cast<std::size_t>(k)] = static_cast<double>(norm);
        for (quad& c : v) {
            c /= norm;
        }
        Q.push_back(std::move(v));
    }
    return RecurrenceCoefficients(std::move(J), std::move(B));
}

RecurrenceCoefficients reconstruct_jacobi(const Spectrum& spectrum)
{
    if (spectrum.degree() <= kEuclideanMaxDegree) {
        return reconstruct_jacobi_euclidean(spectrum);
    }
    return reconstruct_jacobi_lanczos(spectrum);
}

bool mirror_symmetric(const RecurrenceCoefficients& coeffs, double tol)
{
    const int N = coeffs.degree();
    for (int n = 1; n <= N; ++n) {
        if (std::abs(coeffs.coupling(N - n + 1) - coeffs.coupling(n)) > tol) {
            return false;
        }
    }
    for (int n = 0; n <= N; ++n) {
        if (std::abs(coeffs.field(N - n) - coeffs.field(n)) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace revivalkit
