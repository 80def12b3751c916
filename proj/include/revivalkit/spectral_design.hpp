#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "revivalkit/orthopoly.hpp"

namespace revivalkit {

/// Strictly increasing, finite eigenvalues x_0 < ... < x_N (N >= 1).
class Spectrum {
public:
    /// Throws DomainError on fewer than two points, non-finite points, or
    /// points that are not strictly increasing.
    explicit Spectrum(std::vector<double> points);

    int degree() const noexcept { return static_cast<int>(points_.size()) - 1; }
    std::span<const double> points() const noexcept { return points_; }
    double operator[](int s) const { return points_.at(static_cast<std::size_t>(s)); }

private:
    std::vector<double> points_;
};

/// Phase data certifying fractional revival at time T:
///   exp(-i T x_s) = exp(i phi) (cos theta + i (-1)^{N+s} sin theta),
/// with the resulting revival amplitudes mu = <e_0|U(T)|e_0> and
/// nu = <e_N|U(T)|e_0>.
struct FRCertificate {
    double time;
    double phase;
    double angle;
    std::complex<double> mu;
    std::complex<double> nu;

    /// |sin theta| = 1 within tol, i.e. the revival is a perfect transfer.
    bool is_pst(double tol = 1e-9) const;
};

struct FRCheck {
    std::optional<FRCertificate> certificate;
    /// First s whose phase relation fails, or -1 when accepted.
    int violating_index = -1;
    /// Largest |exp(-iTx_s) - predicted| over the points examined.
    double max_deviation = 0.0;

    explicit operator bool() const noexcept { return certificate.has_value(); }
};

/// Monic orthogonal polynomials P_0..P_{N+1} in the monomial basis
/// (ascending coefficients). Produced by the Euclidean route of
/// reconstruct_jacobi and exposed for inspection.
struct MonicFamily {
    std::vector<std::vector<double>> polynomials;

    /// Horner evaluation of P_n(x).
    double evaluate(int n, double x) const;
};

/// x_s = beta (s + (delta-1)(1-(-1)^s)/2 - (N-1+delta)/2), s = 0..N.
Spectrum bilattice_spectrum(int N, double beta, double delta);

/// Extracts (phi, theta) from s = 0,1 and checks the phase relation at every
/// s within tol on the unit circle. Rejection is a value, not an error.
FRCheck check_fr_condition(const Spectrum& spectrum, double T, double tol = 1e-9);

/// sigma_s = (-1)^{N+s}, s = 0..N: the values chi_N(x_s) must take for PST.
std::vector<int> pst_signs(int N);

/// Monic family from the spectrum: P_{N+1} = prod (x - x_s), P_N interpolating
/// kappa (-1)^{N+s} with kappa fixed by monicity, then downward division.
/// The spectrum is affinely mapped to [-1,1] before the polynomial work;
/// the returned polynomials are in that scaled variable.
MonicFamily monic_family(const Spectrum& spectrum);

/// Persymmetric Jacobi matrix with the given spectrum via Euclidean division
/// in the monomial basis. Accurate for small N only (see reconstruct_jacobi).
RecurrenceCoefficients reconstruct_jacobi_euclidean(const Spectrum& spectrum);

/// Same matrix via Lanczos on diag(x) started from sqrt(w), with the PST
/// weights w_s proportional to 1 / prod_{r != s} |x_s - x_r|.
RecurrenceCoefficients reconstruct_jacobi_lanczos(const Spectrum& spectrum);

/// Degree up to which reconstruct_jacobi uses the Euclidean route.
inline constexpr int kEuclideanMaxDegree = 6;

/// Inverse spectral problem for PST chains: the unique persymmetric Jacobi
/// matrix whose eigenvalues are `spectrum`. Dispatches on degree between the
/// Euclidean and Lanczos routes. Throws InfeasibleError with the offending
/// coupling index if some J_n^2 <= 0.
RecurrenceCoefficients reconstruct_jacobi(const Spectrum& spectrum);

/// Normalized PST weights w_s (sum 1) for the spectrum.
std::vector<double> pst_weights(const Spectrum& spectrum);

/// |J_{N-n+1} - J_n| <= tol and |B_{N-n} - B_n| <= tol for all n.
bool mirror_symmetric(const RecurrenceCoefficients& coeffs, double tol = 0.0);

} // namespace revivalkit
