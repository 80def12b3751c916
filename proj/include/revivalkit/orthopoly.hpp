#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace revivalkit {

/// Largest chain degree N accepted anywhere in the library.
inline constexpr int kMaxDegree = 64;

/// Three-term recurrence data of a Jacobi matrix, i.e. the specification of
/// a spin chain on sites 0..N: couplings J_1..J_N on the off-diagonal and
/// fields B_0..B_N on the diagonal.
///
/// Invariants: N >= 1, N <= kMaxDegree, every coupling strictly positive
/// and finite, every field finite.
class RecurrenceCoefficients {
public:
    /// Throws DomainError if the invariants do not hold.
    RecurrenceCoefficients(std::vector<double> couplings, std::vector<double> fields);

    /// Chain with zero fields.
    static RecurrenceCoefficients with_zero_fields(std::vector<double> couplings);

    int degree() const noexcept { return static_cast<int>(couplings_.size()); }
    int sites() const noexcept { return degree() + 1; }

    /// J_n for n = 1..N.
    double coupling(int n) const { return couplings_.at(static_cast<std::size_t>(n - 1)); }
    /// B_n for n = 0..N.
    double field(int n) const { return fields_.at(static_cast<std::size_t>(n)); }

    std::span<const double> couplings() const noexcept { return couplings_; }
    std::span<const double> fields() const noexcept { return fields_; }

    /// Dense (N+1)x(N+1) Jacobi matrix.
    Eigen::MatrixXd matrix() const;

private:
    std::vector<double> couplings_;
    std::vector<double> fields_;
};

struct KrawtchoukParams {
    int N;
    double p;

    /// Throws DomainError unless N >= 1 and 0 < p < 1.
    void validate() const;
};

struct ParaKrawtchoukParams {
    int N;
    double beta;
    double delta;

    /// Throws DomainError unless N is odd, beta > 0 and 0 < delta < 2.
    void validate() const;
};

/// K_n^N(x;p) as the terminating hypergeometric sum
///   sum_k (-n)_k (-x)_k / (k! (-N)_k) p^{-k}.
/// x may be any real; the sum stops at k = n.
double krawtchouk_eval(int n, double x, const KrawtchoukParams& params);

/// Couplings J_n = beta * sqrt(n (N+1-n)) / 2, zero fields.
RecurrenceCoefficients krawtchouk_chain(int N, double beta);

/// Closed-form para-Krawtchouk couplings (odd N only)
///   J_n = (beta/2) sqrt(n (N+1-n) ((N+1-2n)^2 - delta^2) / ((N-2n)(N-2n+2))).
/// Throws InfeasibleError if some J_n^2 <= 0. Even N chains are obtained by
/// reconstruct_jacobi(bilattice_spectrum(...)).
RecurrenceCoefficients para_krawtchouk_chain(const ParaKrawtchoukParams& params);

/// (chi_0(x), ..., chi_N(x)) from the forward orthonormal recurrence
///   x chi_n = J_{n+1} chi_{n+1} + B_n chi_n + J_n chi_{n-1},  chi_0 = 1.
std::vector<double> evaluate_chi(const RecurrenceCoefficients& coeffs, double x);

} // namespace revivalkit
