#pragma once

// Binary Hamming scheme H(N,2) on {0,1}^N, vertices packed as N-bit words.
// All adjacency matrices A_i (pairs at Hamming distance i) are applied
// matrix-free by XOR-ing with the C(N,i) masks of weight i.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "revivalkit/orthopoly.hpp"
#include "revivalkit/propagate.hpp"

namespace revivalkit::hamming {

/// Vector length cap 2^N for full-space operations.
inline constexpr int kMaxFullSpaceDegree = 20;
inline constexpr int kMaxBoseMesnerDegree = 10;
inline constexpr int kMaxEigenCheckDegree = 10;
inline constexpr int kMaxProjectionDegree = 14;

/// All N-bit words of popcount i, ascending.
std::vector<std::uint32_t> masks_of_weight(int N, int i);

/// out[x] = sum_m v[x ^ m] over the given masks; OpenMP-parallel over x.
template <class T>
void apply_masks(std::span<const std::uint32_t> masks, std::span<const T> v, std::span<T> out)
{
    const auto dim = static_cast<std::int64_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < dim; ++x) {
        T acc{};
        const auto ux = static_cast<std::uint32_t>(x);
        for (std::uint32_t m : masks) {
            acc += v[ux ^ m];
        }
        out[static_cast<std::size_t>(x)] = acc;
    }
}

/// Serial reference for apply_masks().
template <class T>
void apply_masks_serial(std::span<const std::uint32_t> masks, std::span<const T> v, std::span<T> out)
{
    for (std::size_t x = 0; x < v.size(); ++x) {
        T acc{};
        for (std::uint32_t m : masks) {
            acc += v[static_cast<std::uint32_t>(x) ^ m];
        }
        out[x] = acc;
    }
}

/// (A_i v)_x = sum_{d(x,y)=i} v_y. Throws DomainError unless
/// v.size() == 2^N and 0 <= i <= N <= kMaxFullSpaceDegree.
std::vector<cplx> adjacency_apply(int N, int i, std::span<const cplx> v);
std::vector<cplx> adjacency_apply_serial(int N, int i, std::span<const cplx> v);

struct BoseMesnerReport {
    int N = 0;
    /// max |(A_1 A_i - (i+1) A_{i+1} - (N-i+1) A_{i-1}) e_y| over all i, y.
    std::int64_t max_deviation = 0;

    bool passed() const noexcept { return max_deviation == 0; }
};

/// Checks A_1 A_i = (i+1) A_{i+1} + (N-i+1) A_{i-1} (A_{-1} = A_{N+1} = 0)
/// exactly in integer arithmetic on every indicator vector.
BoseMesnerReport verify_bose_mesner(int N);

struct KrawtchoukEigenReport {
    int N = 0;
    /// eigenvalues(s, i) = C(N,i) K_i^N(s; 1/2).
    Eigen::MatrixXd eigenvalues;
    /// max ||A_i v_s - eigenvalues(s,i) v_s|| / ||v_s||, also covering A_1 v_s = (N-2s) v_s.
    double max_residual = 0.0;

    bool passed(double tol = 1e-8) const noexcept { return max_residual < tol; }
};

/// Projects a seeded random vector onto each eigenspace of A_1 (eigenvalue
/// N-2s) with the Lagrange projector prod_{r!=s} (A_1 - l_r)/(l_s - l_r) and
/// checks that every A_i acts on it as C(N,i) K_i^N(s;1/2).
KrawtchoukEigenReport krawtchouk_eigenvalue_check(int N, std::uint64_t seed = 0);

/// Quotient chain of A_1 on the column vectors: J_n = sqrt(n (N-n+1)), B_n = 0.
RecurrenceCoefficients project_hypercube(int N);

/// exp(-i t A_1) psi on the full 2^N space (Taylor stepping, matrix-free).
std::vector<cplx> hypercube_walk(int N, double t, std::vector<cplx> psi);

struct ProjectionReport {
    int N = 0;
    double time = 0.0;
    /// Column amplitudes of the full-space walk started at 0...0.
    std::vector<cplx> column_amplitudes;
    /// max |column amplitude - quotient chain amplitude|.
    double max_deviation = 0.0;
    /// Squared norm of the full-space state orthogonal to the column space.
    double leakage = 0.0;

    bool passed(double tol = 1e-9) const noexcept { return max_deviation < tol && leakage < tol; }
};

/// Compares the full hypercube walk, projected onto the columns, with the
/// evolution of project_hypercube(N) from site 0.
ProjectionReport projection_equivalence(int N, double t);

} // namespace revivalkit::hamming
