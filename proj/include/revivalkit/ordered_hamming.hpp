#pragma once

// Ordered 2-Hamming scheme on N-tuples of bit pairs. A word is packed two
// bits per position: bit 2j holds x_{j1}, bit 2j+1 holds x_{j2}. XOR of two
// words is their difference mod 2.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "revivalkit/bivariate_krawtchouk.hpp"
#include "revivalkit/propagate.hpp"

namespace revivalkit::ordered {

inline constexpr int kMaxFullSpaceDegree = 8;
inline constexpr int kMaxBoseMesnerDegree = 4;
inline constexpr int kMaxProjectionDegree = 7;
inline constexpr int kMaxEnumerationDegree = 8;
inline constexpr int kMaxLatticeDegree = bivariate::kMaxDegree;

using Word = std::uint32_t;

/// e1 = #pairs equal to (1,0), e2 = #pairs equal to (0,1) or (1,1).
struct Shape {
    int e1 = 0;
    int e2 = 0;

    friend bool operator==(const Shape&, const Shape&) = default;
};

/// Packs pairs (x_{j1}, x_{j2}), j = 0..N-1, into a word.
Word pack(std::span<const std::pair<int, int>> pairs);

Shape shape_of(Word x);

/// x ~_e y iff shape_of(x ^ y) == e.
bool related_under(Word x, Word y, Shape e);

/// k_{i,j} = multinomial(N; i, j) 2^j: number of words of shape (i, j).
std::uint64_t column_cardinality(int N, int i, int j);

/// Counts the 4^N words of shape (i, j) one by one (N <= kMaxEnumerationDegree).
std::uint64_t count_words_of_shape(int N, int i, int j);

/// All words of shape e on N positions, ascending. Empty if e is not a shape for N.
std::vector<Word> difference_words(int N, Shape e);

/// (A_e v)_x = sum over words d of shape e of v[x ^ d]. Throws DomainError
/// unless v.size() == 4^N with N <= kMaxFullSpaceDegree.
std::vector<cplx> scheme_adjacency_apply(int N, Shape e, std::span<const cplx> v);
std::vector<cplx> scheme_adjacency_apply_serial(int N, Shape e, std::span<const cplx> v);

struct BoseMesnerReport {
    int N = 0;
    std::int64_t max_deviation = 0;

    bool passed() const noexcept { return max_deviation == 0; }
};

/// Checks on every indicator vector, in integer arithmetic,
///   A10 A(i,j) = (N+1-i-j) A(i-1,j) + j A(i,j) + (i+1) A(i+1,j),
///   A01 A(i,j) = 2(N+1-i-j) A(i,j-1) + 2(i+1) A(i+1,j-1)
///              + (j+1) A(i-1,j+1) + (j+1) A(i,j+1),
/// with A(i,j) = 0 off the triangle.
BoseMesnerReport verify_ordered_bose_mesner(int N);

/// One-excitation operator on the triangle sites (i, j), i + j <= N:
///   H e_{i,j} = a sqrt((i+1)(N-i-j)) e_{i+1,j} + b sqrt(2(j+1)(N-i-j)) e_{i,j+1}
///             + a sqrt(i(N+1-i-j)) e_{i-1,j} + b sqrt(2j(N+1-i-j)) e_{i,j-1}
///             + b sqrt(2(i+1)j) e_{i+1,j-1} + b sqrt(2i(j+1)) e_{i-1,j+1} + a j e_{i,j}.
struct TriangleOperator {
    int N = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<bivariate::TriangleIndex> sites;
    Eigen::MatrixXd matrix;

    /// Position of (i, j) in `sites`, or -1 off the triangle.
    int site_index(int i, int j) const noexcept;
    /// lambda_{x,y} = a(N-2x) + b(2N-2x-4y) in the order of `sites`.
    Eigen::VectorXd predicted_eigenvalues() const;
};

TriangleOperator triangle_hamiltonian(int N, double alpha, double beta);

/// exp(-i t (a A10 + b A01)) psi on the full 4^N space.
std::vector<cplx> ordered_walk(int N, double alpha, double beta, double t, std::vector<cplx> psi);

struct ProjectionReport {
    int N = 0;
    double time = 0.0;
    /// Column amplitudes of the full-space walk, in triangle order.
    std::vector<cplx> column_amplitudes;
    double max_deviation = 0.0;
    /// Squared norm of the full-space state orthogonal to the column space.
    double leakage = 0.0;

    bool passed(double tol = 1e-8) const noexcept { return max_deviation < tol && leakage < tol; }
};

/// Walks the all-zero word in the full space, projects on the normalized
/// columns |col i,j> = k_{i,j}^{-1/2} sum_{shape(x)=(i,j)} |x> and compares
/// with the triangle operator evolved from (0,0).
ProjectionReport project_ordered_walk(int N, double alpha, double beta, double t);

/// f_{(k,l)}(t) = e^{-iN(a+2b)t} sqrt(2^l)/4^N sqrt(multinomial(N;k,l))
///   (1+2z1+z2)^{N-k-l} (1-2z1+z2)^k (1-z2)^l,  z1 = e^{2i(a+b)t}, z2 = e^{4ibt}.
std::complex<double> closed_form_amplitude(int N, double alpha, double beta, double t, int k, int l);

/// Amplitudes from site (0,0); values[time] is a vector in triangle order.
struct AmplitudeGrid {
    int N = 0;
    std::vector<bivariate::TriangleIndex> sites;
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> values;

    /// sum |f|^2 at time index k.
    double total_probability(std::size_t k) const;
    std::complex<double> at(std::size_t k, int i, int j) const;
};

/// Evolves the triangle operator from (0,0).
AmplitudeGrid lattice_amplitudes(int N, double alpha, double beta, std::span<const double> times);
/// Evaluates the closed form at every site.
AmplitudeGrid closed_form_grid(int N, double alpha, double beta, std::span<const double> times);

enum class EventKind { pst, fr };

const char* to_string(EventKind kind);

struct TransferEvent {
    EventKind kind;
    double time;
    /// Receiving site for PST; (0,0) for FR.
    bivariate::TriangleIndex site;
    /// 1 - |f_site| for PST, off-edge probability sum_{l>0} |f_{k,l}|^2 for FR.
    double deficit;
    /// |f|^2 in triangle order at the event.
    Eigen::VectorXd profile;
    /// max |f_lattice - f_closed_form| at the event.
    double closed_form_deviation;
};

struct TransferScan {
    int N = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double t_max = 0.0;
    std::vector<TransferEvent> events;

    /// First event of the given kind, or nullptr.
    const TransferEvent* first(EventKind kind) const noexcept;
};

inline constexpr int kDefaultScanGrid = 8192;
inline constexpr double kDefaultEventTol = 1e-9;

/// Scans (0, t_max] on a uniform grid and refines local maxima of
/// (a) the largest single-site probability away from (0,0), reported as PST
///     when 1 - |f_site| <= tol, and
/// (b) the probability on the edge j = 0, reported as FR when the off-edge
///     probability is <= tol and the event is not a PST or a return to (0,0).
/// Each event is cross-checked against the closed form.
TransferScan detect_2d_transfer(int N, double alpha, double beta, double t_max, double tol = kDefaultEventTol,
                                int grid = kDefaultScanGrid);

} // namespace revivalkit::ordered
