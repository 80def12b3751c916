#pragma once

#include <complex>

#include <Eigen/Dense>

#include "revivalkit/orthopoly.hpp"
#include "revivalkit/spectral_propagator.hpp"

namespace revivalkit {

/// Full spectral decomposition of a Jacobi matrix. Column s of `vectors` is
/// the normalized eigenvector for values(s) (ascending), with its first
/// component strictly positive, so vectors(0, s) = sqrt(w_s) and
/// vectors(n, s) = sqrt(w_s) chi_n(x_s).
struct EigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;

    /// Spectral weights w_s = vectors(0, s)^2.
    Eigen::VectorXd weights() const;
};

enum class TransferKind { none, pst, fr };

const char* to_string(TransferKind kind);

/// Outcome of a PST/FR test on a chain, from site 0.
struct TransferReport {
    TransferKind kind = TransferKind::none;
    double time = 0.0;
    std::complex<double> source_amplitude;  // <e_0|U|e_0> (mu)
    std::complex<double> target_amplitude;  // <e_N|U|e_0> (nu)
    double leakage = 0.0;                   // probability off {0, N}
};

EigenSystem eigendecompose(const RecurrenceCoefficients& coeffs);

SpectralPropagator make_propagator(const RecurrenceCoefficients& coeffs);

/// amplitude_n(t) = sum_s V(n,s) exp(-i t x_s) V(source,s).
Eigen::VectorXcd evolve(const RecurrenceCoefficients& coeffs, double t, int source);

inline constexpr int kDefaultPstGrid = 4096;
inline constexpr double kDefaultTransferTol = 1e-9;

/// Scans |<e_N|U(t)|e_0>| on a uniform grid over [0, t_max], refines every
/// local maximum to width 1e-12 and reports the earliest time at which
/// 1 - |amplitude| <= tol. If no such time exists the best refined peak is
/// returned with kind none.
TransferReport detect_pst(const RecurrenceCoefficients& coeffs, double t_max, int grid = kDefaultPstGrid,
                          double tol = kDefaultTransferTol);

/// Evolves site 0 to time t and classifies: fr when the leakage is at most
/// tol, pst when in addition 1 - |nu| <= tol, none otherwise.
TransferReport detect_fr(const RecurrenceCoefficients& coeffs, double t, double tol = kDefaultTransferTol);

} // namespace revivalkit
