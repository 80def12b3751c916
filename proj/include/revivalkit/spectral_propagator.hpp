#pragma once

#include <Eigen/Dense>

namespace revivalkit {

/// U(t) = exp(-i t H) for a real symmetric H, evaluated through its
/// eigendecomposition H = V diag(lambda) V^T.
class SpectralPropagator {
public:
    /// Diagonalizes a dense symmetric matrix.
    explicit SpectralPropagator(const Eigen::MatrixXd& hamiltonian);
    /// Uses a precomputed orthonormal eigensystem (columns of `vectors`).
    SpectralPropagator(Eigen::VectorXd values, Eigen::MatrixXd vectors);

    int dimension() const noexcept { return static_cast<int>(values_.size()); }
    const Eigen::VectorXd& values() const noexcept { return values_; }
    const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }

    /// U(t) e_source.
    Eigen::VectorXcd column(double t, int source) const;
    /// d/dt U(t) e_source = -i H U(t) e_source.
    Eigen::VectorXcd column_derivative(double t, int source) const;
    /// Dense U(t).
    Eigen::MatrixXcd matrix(double t) const;

private:
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
};

} // namespace revivalkit
