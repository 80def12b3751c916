#include "revivalkit/spectral_propagator.hpp"

#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "revivalkit/errors.hpp"

namespace revivalkit {

SpectralPropagator::SpectralPropagator(const Eigen::MatrixXd& hamiltonian)
{
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0) {
        throw DomainError("Hamiltonian must be a non-empty square matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian);
    if (es.info() != Eigen::Success) {
        throw Error("symmetric eigensolver did not converge");
    }
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
}

SpectralPropagator::SpectralPropagator(Eigen::VectorXd values, Eigen::MatrixXd vectors)
    : values_(std::move(values)), vectors_(std::move(vectors))
{
    if (vectors_.rows() != values_.size() || vectors_.cols() != values_.size()) {
        throw DomainError("eigensystem dimensions disagree");
    }
}

Eigen::VectorXcd SpectralPropagator::column(double t, int source) const
{
    if (source < 0 || source >= dimension()) {
        throw DomainError("source site " + std::to_string(source) + " out of range");
    }
    Eigen::VectorXcd coeff(dimension());
    for (int k = 0; k < dimension(); ++k) {
        coeff(k) = std::polar(vectors_(source, k), -t * values_(k));
    }
    return vectors_.cast<std::complex<double>>() * coeff;
}

Eigen::VectorXcd SpectralPropagator::column_derivative(double t, int source) const
{
    if (source < 0 || source >= dimension()) {
        throw DomainError("source site " + std::to_string(source) + " out of range");
    }
    const std::complex<double> minus_i(0.0, -1.0);
    Eigen::VectorXcd coeff(dimension());
    for (int k = 0; k < dimension(); ++k) {
        coeff(k) = minus_i * values_(k) * std::polar(vectors_(source, k), -t * values_(k));
    }
    return vectors_.cast<std::complex<double>>() * coeff;
}

Eigen::MatrixXcd SpectralPropagator::matrix(double t) const
{
    Eigen::VectorXcd phases(dimension());
    for (int k = 0; k < dimension(); ++k) {
        phases(k) = std::polar(1.0, -t * values_(k));
    }
    const Eigen::MatrixXcd v = vectors_.cast<std::complex<double>>();
    return v * phases.asDiagonal() * v.transpose();
}

} // namespace revivalkit
