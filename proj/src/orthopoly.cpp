#include "revivalkit/orthopoly.hpp"

#include <cmath>
#include <string>

#include "revivalkit/errors.hpp"

namespace revivalkit {

RecurrenceCoefficients::RecurrenceCoefficients(std::vector<double> couplings, std::vector<double> fields)
    : couplings_(std::move(couplings)), fields_(std::move(fields))
{
    if (couplings_.empty()) {
        throw DomainError("a chain needs at least two sites");
    }
    if (couplings_.size() > static_cast<std::size_t>(kMaxDegree)) {
        throw DomainError("chain degree exceeds the cap N <= " + std::to_string(kMaxDegree));
    }
    if (fields_.size() != couplings_.size() + 1) {
        throw DomainError("expected " + std::to_string(couplings_.size() + 1) + " fields, got "
                          + std::to_string(fields_.size()));
    }
    for (std::size_t n = 0; n < couplings_.size(); ++n) {
        if (!(couplings_[n] > 0.0) || !std::isfinite(couplings_[n])) {
            throw DomainError("coupling J_" + std::to_string(n + 1) + " must be positive and finite");
        }
    }
    for (std::size_t n = 0; n < fields_.size(); ++n) {
        if (!std::isfinite(fields_[n])) {
            throw DomainError("field B_" + std::to_string(n) + " must be finite");
        }
    }
}

RecurrenceCoefficients RecurrenceCoefficients::with_zero_fields(std::vector<double> couplings)
{
    std::vector<double> fields(couplings.size() + 1, 0.0);
    return RecurrenceCoefficients(std::move(couplings), std::move(fields));
}

Eigen::MatrixXd RecurrenceCoefficients::matrix() const
{
    const int n = sites();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = fields_[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = couplings_[static_cast<std::size_t>(i)];
        m(i + 1, i) = couplings_[static_cast<std::size_t>(i)];
    }
    return m;
}

void KrawtchoukParams::validate() const
{
    if (N < 1 || N > kMaxDegree) {
        throw DomainError("Krawtchouk degree cap N must be in 1.." + std::to_string(kMaxDegree));
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("Krawtchouk parameter p must lie in (0,1)");
    }
}

void ParaKrawtchoukParams::validate() const
{
    if (N < 1 || N > kMaxDegree || N % 2 == 0) {
        throw DomainError("para-Krawtchouk closed form needs odd N in 1.." + std::to_string(kMaxDegree));
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be positive");
    }
    if (!(delta > 0.0 && delta < 2.0)) {
        throw DomainError("delta must lie in (0,2)");
    }
}

double krawtchouk_eval(int n, double x, const KrawtchoukParams& params)
{
    params.validate();
    if (n < 0 || n > params.N) {
        throw DomainError("Krawtchouk degree n=" + std::to_string(n) + " outside 0.." + std::to_string(params.N));
    }
    const double inv_p = 1.0 / params.p;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < n; ++k) {
        // term_{k+1} / term_k = (-n+k)(-x+k) / ((k+1)(-N+k)) / p
        term *= (k - n) * (k - x) / ((k + 1.0) * (k - params.N)) * inv_p;
        if (term == 0.0) {
            break;
        }
        sum += term;
    }
    return sum;
}

RecurrenceCoefficients krawtchouk_chain(int N, double beta)
{
    if (N < 1 || N > kMaxDegree) {
        throw DomainError("Krawtchouk chain degree must be in 1.." + std::to_string(kMaxDegree));
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be positive");
    }
    std::vector<double> J(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        J[static_cast<std::size_t>(n - 1)] = beta * std::sqrt(static_cast<double>(n) * (N + 1 - n)) / 2.0;
    }
    return RecurrenceCoefficients::with_zero_fields(std::move(J));
}

RecurrenceCoefficients para_krawtchouk_chain(const ParaKrawtchoukParams& params)
{
    params.validate();
    const int N = params.N;
    const double d2 = params.delta * params.delta;
    std::vector<double> J(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        const double gap = N + 1 - 2 * n;
        const double num = static_cast<double>(n) * (N + 1 - n) * (gap * gap - d2);
        const double den = static_cast<double>(N - 2 * n) * (N - 2 * n + 2);
        const double j2 = params.beta * params.beta / 4.0 * num / den;
        if (!(j2 > 0.0)) {
            throw InfeasibleError("para-Krawtchouk coupling J_" + std::to_string(n) + "^2 is not positive", n);
        }
        J[static_cast<std::size_t>(n - 1)] = std::sqrt(j2);
    }
    // The closed form is mirror symmetric analytically; copy the lower half
    // so the symmetry also holds bit for bit.
    for (int n = 1; n <= N / 2; ++n) {
        J[static_cast<std::size_t>(N - n)] = J[static_cast<std::size_t>(n - 1)];
    }
    return RecurrenceCoefficients::with_zero_fields(std::move(J));
}

std::vector<double> evaluate_chi(const RecurrenceCoefficients& coeffs, double x)
{
    const int N = coeffs.degree();
    std::vector<double> chi(static_cast<std::size_t>(N + 1));
    chi[0] = 1.0;
    double prev = 0.0;
    for (int n = 0; n < N; ++n) {
        const double jn = n > 0 ? coeffs.coupling(n) : 0.0;
        const double next = ((x - coeffs.field(n)) * chi[static_cast<std::size_t>(n)] - jn * prev) / coeffs.coupling(n + 1);
        prev = chi[static_cast<std::size_t>(n)];
        chi[static_cast<std::size_t>(n + 1)] = next;
    }
    return chi;
}

} // namespace revivalkit
