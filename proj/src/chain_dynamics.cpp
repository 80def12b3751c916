#include "revivalkit/chain_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>
#include <limits>

#include <Eigen/Eigenvalues>

#include "revivalkit/errors.hpp"
#include "revivalkit/scan.hpp"

namespace revivalkit {

namespace {

TransferReport report_at(const SpectralPropagator& prop, double t, double tol)
{
    const Eigen::VectorXcd a = prop.column(t, 0);
    const int N = prop.dimension() - 1;
    TransferReport r;
    r.time = t;
    r.source_amplitude = a(0);
    r.target_amplitude = a(N);
    double off = 0.0;
    for (int n = 1; n < N; ++n) {
        off += std::norm(a(n));
    }
    r.leakage = off;
    if (off <= tol) {
        r.kind = (1.0 - std::abs(a(N)) <= tol) ? TransferKind::pst : TransferKind::fr;
    }
    return r;
}

// Number of eigenvalues below lambda (Sturm sequence of the LDL^T pivots).
int sturm_count(const std::vector<long double>& diag, const std::vector<long double>& sub2, long double lambda)
{
    int count = 0;
    long double d = 1.0L;
    for (std::size_t k = 0; k < diag.size(); ++k) {
        d = diag[k] - lambda - (k > 0 ? sub2[k - 1] / d : 0.0L);
        if (d == 0.0L) {
            d = -1e-4900L;
        }
        if (d < 0.0L) {
            ++count;
        }
    }
    return count;
}

// Eigenvalue s (ascending) by bisection in extended precision.
double refine_eigenvalue(const std::vector<long double>& diag, const std::vector<long double>& sub2, int s,
                         long double lo, long double hi)
{
    for (int it = 0; it < 200; ++it) {
        const long double mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (sturm_count(diag, sub2, mid) <= s) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return static_cast<double>((lo + hi) / 2);
}

} // namespace

Eigen::VectorXd EigenSystem::weights() const
{
    return vectors.row(0).transpose().array().square();
}

const char* to_string(TransferKind kind)
{
    switch (kind) {
    case TransferKind::pst:
        return "PST";
    case TransferKind::fr:
        return "FR";
    case TransferKind::none:
        break;
    }
    return "none";
}

EigenSystem eigendecompose(const RecurrenceCoefficients& coeffs)
{
    const int n = coeffs.sites();
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n - 1);
    for (int i = 0; i < n; ++i) {
        diag(i) = coeffs.field(i);
    }
    for (int i = 0; i + 1 < n; ++i) {
        sub(i) = coeffs.coupling(i + 1);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) {
        throw Error("tridiagonal eigensolver did not converge");
    }
    EigenSystem sys{es.eigenvalues(), es.eigenvectors()};

    std::vector<long double> d(static_cast<std::size_t>(n));
    std::vector<long double> e2(static_cast<std::size_t>(n - 1));
    long double lo = std::numeric_limits<long double>::max();
    long double hi = std::numeric_limits<long double>::lowest();
    for (int i = 0; i < n; ++i) {
        d[static_cast<std::size_t>(i)] = diag(i);
        const long double radius = (i > 0 ? std::abs(sub(i - 1)) : 0.0) + (i + 1 < n ? std::abs(sub(i)) : 0.0);
        lo = std::min(lo, d[static_cast<std::size_t>(i)] - radius);
        hi = std::max(hi, d[static_cast<std::size_t>(i)] + radius);
    }
    for (int i = 0; i + 1 < n; ++i) {
        e2[static_cast<std::size_t>(i)] = static_cast<long double>(sub(i)) * sub(i);
    }
    const long double pad = 1e-6L * (hi - lo) + 1e-300L;
    for (int s = 0; s < n; ++s) {
        sys.values(s) = refine_eigenvalue(d, e2, s, lo - pad, hi + pad);
    }
    for (int s = 0; s < n; ++s) {
        if (sys.vectors(0, s) < 0.0) {
            sys.vectors.col(s) *= -1.0;
        }
    }
    return sys;
}

SpectralPropagator make_propagator(const RecurrenceCoefficients& coeffs)
{
    EigenSystem sys = eigendecompose(coeffs);
    return SpectralPropagator(std::move(sys.values), std::move(sys.vectors));
}

Eigen::VectorXcd evolve(const RecurrenceCoefficients& coeffs, double t, int source)
{
    if (source < 0 || source > coeffs.degree()) {
        throw DomainError("source site outside 0..N");
    }
    return make_propagator(coeffs).column(t, source);
}

TransferReport detect_pst(const RecurrenceCoefficients& coeffs, double t_max, int grid, double tol)
{
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw DomainError("t_max must be positive");
    }
    if (grid < 2) {
        throw DomainError("scan grid needs at least two points");
    }
    const SpectralPropagator prop = make_propagator(coeffs);
    const int N = coeffs.degree();
    const Eigen::VectorXd& x = prop.values();
    // sqrt(w_s) and sqrt(w_s) chi_N(x_s)
    const Eigen::VectorXd head = prop.vectors().row(0).transpose();
    const Eigen::VectorXd tail = prop.vectors().row(N).transpose();

    // |a_N(t)|^2 and its time derivative 2 Re(conj(a) a').
    auto objective = [&](double t) {
        std::complex<double> a{};
        std::complex<double> da{};
        for (int s = 0; s < x.size(); ++s) {
            const std::complex<double> term = std::polar(head(s) * tail(s), -t * x(s));
            a += term;
            da += std::complex<double>(0.0, -x(s)) * term;
        }
        return std::pair<double, double>{std::norm(a), 2.0 * std::real(std::conj(a) * da)};
    };

    const auto values = scan::sample(t_max, grid, [&](double t) { return objective(t).first; });

    TransferReport best;
    best.time = 0.0;
    double best_value = -1.0;
    for (int k : scan::local_maxima(values)) {
        const double lo = scan::grid_time(t_max, grid, k - 1);
        const double hi = scan::grid_time(t_max, grid, std::min(k + 1, grid - 1));
        const scan::Peak peak = scan::refine_peak(objective, lo, hi);
        if (1.0 - std::sqrt(peak.value) <= tol) {
            TransferReport r = report_at(prop, peak.time, std::numeric_limits<double>::infinity());
            r.kind = TransferKind::pst;
            return r;
        }
        if (peak.value > best_value) {
            best_value = peak.value;
            best = report_at(prop, peak.time, std::numeric_limits<double>::infinity());
        }
    }
    best.kind = TransferKind::none;
    return best;
}

TransferReport detect_fr(const RecurrenceCoefficients& coeffs, double t, double tol)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("revival time must be positive");
    }
    return report_at(make_propagator(coeffs), t, tol);
}

} // namespace revivalkit
