#include "revivalkit/hamming_scheme.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "revivalkit/chain_dynamics.hpp"
#include "revivalkit/combinatorics.hpp"
#include "revivalkit/errors.hpp"

namespace revivalkit::hamming {

namespace {

void check_degree(int N, int cap, const char* what)
{
    if (N < 1 || N > cap) {
        throw DomainError(std::string(what) + " needs 1 <= N <= " + std::to_string(cap));
    }
}

std::vector<cplx> apply_checked(int N, int i, std::span<const cplx> v, bool parallel)
{
    check_degree(N, kMaxFullSpaceDegree, "adjacency_apply");
    if (i < 0 || i > N) {
        throw DomainError("relation index i=" + std::to_string(i) + " outside 0..N");
    }
    if (v.size() != (std::size_t{1} << N)) {
        throw DomainError("vector length " + std::to_string(v.size()) + " does not match 2^N = "
                          + std::to_string(std::size_t{1} << N));
    }
    const auto masks = masks_of_weight(N, i);
    std::vector<cplx> out(v.size());
    if (parallel) {
        apply_masks<cplx>(masks, v, out);
    } else {
        apply_masks_serial<cplx>(masks, v, out);
    }
    return out;
}

// Adds `scale` at every y ^ m for the support of `src` into `dst`.
void scatter(std::span<const std::uint32_t> masks, const std::vector<std::int64_t>& src, std::int64_t scale,
             std::vector<std::int64_t>& dst)
{
    for (std::size_t x = 0; x < src.size(); ++x) {
        if (src[x] == 0) {
            continue;
        }
        const std::int64_t c = scale * src[x];
        for (std::uint32_t m : masks) {
            dst[static_cast<std::uint32_t>(x) ^ m] += c;
        }
    }
}

} // namespace

std::vector<std::uint32_t> masks_of_weight(int N, int i)
{
    if (N < 0 || N > 31) {
        throw DomainError("word length must be in 0..31");
    }
    std::vector<std::uint32_t> out;
    if (i < 0 || i > N) {
        return out;
    }
    out.reserve(binomial(N, i));
    const std::uint32_t limit = std::uint32_t{1} << N;
    for (std::uint32_t m = 0; m < limit; ++m) {
        if (std::popcount(m) == i) {
            out.push_back(m);
        }
    }
    return out;
}

std::vector<cplx> adjacency_apply(int N, int i, std::span<const cplx> v)
{
    return apply_checked(N, i, v, true);
}

std::vector<cplx> adjacency_apply_serial(int N, int i, std::span<const cplx> v)
{
    return apply_checked(N, i, v, false);
}

BoseMesnerReport verify_bose_mesner(int N)
{
    check_degree(N, kMaxBoseMesnerDegree, "verify_bose_mesner");
    const std::size_t dim = std::size_t{1} << N;
    std::vector<std::vector<std::uint32_t>> masks(static_cast<std::size_t>(N + 1));
    for (int i = 0; i <= N; ++i) {
        masks[static_cast<std::size_t>(i)] = masks_of_weight(N, i);
    }
    const std::vector<std::uint32_t> none;
    auto relation = [&](int i) -> std::span<const std::uint32_t> {
        return (i < 0 || i > N) ? std::span<const std::uint32_t>(none) : std::span<const std::uint32_t>(masks[static_cast<std::size_t>(i)]);
    };

    std::int64_t worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
    for (std::int64_t y = 0; y < static_cast<std::int64_t>(dim); ++y) {
        std::vector<std::int64_t> e(dim, 0);
        e[static_cast<std::size_t>(y)] = 1;
        std::vector<std::int64_t> ai(dim);
        std::vector<std::int64_t> lhs(dim);
        std::vector<std::int64_t> rhs(dim);
        for (int i = 0; i <= N; ++i) {
            std::fill(ai.begin(), ai.end(), 0);
            std::fill(lhs.begin(), lhs.end(), 0);
            std::fill(rhs.begin(), rhs.end(), 0);
            scatter(relation(i), e, 1, ai);
            scatter(relation(1), ai, 1, lhs);
            scatter(relation(i + 1), e, i + 1, rhs);
            scatter(relation(i - 1), e, N - i + 1, rhs);
            for (std::size_t x = 0; x < dim; ++x) {
                worst = std::max(worst, std::abs(lhs[x] - rhs[x]));
            }
        }
    }
    return {N, worst};
}

KrawtchoukEigenReport krawtchouk_eigenvalue_check(int N, std::uint64_t seed)
{
    check_degree(N, kMaxEigenCheckDegree, "krawtchouk_eigenvalue_check");
    const std::size_t dim = std::size_t{1} << N;
    std::vector<std::vector<std::uint32_t>> masks(static_cast<std::size_t>(N + 1));
    for (int i = 0; i <= N; ++i) {
        masks[static_cast<std::size_t>(i)] = masks_of_weight(N, i);
    }

    KrawtchoukEigenReport report;
    report.N = N;
    report.eigenvalues.resize(N + 1, N + 1);
    const KrawtchoukParams half{N, 0.5};
    for (int s = 0; s <= N; ++s) {
        for (int i = 0; i <= N; ++i) {
            report.eigenvalues(s, i) = static_cast<double>(binomial(N, i)) * krawtchouk_eval(i, s, half);
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<double> seed_vec(dim);
    for (double& c : seed_vec) {
        c = gauss(rng);
    }

    auto norm = [](const std::vector<double>& v) {
        double acc = 0.0;
        for (double c : v) {
            acc += c * c;
        }
        return std::sqrt(acc);
    };

    std::vector<double> tmp(dim);
    std::vector<double> image(dim);
    const auto& adj1 = masks[1];
    for (int s = 0; s <= N; ++s) {
        const double lambda_s = N - 2.0 * s;
        std::vector<double> v = seed_vec;
        for (int r = 0; r <= N; ++r) {
            if (r == s) {
                continue;
            }
            const double lambda_r = N - 2.0 * r;
            apply_masks<double>(adj1, v, tmp);
            for (std::size_t x = 0; x < dim; ++x) {
                v[x] = (tmp[x] - lambda_r * v[x]) / (lambda_s - lambda_r);
            }
        }
        const double vn = norm(v);
        for (double& c : v) {
            c /= vn;
        }
        for (int i = 0; i <= N; ++i) {
            apply_masks<double>(masks[static_cast<std::size_t>(i)], v, image);
            const double mu = report.eigenvalues(s, i);
            double res = 0.0;
            for (std::size_t x = 0; x < dim; ++x) {
                const double d = image[x] - mu * v[x];
                res += d * d;
            }
            report.max_residual = std::max(report.max_residual, std::sqrt(res));
        }
        apply_masks<double>(adj1, v, image);
        double res = 0.0;
        for (std::size_t x = 0; x < dim; ++x) {
            const double d = image[x] - lambda_s * v[x];
            res += d * d;
        }
        report.max_residual = std::max(report.max_residual, std::sqrt(res));
    }
    return report;
}

RecurrenceCoefficients project_hypercube(int N)
{
    check_degree(N, kMaxDegree, "project_hypercube");
    std::vector<double> J(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        J[static_cast<std::size_t>(n - 1)] = std::sqrt(static_cast<double>(n) * (N - n + 1));
    }
    return RecurrenceCoefficients::with_zero_fields(std::move(J));
}

std::vector<cplx> hypercube_walk(int N, double t, std::vector<cplx> psi)
{
    check_degree(N, kMaxFullSpaceDegree, "hypercube_walk");
    if (psi.size() != (std::size_t{1} << N)) {
        throw DomainError("state length does not match 2^N");
    }
    const auto adj1 = masks_of_weight(N, 1);
    auto apply = [&](std::span<const cplx> in, std::span<cplx> out) { apply_masks<cplx>(adj1, in, out); };
    taylor_propagate(apply, static_cast<double>(N), t, psi);
    return psi;
}

ProjectionReport projection_equivalence(int N, double t)
{
    check_degree(N, kMaxProjectionDegree, "projection_equivalence");
    const std::size_t dim = std::size_t{1} << N;
    std::vector<cplx> psi(dim);
    psi[0] = 1.0;
    psi = hypercube_walk(N, t, std::move(psi));

    ProjectionReport report;
    report.N = N;
    report.time = t;
    report.column_amplitudes.assign(static_cast<std::size_t>(N + 1), cplx{});
    for (std::size_t x = 0; x < dim; ++x) {
        report.column_amplitudes[static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(x)))] += psi[x];
    }
    for (int n = 0; n <= N; ++n) {
        report.column_amplitudes[static_cast<std::size_t>(n)] /= std::sqrt(static_cast<double>(binomial(N, n)));
    }
    // psi minus its projection sum_n c_n |col n>
    for (std::size_t x = 0; x < dim; ++x) {
        const int n = std::popcount(static_cast<std::uint32_t>(x));
        const cplx in_span = report.column_amplitudes[static_cast<std::size_t>(n)] / std::sqrt(static_cast<double>(binomial(N, n)));
        report.leakage += std::norm(psi[x] - in_span);
    }

    const Eigen::VectorXcd chain = evolve(project_hypercube(N), t, 0);
    for (int n = 0; n <= N; ++n) {
        report.max_deviation = std::max(report.max_deviation, std::abs(chain(n) - report.column_amplitudes[static_cast<std::size_t>(n)]));
    }
    return report;
}

} // namespace revivalkit::hamming
