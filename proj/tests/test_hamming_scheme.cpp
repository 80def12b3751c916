#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "revivalkit/chain_dynamics.hpp"
#include "revivalkit/combinatorics.hpp"
#include "revivalkit/errors.hpp"
#include "revivalkit/hamming_scheme.hpp"

using namespace revivalkit;
using doctest::Approx;

namespace {

std::vector<cplx> indicator(int N, std::uint32_t x)
{
    std::vector<cplx> v(std::size_t{1} << N);
    v[x] = 1.0;
    return v;
}

} // namespace

TEST_CASE("masks_of_weight")
{
    const auto m = hamming::masks_of_weight(4, 2);
    CHECK(m == std::vector<std::uint32_t>{3, 5, 6, 9, 10, 12});
    for (int N = 0; N <= 10; ++N) {
        for (int i = 0; i <= N; ++i) {
            const auto masks = hamming::masks_of_weight(N, i);
            CHECK(masks.size() == binomial(N, i));
            for (auto x : masks) {
                CHECK(std::popcount(x) == i);
            }
        }
    }
}

TEST_CASE("adjacency_apply small cases")
{
    std::vector<cplx> v{1.0, 2.0, 3.0, 4.0};
    CHECK(hamming::adjacency_apply(2, 0, v) == v);

    const auto a1 = hamming::adjacency_apply(2, 1, indicator(2, 0));
    CHECK(a1 == std::vector<cplx>{0.0, 1.0, 1.0, 0.0});
    const auto a2 = hamming::adjacency_apply(2, 2, indicator(2, 0));
    CHECK(a2 == std::vector<cplx>{0.0, 0.0, 0.0, 1.0});

    CHECK_THROWS_AS(hamming::adjacency_apply(2, 1, std::vector<cplx>(3)), DomainError);
    CHECK_THROWS_AS(hamming::adjacency_apply(2, 3, v), DomainError);
}

TEST_CASE("adjacency rows sum to the degree")
{
    for (int N : {3, 6, 9}) {
        const std::vector<cplx> ones(std::size_t{1} << N, 1.0);
        for (int i = 0; i <= N; ++i) {
            const auto out = hamming::adjacency_apply(N, i, ones);
            for (const auto& z : out) {
                CHECK(z.real() == static_cast<double>(binomial(N, i)));
            }
        }
    }
}

TEST_CASE("Bose-Mesner relation is exact")
{
    for (int N = 1; N <= hamming::kMaxBoseMesnerDegree; ++N) {
        const auto r = hamming::verify_bose_mesner(N);
        CHECK(r.passed());
        CHECK(r.max_deviation == 0);
    }
    CHECK_THROWS_AS(hamming::verify_bose_mesner(hamming::kMaxBoseMesnerDegree + 1), DomainError);
}

TEST_CASE("Krawtchouk eigenvalues of the scheme")
{
    const auto r3 = hamming::krawtchouk_eigenvalue_check(3);
    const double expected[4][4] = {{1, 3, 3, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, -3, 3, -1}};
    for (int s = 0; s <= 3; ++s) {
        for (int i = 0; i <= 3; ++i) {
            CHECK(r3.eigenvalues(s, i) == Approx(expected[s][i]));
        }
    }
    for (int N = 1; N <= hamming::kMaxEigenCheckDegree; ++N) {
        const auto r = hamming::krawtchouk_eigenvalue_check(N, 17);
        CHECK(r.passed());
        for (int s = 0; s <= N; ++s) {
            CHECK(r.eigenvalues(s, 0) == Approx(1.0));
            CHECK(r.eigenvalues(s, 1) == Approx(N - 2.0 * s));
        }
        const Eigen::MatrixXd P = r.eigenvalues;
        const Eigen::MatrixXd sq = P * P;
        CHECK((sq - std::ldexp(1.0, N) * Eigen::MatrixXd::Identity(N + 1, N + 1)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("column space is invariant under A_1")
{
    for (int N = 1; N <= 10; ++N) {
        for (int n = 0; n <= N; ++n) {
            std::vector<cplx> col(std::size_t{1} << N);
            const double norm = 1.0 / std::sqrt(static_cast<double>(binomial(N, n)));
            for (auto m : hamming::masks_of_weight(N, n)) {
                col[m] = norm;
            }
            const auto out = hamming::adjacency_apply(N, 1, col);
            const double up = std::sqrt((n + 1.0) * (N - n));
            const double down = std::sqrt(n * (N - n + 1.0));
            double err = 0.0;
            for (std::size_t x = 0; x < out.size(); ++x) {
                const int w = std::popcount(static_cast<std::uint32_t>(x));
                double expected = 0.0;
                if (w == n + 1) {
                    expected = up / std::sqrt(static_cast<double>(binomial(N, n + 1)));
                } else if (w == n - 1) {
                    expected = down / std::sqrt(static_cast<double>(binomial(N, n - 1)));
                }
                err = std::max(err, std::abs(out[x] - expected));
            }
            CHECK(err < 1e-12);
        }
    }
}

TEST_CASE("project_hypercube")
{
    CHECK(hamming::project_hypercube(1).coupling(1) == Approx(1.0));
    const auto c2 = hamming::project_hypercube(2);
    CHECK(c2.coupling(1) == Approx(std::sqrt(2.0)));
    CHECK(c2.coupling(2) == Approx(std::sqrt(2.0)));
    for (int N = 1; N <= 12; ++N) {
        const auto a = hamming::project_hypercube(N);
        const auto b = krawtchouk_chain(N, 2.0);
        for (int n = 1; n <= N; ++n) {
            CHECK(a.coupling(n) == Approx(b.coupling(n)).epsilon(1e-15));
        }
    }
}

TEST_CASE("projection_equivalence")
{
    const auto r0 = hamming::projection_equivalence(5, 0.0);
    CHECK(std::abs(r0.column_amplitudes[0] - cplx(1.0)) < 1e-15);
    CHECK(r0.passed());

    const auto pst = hamming::projection_equivalence(3, std::numbers::pi / 2);
    CHECK(std::abs(pst.column_amplitudes[3]) == Approx(1.0).epsilon(1e-10));
    CHECK(pst.passed());

    for (int N = 1; N <= 10; ++N) {
        const auto r = hamming::projection_equivalence(N, 0.7);
        CHECK(r.max_deviation < 1e-9);
        CHECK(r.leakage < 1e-9);
    }
}

TEST_CASE("hypercube walk from a random state is unitary")
{
    const int N = 8;
    std::vector<cplx> psi(std::size_t{1} << N);
    double norm = 0.0;
    for (std::size_t x = 0; x < psi.size(); ++x) {
        psi[x] = cplx(std::sin(1.0 + static_cast<double>(x)), std::cos(3.0 * static_cast<double>(x)));
        norm += std::norm(psi[x]);
    }
    for (auto& z : psi) {
        z /= std::sqrt(norm);
    }
    const auto out = hamming::hypercube_walk(N, 2.3, psi);
    double total = 0.0;
    for (const auto& z : out) {
        total += std::norm(z);
    }
    CHECK(total == Approx(1.0).epsilon(1e-12));
    const auto back = hamming::hypercube_walk(N, -2.3, out);
    double err = 0.0;
    for (std::size_t x = 0; x < psi.size(); ++x) {
        err = std::max(err, std::abs(back[x] - psi[x]));
    }
    CHECK(err < 1e-12);
}

TEST_CASE("hypercube chain has PST but no FR")
{
    for (int N = 2; N <= 10; ++N) {
        const auto chain = hamming::project_hypercube(N);
        const auto half = detect_fr(chain, std::numbers::pi / 4);
        CHECK(half.leakage > 0.1);
        const auto full = detect_fr(chain, std::numbers::pi / 2);
        CHECK(full.kind == TransferKind::pst);
    }
}
