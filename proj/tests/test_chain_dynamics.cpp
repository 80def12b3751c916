#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "revivalkit/chain_dynamics.hpp"
#include "revivalkit/spectral_design.hpp"

using namespace revivalkit;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

RecurrenceCoefficients random_chain(std::mt19937_64& rng, int N, bool mirror)
{
    std::uniform_real_distribution<double> jd(0.1, 2.0);
    std::uniform_real_distribution<double> bd(-1.0, 1.0);
    std::vector<double> J(static_cast<std::size_t>(N));
    std::vector<double> B(static_cast<std::size_t>(N + 1));
    for (auto& j : J) {
        j = jd(rng);
    }
    for (auto& b : B) {
        b = bd(rng);
    }
    if (mirror) {
        for (int n = 0; n < N; ++n) {
            J[static_cast<std::size_t>(N - 1 - n)] = J[static_cast<std::size_t>(n)];
        }
        for (int n = 0; n <= N; ++n) {
            B[static_cast<std::size_t>(N - n)] = B[static_cast<std::size_t>(n)];
        }
    }
    return {J, B};
}

} // namespace

TEST_CASE("eigendecompose 2x2")
{
    const auto sys = eigendecompose(RecurrenceCoefficients({0.5}, {0.0, 0.0}));
    CHECK(sys.values(0) == Approx(-0.5));
    CHECK(sys.values(1) == Approx(0.5));
    CHECK(sys.vectors(0, 0) == Approx(1 / std::sqrt(2.0)));
    CHECK(sys.vectors(0, 1) == Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("eigendecompose invariants")
{
    std::mt19937_64 rng(3);
    for (int N : {1, 2, 5, 12, 30, 64}) {
        const auto chain = random_chain(rng, N, false);
        const auto sys = eigendecompose(chain);
        const Eigen::MatrixXd H = chain.matrix();
        const double scale = H.norm();
        for (int s = 0; s <= N; ++s) {
            CHECK((H * sys.vectors.col(s) - sys.values(s) * sys.vectors.col(s)).norm() <= 1e-10 * scale);
            CHECK(sys.vectors(0, s) > 0.0);
            if (s > 0) {
                CHECK(sys.values(s) > sys.values(s - 1));
            }
        }
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N + 1, N + 1);
        CHECK((sys.vectors.transpose() * sys.vectors - I).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(sys.weights().sum() == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Krawtchouk spectrum is linear")
{
    for (int N : {1, 4, 9, 20}) {
        const double beta = 1.3;
        const auto sys = eigendecompose(krawtchouk_chain(N, beta));
        for (int s = 0; s <= N; ++s) {
            CHECK(std::abs(sys.values(s) - beta * (s - N / 2.0)) < 1e-12);
        }
    }
    const auto sys = eigendecompose(reconstruct_jacobi(bilattice_spectrum(3, 1.0, 1.0 / 3.0)));
    const auto spec = bilattice_spectrum(3, 1.0, 1.0 / 3.0);
    for (int s = 0; s <= 3; ++s) {
        CHECK(std::abs(sys.values(s) - spec[s]) < 1e-9);
    }
}

TEST_CASE("evolve basics")
{
    const auto c = krawtchouk_chain(4, 1.0);
    const auto a0 = evolve(c, 0.0, 2);
    for (int n = 0; n <= 4; ++n) {
        CHECK(std::abs(a0(n) - std::complex<double>(n == 2 ? 1.0 : 0.0)) < 1e-14);
    }
    const auto two = evolve(krawtchouk_chain(1, 2.0), pi / 2, 0);
    CHECK(std::abs(two(1)) == Approx(1.0).epsilon(1e-14));
    const auto seven = evolve(krawtchouk_chain(7, 1.0), pi, 0);
    CHECK(std::abs(std::abs(seven(7)) - 1.0) < 1e-10);
}

TEST_CASE("Krawtchouk chain amplitudes have a closed form")
{
    // <e_n|U(t)|e_0> = sqrt(C(N,n)) cos(t/2)^{N-n} (-i sin(t/2))^n
    for (int N : {1, 3, 8, 15}) {
        for (double t : {0.3, 1.1, 2.9, 7.5}) {
            const auto a = evolve(krawtchouk_chain(N, 1.0), t, 0);
            for (int n = 0; n <= N; ++n) {
                const double binom = std::tgamma(N + 1.0) / (std::tgamma(n + 1.0) * std::tgamma(N - n + 1.0));
                const std::complex<double> expected = std::sqrt(binom) * std::pow(std::cos(t / 2), N - n) *
                                                      std::pow(std::complex<double>(0.0, -std::sin(t / 2)), n);
                CHECK(std::abs(a(n) - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("evolve is unitary and obeys the group law")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> td(-20.0, 20.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int N = 1 + trial;
        const auto chain = random_chain(rng, N, false);
        const auto P = make_propagator(chain);
        const double t1 = td(rng);
        const double t2 = td(rng);
        for (int src : {0, N / 2, N}) {
            CHECK(evolve(chain, t1, src).norm() == Approx(1.0).epsilon(1e-12));
        }
        const Eigen::MatrixXcd composed = P.matrix(t1) * P.matrix(t2);
        CHECK((composed - P.matrix(t1 + t2)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("persymmetric chains mirror their amplitudes")
{
    std::mt19937_64 rng(5);
    for (int N : {2, 5, 10, 17}) {
        const auto chain = random_chain(rng, N, true);
        for (double t : {0.4, 3.3, 12.0}) {
            const auto from0 = evolve(chain, t, 0);
            const auto fromN = evolve(chain, t, N);
            for (int n = 0; n <= N; ++n) {
                CHECK(std::abs(std::abs(from0(n)) - std::abs(fromN(N - n))) < 1e-10);
            }
        }
    }
}

TEST_CASE("evolve agrees with a scaling-and-squaring exponential")
{
    std::mt19937_64 rng(13);
    for (int N = 1; N <= 8; ++N) {
        const auto chain = random_chain(rng, N, N % 2 == 0);
        const Eigen::MatrixXcd H = chain.matrix().cast<std::complex<double>>();
        for (double t : {0.25, 1.7, 6.0}) {
            const Eigen::MatrixXcd U = (std::complex<double>(0.0, -t) * H).exp();
            for (int src = 0; src <= N; ++src) {
                CHECK((evolve(chain, t, src) - U.col(src)).cwiseAbs().maxCoeff() < 1e-9);
            }
        }
    }
}

TEST_CASE("detect_pst")
{
    const auto k = detect_pst(krawtchouk_chain(5, 1.0), 2 * pi);
    CHECK(k.kind == TransferKind::pst);
    CHECK(k.time == Approx(pi).epsilon(1e-9));

    const auto para = detect_pst(para_krawtchouk_chain({3, 1.0, 1.0 / 3.0}), 4 * pi);
    CHECK(para.kind == TransferKind::pst);
    const double multiple = para.time / pi;
    CHECK(std::abs(multiple - std::round(multiple)) < 1e-8);
    CHECK(std::round(multiple) == 3.0);

    const auto none = detect_pst(RecurrenceCoefficients({1.0, 1.0}, {0.0, 0.0, 1.0}), 20.0);
    CHECK(none.kind == TransferKind::none);
    CHECK(std::abs(none.target_amplitude) < 1.0 - 1e-9);
}

TEST_CASE("detect_fr")
{
    const auto fr = detect_fr(para_krawtchouk_chain({3, 1.0, 1.0 / 3.0}), pi);
    CHECK(fr.kind == TransferKind::fr);
    CHECK(std::abs(fr.source_amplitude) == Approx(std::sqrt(3.0) / 2).epsilon(1e-9));
    CHECK(std::norm(fr.source_amplitude) + std::norm(fr.target_amplitude) + fr.leakage == Approx(1.0).epsilon(1e-10));

    const auto pst = detect_fr(krawtchouk_chain(4, 1.0), pi);
    CHECK(pst.kind == TransferKind::pst);
    CHECK(std::abs(pst.target_amplitude) == Approx(1.0).epsilon(1e-10));

    const auto none = detect_fr(krawtchouk_chain(4, 1.0), pi / 3);
    CHECK(none.kind == TransferKind::none);
    CHECK(none.leakage > 0.1);
    CHECK(std::string(to_string(none.kind)) == "none");
}
