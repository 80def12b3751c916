#include <doctest.h>

#include <cmath>

#include "revivalkit/chain_dynamics.hpp"
#include "revivalkit/errors.hpp"
#include "revivalkit/orthopoly.hpp"

using namespace revivalkit;
using doctest::Approx;

TEST_CASE("RecurrenceCoefficients validates its input")
{
    CHECK_THROWS_AS(RecurrenceCoefficients({1.0, 0.0}, {0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(RecurrenceCoefficients({1.0, -1.0}, {0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(RecurrenceCoefficients({1.0}, {0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(RecurrenceCoefficients({}, {0.0}), DomainError);
    CHECK_THROWS_AS(RecurrenceCoefficients({NAN}, {0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(RecurrenceCoefficients::with_zero_fields(std::vector<double>(65, 1.0)), DomainError);

    const RecurrenceCoefficients c({0.5, 2.0}, {1.0, -1.0, 3.0});
    CHECK(c.degree() == 2);
    CHECK(c.sites() == 3);
    CHECK(c.coupling(2) == 2.0);
    CHECK(c.field(2) == 3.0);
    const Eigen::MatrixXd m = c.matrix();
    CHECK(m(0, 1) == 0.5);
    CHECK(m(1, 0) == 0.5);
    CHECK(m(2, 2) == 3.0);
    CHECK(m(0, 2) == 0.0);
}

TEST_CASE("krawtchouk_eval small cases")
{
    CHECK(krawtchouk_eval(0, 3, {5, 0.5}) == 1.0);
    CHECK(krawtchouk_eval(2, 0, {5, 0.5}) == 1.0);
    CHECK(krawtchouk_eval(1, 1, {4, 0.5}) == Approx(0.5));
    // exact rationals from the hypergeometric sum
    CHECK(krawtchouk_eval(2, 3, {5, 1.0 / 3.0}) == Approx(0.1).epsilon(1e-13));
    CHECK(krawtchouk_eval(3, 2.5, {6, 0.4}) == Approx(-13.0 / 512.0).epsilon(1e-13));
    CHECK_THROWS_AS(krawtchouk_eval(6, 1, {5, 0.5}), DomainError);
    CHECK_THROWS_AS(krawtchouk_eval(-1, 1, {5, 0.5}), DomainError);
    CHECK_THROWS_AS(krawtchouk_eval(1, 1, {5, 1.0}), DomainError);
}

TEST_CASE("krawtchouk_eval is self-dual at p = 1/2")
{
    for (int N = 1; N <= 20; ++N) {
        for (int n = 0; n <= N; ++n) {
            for (int x = 0; x <= N; ++x) {
                CHECK(std::abs(krawtchouk_eval(n, x, {N, 0.5}) - krawtchouk_eval(x, n, {N, 0.5})) < 1e-12);
            }
        }
    }
}

TEST_CASE("krawtchouk_chain couplings")
{
    const auto c1 = krawtchouk_chain(1, 2.0);
    CHECK(c1.coupling(1) == Approx(1.0));
    CHECK(c1.field(0) == 0.0);
    CHECK(c1.field(1) == 0.0);

    const auto c2 = krawtchouk_chain(2, 1.0);
    CHECK(c2.coupling(1) == Approx(std::sqrt(2.0) / 2));
    CHECK(c2.coupling(2) == Approx(std::sqrt(2.0) / 2));

    const auto c3 = krawtchouk_chain(3, 1.0);
    CHECK(c3.coupling(1) == Approx(std::sqrt(3.0) / 2));
    CHECK(c3.coupling(2) == Approx(1.0));
    CHECK(c3.coupling(3) == Approx(std::sqrt(3.0) / 2));

    CHECK_THROWS_AS(krawtchouk_chain(0, 1.0), DomainError);
    CHECK_THROWS_AS(krawtchouk_chain(3, 0.0), DomainError);
}

TEST_CASE("para_krawtchouk_chain")
{
    const auto k = para_krawtchouk_chain({3, 1.0, 1.0});
    const auto ref = krawtchouk_chain(3, 1.0);
    for (int n = 1; n <= 3; ++n) {
        CHECK(std::abs(k.coupling(n) - ref.coupling(n)) < 1e-12);
    }

    const auto c = para_krawtchouk_chain({3, 1.0, 1.0 / 3.0});
    CHECK(c.coupling(1) == Approx(std::sqrt(35.0) / 6).epsilon(1e-14));
    CHECK(c.coupling(2) == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(c.coupling(3) == c.coupling(1));

    // high-precision Lanczos on the bi-lattice
    const auto c5 = para_krawtchouk_chain({5, 1.0, 0.2});
    const double expected[] = {1.1532562594670796, 1.6248076809271921, 0.3, 1.6248076809271921, 1.1532562594670796};
    for (int n = 1; n <= 5; ++n) {
        CHECK(c5.coupling(n) == Approx(expected[n - 1]).epsilon(1e-14));
        CHECK(c5.coupling(n) == c5.coupling(6 - n));
    }

    const auto near = para_krawtchouk_chain({3, 1.0, 1.999999});
    CHECK(near.coupling(1) < 2e-3);
    CHECK(near.coupling(2) == Approx(2.0).epsilon(1e-5));
    CHECK_THROWS_AS(para_krawtchouk_chain({3, 1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(para_krawtchouk_chain({4, 1.0, 0.5}), DomainError);

    for (int N = 1; N <= 21; N += 2) {
        for (double delta : {0.2, 1.0 / 3.0, 0.8, 1.0, 1.5}) {
            const auto p = para_krawtchouk_chain({N, 1.3, delta});
            for (int n = 1; n <= N; ++n) {
                CHECK(p.coupling(n) == p.coupling(N + 1 - n));
            }
        }
    }
}

TEST_CASE("evaluate_chi")
{
    const auto c1 = krawtchouk_chain(1, 2.0);
    const auto chi = evaluate_chi(c1, 1.0);
    CHECK(chi[0] == 1.0);
    CHECK(chi[1] == Approx(1.0));

    const RecurrenceCoefficients c({0.7, 1.1, 0.7}, {0.2, -0.3, -0.3, 0.2});
    const EigenSystem sys = eigendecompose(c);
    for (int s = 0; s <= 3; ++s) {
        const auto v = evaluate_chi(c, sys.values(s));
        CHECK(v[0] == 1.0);
        CHECK(std::abs(std::abs(v[3]) - 1.0) < 1e-10);
        CHECK(v[3] * ((3 + s) % 2 == 0 ? 1.0 : -1.0) > 0.0);
    }
}

TEST_CASE("Krawtchouk chain polynomials are orthonormal for the spectral weights")
{
    for (int N : {1, 4, 9, 16}) {
        const auto c = krawtchouk_chain(N, 1.0);
        const EigenSystem sys = eigendecompose(c);
        const Eigen::VectorXd w = sys.weights();
        Eigen::MatrixXd chi(N + 1, N + 1);
        for (int s = 0; s <= N; ++s) {
            const auto v = evaluate_chi(c, sys.values(s));
            for (int n = 0; n <= N; ++n) {
                chi(n, s) = v[static_cast<std::size_t>(n)];
            }
        }
        const Eigen::MatrixXd gram = chi * w.asDiagonal() * chi.transpose();
        CHECK((gram - Eigen::MatrixXd::Identity(N + 1, N + 1)).cwiseAbs().maxCoeff() < 1e-10);
    }
}
