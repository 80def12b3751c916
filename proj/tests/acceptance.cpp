// One pass/fail line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "revivalkit/bivariate_krawtchouk.hpp"
#include "revivalkit/chain_dynamics.hpp"
#include "revivalkit/combinatorics.hpp"
#include "revivalkit/hamming_scheme.hpp"
#include "revivalkit/ordered_hamming.hpp"
#include "revivalkit/parallel.hpp"
#include "revivalkit/spectral_design.hpp"

using namespace revivalkit;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome r{false, ""};
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = r.ok && secs < budget;
    failures += ok ? 0 : 1;
    std::printf("[%s] %d %s: %s; %.3f s (limit %.0f s)\n", ok ? "PASS" : "FAIL", id, title, r.detail.c_str(), secs,
                budget);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome lattice_revivals()
{
    const auto scan = ordered::detect_2d_transfer(7, 1.0, 2.0, pi);
    const auto* pst = scan.first(ordered::EventKind::pst);
    const auto* fr = scan.first(ordered::EventKind::fr);
    if (pst == nullptr || fr == nullptr) {
        return {false, "missing event"};
    }
    bool ok = std::abs(pst->time - pi / 2) < 1e-9 && pst->site == bivariate::TriangleIndex{7, 0} &&
              pst->deficit <= 1e-9 && std::abs(fr->time - pi / 4) < 1e-9 && fr->deficit <= 1e-9;
    const auto grid = ordered::lattice_amplitudes(7, 1.0, 2.0, std::vector<double>{fr->time});
    double profile = 0.0;
    for (int k = 0; k <= 7; ++k) {
        profile = std::max(profile, std::abs(std::norm(grid.at(0, k, 0)) - binomial(7, k) / 128.0));
    }
    ok = ok && profile <= 1e-9;
    return {ok, "PST t=" + fmt("%.12f", pst->time) + " deficit " + fmt("%.1e", pst->deficit) + ", FR t=" +
                    fmt("%.12f", fr->time) + " leakage " + fmt("%.1e", fr->deficit) + ", edge profile err " +
                    fmt("%.1e", profile)};
}

Outcome krawtchouk_pst()
{
    double worst_deficit = 0.0;
    double least_leak = 1.0;
    for (int N = 2; N <= 10; ++N) {
        const auto chain = krawtchouk_chain(N, 1.0);
        worst_deficit = std::max(worst_deficit, 1.0 - std::abs(evolve(chain, pi, 0)(N)));
        least_leak = std::min(least_leak, detect_fr(chain, pi / 2).leakage);
    }
    return {worst_deficit <= 1e-9 && least_leak > 0.1,
            "max deficit at pi " + fmt("%.1e", worst_deficit) + ", min leakage at pi/2 " + fmt("%.3f", least_leak)};
}

Outcome para_revival()
{
    const auto chain = para_krawtchouk_chain({3, 1.0, 1.0 / 3.0});
    const auto fr = detect_fr(chain, pi);
    const double mu = std::abs(fr.source_amplitude);
    const auto pst = detect_pst(chain, 6 * pi);
    const double multiple = pst.time / pi;
    const bool integer = std::abs(multiple - std::round(multiple)) < 1e-8;
    const bool ok = std::abs(mu - std::cos(pi / 6)) < 1e-8 && fr.leakage <= 1e-9 && pst.kind == TransferKind::pst &&
                    integer;
    return {ok, "|mu(pi)| " + fmt("%.10f", mu) + ", leakage " + fmt("%.1e", fr.leakage) + ", PST at " +
                    fmt("%.9f", multiple) + " pi"};
}

Outcome inverse_round_trip()
{
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<int> nd(2, 20);
    std::uniform_real_distribution<double> jd(0.1, 2.0);
    std::uniform_real_distribution<double> bd(-1.0, 1.0);
    double worst = 0.0;
    double gap = INFINITY;
    for (int trial = 0; trial < 100; ++trial) {
        const int N = nd(rng);
        std::vector<double> J(static_cast<std::size_t>(N));
        std::vector<double> B(static_cast<std::size_t>(N + 1));
        for (int n = 1; n <= (N + 1) / 2; ++n) {
            J[static_cast<std::size_t>(n - 1)] = J[static_cast<std::size_t>(N - n)] = jd(rng);
        }
        for (int n = 0; n <= N / 2; ++n) {
            B[static_cast<std::size_t>(n)] = B[static_cast<std::size_t>(N - n)] = bd(rng);
        }
        const RecurrenceCoefficients chain(J, B);
        const auto sys = eigendecompose(chain);
        for (int s = 1; s <= N; ++s) {
            gap = std::min(gap, sys.values(s) - sys.values(s - 1));
        }
        const auto back = reconstruct_jacobi(
            Spectrum(std::vector<double>(sys.values.data(), sys.values.data() + sys.values.size())));
        for (int n = 1; n <= N; ++n) {
            worst = std::max(worst, std::abs(back.coupling(n) - chain.coupling(n)));
        }
        for (int n = 0; n <= N; ++n) {
            worst = std::max(worst, std::abs(back.field(n) - chain.field(n)));
        }
    }
    double para = 0.0;
    for (int N = 1; N <= 15; N += 2) {
        for (double delta : {0.2, 1.0 / 3.0, 0.8}) {
            const auto a = reconstruct_jacobi(bilattice_spectrum(N, 1.0, delta));
            const auto b = para_krawtchouk_chain({N, 1.0, delta});
            for (int n = 1; n <= N; ++n) {
                para = std::max(para, std::abs(a.coupling(n) - b.coupling(n)));
            }
        }
    }
    return {worst <= 1e-7 && para <= 1e-8, "seed 0 worst coupling error " + fmt("%.1e", worst) + " (min gap " +
                                               fmt("%.1e", gap) + "), bilattice vs closed form " + fmt("%.1e", para)};
}

Outcome hamming_identities()
{
    std::int64_t bm = 0;
    for (int N = 1; N <= 8; ++N) {
        bm = std::max(bm, hamming::verify_bose_mesner(N).max_deviation);
    }
    double eig = 0.0;
    for (int N = 1; N <= 10; ++N) {
        eig = std::max(eig, hamming::krawtchouk_eigenvalue_check(N, 0).max_residual);
    }
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> td(0.0, 10.0);
    double proj = 0.0;
    for (int N = 1; N <= 12; ++N) {
        for (int k = 0; k < 10; ++k) {
            const auto r = hamming::projection_equivalence(N, td(rng));
            proj = std::max({proj, r.max_deviation, r.leakage});
        }
    }
    return {bm == 0 && eig < 1e-8 && proj < 1e-9, "Bose-Mesner deviation " + std::to_string(bm) +
                                                      ", eigenvalue residual " + fmt("%.1e", eig) +
                                                      ", projection " + fmt("%.1e", proj)};
}

Outcome ordered_identities()
{
    std::int64_t bm = 0;
    for (int N = 1; N <= 4; ++N) {
        bm = std::max(bm, ordered::verify_ordered_bose_mesner(N).max_deviation);
    }
    bool card = true;
    for (int N = 1; N <= 6; ++N) {
        for (auto [i, j] : bivariate::triangle(N)) {
            card = card && ordered::column_cardinality(N, i, j) == ordered::count_words_of_shape(N, i, j);
        }
    }
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> wd(0.5, 2.0);
    std::uniform_real_distribution<double> td(0.0, 5.0);
    double proj = 0.0;
    for (int N = 1; N <= 7; ++N) {
        for (int k = 0; k < 5; ++k) {
            const double a = wd(rng);
            const double b = wd(rng);
            const auto r = ordered::project_ordered_walk(N, a, b, td(rng));
            proj = std::max({proj, r.max_deviation, r.leakage});
        }
    }
    return {bm == 0 && card && proj < 1e-8, "Bose-Mesner deviation " + std::to_string(bm) + ", cardinalities " +
                                                (card ? "match" : "differ") + ", projection " + fmt("%.1e", proj)};
}

Outcome bivariate_suite()
{
    double agree = 0.0;
    double gram = 0.0;
    for (int N = 1; N <= 10; ++N) {
        const bivariate::TratnikParams p{N, 0.3, 0.45};
        const auto g = bivariate::GriffithsParams::tratnik(p.p, p.q);
        for (auto idx : bivariate::triangle(N)) {
            for (auto pt : bivariate::triangle(N)) {
                const double a = bivariate::tratnik_eval(idx, pt, p);
                agree = std::max(agree, std::abs(a - bivariate::griffiths_eval(idx, pt, g, N)) / std::max(1.0, std::abs(a)));
            }
        }
        gram = std::max(gram, bivariate::orthonormal_gram_deviation(N));
    }
    std::mt19937_64 rng(0);
    double seven = 0.0;
    for (int k = 0; k < 20; ++k) {
        seven = std::max(seven, bivariate::verify_seven_term(bivariate::Rotation3::random(rng), 8).max_residual);
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double gen = 0.0;
    for (int N = 1; N <= 8; ++N) {
        const bivariate::TratnikParams p{N, 0.5, 0.25};
        for (int k = 0; k < 50; ++k) {
            const double s = u(rng);
            const double t = u(rng);
            for (auto idx : bivariate::triangle(N)) {
                gen = std::max(gen, bivariate::generating_function_check(p, idx, s, t).max_residual);
            }
        }
    }
    return {agree <= 1e-10 && gram <= 1e-9 && seven < 1e-8 && gen < 1e-9,
            "Tratnik/Griffiths " + fmt("%.1e", agree) + ", Gram " + fmt("%.1e", gram) + ", seven-term " +
                fmt("%.1e", seven) + ", generating function " + fmt("%.1e", gen)};
}

Outcome closed_form_oracle()
{
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> wd(0.1, 3.0);
    std::uniform_real_distribution<double> td(0.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double a = wd(rng);
        const double b = wd(rng);
        const std::vector<double> t{td(rng)};
        const auto lat = ordered::lattice_amplitudes(10, a, b, t);
        const auto cf = ordered::closed_form_grid(10, a, b, t);
        worst = std::max(worst, (lat.values[0] - cf.values[0]).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-9, "max deviation " + fmt("%.1e", worst) + " over 100 draws at N=10"};
}

} // namespace

int main()
{
    parallel::configure_from_environment();
    criterion(1, "lattice PST at pi/2 and FR at pi/4 (N=7, a=1, b=2)", 5, lattice_revivals);
    criterion(2, "Krawtchouk chains: PST at pi, no FR at pi/2 (N=2..10)", 1, krawtchouk_pst);
    criterion(3, "para-Krawtchouk N=3, delta=1/3: FR at pi, PST at a multiple of pi", 1, para_revival);
    criterion(4, "inverse spectral round trip", 10, inverse_round_trip);
    criterion(5, "Hamming scheme identities", 30, hamming_identities);
    criterion(6, "ordered scheme identities", 60, ordered_identities);
    criterion(7, "bivariate Krawtchouk suite", 30, bivariate_suite);
    criterion(8, "closed form vs lattice dynamics", 5, closed_form_oracle);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
