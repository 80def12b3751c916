// Serial reference vs OpenMP kernel timings.
//   revivalkit_bench [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "revivalkit/chain_dynamics.hpp"
#include "revivalkit/hamming_scheme.hpp"
#include "revivalkit/ordered_hamming.hpp"
#include "revivalkit/parallel.hpp"
#include "revivalkit/scan.hpp"

using namespace revivalkit;

namespace {

double best_of(int repeats, const std::function<void()>& f)
{
    double best = INFINITY;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel)
{
    std::printf("%-34s %10.3f ms %10.3f ms %7.2fx\n", name, 1e3 * serial, 1e3 * parallel, serial / parallel);
}

std::vector<cplx> state(std::size_t n)
{
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = cplx(std::sin(0.1 * static_cast<double>(k)), std::cos(0.3 * static_cast<double>(k)));
    }
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
    const int threads = parallel::configure_from_environment();
    std::printf("threads %d, best of %d\n", threads, repeats);
    std::printf("%-34s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

    {
        const int N = 20;
        const auto v = state(std::size_t{1} << N);
        std::vector<cplx> sink;
        const double s = best_of(repeats, [&] { sink = hamming::adjacency_apply_serial(N, 3, v); });
        const double p = best_of(repeats, [&] { sink = hamming::adjacency_apply(N, 3, v); });
        row("hamming A_3, N=20", s, p);
    }
    {
        const int N = 8;
        const auto v = state(std::size_t{1} << (2 * N));
        std::vector<cplx> sink;
        const double s = best_of(repeats, [&] { sink = ordered::scheme_adjacency_apply_serial(N, {2, 2}, v); });
        const double p = best_of(repeats, [&] { sink = ordered::scheme_adjacency_apply(N, {2, 2}, v); });
        row("ordered A_(2,2), N=8", s, p);
    }
    {
        const auto prop = make_propagator(krawtchouk_chain(40, 1.0));
        const auto f = [&](double t) { return std::abs(prop.column(t, 0)(40)); };
        std::vector<double> sink;
        const double s = best_of(repeats, [&] { sink = scan::sample_serial(20.0, 8192, f); });
        const double p = best_of(repeats, [&] { sink = scan::sample(20.0, 8192, f); });
        row("time scan, chain N=40, 8192 pts", s, p);
    }
    {
        double sink = 0.0;
        const double s = best_of(repeats, [&] {
            parallel::set_thread_count(1);
            sink += ordered::project_ordered_walk(7, 1.0, 2.0, 1.0).max_deviation;
        });
        const double p = best_of(repeats, [&] {
            parallel::set_thread_count(threads);
            sink += ordered::project_ordered_walk(7, 1.0, 2.0, 1.0).max_deviation;
        });
        row("ordered walk projection, N=7", s, p);
        if (sink > 1e-6) {
            std::printf("unexpected projection deviation %g\n", sink);
            return 1;
        }
    }
    return 0;
}
