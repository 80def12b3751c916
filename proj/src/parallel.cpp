#include "revivalkit/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include <omp.h>

namespace revivalkit::parallel {

int thread_count()
{
    return omp_get_max_threads();
}

void set_thread_count(int n)
{
    if (n >= 1) {
        omp_set_num_threads(n);
    }
}

int configure_from_environment()
{
    const char* env = std::getenv("REVIVALKIT_THREADS");
    if (env != nullptr) {
        int n = 0;
        const auto* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, n);
        if (ec == std::errc() && ptr == end) {
            set_thread_count(n);
        }
    }
    return thread_count();
}

} // namespace revivalkit::parallel
