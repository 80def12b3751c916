#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace revivalkit {

using cplx = std::complex<double>;

/// exp(-i t H) psi for an operator known only through its action.
///
/// `apply(in, out)` must write H*in into out (both of length psi.size()).
/// `norm_bound` is an upper bound on ||H||_2. Time is split into steps with
/// norm_bound*|h| <= 1 and each step sums the Taylor series until the next
/// term drops below `term_tol` relative to the state norm.
template <class Apply>
void taylor_propagate(const Apply& apply, double norm_bound, double t, std::vector<cplx>& psi,
                      double term_tol = 1e-17)
{
    const std::size_t dim = psi.size();
    const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound * std::abs(t))));
    const double h = t / steps;
    std::vector<cplx> term(dim);
    std::vector<cplx> next(dim);

    for (int step = 0; step < steps; ++step) {
        term = psi;
        double state_norm = 0.0;
        for (const cplx& z : psi) {
            state_norm += std::norm(z);
        }
        state_norm = std::sqrt(state_norm);
        for (int k = 1; k < 200; ++k) {
            apply(std::span<const cplx>(term), std::span<cplx>(next));
            const cplx factor(0.0, -h / k);
            double term_norm = 0.0;
            for (std::size_t n = 0; n < dim; ++n) {
                term[n] = factor * next[n];
                psi[n] += term[n];
                term_norm += std::norm(term[n]);
            }
            if (std::sqrt(term_norm) <= term_tol * state_norm) {
                break;
            }
        }
    }
}

} // namespace revivalkit
