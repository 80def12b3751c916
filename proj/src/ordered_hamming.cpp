#include "revivalkit/ordered_hamming.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "revivalkit/combinatorics.hpp"
#include "revivalkit/errors.hpp"
#include "revivalkit/scan.hpp"
#include "revivalkit/spectral_propagator.hpp"

namespace revivalkit::ordered {

namespace {

constexpr Word kLowBits = 0x55555555u;

using bivariate::TriangleIndex;

void check_degree(int N, int cap, const char* what)
{
    if (N < 1 || N > cap) {
        throw DomainError(std::string(what) + " needs 1 <= N <= " + std::to_string(cap));
    }
}

int offset(int N, int i, int j)
{
    return i * (N + 1) - i * (i - 1) / 2 + j;
}

std::vector<cplx> apply_checked(int N, Shape e, std::span<const cplx> v, bool parallel)
{
    check_degree(N, kMaxFullSpaceDegree, "scheme_adjacency_apply");
    const std::size_t dim = std::size_t{1} << (2 * N);
    if (v.size() != dim) {
        throw DomainError("vector length " + std::to_string(v.size()) + " does not match 4^N = " + std::to_string(dim));
    }
    const auto words = difference_words(N, e);
    std::vector<cplx> out(dim);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t x = 0; x < static_cast<std::int64_t>(dim); ++x) {
            cplx acc{};
            for (Word d : words) {
                acc += v[static_cast<Word>(x) ^ d];
            }
            out[static_cast<std::size_t>(x)] = acc;
        }
    } else {
        for (std::size_t x = 0; x < dim; ++x) {
            cplx acc{};
            for (Word d : words) {
                acc += v[static_cast<Word>(x) ^ d];
            }
            out[x] = acc;
        }
    }
    return out;
}

void scatter(std::span<const Word> words, const std::vector<std::int64_t>& src, std::int64_t scale,
             std::vector<std::int64_t>& dst)
{
    if (scale == 0) {
        return;
    }
    for (std::size_t x = 0; x < src.size(); ++x) {
        if (src[x] == 0) {
            continue;
        }
        const std::int64_t c = scale * src[x];
        for (Word d : words) {
            dst[static_cast<Word>(x) ^ d] += c;
        }
    }
}

SpectralPropagator lattice_propagator(const TriangleOperator& op)
{
    return SpectralPropagator(op.matrix);
}

} // namespace

Word pack(std::span<const std::pair<int, int>> pairs)
{
    if (pairs.size() > 16) {
        throw DomainError("at most 16 pairs fit in a word");
    }
    Word w = 0;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const auto [a, b] = pairs[j];
        if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
            throw DomainError("pair entries must be 0 or 1");
        }
        w |= static_cast<Word>(a) << (2 * j);
        w |= static_cast<Word>(b) << (2 * j + 1);
    }
    return w;
}

Shape shape_of(Word x)
{
    const Word lo = x & kLowBits;
    const Word hi = (x >> 1) & kLowBits;
    return {std::popcount(lo & ~hi), std::popcount(hi)};
}

bool related_under(Word x, Word y, Shape e)
{
    return shape_of(x ^ y) == e;
}

std::uint64_t column_cardinality(int N, int i, int j)
{
    if (N < 0 || i < 0 || j < 0 || i + j > N) {
        throw DomainError("column (i,j) needs i, j >= 0 and i + j <= N");
    }
    return multinomial(N, i, j) << j;
}

std::uint64_t count_words_of_shape(int N, int i, int j)
{
    check_degree(N, kMaxEnumerationDegree, "count_words_of_shape");
    const Shape target{i, j};
    std::uint64_t count = 0;
    const Word limit = Word{1} << (2 * N);
    for (Word x = 0; x < limit; ++x) {
        if (shape_of(x) == target) {
            ++count;
        }
    }
    return count;
}

std::vector<Word> difference_words(int N, Shape e)
{
    if (N < 0 || N > kMaxFullSpaceDegree) {
        throw DomainError("difference_words needs 0 <= N <= " + std::to_string(kMaxFullSpaceDegree));
    }
    std::vector<Word> out;
    if (e.e1 < 0 || e.e2 < 0 || e.e1 + e.e2 > N) {
        return out;
    }
    const Word limit = Word{1} << (2 * N);
    for (Word x = 0; x < limit; ++x) {
        if (shape_of(x) == e) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<cplx> scheme_adjacency_apply(int N, Shape e, std::span<const cplx> v)
{
    return apply_checked(N, e, v, true);
}

std::vector<cplx> scheme_adjacency_apply_serial(int N, Shape e, std::span<const cplx> v)
{
    return apply_checked(N, e, v, false);
}

BoseMesnerReport verify_ordered_bose_mesner(int N)
{
    check_degree(N, kMaxBoseMesnerDegree, "verify_ordered_bose_mesner");
    const std::size_t dim = std::size_t{1} << (2 * N);
    std::vector<std::vector<Word>> words(static_cast<std::size_t>((N + 1) * (N + 1)));
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; i + j <= N; ++j) {
            words[static_cast<std::size_t>(i * (N + 1) + j)] = difference_words(N, {i, j});
        }
    }
    const std::vector<Word> none;
    auto relation = [&](int i, int j) -> std::span<const Word> {
        if (i < 0 || j < 0 || i + j > N) {
            return none;
        }
        return words[static_cast<std::size_t>(i * (N + 1) + j)];
    };

    std::int64_t worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
    for (std::int64_t y = 0; y < static_cast<std::int64_t>(dim); ++y) {
        std::vector<std::int64_t> e(dim, 0);
        e[static_cast<std::size_t>(y)] = 1;
        std::vector<std::int64_t> aij(dim);
        std::vector<std::int64_t> lhs(dim);
        std::vector<std::int64_t> rhs(dim);
        for (int i = 0; i <= N; ++i) {
            for (int j = 0; i + j <= N; ++j) {
                const std::int64_t rest1 = N + 1 - i - j;
                std::fill(aij.begin(), aij.end(), 0);
                scatter(relation(i, j), e, 1, aij);

                std::fill(lhs.begin(), lhs.end(), 0);
                std::fill(rhs.begin(), rhs.end(), 0);
                scatter(relation(1, 0), aij, 1, lhs);
                scatter(relation(i - 1, j), e, rest1, rhs);
                scatter(relation(i, j), e, j, rhs);
                scatter(relation(i + 1, j), e, i + 1, rhs);
                for (std::size_t x = 0; x < dim; ++x) {
                    worst = std::max(worst, std::abs(lhs[x] - rhs[x]));
                }

                std::fill(lhs.begin(), lhs.end(), 0);
                std::fill(rhs.begin(), rhs.end(), 0);
                scatter(relation(0, 1), aij, 1, lhs);
                scatter(relation(i, j - 1), e, 2 * rest1, rhs);
                scatter(relation(i + 1, j - 1), e, 2 * (i + 1), rhs);
                scatter(relation(i - 1, j + 1), e, j + 1, rhs);
                scatter(relation(i, j + 1), e, j + 1, rhs);
                for (std::size_t x = 0; x < dim; ++x) {
                    worst = std::max(worst, std::abs(lhs[x] - rhs[x]));
                }
            }
        }
    }
    return {N, worst};
}

int TriangleOperator::site_index(int i, int j) const noexcept
{
    if (i < 0 || j < 0 || i + j > N) {
        return -1;
    }
    return offset(N, i, j);
}

Eigen::VectorXd TriangleOperator::predicted_eigenvalues() const
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(sites.size()));
    for (std::size_t s = 0; s < sites.size(); ++s) {
        const auto [x, y] = sites[s];
        out(static_cast<Eigen::Index>(s)) = alpha * (N - 2.0 * x) + beta * (2.0 * N - 2.0 * x - 4.0 * y);
    }
    return out;
}

TriangleOperator triangle_hamiltonian(int N, double alpha, double beta)
{
    check_degree(N, kMaxLatticeDegree, "triangle_hamiltonian");
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("weights must be finite");
    }
    TriangleOperator op{N, alpha, beta, bivariate::triangle(N), {}};
    const auto dim = static_cast<Eigen::Index>(op.sites.size());
    op.matrix = Eigen::MatrixXd::Zero(dim, dim);
    auto add = [&](int from, int i, int j, double value) {
        const int to = op.site_index(i, j);
        if (to >= 0 && value != 0.0) {
            op.matrix(to, from) += value;
        }
    };
    for (const auto& [i, j] : op.sites) {
        const int from = op.site_index(i, j);
        const double rest = N - i - j;
        add(from, i + 1, j, alpha * std::sqrt((i + 1.0) * rest));
        add(from, i, j + 1, beta * std::sqrt(2.0 * (j + 1) * rest));
        add(from, i - 1, j, alpha * std::sqrt(i * (rest + 1.0)));
        add(from, i, j - 1, beta * std::sqrt(2.0 * j * (rest + 1.0)));
        add(from, i + 1, j - 1, beta * std::sqrt(2.0 * (i + 1) * j));
        add(from, i - 1, j + 1, beta * std::sqrt(2.0 * i * (j + 1)));
        add(from, i, j, alpha * j);
    }
    return op;
}

std::vector<cplx> ordered_walk(int N, double alpha, double beta, double t, std::vector<cplx> psi)
{
    check_degree(N, kMaxFullSpaceDegree, "ordered_walk");
    if (psi.size() != (std::size_t{1} << (2 * N))) {
        throw DomainError("state length does not match 4^N");
    }
    const auto w10 = difference_words(N, {1, 0});
    const auto w01 = difference_words(N, {0, 1});
    auto apply = [&](std::span<const cplx> in, std::span<cplx> out) {
        const auto dim = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t x = 0; x < dim; ++x) {
            const auto ux = static_cast<Word>(x);
            cplx a{};
            for (Word d : w10) {
                a += in[ux ^ d];
            }
            cplx b{};
            for (Word d : w01) {
                b += in[ux ^ d];
            }
            out[static_cast<std::size_t>(x)] = alpha * a + beta * b;
        }
    };
    taylor_propagate(apply, (std::abs(alpha) + 2.0 * std::abs(beta)) * N, t, psi);
    return psi;
}

ProjectionReport project_ordered_walk(int N, double alpha, double beta, double t)
{
    check_degree(N, kMaxProjectionDegree, "project_ordered_walk");
    const std::size_t dim = std::size_t{1} << (2 * N);
    std::vector<cplx> psi(dim);
    psi[0] = 1.0;
    psi = ordered_walk(N, alpha, beta, t, std::move(psi));

    const TriangleOperator op = triangle_hamiltonian(N, alpha, beta);
    ProjectionReport report;
    report.N = N;
    report.time = t;
    report.column_amplitudes.assign(op.sites.size(), cplx{});
    std::vector<double> root_k(op.sites.size());
    for (std::size_t s = 0; s < op.sites.size(); ++s) {
        root_k[s] = std::sqrt(static_cast<double>(column_cardinality(N, op.sites[s].i, op.sites[s].j)));
    }
    std::vector<int> column_of(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const Shape e = shape_of(static_cast<Word>(x));
        column_of[x] = offset(N, e.e1, e.e2);
        report.column_amplitudes[static_cast<std::size_t>(column_of[x])] += psi[x];
    }
    for (std::size_t s = 0; s < op.sites.size(); ++s) {
        report.column_amplitudes[s] /= root_k[s];
    }
    for (std::size_t x = 0; x < dim; ++x) {
        const auto s = static_cast<std::size_t>(column_of[x]);
        report.leakage += std::norm(psi[x] - report.column_amplitudes[s] / root_k[s]);
    }

    const Eigen::VectorXcd lattice = lattice_propagator(op).column(t, 0);
    for (std::size_t s = 0; s < op.sites.size(); ++s) {
        report.max_deviation = std::max(report.max_deviation, std::abs(lattice(static_cast<Eigen::Index>(s)) - report.column_amplitudes[s]));
    }
    return report;
}

std::complex<double> closed_form_amplitude(int N, double alpha, double beta, double t, int k, int l)
{
    check_degree(N, kMaxLatticeDegree, "closed_form_amplitude");
    if (k < 0 || l < 0 || k + l > N) {
        throw DomainError("site (k,l) needs k, l >= 0 and k + l <= N");
    }
    const cplx z1 = std::polar(1.0, 2.0 * (alpha + beta) * t);
    const cplx z2 = std::polar(1.0, 4.0 * beta * t);
    // integer powers by repeated multiplication so 0^0 = 1 and exact zeros stay zero
    auto ipow = [](cplx z, int n) {
        cplx r = 1.0;
        for (int m = 0; m < n; ++m) {
            r *= z;
        }
        return r;
    };
    const double scale = std::sqrt(std::ldexp(1.0, l) * static_cast<double>(multinomial(N, k, l))) / std::ldexp(1.0, 2 * N);
    return std::polar(scale, -N * (alpha + 2.0 * beta) * t) * ipow(1.0 + 2.0 * z1 + z2, N - k - l)
           * ipow(1.0 - 2.0 * z1 + z2, k) * ipow(1.0 - z2, l);
}

double AmplitudeGrid::total_probability(std::size_t k) const
{
    return values.at(k).squaredNorm();
}

std::complex<double> AmplitudeGrid::at(std::size_t k, int i, int j) const
{
    if (i < 0 || j < 0 || i + j > N) {
        throw DomainError("site outside the triangle");
    }
    return values.at(k)(offset(N, i, j));
}

AmplitudeGrid lattice_amplitudes(int N, double alpha, double beta, std::span<const double> times)
{
    const TriangleOperator op = triangle_hamiltonian(N, alpha, beta);
    const SpectralPropagator prop = lattice_propagator(op);
    AmplitudeGrid grid{N, op.sites, {times.begin(), times.end()}, {}};
    grid.values.reserve(times.size());
    for (double t : times) {
        grid.values.push_back(prop.column(t, 0));
    }
    return grid;
}

AmplitudeGrid closed_form_grid(int N, double alpha, double beta, std::span<const double> times)
{
    check_degree(N, kMaxLatticeDegree, "closed_form_grid");
    AmplitudeGrid grid{N, bivariate::triangle(N), {times.begin(), times.end()}, {}};
    grid.values.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(grid.sites.size()));
        for (std::size_t s = 0; s < grid.sites.size(); ++s) {
            v(static_cast<Eigen::Index>(s)) = closed_form_amplitude(N, alpha, beta, t, grid.sites[s].i, grid.sites[s].j);
        }
        grid.values.push_back(std::move(v));
    }
    return grid;
}

const char* to_string(EventKind kind)
{
    return kind == EventKind::pst ? "PST" : "FR";
}

const TransferEvent* TransferScan::first(EventKind kind) const noexcept
{
    for (const auto& e : events) {
        if (e.kind == kind) {
            return &e;
        }
    }
    return nullptr;
}

TransferScan detect_2d_transfer(int N, double alpha, double beta, double t_max, double tol, int grid)
{
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("weights must be positive");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw DomainError("t_max must be positive");
    }
    if (grid < 3) {
        throw DomainError("scan grid needs at least three points");
    }
    const TriangleOperator op = triangle_hamiltonian(N, alpha, beta);
    const SpectralPropagator prop = lattice_propagator(op);
    const Eigen::MatrixXd& V = prop.vectors();
    const Eigen::VectorXd& lambda = prop.values();
    const Eigen::VectorXd head = V.row(0).transpose();
    const auto dim = static_cast<Eigen::Index>(op.sites.size());

    auto amplitudes = [&](double t) {
        Eigen::VectorXcd c(dim);
        for (Eigen::Index s = 0; s < dim; ++s) {
            c(s) = std::polar(head(s), -t * lambda(s));
        }
        return Eigen::VectorXcd(V * c);
    };
    auto derivatives = [&](double t) {
        Eigen::VectorXcd c(dim);
        for (Eigen::Index s = 0; s < dim; ++s) {
            c(s) = cplx(0.0, -lambda(s)) * std::polar(head(s), -t * lambda(s));
        }
        return Eigen::VectorXcd(V * c);
    };
    auto on_edge = [&](Eigen::Index s) { return op.sites[static_cast<std::size_t>(s)].j == 0; };

    std::vector<double> best_site(static_cast<std::size_t>(grid));
    std::vector<int> best_index(static_cast<std::size_t>(grid));
    std::vector<double> edge_prob(static_cast<std::size_t>(grid));
#pragma omp parallel for schedule(static)
    for (int k = 0; k < grid; ++k) {
        const Eigen::VectorXcd a = amplitudes(scan::grid_time(t_max, grid, k));
        double top = -1.0;
        int arg = 1;
        double on = 0.0;
        for (Eigen::Index s = 0; s < dim; ++s) {
            const double p = std::norm(a(s));
            if (s > 0 && p > top) {
                top = p;
                arg = static_cast<int>(s);
            }
            if (on_edge(s)) {
                on += p;
            }
        }
        best_site[static_cast<std::size_t>(k)] = top;
        best_index[static_cast<std::size_t>(k)] = arg;
        edge_prob[static_cast<std::size_t>(k)] = on;
    }

    TransferScan result{N, alpha, beta, t_max, {}};
    auto make_event = [&](EventKind kind, double t, int site, double deficit) {
        const Eigen::VectorXcd a = amplitudes(t);
        TransferEvent ev{kind, t, op.sites[static_cast<std::size_t>(site)], deficit, a.cwiseAbs2(), 0.0};
        for (Eigen::Index s = 0; s < dim; ++s) {
            const auto [i, j] = op.sites[static_cast<std::size_t>(s)];
            ev.closed_form_deviation = std::max(ev.closed_form_deviation, std::abs(a(s) - closed_form_amplitude(N, alpha, beta, t, i, j)));
        }
        return ev;
    };
    auto bracket = [&](int k) {
        return std::pair<double, double>{scan::grid_time(t_max, grid, k - 1), scan::grid_time(t_max, grid, std::min(k + 1, grid - 1))};
    };

    for (int k : scan::local_maxima(best_site)) {
        if (best_site[static_cast<std::size_t>(k)] < 0.5) {
            continue;
        }
        const int s = best_index[static_cast<std::size_t>(k)];
        auto objective = [&](double t) {
            const cplx a = amplitudes(t)(s);
            const cplx da = derivatives(t)(s);
            return std::pair<double, double>{std::norm(a), 2.0 * std::real(std::conj(a) * da)};
        };
        const auto [lo, hi] = bracket(k);
        const scan::Peak peak = scan::refine_peak(objective, lo, hi);
        const double deficit = 1.0 - std::sqrt(peak.value);
        if (deficit <= tol) {
            result.events.push_back(make_event(EventKind::pst, peak.time, s, deficit));
        }
    }

    for (int k : scan::local_maxima(edge_prob)) {
        if (edge_prob[static_cast<std::size_t>(k)] < 0.5) {
            continue;
        }
        auto objective = [&](double t) {
            const Eigen::VectorXcd a = amplitudes(t);
            const Eigen::VectorXcd da = derivatives(t);
            double value = 0.0;
            double slope = 0.0;
            for (Eigen::Index s = 0; s < dim; ++s) {
                if (on_edge(s)) {
                    value += std::norm(a(s));
                    slope += 2.0 * std::real(std::conj(a(s)) * da(s));
                }
            }
            return std::pair<double, double>{value, slope};
        };
        const auto [lo, hi] = bracket(k);
        const scan::Peak peak = scan::refine_peak(objective, lo, hi);
        const Eigen::VectorXcd a = amplitudes(peak.time);
        double off = 0.0;
        double top = 0.0;
        for (Eigen::Index s = 0; s < dim; ++s) {
            if (!on_edge(s)) {
                off += std::norm(a(s));
            }
            top = std::max(top, std::abs(a(s)));
        }
        if (off <= tol && 1.0 - top > tol) {
            result.events.push_back(make_event(EventKind::fr, peak.time, 0, off));
        }
    }

    std::sort(result.events.begin(), result.events.end(),
              [](const TransferEvent& a, const TransferEvent& b) { return a.time < b.time; });
    // neighbouring grid maxima can refine onto the same event
    std::vector<TransferEvent> unique;
    const double spacing = t_max / (grid - 1);
    for (auto& ev : result.events) {
        const bool dup = !unique.empty() && unique.back().kind == ev.kind && std::abs(unique.back().time - ev.time) < 2.0 * spacing;
        if (!dup) {
            unique.push_back(std::move(ev));
        }
    }
    result.events = std::move(unique);
    return result;
}

} // namespace revivalkit::ordered
