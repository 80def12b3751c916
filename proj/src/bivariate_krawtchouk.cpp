#include "revivalkit/bivariate_krawtchouk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "revivalkit/combinatorics.hpp"
#include "revivalkit/errors.hpp"

namespace revivalkit::bivariate {

namespace {

void check_degree(int N)
{
    if (N < 1 || N > kMaxDegree) {
        throw DomainError("bivariate degree must be in 1.." + std::to_string(kMaxDegree));
    }
}

void check_in_triangle(TriangleIndex t, int N, const char* what)
{
    if (t.i < 0 || t.j < 0 || t.i + t.j > N) {
        throw DomainError(std::string(what) + " (" + std::to_string(t.i) + "," + std::to_string(t.j)
                          + ") lies outside the triangle of degree " + std::to_string(N));
    }
}

// binary128: the series cancels badly when R33 is small.
using quad = __float128;

struct QuadParams {
    quad u1, v1, u2, v2;
};

quad griffiths_sum(int m, int n, int x, int y, const QuadParams& g, int N)
{
    auto pochhammer_q = [N](int a) {
        std::vector<quad> out(static_cast<std::size_t>(N + 1));
        out[0] = 1;
        for (int k = 1; k <= N; ++k) {
            out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k - 1)] * static_cast<quad>(a + k - 1);
        }
        return out;
    };
    auto powers = [N](quad base) {
        std::vector<quad> out(static_cast<std::size_t>(N + 1));
        out[0] = 1;
        for (int k = 1; k <= N; ++k) {
            out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k - 1)] * base;
        }
        return out;
    };
    const auto pm = pochhammer_q(-m);
    const auto pn = pochhammer_q(-n);
    const auto px = pochhammer_q(-x);
    const auto py = pochhammer_q(-y);
    const auto pN = pochhammer_q(-N);
    const auto u1 = powers(g.u1);
    const auto v1 = powers(g.v1);
    const auto u2 = powers(g.u2);
    const auto v2 = powers(g.v2);
    const auto fact = pochhammer_q(1);
    auto at = [](const std::vector<quad>& v, int k) { return v[static_cast<std::size_t>(k)]; };

    // (-m)_{i+j} vanishes for i+j > m, (-x)_{i+k} for i+k > x, and so on.
    quad sum = 0;
    for (int i = 0; i <= std::min(m, x); ++i) {
        for (int j = 0; j <= std::min(m - i, y); ++j) {
            for (int k = 0; k <= std::min(n, x - i); ++k) {
                for (int l = 0; l <= std::min(n - k, y - j); ++l) {
                    const quad num = at(pm, i + j) * at(pn, k + l) * at(px, i + k) * at(py, j + l);
                    const quad den = at(fact, i) * at(fact, j) * at(fact, k) * at(fact, l) * at(pN, i + j + k + l);
                    sum += num / den * at(u1, i) * at(v1, j) * at(u2, k) * at(v2, l);
                }
            }
        }
    }
    return sum;
}

using QuadMatrix = std::array<std::array<quad, 3>, 3>;

// Newton-Schulz steps X <- X (3I - X^T X) / 2 make the rotation orthogonal to
// binary128 precision.
QuadMatrix polish(const Eigen::Matrix3d& r)
{
    QuadMatrix x{};
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            x[a][b] = r(a, b);
        }
    }
    for (int iter = 0; iter < 3; ++iter) {
        QuadMatrix g{};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                quad acc = 0;
                for (int c = 0; c < 3; ++c) {
                    acc += x[c][a] * x[c][b];
                }
                g[a][b] = (a == b ? 3 : 0) - acc;
            }
        }
        QuadMatrix next{};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                quad acc = 0;
                for (int c = 0; c < 3; ++c) {
                    acc += x[a][c] * g[c][b];
                }
                next[a][b] = acc / 2;
            }
        }
        x = next;
    }
    return x;
}

QuadParams quad_params(const QuadMatrix& R)
{
    return {1 - R[0][0] * R[2][2] / (R[0][2] * R[2][0]), 1 - R[1][0] * R[2][2] / (R[1][2] * R[2][0]),
            1 - R[0][1] * R[2][2] / (R[0][2] * R[2][1]), 1 - R[1][1] * R[2][2] / (R[1][2] * R[2][1])};
}

} // namespace

std::vector<TriangleIndex> triangle(int N)
{
    std::vector<TriangleIndex> out;
    out.reserve(static_cast<std::size_t>((N + 1) * (N + 2) / 2));
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; i + j <= N; ++j) {
            out.push_back({i, j});
        }
    }
    return out;
}

void TratnikParams::validate() const
{
    check_degree(N);
    if (!(p > 0.0) || !(q > 0.0) || !(p + q < 1.0)) {
        throw DomainError("trinomial parameters need p > 0, q > 0, p + q < 1");
    }
}

void GriffithsParams::validate(double tol) const
{
    const double c1 = p * u1 + q * v1 - 1.0;
    const double c2 = p * u2 + q * v2 - 1.0;
    const double c3 = p * u1 * u2 + q * v1 * v2 - 1.0;
    if (std::abs(c1) > tol || std::abs(c2) > tol || std::abs(c3) > tol) {
        throw DomainError("Griffiths parameters violate p u_i + q v_i = 1 or p u1 u2 + q v1 v2 = 1");
    }
}

GriffithsParams GriffithsParams::tratnik(double p, double q)
{
    return {1.0 / p, 0.0, 1.0, (1.0 - p) / q, p, q};
}

Rotation3::Rotation3(const Eigen::Matrix3d& r, double tol) : r_(r)
{
    const double orth = (r_.transpose() * r_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (!(orth <= tol) || !(std::abs(r_.determinant() - 1.0) <= tol)) {
        throw DomainError("matrix is not a proper rotation");
    }
}

Rotation3 Rotation3::yz_xz(double theta, double phi)
{
    Eigen::Matrix3d yz;
    yz << 1, 0, 0, 0, std::cos(theta), -std::sin(theta), 0, std::sin(theta), std::cos(theta);
    Eigen::Matrix3d xz;
    xz << std::cos(phi), 0, -std::sin(phi), 0, 1, 0, std::sin(phi), 0, std::cos(phi);
    return Rotation3(yz * xz);
}

Rotation3 Rotation3::random(std::mt19937_64& rng, double min_entry)
{
    std::normal_distribution<double> gauss;
    for (;;) {
        Eigen::Matrix3d a;
        for (int k = 0; k < 9; ++k) {
            a(k / 3, k % 3) = gauss(rng);
        }
        Eigen::HouseholderQR<Eigen::Matrix3d> qr(a);
        Eigen::Matrix3d q = qr.householderQ();
        if (q.determinant() < 0.0) {
            q.col(0) *= -1.0;
        }
        const bool usable = std::abs(q(0, 2)) >= min_entry && std::abs(q(1, 2)) >= min_entry
                            && std::abs(q(2, 0)) >= min_entry && std::abs(q(2, 1)) >= min_entry
                            && std::abs(q(2, 2)) >= min_entry;
        if (usable) {
            return Rotation3(q, 1e-10);
        }
    }
}

GriffithsParams Rotation3::griffiths_params() const
{
    const Rotation3& R = *this;
    const double d11 = R(1, 3) * R(3, 1);
    const double d21 = R(2, 3) * R(3, 1);
    const double d12 = R(1, 3) * R(3, 2);
    const double d22 = R(2, 3) * R(3, 2);
    if (d11 == 0.0 || d21 == 0.0 || d12 == 0.0 || d22 == 0.0) {
        throw DomainError("singular parametrization: R13 R31, R23 R31, R13 R32 and R23 R32 must be nonzero");
    }
    GriffithsParams g;
    g.u1 = 1.0 - R(1, 1) * R(3, 3) / d11;
    g.v1 = 1.0 - R(2, 1) * R(3, 3) / d21;
    g.u2 = 1.0 - R(1, 2) * R(3, 3) / d12;
    g.v2 = 1.0 - R(2, 2) * R(3, 3) / d22;
    g.p = R(1, 3) * R(1, 3);
    g.q = R(2, 3) * R(2, 3);
    return g;
}

double trinomial_weight(const TratnikParams& params, int x, int y)
{
    params.validate();
    check_in_triangle({x, y}, params.N, "point");
    return static_cast<double>(multinomial(params.N, x, y)) * std::pow(params.p, x) * std::pow(params.q, y)
           * std::pow(1.0 - params.p - params.q, params.N - x - y);
}

double tratnik_eval(TriangleIndex idx, TriangleIndex point, const TratnikParams& params)
{
    params.validate();
    const int N = params.N;
    check_in_triangle(idx, N, "index");
    check_in_triangle(point, N, "point");
    const int m = idx.i;
    const int n = idx.j;
    const double x = point.i;
    const double y = point.j;

    const double pre = pochhammer(n - N, m) / pochhammer(-N, m + n);

    // K_m^{N-n}(x; p)
    double k1 = 1.0;
    double term = 1.0;
    for (int k = 0; k < m; ++k) {
        term *= (k - m) * (k - x) / ((k + 1.0) * (k - (N - n))) / params.p;
        k1 += term;
    }

    // (x-N)_n K_n^{N-x}(y; r) = sum_k (-n)_k (-y)_k / k! (x-N+k)_{n-k} r^{-k}
    const double inv_r = (1.0 - params.p) / params.q;
    double k2 = 0.0;
    double head = 1.0; // (-n)_k (-y)_k / k! r^{-k}
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            head *= (k - 1.0 - n) * (k - 1.0 - y) / k * inv_r;
        }
        if (head == 0.0) {
            break;
        }
        k2 += head * pochhammer(x - N + k, n - k);
    }
    return pre * k1 * k2;
}

double griffiths_eval(TriangleIndex idx, TriangleIndex point, const GriffithsParams& params, int N)
{
    check_degree(N);
    check_in_triangle(idx, N, "index");
    check_in_triangle(point, N, "point");
    params.validate(1e-9);
    const QuadParams g{params.u1, params.v1, params.u2, params.v2};
    return static_cast<double>(griffiths_sum(idx.i, idx.j, point.i, point.j, g, N));
}

double so3_weight(const Rotation3& rotation, int N, TriangleIndex point)
{
    check_degree(N);
    check_in_triangle(point, N, "point");
    if (rotation(3, 3) == 0.0) {
        throw DomainError("singular rotation: R33 = 0");
    }
    return std::pow(rotation(1, 3), point.i) * std::pow(rotation(2, 3), point.j)
           * std::pow(rotation(3, 3), N - point.i - point.j)
           * std::sqrt(static_cast<double>(multinomial(N, point.i, point.j)));
}

double orthonormal_eval(TriangleIndex idx, TriangleIndex point, int N, double p, double q)
{
    const TratnikParams params{N, p, q};
    params.validate();
    const double rest = 1.0 - p - q;
    const double pt = p * rest / (1.0 - p);
    const double qt = q / (1.0 - p);
    const double norm2 = static_cast<double>(multinomial(N, idx.i, idx.j)) * std::pow(pt, idx.i) * std::pow(qt, idx.j)
                         * std::pow(rest, -(idx.i + idx.j));
    return std::sqrt(norm2) * tratnik_eval(idx, point, params);
}

double RotationPolynomials::at(int m, int n, int i, int k) const
{
    if (m < 0 || n < 0 || m + n > N) {
        return 0.0;
    }
    // triangle() order: offset of row i is sum_{r<i} (N - r + 1)
    auto offset = [this](int a, int b) { return a * (N + 1) - a * (a - 1) / 2 + b; };
    return values(offset(m, n), offset(i, k));
}

RotationPolynomials rotation_polynomials(const Rotation3& rotation, int N)
{
    check_degree(N);
    if (rotation(3, 3) == 0.0) {
        throw DomainError("singular parametrization: R33 = 0");
    }
    rotation.griffiths_params(); // rejects singular parametrizations
    const QuadMatrix R = polish(rotation.matrix());
    const QuadParams g = quad_params(R);
    RotationPolynomials out{N, triangle(N), {}};
    const auto count = static_cast<Eigen::Index>(out.sites.size());
    out.values.resize(count, count);
    const quad r1 = R[2][0] / R[2][2];
    const quad r2 = R[2][1] / R[2][2];
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index a = 0; a < count; ++a) {
        const TriangleIndex idx = out.sites[static_cast<std::size_t>(a)];
        quad scale = 1;
        for (int e = 0; e < idx.i; ++e) {
            scale *= r1;
        }
        for (int e = 0; e < idx.j; ++e) {
            scale *= r2;
        }
        const double pre = std::sqrt(static_cast<double>(multinomial(N, idx.i, idx.j)));
        for (Eigen::Index b = 0; b < count; ++b) {
            const TriangleIndex pt = out.sites[static_cast<std::size_t>(b)];
            out.values(a, b) = pre * static_cast<double>(scale * griffiths_sum(idx.i, idx.j, pt.i, pt.j, g, N));
        }
    }
    return out;
}

ResidualReport verify_seven_term(const Rotation3& rotation, int N)
{
    if (N < 1 || N > kMaxSevenTermDegree) {
        throw DomainError("seven-term check needs 1 <= N <= " + std::to_string(kMaxSevenTermDegree));
    }
    const RotationPolynomials P = rotation_polynomials(rotation, N);
    const Rotation3& R = rotation;
    ResidualReport report;
    for (const auto& [m, n] : P.sites) {
        const int rest = N - m - n;
        const double c_mn_a = std::sqrt(static_cast<double>(m) * (n + 1));
        const double c_mn_b = std::sqrt(static_cast<double>(n) * (m + 1));
        const double c_m_a = std::sqrt(static_cast<double>(m) * (rest + 1));
        const double c_m_b = std::sqrt(static_cast<double>(m + 1) * rest);
        const double c_n_a = std::sqrt(static_cast<double>(n) * (rest + 1));
        const double c_n_b = std::sqrt(static_cast<double>(n + 1) * rest);
        for (const auto& [i, k] : P.sites) {
            const double here = P.at(m, n, i, k);
            // row a = 1 gives the relation for i, a = 2 the one for k
            for (int a = 1; a <= 2; ++a) {
                const double lhs = (a == 1 ? i : k) * here;
                const double rhs = (R(a, 1) * R(a, 1) * m + R(a, 2) * R(a, 2) * n + R(a, 3) * R(a, 3) * rest) * here
                                   + R(a, 1) * R(a, 2) * (c_mn_a * P.at(m - 1, n + 1, i, k) + c_mn_b * P.at(m + 1, n - 1, i, k))
                                   + R(a, 1) * R(a, 3) * (c_m_a * P.at(m - 1, n, i, k) + c_m_b * P.at(m + 1, n, i, k))
                                   + R(a, 2) * R(a, 3) * (c_n_a * P.at(m, n - 1, i, k) + c_n_b * P.at(m, n + 1, i, k));
                // residual on the matrix elements w_{i,k} P_{m,n}(i,k), which are bounded by 1
                const double w = so3_weight(rotation, N, {i, k});
                report.max_residual = std::max(report.max_residual, std::abs(w * (lhs - rhs)));
            }
        }
    }
    return report;
}

ResidualReport generating_function_check(const TratnikParams& params, TriangleIndex idx, double s, double t)
{
    params.validate();
    check_in_triangle(idx, params.N, "index");
    const int N = params.N;
    const double p = params.p;
    const double q = params.q;
    double lhs = 0.0;
    double magnitude = 0.0;
    for (const auto& pt : triangle(N)) {
        const double term = static_cast<double>(multinomial(N, pt.i, pt.j)) * tratnik_eval(idx, pt, params)
                            * std::pow(s, pt.i) * std::pow(t, pt.j);
        lhs += term;
        magnitude += std::abs(term);
    }
    const double rhs = std::pow(1.0 + s + t, N - idx.i - idx.j) * std::pow(1.0 + (p - 1.0) / p * s + t, idx.i)
                       * std::pow(1.0 + (p + q - 1.0) / q * t, idx.j);
    return {std::abs(lhs - rhs) / std::max(magnitude, std::abs(rhs))};
}

ResidualReport verify_tratnik_recurrences(const TratnikParams& params)
{
    params.validate();
    const int N = params.N;
    const double p = params.p;
    const double q = params.q;
    const auto sites = triangle(N);
    auto T = [&](int i, int j, TriangleIndex pt) {
        if (i < 0 || j < 0 || i + j > N) {
            return 0.0;
        }
        return tratnik_eval({i, j}, pt, params);
    };
    ResidualReport report;
    for (const auto& [i, j] : sites) {
        const double rest = N - i - j;
        for (const auto& pt : sites) {
            const double t0 = T(i, j, pt);
            const double t_ip = T(i + 1, j, pt) - t0;
            const double t_im = T(i - 1, j, pt) - t0;
            const double t_jp = T(i, j + 1, pt) - t0;
            const double t_jm = T(i, j - 1, pt) - t0;
            const double t_ipjm = T(i + 1, j - 1, pt) - t0;
            const double t_imjp = T(i - 1, j + 1, pt) - t0;

            const double rx = -p * rest * t_ip - (1.0 - p) * i * t_im;
            const double ry = p * q / (1.0 - p) * rest * t_ip - q / (1.0 - p) * rest * t_jp + q * i * t_im
                              - p * (1.0 - p - q) / (1.0 - p) * j * t_ipjm - q / (1.0 - p) * i * t_imjp
                              - (1.0 - p - q) * j * t_jm;
            const double scale = 1.0 + std::abs(t0) * N + std::abs(t_ip) + std::abs(t_im) + std::abs(t_jp)
                                 + std::abs(t_jm) + std::abs(t_ipjm) + std::abs(t_imjp);
            report.max_residual = std::max(report.max_residual, std::abs(pt.i * t0 - rx) / scale);
            report.max_residual = std::max(report.max_residual, std::abs(pt.j * t0 - ry) / scale);
        }
    }
    return report;
}

ResidualReport verify_hermitian_recurrence(int N, double alpha, double beta)
{
    check_degree(N);
    const auto sites = triangle(N);
    auto P = [&](int i, int j, TriangleIndex pt) {
        if (i < 0 || j < 0 || i + j > N) {
            return 0.0;
        }
        return orthonormal_eval({i, j}, pt, N);
    };
    const TratnikParams params{N, 0.5, 0.25};
    ResidualReport report;
    for (const auto& pt : sites) {
        const double lambda = alpha * (N - 2.0 * pt.i) + beta * (2.0 * N - 2.0 * pt.i - 4.0 * pt.j);
        // sqrt of the trinomial weight turns P into eigenvector components
        const double w = std::sqrt(trinomial_weight(params, pt.i, pt.j));
        for (const auto& [i, j] : sites) {
            const double rest = N - i - j;
            const double rhs = alpha * j * P(i, j, pt) + alpha * std::sqrt((i + 1.0) * rest) * P(i + 1, j, pt)
                               + beta * std::sqrt(2.0 * (j + 1) * rest) * P(i, j + 1, pt)
                               + alpha * std::sqrt(i * (rest + 1.0)) * P(i - 1, j, pt)
                               + beta * std::sqrt(2.0 * j * (rest + 1.0)) * P(i, j - 1, pt)
                               + beta * std::sqrt(2.0 * i * (j + 1.0)) * P(i - 1, j + 1, pt)
                               + beta * std::sqrt(2.0 * (i + 1.0) * j) * P(i + 1, j - 1, pt);
            report.max_residual = std::max(report.max_residual, w * std::abs(lambda * P(i, j, pt) - rhs));
        }
    }
    return report;
}

double orthonormal_gram_deviation(int N)
{
    check_degree(N);
    const auto sites = triangle(N);
    const auto count = static_cast<Eigen::Index>(sites.size());
    const TratnikParams params{N, 0.5, 0.25};
    // Rows: sqrt(w(x,y)) P_a(x,y), so the Gram matrix is V V^T.
    Eigen::MatrixXd v(count, count);
    for (Eigen::Index b = 0; b < count; ++b) {
        const double sw = std::sqrt(trinomial_weight(params, sites[static_cast<std::size_t>(b)].i, sites[static_cast<std::size_t>(b)].j));
        for (Eigen::Index a = 0; a < count; ++a) {
            v(a, b) = sw * orthonormal_eval(sites[static_cast<std::size_t>(a)], sites[static_cast<std::size_t>(b)], N);
        }
    }
    const Eigen::MatrixXd gram = v * v.transpose();
    return (gram - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff();
}

} // namespace revivalkit::bivariate
