#pragma once

// Bivariate Krawtchouk polynomials on the triangle {(x,y) : x,y >= 0, x+y <= N}:
// Tratnik's product form, the Griffiths hypergeometric form, their SO(3)
// (rotation matrix) parametrization and the associated recurrences.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace revivalkit::bivariate {

inline constexpr int kMaxDegree = 24;
inline constexpr int kMaxSevenTermDegree = 12;

/// A point or index (i, j) of the triangle 0 <= i+j <= N.
struct TriangleIndex {
    int i;
    int j;

    friend bool operator==(const TriangleIndex&, const TriangleIndex&) = default;
};

/// All triangle points for degree N, ordered by i then j.
std::vector<TriangleIndex> triangle(int N);

/// Trinomial parameters (p, q) with p, q > 0 and p + q < 1.
struct TratnikParams {
    int N;
    double p;
    double q;

    void validate() const;
};

/// Parameters of the Griffiths series; the constraints
/// p u_i + q v_i = 1 (i = 1, 2) and p u_1 u_2 + q v_1 v_2 = 1 must hold.
struct GriffithsParams {
    double u1;
    double v1;
    double u2;
    double v2;
    double p;
    double q;

    /// Throws DomainError if a constraint is off by more than tol.
    void validate(double tol = 1e-12) const;

    /// u1 = 1/p, v1 = 0, u2 = 1, v2 = (1-p)/q: reduces the series to Tratnik's.
    static GriffithsParams tratnik(double p, double q);
};

/// A proper rotation of R^3.
class Rotation3 {
public:
    /// Throws DomainError unless R^T R = I and det R = 1 within tol.
    explicit Rotation3(const Eigen::Matrix3d& r, double tol = 1e-12);

    /// R_yz(theta) R_xz(phi).
    static Rotation3 yz_xz(double theta, double phi);

    /// Orthogonalized seeded Gaussian matrix with det fixed to +1.
    /// Rotations with any of |R13|, |R23|, |R31|, |R32|, |R33| below
    /// `min_entry` are rejected and redrawn.
    static Rotation3 random(std::mt19937_64& rng, double min_entry = 1e-3);

    const Eigen::Matrix3d& matrix() const noexcept { return r_; }
    /// One-based access R_{ab}.
    double operator()(int a, int b) const { return r_(a - 1, b - 1); }

    /// Griffiths parameters of the rotation (requires nonzero R13 R31,
    /// R23 R31, R13 R32, R23 R32); p = R13^2, q = R23^2.
    GriffithsParams griffiths_params() const;

private:
    Eigen::Matrix3d r_;
};

/// multinomial(N; x, y) p^x q^y (1-p-q)^{N-x-y}.
double trinomial_weight(const TratnikParams& params, int x, int y);

/// T^N_{m,n}(x,y) = (n-N)_m (x-N)_n / (-N)_{m+n} K_m^{N-n}(x; p) K_n^{N-x}(y; q/(1-p)).
/// The (x-N)_n prefactor is folded into the second sum so that x > N - n is
/// handled without 0/0.
double tratnik_eval(TriangleIndex idx, TriangleIndex point, const TratnikParams& params);

/// Terminating quadruple sum over i+j+k+l <= N of
/// (-m)_{i+j} (-n)_{k+l} (-x)_{i+k} (-y)_{j+l} / (i! j! k! l! (-N)_{i+j+k+l}) u1^i v1^j u2^k v2^l.
double griffiths_eval(TriangleIndex idx, TriangleIndex point, const GriffithsParams& params, int N);

/// w_{i,k;N} = R13^i R23^k R33^{N-i-k} sqrt(multinomial(N; i, k)).
double so3_weight(const Rotation3& rotation, int N, TriangleIndex point);

/// Orthonormal ("Hermitian") Tratnik polynomial
///   sqrt(multinomial(N;i,j) pt^i qt^j (1-p-q)^{-i-j}) T^N_{i,j}(x,y),
/// pt = p(1-p-q)/(1-p), qt = q/(1-p). Defaults are p = 1/2, q = 1/4.
double orthonormal_eval(TriangleIndex idx, TriangleIndex point, int N, double p = 0.5, double q = 0.25);

/// Table of orthonormal polynomials P^N_{m,n}(i,k) of a rotation, computed
/// as sqrt(multinomial(N;m,n)) (R31/R33)^m (R32/R33)^n G^N_{m,n}(i,k).
/// values(a, b) holds index triangle(N)[a] at point triangle(N)[b].
struct RotationPolynomials {
    int N;
    std::vector<TriangleIndex> sites;
    Eigen::MatrixXd values;

    /// Zero outside the triangle.
    double at(int m, int n, int i, int k) const;
};

RotationPolynomials rotation_polynomials(const Rotation3& rotation, int N);

struct ResidualReport {
    double max_residual = 0.0;
    bool passed(double tol) const noexcept { return max_residual < tol; }
};

/// Max residual of both seven-term recurrences (in i and in k) of the
/// rotation polynomials, over every index and point.
ResidualReport verify_seven_term(const Rotation3& rotation, int N);

/// Relative residual of the generating function
///   sum multinomial(N;x,y) T_{i,j}(x,y) s^x t^y
///   = (1+s+t)^{N-i-j} (1+(p-1)/p s+t)^i (1+(p+q-1)/q t)^j.
ResidualReport generating_function_check(const TratnikParams& params, TriangleIndex idx, double s, double t);

/// Max residual of the x- and y-recurrences of T_{i,j} over all indices and
/// points (out-of-triangle indices are zero). The y-relation carries the term
/// -(1-p-q) j [T_{i,j-1} - T_{i,j}].
ResidualReport verify_tratnik_recurrences(const TratnikParams& params);

/// Max residual of the recurrence
///   [a(N-2x) + b(2N-2x-4y)] P_{i,j}(x,y) = sum of the seven neighbour terms
/// for the orthonormal polynomials at p = 1/2, q = 1/4.
ResidualReport verify_hermitian_recurrence(int N, double alpha, double beta);

/// Max |G - I| of the Gram matrix sum_{x,y} w(x,y) P_a(x,y) P_b(x,y) at p = 1/2, q = 1/4.
double orthonormal_gram_deviation(int N);

} // namespace revivalkit::bivariate
