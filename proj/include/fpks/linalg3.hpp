#ifndef FPKS_LINALG3_HPP
#define FPKS_LINALG3_HPP

// Fixed-size 3x3 linear algebra: real/complex matrices, unit directions,
// rotations of R^3, a closed-form Hermitian eigensolver and the spin-1
// representation of rotations.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>

#include "fpks/errors.hpp"

namespace fpks {

using Complex = std::complex<double>;
using Vector3 = std::array<double, 3>;
using ComplexVector3 = std::array<Complex, 3>;

template <typename T>
struct Matrix3 {
    std::array<T, 9> a{};

    constexpr T& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
    constexpr const T& operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

    static constexpr Matrix3 identity() {
        Matrix3 m;
        m(0, 0) = T(1);
        m(1, 1) = T(1);
        m(2, 2) = T(1);
        return m;
    }

    static constexpr Matrix3 diagonal(T d0, T d1, T d2) {
        Matrix3 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        return m;
    }

    constexpr Matrix3 transpose() const {
        Matrix3 t;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
        return t;
    }

    Matrix3 adjoint() const {
        Matrix3 t;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                if constexpr (std::is_same_v<T, Complex>)
                    t(i, j) = std::conj((*this)(j, i));
                else
                    t(i, j) = (*this)(j, i);
            }
        return t;
    }

    constexpr T trace() const { return a[0] + a[4] + a[8]; }

    constexpr T determinant() const {
        const auto& m = *this;
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    Matrix3& operator+=(const Matrix3& o) {
        for (std::size_t k = 0; k < 9; ++k) a[k] += o.a[k];
        return *this;
    }
    Matrix3& operator-=(const Matrix3& o) {
        for (std::size_t k = 0; k < 9; ++k) a[k] -= o.a[k];
        return *this;
    }
    Matrix3& operator*=(T s) {
        for (auto& x : a) x *= s;
        return *this;
    }

    friend Matrix3 operator+(Matrix3 l, const Matrix3& r) { return l += r; }
    friend Matrix3 operator-(Matrix3 l, const Matrix3& r) { return l -= r; }
    friend Matrix3 operator*(Matrix3 m, T s) { return m *= s; }
    friend Matrix3 operator*(T s, Matrix3 m) { return m *= s; }

    friend Matrix3 operator*(const Matrix3& l, const Matrix3& r) {
        Matrix3 p;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 3; ++k) {
                const T lik = l(i, k);
                for (std::size_t j = 0; j < 3; ++j) p(i, j) += lik * r(k, j);
            }
        return p;
    }

    friend std::array<T, 3> operator*(const Matrix3& m, const std::array<T, 3>& v) {
        std::array<T, 3> out{};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) out[i] += m(i, j) * v[j];
        return out;
    }
};

using RealMatrix3 = Matrix3<double>;
using ComplexMatrix3 = Matrix3<Complex>;

inline ComplexMatrix3 to_complex(const RealMatrix3& r) {
    ComplexMatrix3 c;
    for (std::size_t k = 0; k < 9; ++k) c.a[k] = r.a[k];
    return c;
}

template <typename T>
double frobenius_norm(const Matrix3<T>& m) {
    double s = 0.0;
    for (const auto& x : m.a) s += std::norm(x);
    return std::sqrt(s);
}

template <typename T>
double frobenius_distance(const Matrix3<T>& l, const Matrix3<T>& r) {
    return frobenius_norm(l - r);
}

template <typename T>
double max_abs_entry(const Matrix3<T>& m) {
    double s = 0.0;
    for (const auto& x : m.a) s = std::max(s, std::abs(x));
    return s;
}

inline ComplexMatrix3 commutator(const ComplexMatrix3& x, const ComplexMatrix3& y) {
    return x * y - y * x;
}

// ---- vectors ---------------------------------------------------------------

inline double dot(const Vector3& u, const Vector3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline Vector3 cross(const Vector3& u, const Vector3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline double norm(const Vector3& v) { return std::sqrt(dot(v, v)); }

/// Bilinear (unconjugated) cross product; orthogonal to both arguments under
/// the unconjugated pairing.
inline ComplexVector3 cross(const ComplexVector3& u, const ComplexVector3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

/// <u|v>, conjugate-linear in the first argument.
inline Complex inner(const ComplexVector3& u, const ComplexVector3& v) {
    return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1] + std::conj(u[2]) * v[2];
}

inline double norm(const ComplexVector3& v) { return std::sqrt(std::real(inner(v, v))); }

inline ComplexVector3 conj(const ComplexVector3& v) {
    return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

inline ComplexVector3 scaled(const ComplexVector3& v, Complex s) {
    return {v[0] * s, v[1] * s, v[2] * s};
}

/// |u><v|
inline ComplexMatrix3 outer(const ComplexVector3& u, const ComplexVector3& v) {
    ComplexMatrix3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

/// A direction in R^3. Always unit length.
class UnitVector3 {
public:
    static constexpr double kTolerance = 1e-12;

    /// Checks |v|^2 = 1 within kTolerance.
    static UnitVector3 from(const Vector3& v) {
        if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2]))
            throw ValidationError("direction has non-finite components");
        if (std::abs(dot(v, v) - 1.0) > kTolerance)
            throw ValidationError("direction is not unit length");
        return UnitVector3(v);
    }
    static UnitVector3 from(double x, double y, double z) { return from(Vector3{x, y, z}); }

    static UnitVector3 normalized(const Vector3& v) {
        const double n = norm(v);
        if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("cannot normalize a zero vector");
        return UnitVector3({v[0] / n, v[1] / n, v[2] / n});
    }

    static UnitVector3 x_axis() { return UnitVector3({1.0, 0.0, 0.0}); }
    static UnitVector3 y_axis() { return UnitVector3({0.0, 1.0, 0.0}); }
    static UnitVector3 z_axis() { return UnitVector3({0.0, 0.0, 1.0}); }

    double x() const { return v_[0]; }
    double y() const { return v_[1]; }
    double z() const { return v_[2]; }
    const Vector3& vec() const { return v_; }
    double operator[](std::size_t i) const { return v_[i]; }

    UnitVector3 operator-() const { return UnitVector3({-v_[0], -v_[1], -v_[2]}); }

private:
    explicit UnitVector3(const Vector3& v) : v_(v) {}
    Vector3 v_;
};

/// Angle between two directions, accurate near 0 and pi.
inline double angle_between(const UnitVector3& n, const UnitVector3& m) {
    return std::atan2(norm(cross(n.vec(), m.vec())), dot(n.vec(), m.vec()));
}

// ---- operator types ----------------------------------------------------------

class HermitianOp3 {
public:
    static constexpr double kTolerance = 1e-12;

    HermitianOp3() = default;

    explicit HermitianOp3(const ComplexMatrix3& m) : m_(m) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j)
                if (std::abs(m(i, j) - std::conj(m(j, i))) > kTolerance)
                    throw ValidationError("operator is not Hermitian");
        // exact symmetrization: the real diagonal and mirrored halves
        for (std::size_t i = 0; i < 3; ++i) {
            m_(i, i) = std::real(m(i, i));
            for (std::size_t j = i + 1; j < 3; ++j) {
                const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
                m_(i, j) = avg;
                m_(j, i) = std::conj(avg);
            }
        }
    }

    const ComplexMatrix3& matrix() const { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// <psi|A|psi>
    double expectation(const ComplexVector3& psi) const { return std::real(inner(psi, m_ * psi)); }

private:
    ComplexMatrix3 m_{};
};

class Rotation3 {
public:
    static constexpr double kTolerance = 1e-12;

    Rotation3() : r_(RealMatrix3::identity()) {}

    static Rotation3 from_matrix(const RealMatrix3& r) {
        const RealMatrix3 g = r * r.transpose();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (std::abs(g(i, j) - (i == j ? 1.0 : 0.0)) > kTolerance)
                    throw ValidationError("matrix is not orthogonal");
        if (std::abs(r.determinant() - 1.0) > kTolerance)
            throw ValidationError("rotation must have determinant +1");
        return Rotation3(r);
    }

    static Rotation3 identity() { return Rotation3(); }

    const RealMatrix3& matrix() const { return r_; }
    Rotation3 inverse() const { return Rotation3(r_.transpose()); }

    Vector3 apply(const Vector3& v) const { return r_ * v; }
    /// Re-normalizes to absorb rounding.
    UnitVector3 apply(const UnitVector3& n) const { return UnitVector3::normalized(r_ * n.vec()); }

    friend Rotation3 operator*(const Rotation3& l, const Rotation3& r) {
        return Rotation3(l.r_ * r.r_);
    }

private:
    explicit Rotation3(const RealMatrix3& r) : r_(r) {}
    RealMatrix3 r_;
};

class Unitary3 {
public:
    static constexpr double kTolerance = 1e-12;

    static Unitary3 from_matrix(const ComplexMatrix3& u) {
        const ComplexMatrix3 g = u * u.adjoint();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (std::abs(g(i, j) - Complex(i == j ? 1.0 : 0.0)) > kTolerance)
                    throw ValidationError("matrix is not unitary");
        return Unitary3(u);
    }

    const ComplexMatrix3& matrix() const { return u_; }
    Unitary3 inverse() const { return Unitary3(u_.adjoint()); }

    /// U A U^dagger
    HermitianOp3 conjugate(const HermitianOp3& a) const {
        return HermitianOp3(u_ * a.matrix() * u_.adjoint());
    }

    friend Unitary3 operator*(const Unitary3& l, const Unitary3& r) { return Unitary3(l.u_ * r.u_); }

private:
    explicit Unitary3(const ComplexMatrix3& u) : u_(u) {}
    ComplexMatrix3 u_;
};

// ---- rotations ----------------------------------------------------------------

/// Right-handed rotation by `angle` radians about `axis` (Rodrigues).
inline Rotation3 rotation_from_axis_angle(const UnitVector3& axis, double angle) {
    if (!std::isfinite(angle)) throw ValidationError("rotation angle is not finite");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double t = 1.0 - c;
    const double x = axis.x(), y = axis.y(), z = axis.z();
    RealMatrix3 r;
    r(0, 0) = c + x * x * t;
    r(0, 1) = x * y * t - z * s;
    r(0, 2) = x * z * t + y * s;
    r(1, 0) = y * x * t + z * s;
    r(1, 1) = c + y * y * t;
    r(1, 2) = y * z * t - x * s;
    r(2, 0) = z * x * t - y * s;
    r(2, 1) = z * y * t + x * s;
    r(2, 2) = c + z * z * t;
    return Rotation3::from_matrix(r);
}

/// Accepts any nonzero axis; a zero axis is a validation error.
inline Rotation3 rotation_from_axis_angle(const Vector3& axis, double angle) {
    return rotation_from_axis_angle(UnitVector3::normalized(axis), angle);
}

/// Minimal (geodesic) rotation taking `from` onto `to`. For antipodal inputs
/// the rotation is by pi about a canonical axis orthogonal to `from`.
inline Rotation3 rotation_between(const UnitVector3& from, const UnitVector3& to) {
    const Vector3 axis = cross(from.vec(), to.vec());
    const double s = norm(axis);
    const double c = dot(from.vec(), to.vec());
    if (s < 1e-15) {
        if (c > 0.0) return Rotation3::identity();
        // antipodal: pick the coordinate axis least aligned with `from`
        std::size_t k = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(from[i]) < std::abs(from[k])) k = i;
        Vector3 e{0.0, 0.0, 0.0};
        e[k] = 1.0;
        return rotation_from_axis_angle(cross(from.vec(), e), std::numbers::pi);
    }
    return rotation_from_axis_angle(Vector3{axis[0] / s, axis[1] / s, axis[2] / s}, std::atan2(s, c));
}

// ---- Hermitian eigensolver ----------------------------------------------------------------

struct EigenPair {
    double value;
    ComplexVector3 vector;
};

/// Eigenpairs sorted by descending eigenvalue.
using EigenSystem3 = std::array<EigenPair, 3>;

namespace detail {

inline ComplexVector3 normalize(const ComplexVector3& v) {
    const double n = norm(v);
    return scaled(v, 1.0 / n);
}

/// First component with modulus above 1e-12 made real positive.
inline ComplexVector3 fix_phase(const ComplexVector3& v) {
    for (const Complex& c : v) {
        if (std::abs(c) > 1e-12) return scaled(v, std::conj(c) / std::abs(c));
    }
    return v;
}

struct Eig2 {
    double hi, lo;
    std::array<Complex, 2> v_hi, v_lo;
};

/// Hermitian [[a, b], [conj(b), d]].
inline Eig2 eig_hermitian2(double a, Complex b, double d) {
    const double mean = 0.5 * (a + d);
    const double h = 0.5 * (a - d);
    const double r = std::hypot(h, std::abs(b));
    Eig2 out{mean + r, mean - r, {}, {}};
    if (r == 0.0 || std::abs(b) == 0.0) {
        if (h >= 0.0) {
            out.v_hi = {1.0, 0.0};
            out.v_lo = {0.0, 1.0};
        } else {
            out.v_hi = {0.0, 1.0};
            out.v_lo = {1.0, 0.0};
        }
        return out;
    }
    std::array<Complex, 2> x = h >= 0.0 ? std::array<Complex, 2>{h + r, std::conj(b)}
                                        : std::array<Complex, 2>{b, r - h};
    const double n = std::sqrt(std::norm(x[0]) + std::norm(x[1]));
    x[0] /= n;
    x[1] /= n;
    out.v_hi = x;
    out.v_lo = {-std::conj(x[1]), std::conj(x[0])};
    return out;
}

inline EigenSystem3 finish(std::array<EigenPair, 3> pairs) {
    std::sort(pairs.begin(), pairs.end(),
              [](const EigenPair& l, const EigenPair& r) { return l.value > r.value; });
    for (auto& p : pairs) p.vector = fix_phase(p.vector);
    return pairs;
}

/// Cyclic complex Jacobi; each step diagonalizes one 2x2 principal block.
inline EigenSystem3 eig_jacobi(const ComplexMatrix3& a0) {
    ComplexMatrix3 a = a0;
    ComplexMatrix3 v = ComplexMatrix3::identity();
    const double scale = std::max(frobenius_norm(a0), 1e-300);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (i != j) off += std::norm(a(i, j));
        if (std::sqrt(off) <= 1e-17 * scale) break;
        for (std::size_t p = 0; p < 2; ++p)
            for (std::size_t q = p + 1; q < 3; ++q) {
                if (std::abs(a(p, q)) == 0.0) continue;
                const Eig2 e = eig_hermitian2(std::real(a(p, p)), a(p, q), std::real(a(q, q)));
                ComplexMatrix3 g = ComplexMatrix3::identity();
                g(p, p) = e.v_hi[0];
                g(q, p) = e.v_hi[1];
                g(p, q) = e.v_lo[0];
                g(q, q) = e.v_lo[1];
                a = g.adjoint() * a * g;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                v = v * g;
            }
    }
    std::array<EigenPair, 3> pairs;
    for (std::size_t k = 0; k < 3; ++k)
        pairs[k] = EigenPair{std::real(a(k, k)), {v(0, k), v(1, k), v(2, k)}};
    return finish(pairs);
}

} // namespace detail

/// Eigen-decomposition of a 3x3 Hermitian operator.
///
/// Roots of the characteristic cubic are found in trigonometric form. The
/// eigenvector of the best-separated root comes from a cross product of two
/// rows of (A - lambda I); the remaining pair is resolved exactly on the
/// orthogonal complement as a 2x2 problem, so a close pair costs no accuracy.
/// When all three roots lie within 1e-8 (relative) the Jacobi iteration is
/// used instead. Eigenvectors follow the phase convention of fix_phase.
inline EigenSystem3 eig_hermitian3(const HermitianOp3& op) {
    const ComplexMatrix3& a = op.matrix();
    const double q = std::real(a.trace()) / 3.0;
    ComplexMatrix3 b = a - ComplexMatrix3::identity() * Complex(q);
    const double p = frobenius_norm(b) / std::sqrt(6.0);
    const double scale = std::max({std::abs(q), p, 1.0});
    if (p <= 1e-8 * scale) return detail::eig_jacobi(a);

    const double r = std::clamp(std::real((b * Complex(1.0 / p)).determinant()) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double l1 = q + 2.0 * p * std::cos(phi);
    const double l3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double l2 = 3.0 * q - l1 - l3;
    if (l1 - l3 <= 1e-8 * scale) return detail::eig_jacobi(a);

    const double isolated = (l1 - l2) >= (l2 - l3) ? l1 : l3;
    const ComplexMatrix3 m = a - ComplexMatrix3::identity() * Complex(isolated);
    const std::array<ComplexVector3, 3> rows{ComplexVector3{m(0, 0), m(0, 1), m(0, 2)},
                                             ComplexVector3{m(1, 0), m(1, 1), m(1, 2)},
                                             ComplexVector3{m(2, 0), m(2, 1), m(2, 2)}};
    ComplexVector3 best{};
    double best_norm = -1.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            const ComplexVector3 c = cross(rows[i], rows[j]);
            const double n = norm(c);
            if (n > best_norm) {
                best_norm = n;
                best = c;
            }
        }
    if (!(best_norm > 0.0)) return detail::eig_jacobi(a);
    const ComplexVector3 v = detail::normalize(best);

    // orthonormal complement {u1, u2} of v
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(v[i]) < std::abs(v[k])) k = i;
    ComplexVector3 e{};
    e[k] = 1.0;
    const Complex proj = std::conj(v[k]);
    ComplexVector3 u1{e[0] - v[0] * proj, e[1] - v[1] * proj, e[2] - v[2] * proj};
    u1 = detail::normalize(u1);
    const ComplexVector3 u2 = detail::normalize(conj(cross(v, u1)));

    const ComplexVector3 au1 = a * u1;
    const ComplexVector3 au2 = a * u2;
    const detail::Eig2 sub = detail::eig_hermitian2(std::real(inner(u1, au1)), inner(u1, au2),
                                                    std::real(inner(u2, au2)));
    auto lift = [&](const std::array<Complex, 2>& x) {
        return ComplexVector3{x[0] * u1[0] + x[1] * u2[0], x[0] * u1[1] + x[1] * u2[1],
                              x[0] * u1[2] + x[1] * u2[2]};
    };
    const double rayleigh = std::real(inner(v, a * v));
    return detail::finish({EigenPair{rayleigh, v}, EigenPair{sub.hi, lift(sub.v_hi)},
                           EigenPair{sub.lo, lift(sub.v_lo)}});
}

// ---- spin-1 representation ----------------------------------------------------------------

namespace detail {

/// Columns are the spherical basis vectors e_{+1}, e_0, e_{-1} in Cartesian
/// coordinates: e_{+1} = -(x + i y)/sqrt2, e_0 = z, e_{-1} = (x - i y)/sqrt2.
inline ComplexMatrix3 cartesian_to_spherical() {
    const double h = 1.0 / std::numbers::sqrt2;
    ComplexMatrix3 v;
    v(0, 0) = -h;
    v(0, 2) = h;
    v(1, 0) = Complex(0.0, -h);
    v(1, 2) = Complex(0.0, -h);
    v(2, 1) = 1.0;
    return v;
}

} // namespace detail

/// D1(R) = V^dagger R^T V in the (m = +1, 0, -1) basis.
///
/// Chosen so that D1(R) S_n D1(R)^-1 = S_{R^-1 n}. With this direction
/// convention the map is an anti-homomorphism: D1(R1 R2) = D1(R2) D1(R1).
/// About z, D1(R_z(phi)) = diag(e^{i phi}, 1, e^{-i phi}).
inline Unitary3 wigner_d1(const Rotation3& r) {
    const ComplexMatrix3 v = detail::cartesian_to_spherical();
    return Unitary3::from_matrix(v.adjoint() * to_complex(r.matrix().transpose()) * v);
}

} // namespace fpks

#endif
