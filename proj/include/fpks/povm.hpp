#ifndef FPKS_POVM_HPP
#define FPKS_POVM_HPP

// Unsharp spin-1 observables F^{n,eps}(i) = integral dOmega(m) w_{n,eps}(m) P_{m,i}.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fpks/density.hpp"
#include "fpks/errors.hpp"
#include "fpks/linalg3.hpp"
#include "fpks/quadrature.hpp"
#include "fpks/spin.hpp"

namespace fpks {

/// The four possible effect eigenvalues.
struct AlphaProfile {
    double alpha1 = 1.0; // outcome direction, |m| = 1 component of F(+-1)
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    double alpha4 = 1.0; // m = 0 component of F(0)

    /// max(|a1 + a2 + a3 - 1|, |2 a2 + a4 - 1|)
    double sum_rule_residual() const {
        return std::max(std::abs(alpha1 + alpha2 + alpha3 - 1.0), std::abs(2.0 * alpha2 + alpha4 - 1.0));
    }

    /// Eigenvalues of F(i) in the S_n eigenbasis order (+1, 0, -1).
    std::array<double, 3> pattern(Outcome i) const {
        switch (i) {
        case Outcome::plus: return {alpha1, alpha2, alpha3};
        case Outcome::zero: return {alpha2, alpha4, alpha2};
        case Outcome::minus: return {alpha3, alpha2, alpha1};
        }
        return {};
    }
};

struct QuadratureSpec {
    std::size_t theta_points = 64;
    std::size_t phi_points = 64;
    double tolerance = 1e-10;

    void validate() const {
        if (theta_points < 8 || phi_points < 8)
            throw ValidationError("quadrature orders must be at least 8");
        if (!(tolerance > 0.0) || !std::isfinite(tolerance))
            throw ValidationError("quadrature tolerance must be positive");
    }
};

/// Bound on invariant violations accepted for constructed effects.
inline constexpr double kEffectTolerance = 1e-8;

namespace detail {

inline void check_alpha_profile(const AlphaProfile& a) {
    for (double v : {a.alpha1, a.alpha2, a.alpha3, a.alpha4})
        if (!(v >= -kEffectTolerance && v <= 1.0 + kEffectTolerance))
            throw NumericalError("alpha value outside [0, 1]", v);
    if (a.sum_rule_residual() > kEffectTolerance)
        throw NumericalError("alpha sum rules violated", a.sum_rule_residual());
}

} // namespace detail

/// One-dimensional polar-angle integrals for the eigenvalues, weights
/// cos^4(t/2), sin^2 t, sin^4(t/2), cos^2 t against 2 pi w(t) sin t (the
/// second carries pi instead of 2 pi). Converged by order doubling.
inline AlphaProfile alpha_profile(const ErrorDensity& w, const QuadratureSpec& q = {}) {
    q.validate();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const auto r = quadrature::integrate_until_converged<4>(
        [&w](double t) {
            const double ws = w.radial(t) * std::sin(t);
            const double c2 = std::cos(0.5 * t), s2 = std::sin(0.5 * t);
            const double c = std::cos(t), s = std::sin(t);
            return quadrature::Values<4>{two_pi * ws * c2 * c2 * c2 * c2,
                                         std::numbers::pi * ws * s * s,
                                         two_pi * ws * s2 * s2 * s2 * s2, two_pi * ws * c * c};
        },
        0.0, w.support(), q.theta_points, q.tolerance);
    const AlphaProfile a{r.value[0], r.value[1], r.value[2], r.value[3]};
    detail::check_alpha_profile(a);
    return a;
}

/// Closed forms for the uniform cap of half-angle epsilon.
inline AlphaProfile uniform_cap_alphas(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > std::numbers::pi)
        throw ValidationError("epsilon must lie in (0, pi]");
    const double c = std::cos(epsilon);
    const double c2 = std::cos(2.0 * epsilon);
    const double sh = std::sin(0.5 * epsilon);
    const double sh2 = sh * sh;
    return AlphaProfile{(15.0 + 8.0 * c + c2) / 24.0, (2.0 + c) * sh2 / 3.0, sh2 * sh2 / 3.0,
                        (3.0 + 2.0 * c + c2) / 6.0};
}

/// Diagonal effects for the polar direction n = z.
inline std::array<HermitianOp3, 3> polar_effects(const AlphaProfile& a) {
    std::array<HermitianOp3, 3> out;
    for (Outcome i : kOutcomes) {
        const auto d = a.pattern(i);
        out[outcome_index(i)] = HermitianOp3(ComplexMatrix3::diagonal(d[0], d[1], d[2]));
    }
    return out;
}

struct SpinPovm {
    UnitVector3 direction;
    std::array<HermitianOp3, 3> effects;
    ErrorDensity density;
    QuadratureSpec quadrature;

    const HermitianOp3& operator[](Outcome i) const { return effects[outcome_index(i)]; }
};

/// Worst violation of 0 <= F <= I and of F(1) + F(0) + F(-1) = I.
inline double povm_invariant_residual(const std::array<HermitianOp3, 3>& effects) {
    double worst = 0.0;
    ComplexMatrix3 total;
    for (const auto& f : effects) {
        const auto eig = eig_hermitian3(f);
        worst = std::max({worst, -eig[2].value, eig[0].value - 1.0});
        total += f.matrix();
    }
    return std::max(worst, frobenius_distance(total, ComplexMatrix3::identity()));
}

namespace detail {

inline SpinPovm make_povm(const UnitVector3& n, std::array<HermitianOp3, 3> effects,
                          const ErrorDensity& w, const QuadratureSpec& q) {
    const double residual = povm_invariant_residual(effects);
    if (residual > kEffectTolerance)
        throw NumericalError("constructed effects violate POVM invariants", residual);
    return SpinPovm{n, std::move(effects), w, q};
}

/// Two unit vectors completing n to a right-handed orthonormal frame.
inline std::array<Vector3, 2> orthonormal_frame(const UnitVector3& n) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(n[i]) < std::abs(n[k])) k = i;
    Vector3 e{0.0, 0.0, 0.0};
    e[k] = 1.0;
    const Vector3 e1 = UnitVector3::normalized(cross(e, n.vec())).vec();
    const Vector3 e2 = cross(n.vec(), e1);
    return {e1, e2};
}

} // namespace detail

/// Effects built in the polar frame from the alpha profile, then rotated to n
/// with D1: F^n = D1(R) F^z D1(R)^-1 where R n = z.
inline SpinPovm build_povm(const UnitVector3& n, const ErrorDensity& w, const QuadratureSpec& q = {}) {
    const AlphaProfile a = alpha_profile(w, q);
    const Unitary3 d = wigner_d1(rotation_between(n, UnitVector3::z_axis()));
    std::array<HermitianOp3, 3> effects = polar_effects(a);
    for (auto& f : effects) f = d.conjugate(f);
    return detail::make_povm(n, std::move(effects), w, q);
}

/// Effects by direct product quadrature over the sphere: Gauss-Legendre in
/// the polar angle about n (order doubled until converged) times the
/// trapezoid rule in azimuth. No spin rotation is involved.
inline SpinPovm build_povm_direct(const UnitVector3& n, const ErrorDensity& w,
                                  const QuadratureSpec& q = {}) {
    q.validate();
    const auto frame = detail::orthonormal_frame(n);
    const auto s = spin_matrices();
    const std::size_t nphi = q.phi_points;
    std::vector<double> cphi(nphi), sphi(nphi);
    for (std::size_t j = 0; j < nphi; ++j) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nphi);
        cphi[j] = std::cos(phi);
        sphi[j] = std::sin(phi);
    }
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(nphi);

    // 3 effects x 9 complex entries, flattened to reals
    constexpr std::size_t K = 54;
    auto ring = [&](double theta) {
        quadrature::Values<K> acc{};
        const double weight = w.radial(theta) * std::sin(theta) * dphi;
        if (weight == 0.0) return acc;
        const double ct = std::cos(theta), st = std::sin(theta);
        for (std::size_t j = 0; j < nphi; ++j) {
            Vector3 m;
            for (std::size_t k = 0; k < 3; ++k)
                m[k] = ct * n[k] + st * (cphi[j] * frame[0][k] + sphi[j] * frame[1][k]);
            const ComplexMatrix3 sm = s[0] * Complex(m[0]) + s[1] * Complex(m[1]) + s[2] * Complex(m[2]);
            const ComplexMatrix3 sm2 = sm * sm;
            for (std::size_t e = 0; e < 9; ++e) {
                const Complex plus = 0.5 * (sm2.a[e] + sm.a[e]);
                const Complex zero = (e % 4 == 0 ? 1.0 : 0.0) - sm2.a[e];
                const Complex minus = 0.5 * (sm2.a[e] - sm.a[e]);
                acc[2 * e] += weight * plus.real();
                acc[2 * e + 1] += weight * plus.imag();
                acc[18 + 2 * e] += weight * zero.real();
                acc[18 + 2 * e + 1] += weight * zero.imag();
                acc[36 + 2 * e] += weight * minus.real();
                acc[36 + 2 * e + 1] += weight * minus.imag();
            }
        }
        return acc;
    };
    const auto r = quadrature::integrate_until_converged<K>(ring, 0.0, w.support(), q.theta_points,
                                                            q.tolerance);
    std::array<HermitianOp3, 3> effects;
    for (std::size_t i = 0; i < 3; ++i) {
        ComplexMatrix3 f;
        for (std::size_t e = 0; e < 9; ++e)
            f.a[e] = Complex(r.value[18 * i + 2 * e], r.value[18 * i + 2 * e + 1]);
        effects[i] = HermitianOp3(f);
    }
    return detail::make_povm(n, std::move(effects), w, q);
}

/// tr(P_psi F(i)) for a normalized pure state.
inline double outcome_probability(const ComplexVector3& psi, const SpinPovm& povm, Outcome i) {
    if (std::abs(norm(psi) - 1.0) > 1e-10) throw ValidationError("state vector is not normalized");
    return std::clamp(povm[i].expectation(psi), 0.0, 1.0);
}

/// max_i || D1(R) F^n(i) D1(R)^-1 - F^{R^-1 n}(i) ||_F with both sides built by
/// direct quadrature.
inline double check_covariance(const ErrorDensity& w, const UnitVector3& n, const Rotation3& r,
                               const QuadratureSpec& q = {}) {
    const Unitary3 d = wigner_d1(r);
    const SpinPovm lhs = build_povm_direct(n, w, q);
    const SpinPovm rhs = build_povm_direct(r.inverse().apply(n), w, q);
    double residual = 0.0;
    for (Outcome i : kOutcomes)
        residual = std::max(residual, frobenius_distance(d.conjugate(lhs[i]).matrix(), rhs[i].matrix()));
    return residual;
}

struct SharedEigenbasisResidual {
    double off_diagonal = 0.0; // largest |off-diagonal| of an effect in the S_n eigenbasis
    double commutator = 0.0;   // largest ||[F(i), F(j)]||_F

    double value() const { return std::max(off_diagonal, commutator); }
};

/// Expresses each effect in the eigenbasis of S_n (from eig_hermitian3) and
/// measures how far it is from diagonal; also checks mutual commutation.
inline SharedEigenbasisResidual check_shared_eigenvectors(const SpinPovm& povm) {
    const auto eig = eig_hermitian3(spin_operator(povm.direction));
    ComplexMatrix3 basis;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t r = 0; r < 3; ++r) basis(r, k) = eig[k].vector[r];
    SharedEigenbasisResidual out;
    for (const auto& f : povm.effects) {
        const ComplexMatrix3 g = basis.adjoint() * f.matrix() * basis;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (i != j) out.off_diagonal = std::max(out.off_diagonal, std::abs(g(i, j)));
    }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            out.commutator = std::max(
                out.commutator,
                frobenius_norm(commutator(povm.effects[i].matrix(), povm.effects[j].matrix())));
    return out;
}

/// Largest gap between the sorted spectrum of each effect and the sorted
/// alpha pattern expected for its outcome.
inline double spectrum_residual(const SpinPovm& povm, const AlphaProfile& a) {
    double worst = 0.0;
    for (Outcome i : kOutcomes) {
        const auto eig = eig_hermitian3(povm[i]);
        auto expected = a.pattern(i);
        std::sort(expected.begin(), expected.end(), std::greater<>());
        for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, std::abs(eig[k].value - expected[k]));
    }
    return worst;
}

} // namespace fpks

#endif
