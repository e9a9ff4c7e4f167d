#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fpks/povm.hpp"
#include "test_util.hpp"

using namespace fpks;
using fpks::testing::random_direction;
using fpks::testing::random_rotation;
using fpks::testing::random_state;

namespace {

void expect_alphas_near(const AlphaProfile& a, const AlphaProfile& b, double tol) {
    EXPECT_NEAR(a.alpha1, b.alpha1, tol);
    EXPECT_NEAR(a.alpha2, b.alpha2, tol);
    EXPECT_NEAR(a.alpha3, b.alpha3, tol);
    EXPECT_NEAR(a.alpha4, b.alpha4, tol);
}

/// Composite Simpson rule, independent of the Gauss-Legendre code.
template <typename F>
double simpson(F f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

} // namespace

TEST(UniformCapAlphas, ReferenceValues) {
    // 25-digit evaluations of the closed forms
    expect_alphas_near(uniform_cap_alphas(0.3), {0.9778344803297719, 0.02199928390325914, 0.0001662357669689258, 0.9560014321934817},
                       1e-12);
    expect_alphas_near(uniform_cap_alphas(std::numbers::pi), {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 1e-15);
}

TEST(UniformCapAlphas, AgreeWithSimpsonIntegrals) {
    for (double eps : {0.05, 0.3, 0.459, 1.0, 2.0, 3.0}) {
        const double area = 2.0 * std::numbers::pi * (1.0 - std::cos(eps));
        auto integral = [&](auto g) { return 2.0 * std::numbers::pi / area * simpson(g, 0.0, eps); };
        const AlphaProfile oracle{
            integral([](double t) { return std::sin(t) * std::pow(std::cos(t / 2), 4); }),
            0.5 * integral([](double t) { return std::pow(std::sin(t), 3); }),
            integral([](double t) { return std::sin(t) * std::pow(std::sin(t / 2), 4); }),
            integral([](double t) { return std::sin(t) * std::cos(t) * std::cos(t); })};
        expect_alphas_near(uniform_cap_alphas(eps), oracle, 1e-12);
    }
}

TEST(AlphaProfile, QuadratureMatchesClosedFormForCap) {
    for (int k = 1; k <= 50; ++k) {
        const double eps = std::numbers::pi * k / 50.0;
        expect_alphas_near(alpha_profile(ErrorDensity::uniform_cap(eps)), uniform_cap_alphas(eps), 1e-9);
    }
}

TEST(AlphaProfile, GaussianReferenceValues) {
    // 30-digit adaptive quadrature of the same integrals
    expect_alphas_near(alpha_profile(ErrorDensity::truncated_gaussian(0.2)),
                       {0.96179582935453135, 0.03745538066646127, 0.00074878997900737617, 0.92508923866707746},
                       1e-10);
    expect_alphas_near(alpha_profile(ErrorDensity::truncated_gaussian(0.5)),
                       {0.80822273723938605, 0.17076801579376528, 0.021009246966848671, 0.65846396841246945},
                       1e-10);
    expect_alphas_near(alpha_profile(ErrorDensity::truncated_gaussian(1.0)),
                       {0.56674498395715568, 0.30705777861835491, 0.12619723742448941, 0.38588444276329018},
                       1e-10);
}

TEST(AlphaProfile, SumRulesHoldForBothFamilies) {
    for (int k = 1; k <= 50; ++k) {
        const double eps = std::numbers::pi * k / 50.0;
        for (DensityKind kind : {DensityKind::uniform_cap, DensityKind::truncated_gaussian}) {
            const AlphaProfile a = alpha_profile(make_density(kind, eps));
            EXPECT_NEAR(a.alpha1 + a.alpha2 + a.alpha3, 1.0, 1e-12);
            EXPECT_NEAR(2.0 * a.alpha2 + a.alpha4, 1.0, 1e-12);
            EXPECT_LT(a.sum_rule_residual(), 1e-12);
        }
    }
}

TEST(AlphaProfile, BadQuadratureSpecIsRejected) {
    EXPECT_THROW(alpha_profile(ErrorDensity::uniform_cap(0.3), {4, 64, 1e-10}), ValidationError);
}

TEST(AlphaProfile, UnreachableToleranceIsANumericalError) {
    EXPECT_THROW(alpha_profile(ErrorDensity::uniform_cap(0.3), {8, 8, 1e-30}), NumericalError);
}

TEST(PolarEffects, FollowTheDiagonalPatterns) {
    const AlphaProfile a = uniform_cap_alphas(0.4);
    const auto f = polar_effects(a);
    EXPECT_LT(frobenius_distance(f[0].matrix(), ComplexMatrix3::diagonal(a.alpha1, a.alpha2, a.alpha3)), 1e-15);
    EXPECT_LT(frobenius_distance(f[1].matrix(), ComplexMatrix3::diagonal(a.alpha2, a.alpha4, a.alpha2)), 1e-15);
    EXPECT_LT(frobenius_distance(f[2].matrix(), ComplexMatrix3::diagonal(a.alpha3, a.alpha2, a.alpha1)), 1e-15);
}

TEST(BuildPovm, PolarCapEqualsDiagonalPatterns) {
    for (double eps : {0.1, 0.4, 1.3}) {
        const AlphaProfile a = uniform_cap_alphas(eps);
        for (auto povm : {build_povm(UnitVector3::z_axis(), ErrorDensity::uniform_cap(eps)),
                          build_povm_direct(UnitVector3::z_axis(), ErrorDensity::uniform_cap(eps))}) {
            EXPECT_LT(frobenius_distance(povm[Outcome::plus].matrix(),
                                         ComplexMatrix3::diagonal(a.alpha1, a.alpha2, a.alpha3)),
                      1e-8);
            EXPECT_LT(frobenius_distance(povm[Outcome::zero].matrix(),
                                         ComplexMatrix3::diagonal(a.alpha2, a.alpha4, a.alpha2)),
                      1e-8);
            EXPECT_LT(frobenius_distance(povm[Outcome::minus].matrix(),
                                         ComplexMatrix3::diagonal(a.alpha3, a.alpha2, a.alpha1)),
                      1e-8);
        }
    }
}

TEST(BuildPovm, RotatedAndDirectConstructionsAgree) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 10; ++k) {
        const UnitVector3 n = random_direction(rng);
        for (DensityKind kind : {DensityKind::uniform_cap, DensityKind::truncated_gaussian}) {
            const ErrorDensity w = make_density(kind, 0.2 + 0.25 * k);
            const SpinPovm a = build_povm(n, w), b = build_povm_direct(n, w);
            for (Outcome o : kOutcomes) EXPECT_LT(frobenius_distance(a[o].matrix(), b[o].matrix()), 1e-8);
        }
    }
}

TEST(BuildPovm, ResolutionOfIdentityAndPositivity) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> eps(1e-3, std::numbers::pi);
    for (int k = 0; k < 40; ++k) {
        const ErrorDensity w = make_density(k % 2 ? DensityKind::uniform_cap : DensityKind::truncated_gaussian, eps(rng));
        const SpinPovm p = build_povm(random_direction(rng), w);
        EXPECT_LT(povm_invariant_residual(p.effects), 1e-12);
        for (Outcome o : kOutcomes)
            for (const auto& e : eig_hermitian3(p[o])) {
                EXPECT_GE(e.value, -1e-12);
                EXPECT_LE(e.value, 1.0 + 1e-12);
            }
    }
}

TEST(BuildPovm, FullSphereGivesThirdOfIdentity) {
    const SpinPovm p = build_povm(UnitVector3::normalized({1, -2, 0.5}), ErrorDensity::uniform_cap(std::numbers::pi));
    for (Outcome o : kOutcomes)
        EXPECT_LT(frobenius_distance(p[o].matrix(), ComplexMatrix3::identity() * Complex(1.0 / 3.0)), 1e-12);
}

TEST(Covariance, RotatedEffectsMatchEffectsAtRotatedDirection) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 6; ++k) {
        const UnitVector3 n = random_direction(rng);
        const Rotation3 r = random_rotation(rng);
        EXPECT_LT(check_covariance(ErrorDensity::uniform_cap(0.5), n, r), 1e-6);
        EXPECT_LT(check_covariance(ErrorDensity::truncated_gaussian(0.3), n, r), 1e-6);
    }
}

TEST(SharedEigenbasis, EffectsAreDiagonalInSpinEigenbasis) {
    std::mt19937_64 rng(44);
    for (int k = 0; k < 20; ++k) {
        const UnitVector3 n = random_direction(rng);
        const ErrorDensity w = make_density(k % 2 ? DensityKind::uniform_cap : DensityKind::truncated_gaussian, 0.1 + 0.1 * k);
        for (const auto& p : {build_povm(n, w), build_povm_direct(n, w)}) {
            const auto res = check_shared_eigenvectors(p);
            EXPECT_LT(res.off_diagonal, 1e-8);
            EXPECT_LT(res.commutator, 1e-8);
        }
    }
}

TEST(SharedEigenbasis, SpectrumMatchesAlphaPattern) {
    std::mt19937_64 rng(45);
    for (int k = 0; k < 10; ++k) {
        const ErrorDensity w = ErrorDensity::truncated_gaussian(0.15 * (k + 1));
        const SpinPovm p = build_povm_direct(random_direction(rng), w);
        EXPECT_LT(spectrum_residual(p, alpha_profile(w)), 1e-8);
    }
}

TEST(OutcomeProbability, MatchesExpectationAndSumsToOne) {
    std::mt19937_64 rng(46);
    const SpinPovm p = build_povm(random_direction(rng), ErrorDensity::uniform_cap(0.7));
    for (int k = 0; k < 50; ++k) {
        const ComplexVector3 psi = random_state(rng);
        double total = 0.0;
        for (Outcome o : kOutcomes) total += outcome_probability(psi, p, o);
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
    const SpinPovm z = build_povm(UnitVector3::z_axis(), ErrorDensity::uniform_cap(0.3));
    EXPECT_NEAR(outcome_probability(z_basis_state(Outcome::zero), z, Outcome::zero), uniform_cap_alphas(0.3).alpha4,
                1e-12);
    EXPECT_THROW(outcome_probability(ComplexVector3{1.0, 1.0, 0.0}, z, Outcome::plus), ValidationError);
}

TEST(SharpLimit, EffectsApproachProjectorsMonotonically) {
    const auto sharp = sharp_projectors(UnitVector3::z_axis());
    for (DensityKind kind : {DensityKind::uniform_cap, DensityKind::truncated_gaussian}) {
        double previous = 1e300;
        for (double eps : {0.5, 0.25, 0.1, 0.01}) {
            const SpinPovm p = build_povm(UnitVector3::z_axis(), make_density(kind, eps));
            double d = 0.0;
            for (Outcome o : kOutcomes) d = std::max(d, frobenius_distance(p[o].matrix(), sharp[o].matrix()));
            EXPECT_LT(d, previous);
            previous = d;
        }
        EXPECT_LE(previous, kind == DensityKind::uniform_cap ? 1e-4 : 1e-3);
    }
}
