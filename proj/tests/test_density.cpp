#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fpks/density.hpp"
#include "test_util.hpp"

using namespace fpks;
using fpks::testing::random_direction;
using fpks::testing::random_rotation;

TEST(UniformCap, ValueIsInverseCapArea) {
    for (double eps : {0.01, 0.3, 1.0, std::numbers::pi}) {
        const ErrorDensity w = ErrorDensity::uniform_cap(eps);
        const double area = 2.0 * std::numbers::pi * (1.0 - std::cos(eps));
        EXPECT_NEAR(w.radial(0.5 * eps) * area, 1.0, 1e-12) << eps;
        if (eps < std::numbers::pi) EXPECT_EQ(w.radial(eps * 1.001), 0.0);
    }
}

TEST(UniformCap, SupportIsTheCap) {
    const UnitVector3 z = UnitVector3::z_axis();
    const ErrorDensity w = ErrorDensity::uniform_cap(0.3);
    EXPECT_GT(density_at(w, z, UnitVector3::normalized({std::sin(0.29), 0.0, std::cos(0.29)})), 0.0);
    EXPECT_EQ(density_at(w, z, UnitVector3::normalized({std::sin(0.31), 0.0, std::cos(0.31)})), 0.0);
}

TEST(Densities, HaveUnitMass) {
    for (double eps : {0.001, 0.05, 0.3, 1.0, 2.0, std::numbers::pi}) {
        EXPECT_NEAR(ErrorDensity::uniform_cap(eps).mass_within(std::numbers::pi), 1.0, 1e-12) << eps;
        EXPECT_NEAR(ErrorDensity::truncated_gaussian(eps).mass_within(std::numbers::pi), 1.0, 1e-12) << eps;
    }
}

TEST(Densities, MassWithinMatchesClosedFormForCap) {
    const ErrorDensity w = ErrorDensity::uniform_cap(0.8);
    for (double t : {0.1, 0.4, 0.79}) EXPECT_NEAR(w.mass_within(t), (1 - std::cos(t)) / (1 - std::cos(0.8)), 1e-12);
}

TEST(Densities, EpsilonOutOfRangeIsRejected) {
    for (double eps : {0.0, -0.1, 3.2, std::nan("")}) {
        EXPECT_THROW(ErrorDensity::uniform_cap(eps), ValidationError);
        EXPECT_THROW(ErrorDensity::truncated_gaussian(eps), ValidationError);
    }
}

TEST(Densities, CovariantUnderRotations) {
    std::mt19937_64 rng(31);
    const ErrorDensity w = ErrorDensity::truncated_gaussian(0.4);
    for (int k = 0; k < 200; ++k) {
        const UnitVector3 n = random_direction(rng), m = random_direction(rng);
        const Rotation3 r = random_rotation(rng);
        EXPECT_NEAR(density_at(w, r.apply(n), r.apply(m)), density_at(w, n, m), 1e-12);
    }
}

TEST(Densities, GaussianPeaksAtTheIntendedDirection) {
    const ErrorDensity w = ErrorDensity::truncated_gaussian(0.2);
    EXPECT_GT(w.radial(0.0), w.radial(0.1));
    EXPECT_GT(w.radial(0.1), w.radial(0.4));
    EXPECT_EQ(w.kind(), DensityKind::truncated_gaussian);
    EXPECT_DOUBLE_EQ(w.epsilon(), 0.2);
}

TEST(CustomRadial, IsNormalizedAndValidated) {
    const ErrorDensity w = ErrorDensity::custom_radial([](double t) { return t < 0.5 ? 1.0 + t : 0.0; }, 0.5, 0.5);
    EXPECT_NEAR(w.mass_within(std::numbers::pi), 1.0, 1e-12);
    EXPECT_THROW(ErrorDensity::custom_radial([](double t) { return std::cos(t); }, 0.5), ValidationError);
    EXPECT_THROW(ErrorDensity::custom_radial([](double) { return 0.0; }, 0.5), ValidationError);
    EXPECT_THROW(ErrorDensity::custom_radial({}, 0.5), ValidationError);
}

TEST(DensityKinds, NamesRoundTrip) {
    for (DensityKind k : {DensityKind::uniform_cap, DensityKind::truncated_gaussian, DensityKind::custom_radial})
        EXPECT_EQ(density_kind_from_string(to_string(k)), k);
    EXPECT_THROW(density_kind_from_string("cauchy"), ValidationError);
    EXPECT_THROW(make_density(DensityKind::custom_radial, 0.3), ValidationError);
}
