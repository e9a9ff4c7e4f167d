#include <gtest/gtest.h>

#include "fpks/theorem1.hpp"

using namespace fpks;

TEST(Theorem1, SmallCapOnPeresEstablishesContradiction) {
    const auto r = theorem1_demonstration(DensityKind::uniform_cap, 0.4, UnsharpnessTolerance(0.1), "peres33");
    EXPECT_TRUE(r.covariance.passed);
    EXPECT_LE(r.covariance.max_residual, 1e-6);
    EXPECT_TRUE(r.hypothesis_ok);
    EXPECT_EQ(r.tripods.tripods, 16u);
    EXPECT_EQ(r.tripods.checks, 48u);
    EXPECT_TRUE(r.tripods.all_pass());
    EXPECT_FALSE(r.verdict.satisfiable);
    EXPECT_EQ(r.conclusion, Theorem1Conclusion::contradiction_established);
    EXPECT_EQ(to_string(r.conclusion), "contradiction established");
}

TEST(Theorem1, WideCapFailsTheHypothesis) {
    const auto r = theorem1_demonstration(DensityKind::uniform_cap, 1.0, UnsharpnessTolerance(0.1), "peres33");
    EXPECT_FALSE(r.hypothesis_ok);
    EXPECT_LT(r.alphas.alpha4, 0.9);
    EXPECT_FALSE(r.tripods.all_pass());
    EXPECT_EQ(r.conclusion, Theorem1Conclusion::hypotheses_not_met);
    EXPECT_EQ(to_string(r.conclusion), "hypotheses not met");
}

TEST(Theorem1, ColourableSetsNeverGiveAContradiction) {
    for (double eps : {0.1, 0.4, 1.0, 3.0}) {
        for (double d : {0.0, 0.1, 0.3}) {
            const auto r =
                theorem1_demonstration(DensityKind::uniform_cap, eps, UnsharpnessTolerance(d), "coordinate-triad");
            EXPECT_EQ(r.conclusion, Theorem1Conclusion::no_contradiction);
            EXPECT_EQ(to_string(r.conclusion), "no contradiction (colourable)");
        }
    }
}

TEST(Theorem1, GaussianFamilyBelowItsThreshold) {
    const auto r = theorem1_demonstration(DensityKind::truncated_gaussian, 0.2, UnsharpnessTolerance(0.1), "peres33");
    EXPECT_EQ(r.conclusion, Theorem1Conclusion::contradiction_established);
    const auto wide =
        theorem1_demonstration(DensityKind::truncated_gaussian, 0.3, UnsharpnessTolerance(0.1), "peres33");
    EXPECT_EQ(wide.conclusion, Theorem1Conclusion::hypotheses_not_met);
}

TEST(Theorem1, UnknownSetIsALookupError) {
    EXPECT_THROW(theorem1_demonstration(DensityKind::uniform_cap, 0.4, UnsharpnessTolerance(0.1), "nope"),
                 LookupError);
}
