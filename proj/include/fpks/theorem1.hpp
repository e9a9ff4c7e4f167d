#ifndef FPKS_THEOREM1_HPP
#define FPKS_THEOREM1_HPP

// End-to-end composition: covariance of the misalignment model, the eigenvalue
// hypothesis, the per-tripod AT/AF derivation and the exact colourability
// search on a KS set.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>

#include "fpks/colouring.hpp"
#include "fpks/density.hpp"
#include "fpks/ks_search.hpp"
#include "fpks/ksets.hpp"
#include "fpks/linalg3.hpp"
#include "fpks/povm.hpp"

namespace fpks {

enum class Theorem1Conclusion { contradiction_established, hypotheses_not_met, no_contradiction };

inline std::string_view to_string(Theorem1Conclusion c) {
    switch (c) {
    case Theorem1Conclusion::contradiction_established: return "contradiction established";
    case Theorem1Conclusion::hypotheses_not_met: return "hypotheses not met";
    case Theorem1Conclusion::no_contradiction: return "no contradiction (colourable)";
    }
    return "?";
}

struct Theorem1Options {
    QuadratureSpec quadrature{};
    std::size_t covariance_samples = 3;
    std::uint64_t covariance_seed = 1;
    double covariance_tolerance = 1e-6;
    SearchOptions search{};
};

struct CovarianceCheck {
    std::size_t samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct TripodDerivation {
    std::size_t tripods = 0;
    std::size_t checks = 0;             // tripods x outcomes
    std::size_t one_true_two_false = 0; // checks with exactly one AT and two AF
    bool all_pass() const { return checks == one_true_two_false; }
};

struct Theorem1Report {
    DensityKind kind;
    double epsilon;
    double delta;
    std::string ks_name;
    CovarianceCheck covariance;
    AlphaProfile alphas;
    std::array<double, 4> slack;
    bool hypothesis_ok;
    TripodDerivation tripods;
    ColourabilityVerdict verdict;
    Theorem1Conclusion conclusion;
};

namespace detail {

inline UnitVector3 random_unit_vector(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double z = u(rng);
    const double phi = std::numbers::pi * u(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return UnitVector3::normalized({r * std::cos(phi), r * std::sin(phi), z});
}

inline CovarianceCheck covariance_check(const ErrorDensity& w, const Theorem1Options& opt) {
    std::mt19937_64 rng(opt.covariance_seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    CovarianceCheck out{opt.covariance_samples, 0.0, opt.covariance_tolerance, true};
    for (std::size_t k = 0; k < opt.covariance_samples; ++k) {
        const UnitVector3 n = random_unit_vector(rng);
        const UnitVector3 axis = random_unit_vector(rng);
        const Rotation3 r = rotation_from_axis_angle(axis, angle(rng));
        out.max_residual = std::max(out.max_residual, check_covariance(w, n, r, opt.quadrature));
    }
    out.passed = out.max_residual <= out.tolerance;
    return out;
}

/// Colours the eigenrays of F^n(i) for n along the first ray of each triad,
/// reading the eigenvalues off the rotated effects.
inline TripodDerivation derive_tripods(const KsSet& ks, const AlphaProfile& a, UnsharpnessTolerance delta) {
    TripodDerivation out;
    const auto polar = polar_effects(a);
    for (const auto& t : ks.triads) {
        const auto c = ks.rays[t[0]].to_double();
        const UnitVector3 n = UnitVector3::normalized({c[0], c[1], c[2]});
        const Unitary3 d = wigner_d1(rotation_between(n, UnitVector3::z_axis()));
        ++out.tripods;
        for (Outcome i : kOutcomes) {
            const auto eig = eig_hermitian3(d.conjugate(polar[outcome_index(i)]));
            int at = 0, af = 0;
            for (const auto& p : eig) {
                if (p.value >= 1.0 - delta.value()) ++at;
                else if (p.value <= delta.value()) ++af;
            }
            ++out.checks;
            if (at == 1 && af == 2) ++out.one_true_two_false;
        }
    }
    return out;
}

} // namespace detail

inline Theorem1Report theorem1_demonstration(const ErrorDensity& w, UnsharpnessTolerance delta, const KsSet& ks,
                                             const Theorem1Options& opt = {}) {
    Theorem1Report rep{w.kind(), w.epsilon(), delta.value(), ks.name, {}, {}, {}, false, {}, {}, {}};
    rep.covariance = detail::covariance_check(w, opt);
    rep.alphas = alpha_profile(w, opt.quadrature);
    rep.slack = constraint_slack(rep.alphas, delta);
    rep.hypothesis_ok = hypothesis_check(rep.alphas, delta);
    rep.tripods = detail::derive_tripods(ks, rep.alphas, delta);
    rep.verdict = colourability_search(ks, opt.search);
    if (rep.verdict.satisfiable)
        rep.conclusion = Theorem1Conclusion::no_contradiction;
    else if (!rep.covariance.passed || !rep.hypothesis_ok || !rep.tripods.all_pass())
        rep.conclusion = Theorem1Conclusion::hypotheses_not_met;
    else
        rep.conclusion = Theorem1Conclusion::contradiction_established;
    return rep;
}

inline Theorem1Report theorem1_demonstration(DensityKind kind, double epsilon, UnsharpnessTolerance delta,
                                             std::string_view ks_name, const Theorem1Options& opt = {}) {
    return theorem1_demonstration(make_density(kind, epsilon), delta, load_ks_set(ks_name), opt);
}

} // namespace fpks

#endif
