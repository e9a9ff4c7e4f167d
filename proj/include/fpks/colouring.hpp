#ifndef FPKS_COLOURING_HPP
#define FPKS_COLOURING_HPP

// Threshold colouring of eigenrays (AT / AF) and the inaccuracy threshold
// below which every tripod gets exactly one AT and two AF.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>

#include "fpks/density.hpp"
#include "fpks/errors.hpp"
#include "fpks/povm.hpp"
#include "fpks/spin.hpp"

namespace fpks {

enum class Colour { AT, AF, Uncoloured };

inline std::string_view to_string(Colour c) {
    switch (c) {
    case Colour::AT: return "AT";
    case Colour::AF: return "AF";
    case Colour::Uncoloured: return "uncoloured";
    }
    return "?";
}

class UnsharpnessTolerance {
public:
    static constexpr double kDefault = 0.1;

    UnsharpnessTolerance() = default;
    explicit UnsharpnessTolerance(double delta) : delta_(delta) {
        if (!(delta >= 0.0) || !(delta < 0.5))
            throw ValidationError("unsharpness tolerance must satisfy 0 <= delta < 0.5");
    }

    double value() const { return delta_; }

private:
    double delta_ = kDefault;
};

/// Colours of the three eigenrays of S_n, in the order (+1, 0, -1).
using RayColours = std::array<Colour, 3>;

/// Eigenvalue >= 1 - delta gives AT, <= delta gives AF, anything between is
/// left uncoloured.
inline RayColours classify(const AlphaProfile& a, Outcome outcome, UnsharpnessTolerance delta) {
    const double d = delta.value();
    RayColours out{};
    const auto eig = a.pattern(outcome);
    for (std::size_t k = 0; k < 3; ++k) {
        if (eig[k] >= 1.0 - d)
            out[k] = Colour::AT;
        else if (eig[k] <= d)
            out[k] = Colour::AF;
        else
            out[k] = Colour::Uncoloured;
    }
    return out;
}

struct TripodColouring {
    UnitVector3 direction;
    Outcome outcome;
    RayColours colours;

    int count(Colour c) const {
        int k = 0;
        for (Colour x : colours) k += (x == c);
        return k;
    }
    bool one_true_two_false() const { return count(Colour::AT) == 1 && count(Colour::AF) == 2; }
};

inline TripodColouring colour_tripod(const UnitVector3& n, const AlphaProfile& a, Outcome outcome,
                                     UnsharpnessTolerance delta) {
    return TripodColouring{n, outcome, classify(a, outcome, delta)};
}

/// The constraints on the eigenvalue profile, in reporting order.
enum class AlphaConstraint { alpha1_at_least, alpha2_at_most, alpha3_at_most, alpha4_at_least };

inline std::string_view to_string(AlphaConstraint c) {
    switch (c) {
    case AlphaConstraint::alpha1_at_least: return "alpha1 >= 1 - delta";
    case AlphaConstraint::alpha2_at_most: return "alpha2 <= delta";
    case AlphaConstraint::alpha3_at_most: return "alpha3 <= delta";
    case AlphaConstraint::alpha4_at_least: return "alpha4 >= 1 - delta";
    }
    return "?";
}

/// Signed slack of each constraint; negative means violated.
inline std::array<double, 4> constraint_slack(const AlphaProfile& a, UnsharpnessTolerance delta) {
    const double d = delta.value();
    return {a.alpha1 - (1.0 - d), d - a.alpha2, d - a.alpha3, a.alpha4 - (1.0 - d)};
}

/// min(alpha1, alpha4) >= 1 - delta and max(alpha2, alpha3) <= delta.
inline bool hypothesis_check(const AlphaProfile& a, UnsharpnessTolerance delta) {
    for (double s : constraint_slack(a, delta))
        if (s < 0.0) return false;
    return true;
}

using DensityFamily = std::function<ErrorDensity(double)>;

inline DensityFamily density_family(DensityKind kind) {
    return [kind](double eps) { return make_density(kind, eps); };
}

struct CriticalEpsilon {
    double epsilon;            // radians
    AlphaConstraint binding;   // the constraint that fails just above epsilon
};

/// Largest epsilon such that the hypothesis holds on the whole scan grid up
/// to it. Scans epsilon = k * grid_step upward until the first failure, then
/// bisects between the last passing and first failing grid points to `bisect_tol`.
inline CriticalEpsilon critical_epsilon(UnsharpnessTolerance delta, const DensityFamily& family,
                                        const QuadratureSpec& q = {}, double grid_step = 1e-3,
                                        double bisect_tol = 1e-6) {
    auto passes = [&](double eps) { return hypothesis_check(alpha_profile(family(eps), q), delta); };
    double last_pass = 0.0;
    double first_fail = -1.0;
    for (int k = 1;; ++k) {
        const double eps = std::min(k * grid_step, std::numbers::pi);
        if (!passes(eps)) {
            first_fail = eps;
            break;
        }
        last_pass = eps;
        if (eps >= std::numbers::pi) break;
    }
    if (last_pass == 0.0)
        throw DomainError("hypothesis is not satisfied at any epsilon on the scan grid");
    if (first_fail < 0.0)
        return CriticalEpsilon{std::numbers::pi, AlphaConstraint::alpha4_at_least};

    double lo = last_pass, hi = first_fail;
    while (hi - lo > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        (passes(mid) ? lo : hi) = mid;
    }
    const auto slack = constraint_slack(alpha_profile(family(hi), q), delta);
    std::size_t worst = 0;
    for (std::size_t k = 1; k < 4; ++k)
        if (slack[k] < slack[worst]) worst = k;
    return CriticalEpsilon{0.5 * (lo + hi), static_cast<AlphaConstraint>(worst)};
}

} // namespace fpks

#endif
