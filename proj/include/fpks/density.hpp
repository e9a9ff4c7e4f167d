#ifndef FPKS_DENSITY_HPP
#define FPKS_DENSITY_HPP

// Rotation-covariant misalignment densities. A density is stored as a radial
// profile w(theta) of the angle between intended and actual direction, which
// makes w(Rn, Rm) = w(n, m) hold by construction.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "fpks/errors.hpp"
#include "fpks/linalg3.hpp"
#include "fpks/quadrature.hpp"

namespace fpks {

enum class DensityKind { uniform_cap, truncated_gaussian, custom_radial };

inline std::string_view to_string(DensityKind k) {
    switch (k) {
    case DensityKind::uniform_cap: return "uniform-cap";
    case DensityKind::truncated_gaussian: return "truncated-gaussian";
    case DensityKind::custom_radial: return "custom-radial";
    }
    return "unknown";
}

inline DensityKind density_kind_from_string(std::string_view s) {
    if (s == "uniform-cap") return DensityKind::uniform_cap;
    if (s == "truncated-gaussian") return DensityKind::truncated_gaussian;
    if (s == "custom-radial") return DensityKind::custom_radial;
    throw ValidationError("unknown density family '" + std::string(s) + "'");
}

class ErrorDensity {
public:
    using Profile = std::function<double(double)>;

    /// Non-negativity is checked on this many intervals of [0, pi].
    static constexpr int kGridPoints = 10000;

    /// 1/A on the cap theta < epsilon, A = 2 pi (1 - cos epsilon).
    static ErrorDensity uniform_cap(double epsilon) {
        check_epsilon(epsilon);
        return ErrorDensity(DensityKind::uniform_cap, epsilon, epsilon,
                            [epsilon](double theta) { return theta < epsilon ? 1.0 : 0.0; });
    }

    /// exp(-theta^2 / (2 epsilon^2)) on [0, pi], normalized numerically.
    /// Beyond 12 epsilon the profile is below 1e-31 of its peak and the
    /// integration domain is cut there.
    static ErrorDensity truncated_gaussian(double epsilon) {
        check_epsilon(epsilon);
        const double support = std::min(std::numbers::pi, 12.0 * epsilon);
        return ErrorDensity(DensityKind::truncated_gaussian, epsilon, support, [epsilon](double theta) {
            const double t = theta / epsilon;
            return std::exp(-0.5 * t * t);
        });
    }

    /// User-supplied non-negative profile; `support` bounds the region where it
    /// may be nonzero. The profile is rescaled to unit mass.
    static ErrorDensity custom_radial(Profile profile, double epsilon,
                                      double support = std::numbers::pi) {
        check_epsilon(epsilon);
        if (!profile) throw ValidationError("custom radial profile is empty");
        if (!(support > 0.0) || support > std::numbers::pi)
            throw ValidationError("support must lie in (0, pi]");
        return ErrorDensity(DensityKind::custom_radial, epsilon, support, std::move(profile));
    }

    DensityKind kind() const { return kind_; }
    double epsilon() const { return epsilon_; }
    /// Upper end of the polar-angle integration domain.
    double support() const { return support_; }

    /// Normalized density per unit solid angle at polar angle theta.
    double radial(double theta) const {
        if (theta < 0.0 || theta > std::numbers::pi) return 0.0;
        return scale_ * (*profile_)(theta);
    }

    /// 2 pi integral_0^theta radial(t) sin t dt.
    double mass_within(double theta, std::size_t points = 64, double tolerance = 1e-13) const {
        const double upper = std::clamp(theta, 0.0, support_);
        if (upper == 0.0) return 0.0;
        const auto r = quadrature::integrate_until_converged<1>(
            [this](double t) { return quadrature::Values<1>{radial(t) * std::sin(t)}; }, 0.0, upper,
            points, tolerance);
        return 2.0 * std::numbers::pi * r.value[0];
    }

private:
    ErrorDensity(DensityKind kind, double epsilon, double support, Profile profile)
        : kind_(kind), epsilon_(epsilon), support_(support),
          profile_(std::make_shared<const Profile>(std::move(profile))) {
        for (int k = 0; k <= kGridPoints; ++k) {
            const double v = (*profile_)(std::numbers::pi * k / kGridPoints);
            if (!std::isfinite(v) || v < 0.0)
                throw ValidationError("radial profile is negative or non-finite at some angle");
        }
        auto integrand = [this](double t) {
            return quadrature::Values<1>{(*profile_)(t) * std::sin(t)};
        };
        const double rough = quadrature::integrate<1>(integrand, 0.0, support_, 64)[0];
        if (!std::isfinite(rough) || !(rough > 0.0))
            throw ValidationError("radial profile has zero or non-finite mass");
        const auto mass = quadrature::integrate_until_converged<1>(integrand, 0.0, support_, 64,
                                                                   1e-14 * rough, 1 << 14);
        const double total = 2.0 * std::numbers::pi * mass.value[0];
        if (!std::isfinite(total) || !(total > 0.0))
            throw ValidationError("radial profile has zero or non-finite mass");
        scale_ = 1.0 / total;
    }

    static void check_epsilon(double epsilon) {
        if (!(epsilon > 0.0) || epsilon > std::numbers::pi)
            throw ValidationError("epsilon must lie in (0, pi]");
    }

    DensityKind kind_;
    double epsilon_;
    double support_;
    std::shared_ptr<const Profile> profile_;
    double scale_ = 1.0;
};

/// w_{n,eps}(m): the radial profile at the angle between n and m.
inline double density_at(const ErrorDensity& w, const UnitVector3& n, const UnitVector3& m) {
    return w.radial(angle_between(n, m));
}

/// Constructor for a density family at a given width.
inline ErrorDensity make_density(DensityKind kind, double epsilon) {
    switch (kind) {
    case DensityKind::uniform_cap: return ErrorDensity::uniform_cap(epsilon);
    case DensityKind::truncated_gaussian: return ErrorDensity::truncated_gaussian(epsilon);
    case DensityKind::custom_radial: break;
    }
    throw ValidationError("custom-radial densities need an explicit profile");
}

} // namespace fpks

#endif
