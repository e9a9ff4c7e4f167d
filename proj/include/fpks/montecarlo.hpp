#ifndef FPKS_MONTECARLO_HPP
#define FPKS_MONTECARLO_HPP

// Misaligned sharp measurements: draw the actual direction m from w_{n,eps},
// measure S_m sharply on psi, and compare outcome frequencies with the
// unsharp effects.
//
// Random stream: std::mt19937_64 (its output sequence is fixed by the C++
// standard), doubles formed as (x >> 11) * 2^-53.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "fpks/density.hpp"
#include "fpks/errors.hpp"
#include "fpks/linalg3.hpp"
#include "fpks/povm.hpp"
#include "fpks/quadrature.hpp"
#include "fpks/spin.hpp"

namespace fpks {

class RandomStream {
public:
    static constexpr std::string_view kGenerator = "mt19937_64";

    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Draws polar angles about the intended direction. The uniform cap is
/// sampled exactly (cos theta uniform on [cos eps, 1]); other densities use a
/// tabulated radial CDF with cubic Hermite interpolation.
class DirectionSampler {
public:
    static constexpr std::size_t kKnots = 10000;

    explicit DirectionSampler(const ErrorDensity& w) : kind_(w.kind()), epsilon_(w.epsilon()) {
        if (kind_ == DensityKind::uniform_cap) {
            const double s = std::sin(0.5 * epsilon_);
            cap_height_ = 2.0 * s * s; // 1 - cos eps
            return;
        }
        const double support = w.support();
        const auto rule = quadrature::gauss_legendre(8);
        theta_.resize(kKnots + 1);
        cdf_.resize(kKnots + 1);
        cdf_[0] = 0.0;
        pdf_.resize(kKnots + 1);
        for (std::size_t k = 0; k <= kKnots; ++k) {
            theta_[k] = support * static_cast<double>(k) / kKnots;
            pdf_[k] = w.radial(theta_[k]) * std::sin(theta_[k]);
        }
        for (std::size_t k = 0; k < kKnots; ++k) {
            const double a = theta_[k], b = theta_[k + 1];
            double piece = 0.0;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j];
                piece += rule.weights[j] * w.radial(t) * std::sin(t);
            }
            cdf_[k + 1] = cdf_[k] + 0.5 * (b - a) * piece;
        }
        const double total = cdf_.back();
        if (!(total > 0.0)) throw NumericalError("radial CDF has zero mass", total);
        for (auto& c : cdf_) c /= total;
        for (auto& f : pdf_) f /= total;
    }

    /// Polar angle theta from one uniform variate, returned as (cos, sin).
    std::array<double, 2> polar(double u) const {
        if (kind_ == DensityKind::uniform_cap) {
            const double t = u * cap_height_; // 1 - cos theta
            return {1.0 - t, std::sqrt(std::max(0.0, t * (2.0 - t)))};
        }
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        std::size_t k = static_cast<std::size_t>(it - cdf_.begin());
        k = std::clamp<std::size_t>(k, 1, kKnots) - 1;
        const double c0 = cdf_[k], c1 = cdf_[k + 1];
        // Newton on the cubic Hermite piece, kept inside the bracket [0, 1].
        double lo = 0.0, hi = 1.0;
        double f = c1 > c0 ? std::clamp((u - c0) / (c1 - c0), 0.0, 1.0) : 0.0;
        for (int iter = 0; iter < 8 && c1 > c0; ++iter) {
            const double r = hermite(k, f) - u;
            if (r > 0.0) hi = f;
            else lo = f;
            const double d = hermite_slope(k, f);
            double next = d > 0.0 ? f - r / d : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - f) < 1e-15) {
                f = next;
                break;
            }
            f = next;
        }
        const double theta = theta_[k] + f * (theta_[k + 1] - theta_[k]);
        return {std::cos(theta), std::sin(theta)};
    }

    /// Tabulated CDF of theta (uniform cap: exact).
    double cdf(double theta) const {
        if (kind_ == DensityKind::uniform_cap) {
            if (theta >= epsilon_) return 1.0;
            const double s = std::sin(0.5 * theta);
            return std::max(0.0, 2.0 * s * s / cap_height_);
        }
        if (theta <= 0.0) return 0.0;
        if (theta >= theta_.back()) return 1.0;
        const double pos = theta / theta_.back() * kKnots;
        const auto k = static_cast<std::size_t>(pos);
        const double f = pos - static_cast<double>(k);
        return std::clamp(hermite(std::min<std::size_t>(k, kKnots - 1), f), 0.0, 1.0);
    }

    /// Direction about the pole z, then carried to n by `to_n`.
    UnitVector3 sample(const Rotation3& to_n, RandomStream& rng) const {
        const auto [c, s] = polar(rng.uniform());
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const Vector3 local{s * std::cos(phi), s * std::sin(phi), c};
        return UnitVector3::normalized(to_n.apply(local));
    }

private:
    double hermite(std::size_t k, double f) const {
        const double h = theta_[k + 1] - theta_[k];
        const double f2 = f * f, f3 = f2 * f;
        return (2 * f3 - 3 * f2 + 1) * cdf_[k] + (f3 - 2 * f2 + f) * h * pdf_[k] + (-2 * f3 + 3 * f2) * cdf_[k + 1] +
               (f3 - f2) * h * pdf_[k + 1];
    }

    double hermite_slope(std::size_t k, double f) const {
        const double h = theta_[k + 1] - theta_[k];
        const double f2 = f * f;
        return (6 * f2 - 6 * f) * cdf_[k] + (3 * f2 - 4 * f + 1) * h * pdf_[k] + (-6 * f2 + 6 * f) * cdf_[k + 1] +
               (3 * f2 - 2 * f) * h * pdf_[k + 1];
    }

    DensityKind kind_;
    double epsilon_;
    double cap_height_ = 0.0;
    std::vector<double> theta_;
    std::vector<double> cdf_;
    std::vector<double> pdf_;
};

inline UnitVector3 sample_direction(const ErrorDensity& w, const UnitVector3& n, RandomStream& rng) {
    return DirectionSampler(w).sample(rotation_between(UnitVector3::z_axis(), n), rng);
}

struct SimulationReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string_view generator = RandomStream::kGenerator;
    std::array<std::uint64_t, 3> counts{};  // outcome order +1, 0, -1
    std::array<double, 3> frequencies{};
    std::array<double, 3> expected{};
    std::array<double, 3> z_scores{};

    /// |z_i| <= k for every outcome.
    bool within_sigma(double k) const {
        for (double z : z_scores)
            if (!(std::abs(z) <= k)) return false;
        return true;
    }
};

/// Sharp outcome probabilities <psi|P_{m,i}|psi> for arbitrary m from the
/// first and second moments of the spin components in psi.
class SharpProbabilities {
public:
    explicit SharpProbabilities(const ComplexVector3& psi) {
        const auto s = spin_matrices();
        for (std::size_t k = 0; k < 3; ++k) {
            first_[k] = std::real(inner(psi, s[k] * psi));
            for (std::size_t l = 0; l < 3; ++l) second_[k][l] = std::real(inner(psi, (s[k] * s[l]) * psi));
        }
    }

    std::array<double, 3> operator()(const UnitVector3& m) const {
        double s = 0.0, q = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            s += m[k] * first_[k];
            for (std::size_t l = 0; l < 3; ++l) q += m[k] * m[l] * second_[k][l];
        }
        return {0.5 * (q + s), 1.0 - q, 0.5 * (q - s)};
    }

private:
    std::array<double, 3> first_{};
    std::array<std::array<double, 3>, 3> second_{};
};

inline SimulationReport run_experiment(const ComplexVector3& psi, const UnitVector3& n, const ErrorDensity& w,
                                       std::uint64_t trials, std::uint64_t seed, const QuadratureSpec& q = {}) {
    if (trials < 1) throw ValidationError("trials must be at least 1");
    if (std::abs(norm(psi) - 1.0) > 1e-10) throw ValidationError("state vector is not normalized");
    const DirectionSampler sampler(w);
    const Rotation3 to_n = rotation_between(UnitVector3::z_axis(), n);
    const SharpProbabilities sharp(psi);
    RandomStream rng(seed);

    SimulationReport rep;
    rep.trials = trials;
    rep.seed = seed;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto p = sharp(sampler.sample(to_n, rng));
        const double u = rng.uniform();
        const std::size_t i = u < p[0] ? 0 : (u < p[0] + p[1] ? 1 : 2);
        ++rep.counts[i];
    }
    const SpinPovm povm = build_povm(n, w, q);
    const double nt = static_cast<double>(trials);
    for (Outcome o : kOutcomes) {
        const std::size_t i = outcome_index(o);
        rep.frequencies[i] = static_cast<double>(rep.counts[i]) / nt;
        rep.expected[i] = outcome_probability(psi, povm, o);
        const double sigma = std::sqrt(rep.expected[i] * (1.0 - rep.expected[i]) / nt);
        const double diff = rep.frequencies[i] - rep.expected[i];
        rep.z_scores[i] = sigma > 0.0 ? diff / sigma
                                      : (diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff));
    }
    return rep;
}

} // namespace fpks

#endif
