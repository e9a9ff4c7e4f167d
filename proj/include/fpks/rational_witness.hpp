#ifndef FPKS_RATIONAL_WITNESS_HPP
#define FPKS_RATIONAL_WITNESS_HPP

// Exact check that a rotation by pi/4 about an axis orthogonal to a direction
// with rational coordinates leaves the set of rational directions. A
// misalignment model that only ever lands on rational directions therefore
// cannot be covariant under all rotations.
//
// "Direction with rational coordinates" means: the unit vector along v has
// rational components. For v in Q(sqrt2)^3 this holds iff all ratios v_i/v_j
// are rational and the squared length of the rational representative is the
// square of a rational.

#include <array>
#include <cstddef>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fpks/errors.hpp"
#include "fpks/q2.hpp"

namespace fpks {

class RationalVector3 {
public:
    static RationalVector3 from(Rational x, Rational y, Rational z) {
        if (x == 0 && y == 0 && z == 0) throw ValidationError("rational vector must be nonzero");
        return RationalVector3({std::move(x), std::move(y), std::move(z)});
    }

    const Rational& operator[](std::size_t i) const { return c_[i]; }
    Rational squared_length() const { return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2]; }
    Q2Vector3 to_q2() const { return {Q2Scalar(c_[0]), Q2Scalar(c_[1]), Q2Scalar(c_[2])}; }

    std::string to_string() const {
        return "(" + fpks::to_string(c_[0]) + ", " + fpks::to_string(c_[1]) + ", " + fpks::to_string(c_[2]) +
               ")";
    }

private:
    explicit RationalVector3(std::array<Rational, 3> c) : c_(std::move(c)) {}
    std::array<Rational, 3> c_;
};

struct RationalityVerdict {
    bool rational = false;
    std::string witness; // why not, when rational == false
};

/// All ratios v_i / v_j rational, i.e. some nonzero multiple of v is rational.
inline RationalityVerdict projective_rationality(const Q2Vector3& v) {
    if (is_zero(v)) throw ValidationError("zero vector has no direction");
    std::size_t j = 0;
    while (v[j].is_zero()) ++j;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i == j) continue;
        const Q2Scalar ratio = v[i] / v[j];
        if (!ratio.is_rational())
            return {false, "ratio v" + std::to_string(i) + "/v" + std::to_string(j) + " = " + ratio.to_string() +
                               " is irrational"};
    }
    return {true, {}};
}

/// Decides exactly whether the unit vector along v has rational coordinates.
inline RationalityVerdict is_rational_direction(const Q2Vector3& v) {
    RationalityVerdict projective = projective_rationality(v);
    if (!projective.rational) return projective;
    std::size_t j = 0;
    while (v[j].is_zero()) ++j;
    Rational q(0);
    for (std::size_t i = 0; i < 3; ++i) {
        const Rational r = (v[i] / v[j]).rational_part();
        q += r * r;
    }
    if (rational_sqrt(q)) return {true, {}};
    return {false, "direction is proportional to a rational vector of squared length " + to_string(q) +
                       ", which is not a rational square"};
}

/// Rodrigues rotation of v about `axis` with the given exact cosine and sine.
/// The axis length must lie in Q(sqrt2) (squared length a rational square or
/// twice one).
inline Q2Vector3 rotate_exact(const Q2Vector3& v, const RationalVector3& axis, const Q2Scalar& cos_angle,
                              const Q2Scalar& sin_angle) {
    const auto length = sqrt_in_field(axis.squared_length());
    if (!length)
        throw ValidationError("axis " + axis.to_string() + " has a length outside Q(sqrt2)");
    const Q2Scalar inv = length->inverse();
    const Q2Vector3 k{Q2Scalar(axis[0]) * inv, Q2Scalar(axis[1]) * inv, Q2Scalar(axis[2]) * inv};
    const Q2Vector3 kxv = cross(k, v);
    const Q2Scalar kv = dot(k, v);
    const Q2Scalar one_minus_cos = Q2Scalar(1) - cos_angle;
    Q2Vector3 out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = cos_angle * v[i] + sin_angle * kxv[i] + one_minus_cos * kv * k[i];
    return out;
}

namespace detail {

inline Q2Vector3 unit_rational_direction(const RationalVector3& m, const RationalVector3& axis) {
    if (!dot(m.to_q2(), axis.to_q2()).is_zero())
        throw ValidationError("axis " + axis.to_string() + " is not orthogonal to " + m.to_string());
    const auto length = rational_sqrt(m.squared_length());
    if (!length)
        throw ValidationError("direction " + m.to_string() + " has irrational length, so its unit vector "
                              "is not a rational direction");
    return {Q2Scalar(m[0] / *length), Q2Scalar(m[1] / *length), Q2Scalar(m[2] / *length)};
}

} // namespace detail

/// Image of the unit vector along m under the rotation by pi/4 about `axis`,
/// where cos(pi/4) = sin(pi/4) = sqrt2/2 exactly.
inline Q2Vector3 rotate_pi4_exact(const RationalVector3& m, const RationalVector3& axis) {
    const Q2Scalar half_root2(Rational(0), Rational(1, 2));
    return rotate_exact(detail::unit_rational_direction(m, axis), axis, half_root2, half_root2);
}

/// Same for pi/2, a rational rotation for rational unit axes.
inline Q2Vector3 rotate_pi2_exact(const RationalVector3& m, const RationalVector3& axis) {
    return rotate_exact(detail::unit_rational_direction(m, axis), axis, Q2Scalar(0), Q2Scalar(1));
}

struct WitnessSample {
    RationalVector3 direction;
    RationalVector3 axis;
};

struct WitnessRow {
    WitnessSample sample;
    Q2Vector3 image;              // pi/4 rotation
    RationalityVerdict image_check;
    Q2Vector3 control_image;      // pi/2 rotation
    RationalityVerdict control_check;
};

struct CovarianceViolationReport {
    std::vector<WitnessRow> rows;
    std::size_t non_rational_images = 0;
    bool violation_found = false;
    std::string conclusion;
};

inline CovarianceViolationReport covariance_violation_report(std::span<const WitnessSample> samples) {
    CovarianceViolationReport report;
    for (const auto& s : samples) {
        WitnessRow row{s, rotate_pi4_exact(s.direction, s.axis), {}, rotate_pi2_exact(s.direction, s.axis), {}};
        row.image_check = is_rational_direction(row.image);
        row.control_check = is_rational_direction(row.control_image);
        if (!row.image_check.rational) ++report.non_rational_images;
        report.rows.push_back(std::move(row));
    }
    report.violation_found = report.non_rational_images > 0;
    if (report.violation_found)
        report.conclusion = std::to_string(report.non_rational_images) + " of " +
                            std::to_string(report.rows.size()) +
                            " rational directions are mapped off the rational directions by a pi/4 rotation; "
                            "a misalignment density supported on rational directions is not rotation "
                            "covariant (shown on this finite battery)";
    return report;
}

inline std::vector<WitnessSample> default_witness_battery() {
    auto v = [](long long x, long long y, long long z) { return RationalVector3::from(x, y, z); };
    return {
        {v(1, 0, 0), v(0, 0, 1)},   {v(3, 4, 0), v(0, 0, 5)},   {v(0, 0, 1), v(1, 0, 0)},
        {v(1, 2, 2), v(2, 1, -2)},  {v(2, 3, 6), v(6, 2, -3)},  {v(1, 4, 8), v(4, 7, -4)},
        {v(3, 4, 12), v(4, -3, 0)}, {v(0, 1, 0), v(3, 0, 4)},   {v(2, -1, 2), v(2, 2, -1)},
        {v(6, 2, 3), v(2, 3, -6)},
    };
}

/// Battery in the ray-set text format: consecutive lines pair up as
/// (direction, axis). Only rational coordinates are accepted.
inline std::vector<WitnessSample> parse_witness_battery(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
    }
    if (lines.size() % 2 != 0) throw ValidationError("battery needs an even number of rows (direction, axis)");
    auto to_rational = [](const std::string& line) {
        std::istringstream fields(line);
        std::vector<Rational> c;
        for (std::string t; fields >> t;) {
            const Q2Scalar x = parse_q2(t);
            if (!x.is_rational()) throw ValidationError("battery entries must be rational: '" + t + "'");
            c.push_back(x.rational_part());
        }
        if (c.size() != 3) throw ValidationError("battery row needs 3 coordinates: '" + line + "'");
        return RationalVector3::from(c[0], c[1], c[2]);
    };
    std::vector<WitnessSample> out;
    for (std::size_t k = 0; k < lines.size(); k += 2) out.push_back({to_rational(lines[k]), to_rational(lines[k + 1])});
    return out;
}

} // namespace fpks

#endif
