#ifndef FPKS_Q2_HPP
#define FPKS_Q2_HPP

// Exact arithmetic in the quadratic field Q(sqrt2): a + b*sqrt2 with rational a, b.

#include <array>
#include <cctype>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpks/errors.hpp"

namespace fpks {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

/// Exact square root of a non-negative rational, if it is rational.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    const BigInt n = numerator(q), d = denominator(q);
    const BigInt rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rational(rn, rd);
}

/// Parses an integer or p/q with optional sign, e.g. "-3/4".
inline Rational parse_rational(std::string_view s) {
    auto is_int = [](std::string_view t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto to_int = [](std::string_view t) {
        if (!t.empty() && t[0] == '+') t.remove_prefix(1);
        return BigInt(std::string(t));
    };
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(s)) throw ValidationError("malformed rational '" + std::string(s) + "'");
        return Rational(to_int(s));
    }
    const auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
        throw ValidationError("malformed rational '" + std::string(s) + "'");
    const BigInt d = to_int(den);
    if (d == 0) throw ValidationError("zero denominator in '" + std::string(s) + "'");
    return Rational(to_int(num), d);
}

class Q2Scalar {
public:
    Q2Scalar() = default;
    Q2Scalar(Rational a) : a_(std::move(a)) {} // NOLINT: implicit embedding of Q
    Q2Scalar(long long a) : a_(a) {}           // NOLINT
    Q2Scalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static Q2Scalar sqrt2() { return Q2Scalar(Rational(0), Rational(1)); }

    const Rational& rational_part() const { return a_; }
    const Rational& sqrt2_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// a - b sqrt2
    Q2Scalar conjugate() const { return {a_, -b_}; }
    /// a^2 - 2 b^2; nonzero for every nonzero element since sqrt2 is irrational.
    Rational field_norm() const { return a_ * a_ - 2 * b_ * b_; }

    /// Exact sign of a + b sqrt2.
    int sign() const {
        const int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 with 2 b^2
        return a_ * a_ > 2 * b_ * b_ ? sa : sb;
    }

    Q2Scalar inverse() const {
        if (is_zero()) throw ValidationError("division by zero in Q(sqrt2)");
        const Rational n = field_norm();
        return {a_ / n, -b_ / n};
    }

    double to_double() const {
        return static_cast<double>(a_) + static_cast<double>(b_) * 1.4142135623730950488;
    }

    Q2Scalar operator-() const { return {-a_, -b_}; }
    Q2Scalar& operator+=(const Q2Scalar& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    Q2Scalar& operator-=(const Q2Scalar& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    Q2Scalar& operator*=(const Q2Scalar& o) {
        Rational a = a_ * o.a_ + 2 * b_ * o.b_;
        Rational b = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        return *this;
    }
    Q2Scalar& operator/=(const Q2Scalar& o) { return *this *= o.inverse(); }

    friend Q2Scalar operator+(Q2Scalar l, const Q2Scalar& r) { return l += r; }
    friend Q2Scalar operator-(Q2Scalar l, const Q2Scalar& r) { return l -= r; }
    friend Q2Scalar operator*(Q2Scalar l, const Q2Scalar& r) { return l *= r; }
    friend Q2Scalar operator/(Q2Scalar l, const Q2Scalar& r) { return l /= r; }
    friend bool operator==(const Q2Scalar& l, const Q2Scalar& r) { return l.a_ == r.a_ && l.b_ == r.b_; }
    friend bool operator!=(const Q2Scalar& l, const Q2Scalar& r) { return !(l == r); }

    /// Text form used by the ray-set files: "p/q", "r/s*sqrt2" or "p/q+r/s*sqrt2".
    std::string to_string() const {
        if (b_ == 0) return fpks::to_string(a_);
        std::string out;
        if (a_ != 0) out = fpks::to_string(a_) + (b_ > 0 ? "+" : "");
        return out + fpks::to_string(b_) + "*sqrt2";
    }

    friend std::ostream& operator<<(std::ostream& os, const Q2Scalar& x) { return os << x.to_string(); }

private:
    Rational a_{0};
    Rational b_{0};
};

/// Square root inside Q(sqrt2) of a non-negative rational q, when q is a
/// rational square or twice one.
inline std::optional<Q2Scalar> sqrt_in_field(const Rational& q) {
    if (auto r = rational_sqrt(q)) return Q2Scalar(*r);
    if (auto r = rational_sqrt(q / 2)) return Q2Scalar(Rational(0), *r);
    return std::nullopt;
}

/// Parses one coordinate: a rational, a multiple of sqrt2 ("r/s*sqrt2",
/// "sqrt2", "-sqrt2"), or "p/q+r/s*sqrt2" / "p/q-r/s*sqrt2".
inline Q2Scalar parse_q2(std::string_view s) {
    const std::string whole(s);
    auto bad = [&] { return ValidationError("malformed coordinate '" + whole + "'"); };
    if (s.empty()) throw bad();
    constexpr std::string_view kRoot = "sqrt2";
    if (s.size() < kRoot.size() || s.substr(s.size() - kRoot.size()) != kRoot) {
        try {
            return Q2Scalar(parse_rational(s));
        } catch (const ValidationError&) {
            throw bad();
        }
    }
    s.remove_suffix(kRoot.size());
    // s now ends with "*", "+", "-" or is empty
    Rational coeff(1);
    std::string_view head;
    if (!s.empty() && s.back() == '*') {
        s.remove_suffix(1);
        // split at the last sign that is not in leading position
        std::size_t split = std::string_view::npos;
        for (std::size_t i = s.size(); i-- > 1;)
            if (s[i] == '+' || s[i] == '-') {
                split = i;
                break;
            }
        std::string_view tail = split == std::string_view::npos ? s : s.substr(split);
        head = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
        try {
            coeff = parse_rational(tail);
        } catch (const ValidationError&) {
            throw bad();
        }
    } else {
        // bare "sqrt2" with optional sign, possibly after a rational part
        if (!s.empty() && (s.back() == '+' || s.back() == '-')) {
            if (s.back() == '-') coeff = -1;
            s.remove_suffix(1);
        } else if (!s.empty()) {
            throw bad();
        }
        head = s;
    }
    Rational a(0);
    if (!head.empty()) {
        try {
            a = parse_rational(head);
        } catch (const ValidationError&) {
            throw bad();
        }
    }
    return Q2Scalar(a, coeff);
}

using Q2Vector3 = std::array<Q2Scalar, 3>;

inline Q2Scalar dot(const Q2Vector3& u, const Q2Vector3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline Q2Vector3 cross(const Q2Vector3& u, const Q2Vector3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline bool is_zero(const Q2Vector3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

inline std::string to_string(const Q2Vector3& v) {
    return "(" + v[0].to_string() + ", " + v[1].to_string() + ", " + v[2].to_string() + ")";
}

} // namespace fpks

#endif
