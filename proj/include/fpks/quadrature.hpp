#ifndef FPKS_QUADRATURE_HPP
#define FPKS_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "fpks/errors.hpp"

namespace fpks::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

/// P_n(x) and P_n'(x) by the three-term recurrence.
inline std::array<double, 2> legendre(std::size_t n, double x) {
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
    }
    const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

} // namespace detail

/// n-point Gauss-Legendre rule on [-1, 1]: Newton iteration on P_n from the
/// usual cosine initial guesses, symmetric node pairs filled together.
inline Rule gauss_legendre(std::size_t n) {
    if (n == 0) throw ValidationError("Gauss-Legendre order must be positive");
    if (n == 1) return Rule{{0.0}, {2.0}};
    Rule r{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = detail::legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = detail::legendre(n, x)[1];
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        const double dp = detail::legendre(n, 0.0)[1];
        r.nodes[n / 2] = 0.0;
        r.weights[n / 2] = 2.0 / (dp * dp);
    }
    return r;
}

/// Rule mapped onto [a, b].
inline Rule gauss_legendre(std::size_t n, double a, double b) {
    Rule r = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t k = 0; k < n; ++k) {
        r.nodes[k] = mid + half * r.nodes[k];
        r.weights[k] *= half;
    }
    return r;
}

template <std::size_t K>
using Values = std::array<double, K>;

/// Integral of a vector-valued f over [a, b] with an n-point rule.
/// Summation runs in node order, so results are deterministic.
template <std::size_t K, typename F>
Values<K> integrate(const F& f, double a, double b, std::size_t n) {
    const Rule r = gauss_legendre(n, a, b);
    Values<K> acc{};
    for (std::size_t k = 0; k < n; ++k) {
        const Values<K> v = f(r.nodes[k]);
        for (std::size_t c = 0; c < K; ++c) acc[c] += r.weights[k] * v[c];
    }
    return acc;
}

template <std::size_t K>
struct Converged {
    Values<K> value;
    std::size_t points;   // order of the accepted rule
    double change;        // max component change on the last doubling
};

/// Doubles the order starting from `n0` until two successive results agree
/// componentwise within `tolerance`. Throws NumericalError past `max_points`.
template <std::size_t K, typename F>
Converged<K> integrate_until_converged(const F& f, double a, double b, std::size_t n0,
                                       double tolerance, std::size_t max_points = 8192) {
    if (n0 == 0) throw ValidationError("quadrature order must be positive");
    if (!(tolerance > 0.0)) throw ValidationError("quadrature tolerance must be positive");
    std::size_t n = n0;
    Values<K> prev = integrate<K>(f, a, b, n);
    double change = 0.0;
    while (2 * n <= max_points) {
        const Values<K> next = integrate<K>(f, a, b, 2 * n);
        change = 0.0;
        for (std::size_t c = 0; c < K; ++c) change = std::max(change, std::abs(next[c] - prev[c]));
        if (!std::isfinite(change)) break;
        if (change <= tolerance) return {next, 2 * n, change};
        prev = next;
        n *= 2;
    }
    throw NumericalError("quadrature did not converge; last change between orders = " +
                             std::to_string(change),
                         prev[0]);
}

} // namespace fpks::quadrature

#endif
