#ifndef FPKS_SPIN_HPP
#define FPKS_SPIN_HPP

#include <array>
#include <cstddef>
#include <numbers>

#include "fpks/linalg3.hpp"

namespace fpks {

/// Measurement outcomes, always ordered (+1, 0, -1) to match the basis order.
enum class Outcome : int { plus = 1, zero = 0, minus = -1 };

inline constexpr std::array<Outcome, 3> kOutcomes{Outcome::plus, Outcome::zero, Outcome::minus};

constexpr std::size_t outcome_index(Outcome i) {
    switch (i) {
    case Outcome::plus: return 0;
    case Outcome::zero: return 1;
    case Outcome::minus: return 2;
    }
    return 0;
}

constexpr int outcome_value(Outcome i) { return static_cast<int>(i); }

inline Outcome outcome_from_int(int v) {
    switch (v) {
    case 1: return Outcome::plus;
    case 0: return Outcome::zero;
    case -1: return Outcome::minus;
    default: throw ValidationError("outcome must be one of +1, 0, -1");
    }
}

/// Standard spin-1 matrices S_x, S_y, S_z in the (m = +1, 0, -1) basis.
inline std::array<ComplexMatrix3, 3> spin_matrices() {
    const double h = 1.0 / std::numbers::sqrt2;
    ComplexMatrix3 sx, sy, sz;
    sx(0, 1) = sx(1, 0) = sx(1, 2) = sx(2, 1) = h;
    sy(0, 1) = Complex(0.0, -h);
    sy(1, 0) = Complex(0.0, h);
    sy(1, 2) = Complex(0.0, -h);
    sy(2, 1) = Complex(0.0, h);
    sz(0, 0) = 1.0;
    sz(2, 2) = -1.0;
    return {sx, sy, sz};
}

/// S_n = n . S
inline HermitianOp3 spin_operator(const UnitVector3& n) {
    const auto s = spin_matrices();
    return HermitianOp3(s[0] * Complex(n.x()) + s[1] * Complex(n.y()) + s[2] * Complex(n.z()));
}

/// Eigenprojectors of S_n, keyed by outcome in the order (+1, 0, -1).
struct SharpSpinTriple {
    UnitVector3 direction;
    std::array<HermitianOp3, 3> projectors;

    const HermitianOp3& operator[](Outcome i) const { return projectors[outcome_index(i)]; }
};

/// Uses P_0 = I - S_n^2 and P_{+-1} = (S_n^2 +- S_n)/2, valid because the
/// spectrum of S_n is always {1, 0, -1}.
inline SharpSpinTriple sharp_projectors(const UnitVector3& n) {
    const ComplexMatrix3 s = spin_operator(n).matrix();
    const ComplexMatrix3 s2 = s * s;
    const ComplexMatrix3 id = ComplexMatrix3::identity();
    return SharpSpinTriple{n,
                           {HermitianOp3((s2 + s) * Complex(0.5)), HermitianOp3(id - s2),
                            HermitianOp3((s2 - s) * Complex(0.5))}};
}

/// Basis state psi_{z,i}.
inline ComplexVector3 z_basis_state(Outcome i) {
    ComplexVector3 psi{};
    psi[outcome_index(i)] = 1.0;
    return psi;
}

} // namespace fpks

#endif
