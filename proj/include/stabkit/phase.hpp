#pragma once

#include "stabkit/numeric.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>

namespace stabkit {

/// Result of subtracting two phases. `exact` is set whenever the difference
/// is a rational number that can be certified without floating point.
struct PhaseGap {
    std::optional<Rational> exact;
    long double approx = 0;
};

/// A real phase φ, stored as base(dir) + shift with dir ∈ H ∪ R_{<0}
/// (so base(dir) ∈ (0,1] is arg(dir)/π) and shift rational.
///
/// Comparisons are exact sign tests whenever the shifts differ by an integer
/// plus a multiple of 1/8 or 1/12 (where cot(πx) is a quadratic surd);
/// otherwise they fall back to long double arithmetic, see compare_is_exact().
class Phase {
public:
    /// Phase of a nonzero direction, lifted into (-1, 1].
    static Phase of_direction(const QComplex& z);
    /// Phase in (0, 1] of z ∈ H ∪ R_{<0}. Throws domain errors for z = 0 or
    /// z outside the closed upper half plane.
    static Phase in_heart(const QComplex& z);
    /// The phase with the given rational value.
    static Phase of_value(const Rational& value);

    const QComplex& dir() const { return dir_; }
    const Rational& shift() const { return shift_; }

    Phase plus(const Rational& delta) const { return Phase(dir_, shift_ + delta); }
    long double approx() const;
    /// Rational value when arg(dir)/π is a multiple of 1/4.
    std::optional<Rational> exact_value() const;
    /// A rational vector in direction exp(iπφ), available when the shift is a
    /// multiple of 1/4.
    std::optional<QComplex> exact_direction() const;
    std::string to_string() const;

    friend bool compare_is_exact(const Phase& a, const Phase& b);
    friend std::strong_ordering operator<=>(const Phase& a, const Phase& b);
    friend bool operator==(const Phase& a, const Phase& b) { return (a <=> b) == 0; }
    friend PhaseGap operator-(const Phase& a, const Phase& b);
    /// The phase of the product of directions, i.e. the sum of the two phases.
    friend Phase operator+(const Phase& a, const Phase& b);

private:
    Phase(QComplex dir, Rational shift) : dir_(std::move(dir)), shift_(std::move(shift)) {}

    QComplex dir_;
    Rational shift_;
};

/// cot(πx) for x ∈ (0, 1) whose denominator divides 8 or 12.
std::optional<Surd> exact_cot_pi(const Rational& x);
/// sin²(πx) for the same x (and 0 for integers).
std::optional<Surd> exact_sin_squared_pi(const Rational& x);
/// (cos(πx), sin(πx)) for x a multiple of 1/4 or 1/6, where both share one radicand.
std::optional<std::pair<Surd, Surd>> exact_cos_sin_pi(const Rational& x);

/// z rotated counterclockwise by the angle k·π/4 (phase k/4), up to a positive
/// real factor.
QComplex rotate_eighths(const QComplex& z, int k);

} // namespace stabkit
