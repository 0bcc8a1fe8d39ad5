#pragma once

// Exact scalar types shared by every module: rationals, rational complex
// numbers, real quadratic surds and 2x2 rational matrices.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stabkit {

using Rational = mpq_class;
using Integer = mpz_class;
using QVec = std::vector<Rational>;
using IVec = std::vector<long long>;

Rational make_rational(long long num, long long den = 1);
inline Rational qq(long long x) { return Rational(static_cast<long>(x)); }
Rational parse_rational(std::string_view text);
/// Lowest terms, "p/q"; integers are written without a denominator.
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);
Integer floor(const Rational& q);
int sign(const Rational& q);
long long to_int64(const Rational& q); // requires an integral value that fits
QVec to_qvec(const IVec& v);
/// "[a,b,...]"
std::string to_string(const IVec& v);

struct QComplex {
    Rational re;
    Rational im;

    QComplex() = default;
    QComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    QComplex conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    long double approx_abs() const;

    friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
    friend QComplex operator*(const QComplex& a, const QComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend QComplex operator*(const Rational& s, const QComplex& a) { return {s * a.re, s * a.im}; }
    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
};

/// Im(conj(a) * b): positive iff b lies counterclockwise of a (within a half turn).
Rational cross(const QComplex& a, const QComplex& b);
/// z in H ∪ R_{<0}
bool in_closed_upper_half_plane(const QComplex& z);
std::string to_string(const QComplex& z);
/// Parses "re,im".
QComplex parse_complex(std::string_view text);

/// A real number a + b·sqrt(d) with a, b rational and d a positive integer.
/// Square factors p² of d with p <= 1000 are moved into b; comparisons are exact.
class Surd {
public:
    Surd() : a_(0), b_(0), d_(1) {}
    Surd(Rational a) : a_(std::move(a)), b_(0), d_(1) {}
    Surd(Rational a, Rational b, Integer d);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Integer& d() const { return d_; }

    bool is_rational() const { return sgn(b_) == 0; }
    std::optional<Rational> rational() const;
    int sign() const;
    long double approx() const;
    std::string to_string() const;

    Surd operator-() const { return Surd(-a_, -b_, d_); }
    friend std::strong_ordering operator<=>(const Surd& x, const Surd& y);
    friend bool operator==(const Surd& x, const Surd& y) { return (x <=> y) == 0; }

    /// Evaluates c0 + c1·x + c2·x² exactly.
    static Surd eval_quadratic(const Rational& c0, const Rational& c1, const Rational& c2, const Surd& x);

private:
    Rational a_, b_;
    Integer d_;
};

/// Sign of u + b1·sqrt(d1) + b2·sqrt(d2) with d1, d2 >= 0.
int sign_of(const Rational& u, const Rational& b1, const Integer& d1, const Rational& b2, const Integer& d2);

/// sqrt of a nonnegative rational, as a surd.
Surd surd_sqrt(const Rational& q);

/// Real 2x2 matrix [[a, b], [c, d]] acting on column vectors (x, y).
struct Mat2 {
    Rational a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }
    static Mat2 scalar(const Rational& s) { return {s, 0, 0, s}; }
    Rational det() const { return a * d - b * c; }
    Mat2 inverse() const;
    QComplex apply(const QComplex& v) const { return {a * v.re + b * v.im, c * v.re + d * v.im}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

std::string to_string(const Mat2& m);
/// Parses "a,b;c,d".
Mat2 parse_mat2(std::string_view text);

} // namespace stabkit
