#include "stabkit/numeric.hpp"

#include "stabkit/error.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace stabkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_int_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_int(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

int sign_single(const Rational& a, const Rational& b, const Integer& d) {
    int sa = sgn(a);
    int sb = sgn(d) == 0 ? 0 : sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational lhs = a * a;
    Rational rhs = b * b * Rational(d);
    int c = cmp(lhs, rhs);
    if (c > 0) return sa;
    if (c < 0) return sb;
    return 0;
}

} // namespace

Rational make_rational(long long num, long long den) {
    require(den != 0, "zero denominator");
    Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    require(!s.empty(), "empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        auto num = trim(s.substr(0, slash));
        auto den = trim(s.substr(slash + 1));
        require(is_int_literal(num) && is_int_literal(den), "malformed rational '" + std::string(text) + "'");
        Integer d = parse_int(den);
        require(d != 0, "zero denominator in '" + std::string(text) + "'");
        Rational q(parse_int(num), d);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot != std::string_view::npos) {
        auto ip = s.substr(0, dot);
        auto fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip.front() == '-';
        std::string_view ipd = (neg || (!ip.empty() && ip.front() == '+')) ? ip.substr(1) : ip;
        require((ipd.empty() || is_int_literal(ipd)) && !fp.empty() && is_int_literal(fp) && fp.front() != '-' &&
                    fp.front() != '+',
                "malformed decimal '" + std::string(text) + "'");
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        Integer num = (ipd.empty() ? Integer(0) : parse_int(ipd)) * den + parse_int(fp);
        Rational q(neg ? Integer(-num) : num, den);
        q.canonicalize();
        return q;
    }
    require(is_int_literal(s), "malformed rational '" + std::string(text) + "'");
    return Rational(parse_int(s));
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

int sign(const Rational& q) { return sgn(q); }

long long to_int64(const Rational& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p()) fail(ErrorKind::internal, "value " + to_string(q) + " is not a small integer");
    return q.get_num().get_si();
}

std::string to_string(const IVec& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

QVec to_qvec(const IVec& v) {
    QVec out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(make_rational(x));
    return out;
}

long double QComplex::approx_abs() const {
    return std::hypot(static_cast<long double>(re.get_d()), static_cast<long double>(im.get_d()));
}

Rational cross(const QComplex& a, const QComplex& b) { return a.re * b.im - a.im * b.re; }

bool in_closed_upper_half_plane(const QComplex& z) { return sgn(z.im) > 0 || (sgn(z.im) == 0 && sgn(z.re) < 0); }

std::string to_string(const QComplex& z) { return to_string(z.re) + "," + to_string(z.im); }

QComplex parse_complex(std::string_view text) {
    auto comma = text.find(',');
    require(comma != std::string_view::npos, "complex literal must be 're,im': '" + std::string(text) + "'");
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

Surd::Surd(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    require(sgn(d_) >= 0, "negative radicand");
    if (sgn(d_) == 0 || sgn(b_) == 0) {
        b_ = 0;
        d_ = 1;
        return;
    }
    // move square factors of the radicand into b
    for (unsigned long p = 2; p <= 1000; ++p) {
        Integer pp = Integer(p) * p;
        if (pp > d_) break;
        while (mpz_divisible_p(d_.get_mpz_t(), pp.get_mpz_t())) {
            d_ /= pp;
            b_ *= p;
        }
    }
    if (mpz_perfect_square_p(d_.get_mpz_t())) {
        Integer root;
        mpz_sqrt(root.get_mpz_t(), d_.get_mpz_t());
        a_ += b_ * Rational(root);
        b_ = 0;
        d_ = 1;
    }
}

std::optional<Rational> Surd::rational() const {
    if (is_rational()) return a_;
    return std::nullopt;
}

int Surd::sign() const { return sign_single(a_, b_, d_); }

long double Surd::approx() const {
    return static_cast<long double>(a_.get_d()) +
           static_cast<long double>(b_.get_d()) * std::sqrt(static_cast<long double>(d_.get_d()));
}

std::string Surd::to_string() const {
    if (is_rational()) return stabkit::to_string(a_);
    std::string out;
    Rational mag = abs(b_);
    std::string root = "sqrt(" + d_.get_str() + ")";
    std::string term = (mag == 1) ? root : stabkit::to_string(mag) + "*" + root;
    if (sgn(a_) != 0) {
        out = stabkit::to_string(a_);
        out += (sgn(b_) > 0 ? "+" : "-");
        out += term;
    } else {
        out = (sgn(b_) > 0 ? "" : "-") + term;
    }
    return out;
}

std::strong_ordering operator<=>(const Surd& x, const Surd& y) {
    int s = sign_of(x.a_ - y.a_, x.b_, x.d_, -y.b_, y.d_);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Surd Surd::eval_quadratic(const Rational& c0, const Rational& c1, const Rational& c2, const Surd& x) {
    Rational sq_rat = x.a_ * x.a_ + x.b_ * x.b_ * Rational(x.d_);
    Rational sq_irr = 2 * x.a_ * x.b_;
    return Surd(c0 + c1 * x.a_ + c2 * sq_rat, c1 * x.b_ + c2 * sq_irr, x.d_);
}

int sign_of(const Rational& u, const Rational& b1, const Integer& d1, const Rational& b2, const Integer& d2) {
    int sp = sgn(d1) == 0 ? 0 : sgn(b1);
    int sq = sgn(d2) == 0 ? 0 : sgn(b2);
    Rational p2 = b1 * b1 * Rational(d1);
    Rational q2 = b2 * b2 * Rational(d2);
    int sw;
    if (sp == 0) sw = sq;
    else if (sq == 0 || sp == sq) sw = sp;
    else {
        int c = cmp(p2, q2);
        sw = c > 0 ? sp : (c < 0 ? sq : 0);
    }
    int su = sgn(u);
    if (sw == 0) return su;
    if (su == 0 || su == sw) return sw;
    // Opposite signs: compare u² with (p+q)² = p² + q² + 2pq.
    int s = sign_single(u * u - p2 - q2, -2 * b1 * b2, d1 * d2);
    if (s > 0) return su;
    if (s < 0) return sw;
    return 0;
}

Surd surd_sqrt(const Rational& q) {
    require(sgn(q) >= 0, "square root of a negative rational");
    Rational c = q;
    c.canonicalize();
    return Surd(0, Rational(1, c.get_den()), c.get_num() * c.get_den());
}

Mat2 Mat2::inverse() const {
    Rational dt = det();
    if (sgn(dt) == 0) fail(ErrorKind::domain, "singular 2x2 matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

std::string to_string(const Mat2& m) {
    return to_string(m.a) + "," + to_string(m.b) + ";" + to_string(m.c) + "," + to_string(m.d);
}

Mat2 parse_mat2(std::string_view text) {
    auto semi = text.find(';');
    require(semi != std::string_view::npos, "matrix literal must be 'a,b;c,d'");
    auto top = parse_complex(text.substr(0, semi));
    auto bottom = parse_complex(text.substr(semi + 1));
    return {top.re, top.im, bottom.re, bottom.im};
}

} // namespace stabkit
