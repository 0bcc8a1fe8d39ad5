#include "stabkit/k3.hpp"

#include "stabkit/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace stabkit {

namespace {

template <class F>
void for_each_box_vector(int dim, long long bound, F&& f) {
    if (bound < 0) return;
    IVec x(dim, -bound);
    while (true) {
        f(x);
        int k = dim - 1;
        while (k >= 0 && x[k] == bound) {
            x[k] = -bound;
            --k;
        }
        if (k < 0) return;
        ++x[k];
    }
}

long long ceil_ll(const Rational& q) { return to_int64(Rational(-floor(-q))); }

// Largest r >= 0 with r²·g·w² <= 2.
long long rank_bound(long long g, const Rational& w) {
    Rational gw2 = qq(g) * w * w;
    long long r = 0;
    while (qq((r + 1) * (r + 1)) * gw2 <= 2) ++r;
    return r;
}

// Box containing every δ = (r, m·h, s), r > 0, with Z(δ) ∈ R_{<=0} for some
// B = b·h, ω = w·h with |b| <= b_max and |w| >= w_min > 0.
DeltaBox rank_one_certificate(long long g, const Rational& b_max, const Rational& w_min) {
    long long r = rank_bound(g, w_min);
    long long m = ceil_ll(qq(r) * b_max);
    long long s = ceil_ll(qq(g * m * m + 2) / 2);
    return {r, m, s};
}

// Visits δ ∈ Δ with 0 < r <= box.r in lexicographic order.
template <class F>
void for_each_positive_delta(const NSLattice& lat, const DeltaBox& box, F&& f) {
    for (long long r = 1; r <= box.r; ++r) {
        for_each_box_vector(lat.rank(), box.l, [&](const IVec& l) {
            long long num = lat.dot(l, l) + 2;
            if (num % (2 * r) != 0) return;
            long long s = num / (2 * r);
            if (std::llabs(s) <= box.s) f(MukaiVector{r, l, s});
        });
    }
}

Rational abs_q(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

QVec affine(const QVec& a, const QVec& b, const Rational& t) {
    QVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * b[i];
    return out;
}

struct Quadratic {
    Rational c0, c1, c2;
    bool is_zero() const { return sgn(c0) == 0 && sgn(c1) == 0 && sgn(c2) == 0; }
    Rational at(const Rational& t) const { return c0 + t * (c1 + t * c2); }
    Surd at(const Surd& t) const { return Surd::eval_quadratic(c0, c1, c2, t); }
};

} // namespace

K3CentralCharge K3CentralCharge::create(const NSLattice& lat, QVec B, QVec omega) {
    lat.check_dim(B);
    lat.check_dim(omega);
    require(sgn(lat.dot(omega, omega)) > 0, "omega must have positive square");
    K3CentralCharge zc;
    zc.lat_ = lat;
    zc.om_ = exp_class(B, omega, lat);
    zc.B_ = std::move(B);
    zc.omega_ = std::move(omega);
    return zc;
}

Rational K3CentralCharge::beta() const { return lat_.dot(B_, omega_); }

QComplex central_charge(const K3CentralCharge& zc, const MukaiVector& v) {
    zc.lattice().check_dim(v.l);
    return mukai_pairing(zc.om(), v, zc.lattice());
}

Phase phase(const QComplex& z) { return Phase::in_heart(z); }

GuardResult spherical_guard(const K3CentralCharge& zc, const DeltaBox& box) {
    const NSLattice& lat = zc.lattice();
    GuardResult out;
    out.searched = box;
    if (lat.rank() == 1) {
        out.searched = box.hull(rank_one_certificate(lat.gram(0, 0), abs_q(zc.B()[0]), abs_q(zc.omega()[0])));
        out.truncated = false;
    }
    bool found = false;
    for_each_positive_delta(lat, out.searched, [&](const MukaiVector& d) {
        if (found) return;
        QComplex z = central_charge(zc, d);
        if (sgn(z.im) == 0 && sgn(z.re) <= 0) {
            found = true;
            out.ok = false;
            out.violation = d;
            out.value = z;
        }
    });
    return out;
}

bool discreteness_check(const K3CentralCharge& zc, long long m) {
    require(m > 0, "discreteness level must be positive");
    Rational mq = qq(m);
    auto scaled_integral = [&](const QVec& x) {
        return std::all_of(x.begin(), x.end(), [&](const Rational& c) { return is_integer(mq * c); });
    };
    if (!scaled_integral(zc.B()) || !scaled_integral(zc.omega())) return false;
    // Z is linear, so integrality on a basis of N covers every integral class.
    const NSLattice& lat = zc.lattice();
    for (const auto& e : identity_map(lat)) {
        QComplex z = central_charge(zc, e);
        if (!is_integer(mq * mq * z.re) || !is_integer(mq * mq * z.im))
            fail(ErrorKind::internal, "m^2 Z(" + to_string(e) + ") is not a Gaussian integer");
    }
    return true;
}

bool realpart_identity_check(const K3CentralCharge& zc, const MukaiVector& v) {
    require(v.r != 0, "the real-part identity needs a class of nonzero rank");
    const NSLattice& lat = zc.lattice();
    lat.check_dim(v.l);
    Rational r = qq(v.r);
    QVec lq = to_qvec(v.l);
    QVec shifted(lq.size());
    for (size_t i = 0; i < lq.size(); ++i) shifted[i] = lq[i] - r * zc.B()[i];
    Rational v2 = lat.dot(lq, lq) - 2 * r * qq(v.s);
    Rational rhs = (v2 + r * r * lat.dot(zc.omega(), zc.omega()) - lat.dot(shifted, shifted)) / (2 * r);
    return central_charge(zc, v).re == rhs;
}

TorsionSide torsion_side(const MukaiVector& v, const K3CentralCharge& zc) {
    require(v.r > 0, "torsion side is defined for positive rank");
    Rational deg = zc.lattice().dot(zc.omega(), v.l);
    return deg > qq(v.r) * zc.beta() ? TorsionSide::T : TorsionSide::F;
}

HeartReport heart_image_check(const K3CentralCharge& zc, const DeltaBox& box) {
    auto guard = spherical_guard(zc, box);
    if (!guard.ok)
        fail(ErrorKind::guard_violation, "spherical guard fails at " + to_string(*guard.violation) +
                                             " with Z = " + to_string(guard.value));
    const NSLattice& lat = zc.lattice();
    HeartReport out;
    for (long long r = 0; r <= box.r; ++r) {
        for_each_box_vector(lat.rank(), box.l, [&](const IVec& l) {
            long long l2 = lat.dot(l, l);
            bool l_zero = std::all_of(l.begin(), l.end(), [](long long x) { return x == 0; });
            for (long long s = -box.s; s <= box.s; ++s) {
                MukaiVector v{r, l, s};
                if (l2 - 2 * r * s < -2) continue;
                QComplex z = central_charge(zc, v);
                std::string rule;
                bool ok = true;
                if (r > 0) {
                    if (torsion_side(v, zc) == TorsionSide::T) {
                        rule = "torsion-part";
                        ok = in_closed_upper_half_plane(z);
                    } else {
                        rule = "shifted-free-part";
                        ok = in_closed_upper_half_plane(-z);
                    }
                } else if (!l_zero) {
                    if (sgn(lat.dot(zc.omega(), l)) <= 0) continue;
                    rule = "curve-support";
                    ok = sgn(z.im) > 0;
                } else {
                    if (s <= 0) continue;
                    rule = "point-support";
                    ok = sgn(z.im) == 0 && sgn(z.re) < 0;
                }
                ++out.classes_checked;
                if (!ok) out.violations.push_back({v, z, rule});
            }
        });
    }
    return out;
}

Claim4Data claim4_extract(const ComplexMukaiVector& om, const NSLattice& lat) {
    lat.check_dim(om.re.l);
    lat.check_dim(om.im.l);
    // <Om, (0,0,1)> = -(re.r + i im.r)
    if (sgn(om.im.r) != 0 || sgn(om.re.r) <= 0)
        fail(ErrorKind::domain, "the point class is not mapped to a negative real number");
    Claim4Data out;
    out.scale = om.re.r;
    for (const auto& x : om.im.l) out.omega.push_back(x / out.scale);
    out.beta = om.im.s / out.scale;
    out.ample = certify_ample(out.omega, lat);
    if (!out.ample.positive_square) fail(ErrorKind::domain, "extracted omega has non-positive square");
    if (!out.ample.reference_side) fail(ErrorKind::domain, "extracted omega lies in the negative cone");
    if (!out.ample.positive_on_curves) fail(ErrorKind::domain, "extracted omega is not positive on a declared curve");
    return out;
}

bool ExpForm::is_rational() const { return c().has_value(); }

std::optional<Rational> ExpForm::c() const {
    Surd root = surd_sqrt(c_squared);
    return root.rational();
}

std::optional<Mat2> ExpForm::matrix() const {
    auto cv = c();
    if (!cv) return std::nullopt;
    return Mat2{m11, m12, *cv * m21, *cv * m22};
}

std::optional<QVec> ExpForm::omega() const {
    auto cv = c();
    if (!cv) return std::nullopt;
    QVec out;
    for (const auto& x : omega_unit) out.push_back(*cv * x);
    return out;
}

Rational ExpForm::omega_squared(const NSLattice& lat) const { return c_squared * lat.dot(omega_unit, omega_unit); }

ExpForm normalize_to_exp_form(const ComplexMukaiVector& om, const NSLattice& lat) {
    lat.check_dim(om.re.l);
    lat.check_dim(om.im.l);
    if (!positive_plane_check(om, lat)) fail(ErrorKind::domain, "real and imaginary parts do not span a positive plane");
    const Rational& x0 = om.re.r;
    const Rational& x1 = om.im.r;
    if (sgn(x0) == 0 && sgn(x1) == 0) fail(ErrorKind::domain, "the plane has no rank component; no exp form exists");
    Rational g00 = mukai_pairing(om.re, om.re, lat);
    Rational g01 = mukai_pairing(om.re, om.im, lat);
    Rational g11 = mukai_pairing(om.im, om.im, lat);
    // second row is proportional to the rank-killing combination p = (x1, -x0)
    Rational p0 = x1, p1 = -x0;
    Rational u0 = g00 * p0 + g01 * p1;
    Rational u1 = g01 * p0 + g11 * p1;
    // first row q: q.x = 1 and q G p = 0
    Rational det = x0 * u1 - x1 * u0;
    if (sgn(det) == 0) fail(ErrorKind::internal, "degenerate exp-form system");
    Rational q0 = u1 / det;
    Rational q1 = -u0 / det;
    Rational qq_norm = q0 * q0 * g00 + 2 * q0 * q1 * g01 + q1 * q1 * g11;
    Rational pp_norm = p0 * p0 * g00 + 2 * p0 * p1 * g01 + p1 * p1 * g11;
    ExpForm out;
    out.m11 = q0;
    out.m12 = q1;
    out.m21 = p0;
    out.m22 = p1;
    out.c_squared = qq_norm / pp_norm;
    // orient the second row so that det M > 0
    if (sgn(q0 * p1 - q1 * p0) < 0) {
        out.m21 = -p0;
        out.m22 = -p1;
    }
    for (size_t i = 0; i < om.re.l.size(); ++i) {
        out.B.push_back(q0 * om.re.l[i] + q1 * om.im.l[i]);
        out.omega_unit.push_back(out.m21 * om.re.l[i] + out.m22 * om.im.l[i]);
    }
    if (sgn(out.omega_squared(lat)) <= 0) fail(ErrorKind::domain, "normalized omega has non-positive square");
    return out;
}

QVec AffinePath::B_at(const Rational& t) const { return affine(B0, B1, t); }
QVec AffinePath::omega_at(const Rational& t) const { return affine(W0, W1, t); }

std::vector<Surd> real_roots(const Rational& c0, const Rational& c1, const Rational& c2) {
    std::vector<Surd> out;
    if (sgn(c2) == 0) {
        if (sgn(c1) != 0) out.emplace_back(Rational(-c0 / c1));
        return out;
    }
    Rational disc = c1 * c1 - 4 * c2 * c0;
    Rational mid = -c1 / (2 * c2);
    if (sgn(disc) < 0) return out;
    if (sgn(disc) == 0) {
        out.emplace_back(mid);
        return out;
    }
    Surd root = surd_sqrt(disc);
    Rational half = root.b() / (2 * c2);
    Surd a(mid - root.a() / (2 * c2), -half, root.d());
    Surd b(mid + root.a() / (2 * c2), half, root.d());
    if (b < a) std::swap(a, b);
    out.push_back(a);
    out.push_back(b);
    return out;
}

WallScan wall_scan(const NSLattice& lat, const AffinePath& path, const Rational& t0, const Rational& t1,
                   const DeltaBox& box) {
    for (const auto* v : {&path.B0, &path.B1, &path.W0, &path.W1}) lat.check_dim(*v);
    require(t0 <= t1, "scan interval must satisfy t0 <= t1");
    const QVec &B0 = path.B0, &B1 = path.B1, &W0 = path.W0, &W1 = path.W1;
    Quadratic w2{lat.dot(W0, W0), 2 * lat.dot(W0, W1), lat.dot(W1, W1)};
    auto w2_positive_inside = [&] {
        if (t0 == t1) return sgn(w2.at(t0)) > 0;
        if (sgn(w2.at(t0)) < 0 || sgn(w2.at(t1)) < 0) return false;
        Rational mid = (t0 + t1) / 2;
        if (sgn(w2.at(mid)) <= 0) return false;
        if (sgn(w2.c2) > 0) {
            Rational vertex = -w2.c1 / (2 * w2.c2);
            if (t0 < vertex && vertex < t1 && sgn(w2.at(vertex)) <= 0) return false;
        }
        return true;
    };
    require(w2_positive_inside(), "omega_t must have positive square inside the scan interval");

    Surd lo(t0), hi(t1);
    auto admissible = [&](const Surd& t) { return lo <= t && t <= hi && w2.at(t).sign() > 0; };

    WallScan out;
    out.searched = box;
    bool endpoints_positive = sgn(w2.at(t0)) > 0 && sgn(w2.at(t1)) > 0;
    if (lat.rank() == 1 && endpoints_positive) {
        Rational w_min = std::min(abs_q(W0[0] + t0 * W1[0]), abs_q(W0[0] + t1 * W1[0]));
        Rational b_max = std::max(abs_q(B0[0] + t0 * B1[0]), abs_q(B0[0] + t1 * B1[0]));
        out.searched = box.hull(rank_one_certificate(lat.gram(0, 0), b_max, w_min));
        out.truncated = false;
    }

    Rational bw0 = lat.dot(B0, W0), bw1 = lat.dot(B0, W1) + lat.dot(B1, W0), bw2 = lat.dot(B1, W1);
    Rational bb0 = lat.dot(B0, B0), bb1 = 2 * lat.dot(B0, B1), bb2 = lat.dot(B1, B1);
    for_each_positive_delta(lat, out.searched, [&](const MukaiVector& d) {
        Rational r = qq(d.r), s = qq(d.s);
        Quadratic im{lat.dot(W0, d.l) - r * bw0, lat.dot(W1, d.l) - r * bw1, -r * bw2};
        Quadratic re{lat.dot(B0, d.l) - s - r * (bb0 - w2.c0) / 2, lat.dot(B1, d.l) - r * (bb1 - w2.c1) / 2,
                     -r * (bb2 - w2.c2) / 2};
        std::vector<Surd> hits;
        if (im.is_zero()) {
            if (re.is_zero()) return;
            auto roots = real_roots(re.c0, re.c1, re.c2);
            bool touching = roots.size() == 1 && sgn(re.c2) != 0;
            if (!touching || sgn(re.c2) > 0) hits = roots;
        } else {
            for (const auto& t : real_roots(im.c0, im.c1, im.c2))
                if (re.at(t).sign() <= 0) hits.push_back(t);
        }
        for (const auto& t : hits)
            if (admissible(t)) out.walls.push_back({t, d, Wall::Kind::A, {}, 0});
    });

    for (const auto& c : lat.neg2_curves()) {
        Rational a0 = lat.dot(W0, c), a1 = lat.dot(W1, c);
        if (sgn(a1) == 0) {
            require(sgn(a0) != 0, "omega_t is orthogonal to a declared curve along the whole path");
            continue;
        }
        Rational t = -a0 / a1;
        if (!admissible(Surd(t))) continue;
        Rational k = lat.dot(path.B_at(t), c);
        if (!is_integer(k)) continue;
        if (abs_q(k) > qq(box.s)) {
            out.truncated = true;
            continue;
        }
        long long kk = to_int64(k);
        out.walls.push_back({Surd(t), MukaiVector{0, c, kk}, Wall::Kind::C, c, kk});
    }

    std::sort(out.walls.begin(), out.walls.end(), [](const Wall& x, const Wall& y) {
        if (auto c = x.t <=> y.t; c != 0) return c < 0;
        if (x.kind != y.kind) return x.kind < y.kind;
        return x.witness < y.witness;
    });
    out.walls.erase(std::unique(out.walls.begin(), out.walls.end()), out.walls.end());
    return out;
}

ChamberPlot chamber_plot(const NSLattice& lat, const Rational& b0, const Rational& b1, const Rational& t0,
                         const Rational& t1) {
    require(lat.rank() == 1, "chamber plots need a rank one Neron-Severi lattice");
    require(b0 < b1 && sgn(t0) > 0 && t0 < t1, "chamber plot needs b0 < b1 and 0 < t0 < t1");
    long long g = lat.gram(0, 0);
    ChamberPlot out{b0, b1, t0, t1, {}};
    long long r_max = rank_bound(g, t0);
    for (long long r = 1; r <= r_max; ++r) {
        Rational rq = qq(r);
        long long m_lo = to_int64(Rational(-floor(-rq * b0)));
        long long m_hi = to_int64(Rational(floor(rq * b1)));
        for (long long m = m_lo; m <= m_hi; ++m) {
            long long num = g * m * m + 2;
            if (num % (2 * r) != 0) continue;
            // the segment reaches t² = 2 / (r² g)
            Surd top = surd_sqrt(qq(2) / qq(r * r * g));
            out.segments.push_back({Rational(qq(m) / rq), top, MukaiVector{r, IVec{m}, num / (2 * r)}});
        }
    }
    std::sort(out.segments.begin(), out.segments.end(), [](const ChamberSegment& x, const ChamberSegment& y) {
        if (x.b != y.b) return x.b < y.b;
        return x.witness.r < y.witness.r;
    });
    return out;
}

} // namespace stabkit
