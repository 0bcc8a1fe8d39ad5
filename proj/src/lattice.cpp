#include "stabkit/lattice.hpp"

#include "stabkit/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace stabkit {

namespace {

Rational det_rational(std::vector<std::vector<Rational>> a) {
    const size_t n = a.size();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && sgn(a[piv][c]) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (sgn(a[r][c]) == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

// Visits every integer vector with entries in [-bound, bound], lexicographically.
template <class F>
void for_each_box_vector(int dim, long long bound, F&& f) {
    IVec x(dim, -bound);
    if (bound < 0) return;
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

MukaiVector negate(const MukaiVector& v) {
    MukaiVector out{-v.r, v.l, -v.s};
    for (auto& x : out.l) x = -x;
    return out;
}

} // namespace

QMukaiVector QMukaiVector::from(const MukaiVector& v) {
    return {make_rational(v.r), to_qvec(v.l), make_rational(v.s)};
}

bool QMukaiVector::is_zero() const {
    if (sgn(r) != 0 || sgn(s) != 0) return false;
    return std::all_of(l.begin(), l.end(), [](const Rational& x) { return sgn(x) == 0; });
}

QMukaiVector operator+(const QMukaiVector& a, const QMukaiVector& b) {
    QMukaiVector out{a.r + b.r, a.l, a.s + b.s};
    for (size_t i = 0; i < out.l.size(); ++i) out.l[i] += b.l[i];
    return out;
}

QMukaiVector operator*(const Rational& c, const QMukaiVector& a) {
    QMukaiVector out{c * a.r, a.l, c * a.s};
    for (auto& x : out.l) x *= c;
    return out;
}

ComplexMukaiVector ComplexMukaiVector::conj() const { return {re, Rational(-1) * im}; }

ComplexMukaiVector ComplexMukaiVector::times(const QComplex& c) const {
    // (x + iy)(re + i im) = (x re - y im) + i (y re + x im)
    return {c.re * re + Rational(-c.im) * im, c.im * re + c.re * im};
}

std::string to_string(const MukaiVector& v) {
    std::string out = "(" + std::to_string(v.r) + ",[";
    for (size_t i = 0; i < v.l.size(); ++i) out += (i ? "," : "") + std::to_string(v.l[i]);
    return out + "]," + std::to_string(v.s) + ")";
}

Signature signature(const std::vector<std::vector<Rational>>& sym) {
    auto a = sym;
    const size_t n = a.size();
    Signature sig;
    for (size_t i = 0; i < n; ++i) {
        if (sgn(a[i][i]) == 0) {
            size_t j = i + 1;
            while (j < n && sgn(a[j][j]) == 0) ++j;
            if (j < n) {
                std::swap(a[i], a[j]);
                for (auto& row : a) std::swap(row[i], row[j]);
            } else {
                j = i + 1;
                while (j < n && sgn(a[i][j]) == 0) ++j;
                if (j == n) {
                    sig.degenerate = true;
                    continue;
                }
                // e_i += e_j makes the diagonal entry 2 a_ij (a_jj = 0 here)
                for (size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
                for (size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
            }
        }
        for (size_t k = i + 1; k < n; ++k) {
            if (sgn(a[k][i]) == 0) continue;
            Rational f = a[k][i] / a[i][i];
            for (size_t c = 0; c < n; ++c) a[k][c] -= f * a[i][c];
            for (size_t r = 0; r < n; ++r) a[r][k] -= f * a[r][i];
        }
        if (sgn(a[i][i]) > 0) ++sig.positive;
        else ++sig.negative;
    }
    return sig;
}

SmithForm smith_normal_form(const std::vector<IVec>& A) {
    const size_t n = A.size();
    auto a = A;
    std::vector<IVec> V(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) V[i][i] = 1;

    auto swap_cols = [&](size_t x, size_t y) {
        for (auto& row : a) std::swap(row[x], row[y]);
        for (auto& row : V) std::swap(row[x], row[y]);
    };
    auto add_col = [&](size_t dst, size_t src, long long f) { // col_dst += f col_src
        for (auto& row : a) row[dst] += f * row[src];
        for (auto& row : V) row[dst] += f * row[src];
    };
    auto add_row = [&](size_t dst, size_t src, long long f) {
        for (size_t k = 0; k < n; ++k) a[dst][k] += f * a[src][k];
    };

    for (size_t t = 0; t < n; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block becomes the pivot
            size_t pr = n, pc = n;
            for (size_t r = t; r < n; ++r)
                for (size_t c = t; c < n; ++c)
                    if (a[r][c] != 0 && (pr == n || std::llabs(a[r][c]) < std::llabs(a[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == n) break;
            std::swap(a[pr], a[t]);
            if (pc != t) swap_cols(pc, t);
            bool clean = true;
            for (size_t r = t + 1; r < n; ++r) {
                long long q = a[r][t] / a[t][t];
                if (q != 0) add_row(r, t, -q);
                if (a[r][t] != 0) clean = false;
            }
            for (size_t c = t + 1; c < n; ++c) {
                long long q = a[t][c] / a[t][t];
                if (q != 0) add_col(c, t, -q);
                if (a[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the remaining block by the pivot
            size_t bad = n;
            for (size_t r = t + 1; r < n && bad == n; ++r)
                for (size_t c = t + 1; c < n; ++c)
                    if (a[r][c] % a[t][t] != 0) {
                        bad = r;
                        break;
                    }
            if (bad == n) break;
            add_row(t, bad, 1);
        }
        if (a[t][t] < 0) {
            for (size_t k = 0; k < n; ++k) a[t][k] = -a[t][k];
        }
    }
    SmithForm out;
    for (size_t i = 0; i < n; ++i) out.diagonal.push_back(a[i][i]);
    out.V = std::move(V);
    return out;
}

NSLattice NSLattice::create(std::vector<IVec> gram, QVec ample_ref, std::vector<IVec> neg2_curves) {
    NSLattice lat;
    const size_t rho = gram.size();
    require(rho >= 1, "lattice rank must be positive");
    for (const auto& row : gram) require(row.size() == rho, "gram matrix must be square");
    for (size_t i = 0; i < rho; ++i) {
        require(gram[i][i] % 2 == 0, "gram matrix must have even diagonal");
        for (size_t j = 0; j < rho; ++j) require(gram[i][j] == gram[j][i], "gram matrix must be symmetric");
    }
    std::vector<std::vector<Rational>> q(rho, std::vector<Rational>(rho));
    for (size_t i = 0; i < rho; ++i)
        for (size_t j = 0; j < rho; ++j) q[i][j] = make_rational(gram[i][j]);
    auto sig = signature(q);
    require(!sig.degenerate && sig.positive == 1 && sig.negative == static_cast<int>(rho) - 1,
            "gram matrix must have signature (1, rho-1)");
    lat.gram_ = std::move(gram);
    lat.check_dim(ample_ref);
    require(sgn(lat.dot(ample_ref, ample_ref)) > 0, "ample_ref must have positive square");
    lat.ample_ref_ = std::move(ample_ref);
    for (const auto& c : neg2_curves) {
        lat.check_dim(c);
        require(lat.dot(c, c) == -2, "declared (-2)-curve classes must have square -2");
    }
    lat.curves_ = std::move(neg2_curves);

    auto snf = smith_normal_form(lat.mukai_gram());
    const int n = lat.mukai_rank();
    for (int k = 0; k < n; ++k) {
        long long d = snf.diagonal[k];
        if (d == 1) continue;
        lat.disc_.invariants.push_back(d);
        QVec gen(n);
        for (int i = 0; i < n; ++i) gen[i] = make_rational(snf.V[i][k], d);
        lat.disc_.generators.push_back(std::move(gen));
    }
    return lat;
}

long long NSLattice::dot(const IVec& x, const IVec& y) const {
    long long out = 0;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) out += x[i] * gram_[i][j] * y[j];
    return out;
}

Rational NSLattice::dot(const QVec& x, const QVec& y) const {
    Rational out = 0;
    for (int i = 0; i < rank(); ++i) {
        if (sgn(x[i]) == 0) continue;
        Rational row = 0;
        for (int j = 0; j < rank(); ++j) row += qq(gram_[i][j]) * y[j];
        out += x[i] * row;
    }
    return out;
}

Rational NSLattice::dot(const QVec& x, const IVec& y) const {
    Rational out = 0;
    for (int i = 0; i < rank(); ++i) {
        long long row = 0;
        for (int j = 0; j < rank(); ++j) row += gram_[i][j] * y[j];
        out += x[i] * qq(row);
    }
    return out;
}

std::vector<IVec> NSLattice::mukai_gram() const {
    const int n = mukai_rank();
    std::vector<IVec> g(n, IVec(n, 0));
    g[0][n - 1] = g[n - 1][0] = -1;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) g[i + 1][j + 1] = gram_[i][j];
    return g;
}

void NSLattice::check_dim(const IVec& x) const {
    require(static_cast<int>(x.size()) == rank(), "NS vector has wrong dimension");
}

void NSLattice::check_dim(const QVec& x) const {
    require(static_cast<int>(x.size()) == rank(), "NS vector has wrong dimension");
}

long long mukai_pairing(const MukaiVector& v, const MukaiVector& w, const NSLattice& lat) {
    lat.check_dim(v.l);
    lat.check_dim(w.l);
    return lat.dot(v.l, w.l) - v.r * w.s - w.r * v.s;
}

Rational mukai_pairing(const QMukaiVector& v, const QMukaiVector& w, const NSLattice& lat) {
    lat.check_dim(v.l);
    lat.check_dim(w.l);
    return lat.dot(v.l, w.l) - v.r * w.s - w.r * v.s;
}

QComplex mukai_pairing(const ComplexMukaiVector& om, const MukaiVector& v, const NSLattice& lat) {
    auto q = QMukaiVector::from(v);
    return {mukai_pairing(om.re, q, lat), mukai_pairing(om.im, q, lat)};
}

long long square(const MukaiVector& v, const NSLattice& lat) { return mukai_pairing(v, v, lat); }

ComplexMukaiVector exp_class(const QVec& B, const QVec& omega, const NSLattice& lat) {
    lat.check_dim(B);
    lat.check_dim(omega);
    Rational b2 = lat.dot(B, B);
    Rational w2 = lat.dot(omega, omega);
    ComplexMukaiVector out;
    out.re = {1, B, (b2 - w2) / 2};
    out.im = {0, omega, lat.dot(B, omega)};
    return out;
}

bool DeltaBox::contains(const MukaiVector& v) const {
    if (std::llabs(v.r) > r || std::llabs(v.s) > s) return false;
    return std::all_of(v.l.begin(), v.l.end(), [&](long long x) { return std::llabs(x) <= l; });
}

DeltaBox DeltaBox::hull(const DeltaBox& o) const { return {std::max(r, o.r), std::max(l, o.l), std::max(s, o.s)}; }

DeltaList enumerate_delta(const NSLattice& lat, const DeltaBox& box) {
    DeltaList out;
    if (box.r < 0 || box.l < 0 || box.s < 0) return out;
    for (long long r = -box.r; r <= box.r; ++r) {
        for_each_box_vector(lat.rank(), box.l, [&](const IVec& l) {
            long long l2 = lat.dot(l, l);
            if (r == 0) {
                if (l2 != -2) return;
                for (long long s = -box.s; s <= box.s; ++s) out.classes.push_back({r, l, s});
                return;
            }
            // l² - 2rs = -2  ⇔  s = (l² + 2) / (2r)
            long long num = l2 + 2;
            if (num % (2 * r) != 0) return;
            long long s = num / (2 * r);
            if (std::llabs(s) <= box.s) out.classes.push_back({r, l, s});
        });
    }
    return out;
}

bool positive_plane_check(const ComplexMukaiVector& om, const NSLattice& lat) {
    Rational a = mukai_pairing(om.re, om.re, lat);
    Rational b = mukai_pairing(om.re, om.im, lat);
    Rational c = mukai_pairing(om.im, om.im, lat);
    return sgn(a) > 0 && sgn(a * c - b * b) > 0;
}

Orientation orientation_component(const ComplexMukaiVector& om, const NSLattice& lat) {
    require(positive_plane_check(om, lat), "orientation is only defined for positive planes");
    const QVec& w = lat.ample_ref();
    QVec zero(lat.rank(), Rational(0));
    QMukaiVector e1{1, zero, -lat.dot(w, w) / 2};
    QMukaiVector e2{0, w, 0};
    // the reference plane is positive definite, so the sign of the projected
    // determinant equals the sign of this pairing determinant
    Rational det = mukai_pairing(om.re, e1, lat) * mukai_pairing(om.im, e2, lat) -
                   mukai_pairing(om.re, e2, lat) * mukai_pairing(om.im, e1, lat);
    if (sgn(det) == 0) fail(ErrorKind::internal, "degenerate projection between positive planes");
    return sgn(det) > 0 ? Orientation::plus : Orientation::minus;
}

P0Result p0_membership(const ComplexMukaiVector& om, const NSLattice& lat, const DeltaBox& box) {
    P0Result out;
    if (!positive_plane_check(om, lat) || orientation_component(om, lat) != Orientation::plus) {
        out.kind = P0Result::Kind::not_plus;
        out.truncated = false;
        return out;
    }
    for (const auto& d : enumerate_delta(lat, box).classes) {
        auto q = QMukaiVector::from(d);
        if (sgn(mukai_pairing(om.re, q, lat)) == 0 && sgn(mukai_pairing(om.im, q, lat)) == 0) {
            out.kind = P0Result::Kind::outside;
            out.witness = d;
            // δ and -δ are both witnesses; report the one with leading coefficient positive
            IVec c = to_coords(d);
            auto lead = std::find_if(c.begin(), c.end(), [](long long x) { return x != 0; });
            if (*lead < 0) out.witness = negate(d);
            out.truncated = false;
            return out;
        }
    }
    out.kind = P0Result::Kind::inside;
    out.truncated = true;
    return out;
}

MukaiVector reflection(const MukaiVector& delta, const MukaiVector& v, const NSLattice& lat) {
    require(square(delta, lat) == -2, "reflection requires a class of square -2");
    long long c = mukai_pairing(v, delta, lat);
    MukaiVector out = v;
    out.r += c * delta.r;
    for (size_t i = 0; i < out.l.size(); ++i) out.l[i] += c * delta.l[i];
    out.s += c * delta.s;
    return out;
}

MukaiVector tensor_line_bundle(const IVec& B, const MukaiVector& v, const NSLattice& lat) {
    lat.check_dim(B);
    lat.check_dim(v.l);
    MukaiVector out = v;
    for (size_t i = 0; i < out.l.size(); ++i) out.l[i] += v.r * B[i];
    out.s = v.s + lat.dot(B, v.l) + v.r * (lat.dot(B, B) / 2);
    return out;
}

IVec to_coords(const MukaiVector& v) {
    IVec c;
    c.push_back(v.r);
    c.insert(c.end(), v.l.begin(), v.l.end());
    c.push_back(v.s);
    return c;
}

MukaiVector from_coords(const IVec& c, const NSLattice& lat) {
    require(static_cast<int>(c.size()) == lat.mukai_rank(), "Mukai coordinate vector has wrong dimension");
    return {c.front(), IVec(c.begin() + 1, c.end() - 1), c.back()};
}

QVec to_coords(const QMukaiVector& v) {
    QVec c;
    c.push_back(v.r);
    c.insert(c.end(), v.l.begin(), v.l.end());
    c.push_back(v.s);
    return c;
}

QMukaiVector from_coords(const QVec& c, const NSLattice& lat) {
    require(static_cast<int>(c.size()) == lat.mukai_rank(), "Mukai coordinate vector has wrong dimension");
    return {c.front(), QVec(c.begin() + 1, c.end() - 1), c.back()};
}

MukaiMap identity_map(const NSLattice& lat) {
    MukaiMap m;
    const int n = lat.mukai_rank();
    for (int j = 0; j < n; ++j) {
        IVec e(n, 0);
        e[j] = 1;
        m.push_back(from_coords(e, lat));
    }
    return m;
}

MukaiMap reflection_map(const MukaiVector& delta, const NSLattice& lat) {
    MukaiMap m = identity_map(lat);
    for (auto& col : m) col = reflection(delta, col, lat);
    return m;
}

MukaiMap tensor_map(const IVec& B, const NSLattice& lat) {
    MukaiMap m = identity_map(lat);
    for (auto& col : m) col = tensor_line_bundle(B, col, lat);
    return m;
}

namespace {

void check_map(const MukaiMap& m, const NSLattice& lat) {
    require(static_cast<int>(m.size()) == lat.mukai_rank(), "a Mukai map needs one image per basis vector");
    for (const auto& col : m) lat.check_dim(col.l);
}

} // namespace

MukaiVector apply(const MukaiMap& m, const MukaiVector& v, const NSLattice& lat) {
    check_map(m, lat);
    IVec c = to_coords(v);
    IVec out(c.size(), 0);
    for (size_t j = 0; j < c.size(); ++j) {
        IVec col = to_coords(m[j]);
        for (size_t i = 0; i < c.size(); ++i) out[i] += col[i] * c[j];
    }
    return from_coords(out, lat);
}

QMukaiVector apply(const MukaiMap& m, const QMukaiVector& v, const NSLattice& lat) {
    check_map(m, lat);
    QVec c = to_coords(v);
    QVec out(c.size(), Rational(0));
    for (size_t j = 0; j < c.size(); ++j) {
        if (sgn(c[j]) == 0) continue;
        IVec col = to_coords(m[j]);
        for (size_t i = 0; i < c.size(); ++i) out[i] += qq(col[i]) * c[j];
    }
    return from_coords(out, lat);
}

std::vector<QVec> inverse_matrix(const MukaiMap& m, const NSLattice& lat) {
    check_map(m, lat);
    const size_t n = m.size();
    std::vector<QVec> a(n, QVec(2 * n, Rational(0)));
    for (size_t j = 0; j < n; ++j) {
        IVec col = to_coords(m[j]);
        for (size_t i = 0; i < n; ++i) a[i][j] = make_rational(col[i]);
    }
    for (size_t i = 0; i < n; ++i) a[i][n + i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && sgn(a[piv][c]) == 0) ++piv;
        if (piv == n) fail(ErrorKind::domain, "Mukai map is singular");
        std::swap(a[piv], a[c]);
        Rational inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            Rational f = a[r][c];
            for (size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<QVec> inv(n, QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

bool is_mukai_isometry(const MukaiMap& images, const NSLattice& lat) {
    check_map(images, lat);
    const size_t n = images.size();
    auto g = lat.mukai_gram();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            if (mukai_pairing(images[i], images[j], lat) != g[i][j]) return false;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (size_t j = 0; j < n; ++j) {
        IVec col = to_coords(images[j]);
        for (size_t i = 0; i < n; ++i) a[i][j] = make_rational(col[i]);
    }
    Rational det = det_rational(std::move(a));
    return det == 1 || det == -1;
}

bool gamma_membership(const MukaiMap& isometry, const NSLattice& lat) {
    require(is_mukai_isometry(isometry, lat), "gamma membership requires a Mukai isometry");
    for (const auto& gen : lat.discriminant().generators) {
        QMukaiVector x = from_coords(gen, lat);
        QVec moved = to_coords(apply(isometry, x, lat));
        for (size_t i = 0; i < moved.size(); ++i)
            if (!is_integer(moved[i] - gen[i])) return false;
    }
    return true;
}

AmpleCertificate certify_ample(const QVec& omega, const NSLattice& lat) {
    lat.check_dim(omega);
    AmpleCertificate cert;
    cert.positive_square = sgn(lat.dot(omega, omega)) > 0;
    cert.reference_side = sgn(lat.dot(omega, lat.ample_ref())) > 0;
    cert.positive_on_curves = std::all_of(lat.neg2_curves().begin(), lat.neg2_curves().end(),
                                          [&](const IVec& c) { return sgn(lat.dot(omega, c)) > 0; });
    cert.complete = lat.rank() == 1;
    return cert;
}

} // namespace stabkit
