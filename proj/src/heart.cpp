#include "stabkit/heart.hpp"

#include "stabkit/error.hpp"

#include <algorithm>
#include <sstream>

namespace stabkit {

namespace {

FpMatrix multiply(const FpMatrix& a, const FpMatrix& b, int p) {
    auto c = FpMatrix::zero(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            int acc = 0;
            for (int l = 0; l < a.cols; ++l) acc += a.at(i, l) * b.at(l, j);
            c.at(i, j) = static_cast<std::uint8_t>(acc % p);
        }
    return c;
}

// g = I + e_{01} (an elementary transvection) and its inverse.
std::pair<FpMatrix, FpMatrix> transvection(long long d, int p) {
    auto g = FpMatrix::zero(static_cast<int>(d), static_cast<int>(d));
    auto h = g;
    for (int i = 0; i < d; ++i) g.at(i, i) = h.at(i, i) = 1;
    if (d >= 2) {
        g.at(0, 1) = 1;
        h.at(0, 1) = static_cast<std::uint8_t>(p - 1);
    }
    return {g, h};
}

QuiverRep change_basis(const QuiverRep& e, const Quiver& q) {
    std::vector<FpMatrix> maps;
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        auto [s, t] = q.arrows()[k];
        auto gt = transvection(e.dims()[t], q.p()).first;
        auto hs = transvection(e.dims()[s], q.p()).second;
        maps.push_back(multiply(multiply(gt, e.maps()[k], q.p()), hs, q.p()));
    }
    return QuiverRep::create(q, e.dims(), maps);
}

bool orthogonal_to(const std::vector<QuiverRep>& torsion, const QuiverRep& x, const Quiver& q) {
    if (x.is_zero()) return true;
    for (const auto& t : torsion)
        if (hom_space(t, x, q).dim != 0) return false;
    return true;
}

} // namespace

TorsionClass TorsionClass::all() {
    TorsionClass t;
    t.kind_ = Kind::all;
    t.name_ = "all";
    return t;
}

TorsionClass TorsionClass::none() {
    TorsionClass t;
    t.kind_ = Kind::none;
    t.name_ = "none";
    return t;
}

TorsionClass TorsionClass::support(std::vector<int> vertices) {
    TorsionClass t;
    t.kind_ = Kind::support;
    t.name_ = "support:";
    for (std::size_t i = 0; i < vertices.size(); ++i) t.name_ += (i ? "," : "") + std::to_string(vertices[i] + 1);
    t.vertices_ = std::move(vertices);
    return t;
}

TorsionClass TorsionClass::phase_above(QuiverStability s, Phase phi) {
    TorsionClass t;
    t.kind_ = Kind::phase_above;
    t.name_ = "phase-gt:" + phi.to_string();
    t.stab_ = std::move(s);
    t.phi_ = std::move(phi);
    return t;
}

TorsionClass TorsionClass::additive_hull(QuiverRep p) {
    require(!p.is_zero(), "add(P) needs a nonzero P");
    TorsionClass t;
    t.kind_ = Kind::additive_hull;
    t.name_ = "add:" + p.to_string();
    t.p_ = std::move(p);
    return t;
}

TorsionClass TorsionClass::parse(const Quiver& q, const std::string& text, const std::optional<QuiverStability>& s) {
    if (text == "all") return all();
    if (text == "none") return none();
    auto colon = text.find(':');
    require(colon != std::string::npos, "unknown torsion class '" + text + "'");
    std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
    if (kind == "support") {
        std::vector<int> vs;
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            int v = 0;
            try {
                v = std::stoi(item);
            } catch (const std::exception&) {
                fail(ErrorKind::input, "bad vertex '" + item + "'");
            }
            require(v >= 1 && v <= q.vertices(), "support vertex out of range (vertices are numbered from 1)");
            vs.push_back(v - 1);
        }
        return support(vs);
    }
    if (kind == "phase-gt") {
        require(s.has_value(), "phase-gt needs a charge");
        return phase_above(*s, Phase::of_value(parse_rational(arg)));
    }
    if (kind == "add") return additive_hull(parse_rep(q, arg));
    fail(ErrorKind::input, "unknown torsion class '" + text + "'");
}

bool TorsionClass::contains(const QuiverRep& e, const Quiver& q) const {
    switch (kind_) {
    case Kind::all: return true;
    case Kind::none: return e.is_zero();
    case Kind::support:
        for (int v = 0; v < q.vertices(); ++v) {
            bool allowed = std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
            if (!allowed && e.dims()[v] != 0) return false;
        }
        return true;
    case Kind::phase_above: {
        if (e.is_zero()) return true;
        auto hn = hn_filtration(e, *stab_, q);
        return hn.factors.back().phase > *phi_;
    }
    case Kind::additive_hull: {
        if (e.is_zero()) return true;
        const auto& pd = p_->dims();
        long long k = -1;
        for (int v = 0; v < q.vertices(); ++v) {
            if (pd[v] == 0) {
                if (e.dims()[v] != 0) return false;
                continue;
            }
            if (e.dims()[v] % pd[v] != 0) return false;
            long long kv = e.dims()[v] / pd[v];
            if (k >= 0 && kv != k) return false;
            k = kv;
        }
        if (k <= 0) return false;
        QuiverRep sum = *p_;
        for (long long i = 1; i < k; ++i) sum = direct_sum(q, sum, *p_);
        return is_isomorphic(e, sum, q);
    }
    }
    return false;
}

TorsionPairReport torsion_pair_verify(const TorsionClass& t, const Quiver& q, const RepBound& bound) {
    TorsionPairReport out;
    auto reps = reps_in_bound(q, bound);
    for (const auto& e : reps) {
        bool in = t.contains(e, q);
        if (in != t.contains(change_basis(e, q), q) && out.ok) {
            out.ok = false;
            out.witness = e;
            out.axiom = "isomorphism-closure";
        }
        if (in) out.torsion.push_back(e);
    }
    for (const auto& e : reps)
        if (orthogonal_to(out.torsion, e, q)) out.free.push_back(e);
    if (!out.ok) return out;
    for (const auto& e : reps) {
        ++out.checked;
        auto lat = SubobjectLattice::build(q, e, bound.max_total);
        bool found = false;
        for (int a = 0; a < static_cast<int>(lat.size()) && !found; ++a) {
            if (!t.contains(lat.subquotient(lat.zero(), a), q)) continue;
            if (orthogonal_to(out.torsion, lat.subquotient(a, lat.full()), q)) found = true;
        }
        if (!found) {
            out.ok = false;
            out.witness = e;
            out.axiom = "decomposition";
            return out;
        }
    }
    return out;
}

TiltReport tilt_heart_check(const TorsionClass& t, const Quiver& q, const RepBound& bound) {
    TiltReport out;
    out.pair = torsion_pair_verify(t, q, bound);
    if (!out.pair.ok) {
        out.ok = false;
        out.failure = "not a torsion pair (" + out.pair.axiom + " fails at " + out.pair.witness->to_string() + ")";
        return out;
    }
    const auto& tl = out.pair.torsion;
    const auto& fl = out.pair.free;
    out.objects = (tl.size() + 1) * (fl.size() + 1) - 1;
    for (const auto& x : tl)
        for (const auto& y : fl) {
            int hom = hom_space(x, y, q).dim;
            if (hom != 0 && out.hom_vanishing) {
                out.hom_vanishing = false;
                out.failure = "Hom(" + x.to_string() + ", " + y.to_string() + ") != 0";
            }
            if (ext1_dim(x, y, q) != hom - euler_pairing(x.dims(), y.dims(), q) && out.euler_consistent) {
                out.euler_consistent = false;
                out.failure = "Ext¹ disagrees with the Euler form at (" + x.to_string() + ", " + y.to_string() + ")";
            }
        }
    std::size_t all = reps_in_bound(q, bound).size();
    out.equals_heart = fl.empty() && tl.size() == all;
    out.equals_shift = tl.empty() && fl.size() == all;
    out.ok = out.hom_vanishing && out.euler_consistent;
    return out;
}

} // namespace stabkit
