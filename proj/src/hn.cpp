#include "stabkit/quiver.hpp"

#include "stabkit/error.hpp"

namespace stabkit {

namespace {

struct Gauss {
    long long re = 0;
    long long im = 0;
    Gauss operator-(const Gauss& o) const { return {re - o.re, im - o.im}; }
};

// sign of cross(a, b): positive iff b has the larger phase (both in H ∪ R_{<0})
int cross_sign(const Gauss& a, const Gauss& b) {
    __int128 c = static_cast<__int128>(a.re) * b.im - static_cast<__int128>(a.im) * b.re;
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

// The charge scaled to integers, evaluated on every subobject.
std::vector<Gauss> subobject_charges(const SubobjectLattice& lat, const HeartCharge& z) {
    require(z.size() == static_cast<std::size_t>(lat.quiver().vertices()), "charge has the wrong number of vertices");
    Integer l = 1;
    for (const auto& c : z.values()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re.get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im.get_den_mpz_t());
    }
    std::vector<Gauss> v;
    const Integer limit = Integer(1) << 40;
    for (const auto& c : z.values()) {
        Integer re = Integer(c.re * l), im = Integer(c.im * l);
        if (abs(re) >= limit || abs(im) >= limit)
            fail(ErrorKind::resource, "charge entries are too large for the exhaustive engine");
        v.push_back({re.get_si(), im.get_si()});
    }
    std::vector<Gauss> out;
    out.reserve(lat.size());
    for (const auto& s : lat.subobjects()) {
        Gauss g;
        for (std::size_t i = 0; i < v.size(); ++i) {
            g.re += s.dims[i] * v[i].re;
            g.im += s.dims[i] * v[i].im;
        }
        out.push_back(g);
    }
    return out;
}

IVec minus(const IVec& a, const IVec& b) {
    IVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

void require_nonzero(const SubobjectLattice& lat) {
    require(!lat.object().is_zero(), "the zero representation has no phase");
}

} // namespace

HeartCharge HeartCharge::create(std::vector<QComplex> z) {
    require(!z.empty(), "charge needs at least one value");
    for (const auto& c : z)
        require(!c.is_zero() && in_closed_upper_half_plane(c),
                "charge value " + stabkit::to_string(c) + " is not in H ∪ R_{<0}");
    HeartCharge h;
    h.z_ = std::move(z);
    return h;
}

QComplex HeartCharge::operator()(const IVec& dims) const {
    require(dims.size() == z_.size(), "dimension vector has the wrong length");
    QComplex out;
    for (std::size_t i = 0; i < z_.size(); ++i) out = out + z_[i] * qq(dims[i]);
    return out;
}

Phase QuiverStability::phase(const IVec& dims) const { return Phase::in_heart(charge(dims)).plus(shift); }

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::semistable: return "semistable";
    case Verdict::unstable: return "unstable";
    }
    return "?";
}

SemistabilityResult is_semistable(const SubobjectLattice& lat, const QuiverStability& s) {
    require_nonzero(lat);
    auto g = subobject_charges(lat, s.charge);
    int full = lat.full();
    SemistabilityResult out;
    out.phase = s.phase(lat[full].dims);
    int best = -1, same = -1;
    for (int i = 1; i < full; ++i) {
        int c = cross_sign(g[full], g[i]);
        if (c == 0 && same < 0) same = i;
        if (c <= 0) continue;
        if (best < 0) {
            best = i;
            continue;
        }
        int d = cross_sign(g[best], g[i]);
        if (d > 0 || (d == 0 && lat[i].total > lat[best].total)) best = i;
    }
    if (best >= 0) {
        out.verdict = Verdict::unstable;
        out.witness = best;
    } else if (same >= 0) {
        out.verdict = Verdict::semistable;
        out.witness = same;
    } else {
        out.verdict = Verdict::stable;
    }
    if (out.witness) out.witness_dims = lat[*out.witness].dims;
    return out;
}

SemistabilityResult is_semistable(const QuiverRep& e, const QuiverStability& s, const Quiver& q) {
    return is_semistable(SubobjectLattice::build(q, e), s);
}

std::vector<int> hn_chain(const SubobjectLattice& lat, const HeartCharge& z, int lower, int upper) {
    require(lat.contains(lower, upper), "HN interval needs lower ⊆ upper");
    auto g = subobject_charges(lat, z);
    std::vector<int> chain{lower};
    int cur = lower;
    while (cur != upper) {
        int best = -1;
        Gauss bw;
        for (int t = 0; t < static_cast<int>(lat.size()); ++t) {
            if (t == cur || !lat.contains(cur, t) || !lat.contains(t, upper)) continue;
            Gauss w = g[t] - g[cur];
            if (best >= 0) {
                int c = cross_sign(bw, w);
                if (c < 0 || (c == 0 && lat[t].total <= lat[best].total)) continue;
            }
            best = t;
            bw = w;
        }
        if (best < 0) fail(ErrorKind::internal, "no subobject strictly between HN steps");
        chain.push_back(best);
        cur = best;
    }
    return chain;
}

HNResult hn_filtration(const SubobjectLattice& lat, const QuiverStability& s) {
    require_nonzero(lat);
    HNResult out;
    out.chain = hn_chain(lat, s.charge, lat.zero(), lat.full());
    for (std::size_t k = 1; k < out.chain.size(); ++k) {
        IVec d = minus(lat[out.chain[k]].dims, lat[out.chain[k - 1]].dims);
        out.factors.push_back({d, s.charge(d), s.phase(d)});
    }
    return out;
}

HNResult hn_filtration(const QuiverRep& e, const QuiverStability& s, const Quiver& q) {
    return hn_filtration(SubobjectLattice::build(q, e), s);
}

JHResult jh_filtration(const SubobjectLattice& lat, const QuiverStability& s) {
    auto verdict = is_semistable(lat, s);
    if (verdict.verdict == Verdict::unstable)
        fail(ErrorKind::domain,
             "JH filtrations need a semistable object; destabilized by dims " + to_string(verdict.witness_dims));
    auto g = subobject_charges(lat, s.charge);
    JHResult out;
    out.phase = verdict.phase;
    out.chain.push_back(lat.zero());
    int cur = lat.zero(), full = lat.full();
    while (cur != full) {
        int best = -1;
        for (int t = 0; t < static_cast<int>(lat.size()); ++t) {
            if (t == cur || !lat.contains(cur, t)) continue;
            if (cross_sign(g[full], g[t] - g[cur]) != 0) continue;
            if (best < 0 || lat[t].total < lat[best].total) best = t;
        }
        if (best < 0) fail(ErrorKind::internal, "JH refinement found no step of the same phase");
        out.factors.push_back(minus(lat[best].dims, lat[cur].dims));
        out.chain.push_back(best);
        cur = best;
    }
    return out;
}

TorsionCut torsion_cut(const SubobjectLattice& lat, const Phase& phi0, const QuiverStability& s) {
    TorsionCut out;
    if (lat.object().is_zero()) {
        out.torsion = out.free_part = lat.object();
        return out;
    }
    auto hn = hn_filtration(lat, s);
    std::size_t k = 0;
    while (k < hn.factors.size() && hn.factors[k].phase > phi0) ++k;
    out.sub = hn.chain[k];
    out.torsion = lat.subquotient(lat.zero(), out.sub);
    out.free_part = lat.subquotient(out.sub, lat.full());
    return out;
}

} // namespace stabkit
