#include "stabkit/heart.hpp"

#include "stabkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace stabkit {

namespace {

struct Swept {
    QuiverRep rep;
    SubobjectLattice lat;
};

// Every quantity swept here is an isomorphism invariant.
std::vector<Swept> sweep(const Quiver& q, const RepBound& bound) {
    std::vector<Swept> out;
    for (auto& e : iso_classes_in_bound(q, bound)) {
        auto lat = SubobjectLattice::build(q, e, bound.max_total);
        out.push_back({std::move(e), std::move(lat)});
    }
    return out;
}

// Keeps the largest upper - lower seen so far.
struct SupAccumulator {
    std::optional<Distance> best;

    void offer(const Phase& upper, const Phase& lower, const QuiverRep& e) {
        if (best && upper + best->lower <= best->upper + lower) return;
        Distance d;
        d.upper = upper;
        d.lower = lower;
        d.witness = e;
        best = d;
    }
};

long double approx_sqrt(const Rational& q) { return std::sqrt(static_cast<long double>(q.get_d())); }

NormValue exact_norm(const Surd& s) { return {s, s.approx()}; }

} // namespace

PhaseRange phase_range(const SubobjectLattice& lat, const QuiverStability& s) {
    auto hn = hn_filtration(lat, s);
    return {hn.factors.front().phase, hn.factors.back().phase};
}

bool Distance::less_than(const Rational& eps) const { return upper < lower.plus(eps); }

std::string Distance::to_string() const {
    auto v = value();
    if (v.exact) return stabkit::to_string(*v.exact);
    std::ostringstream os;
    os.precision(12);
    os << "~" << static_cast<double>(v.approx);
    return os.str();
}

int compare(const Distance& a, const Distance& b) {
    auto c = (a.upper + b.lower) <=> (b.upper + a.lower);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

Distance slicing_distance(const QuiverStability& a, const QuiverStability& b, const Quiver& q, const RepBound& bound) {
    SupAccumulator acc;
    std::size_t n = 0;
    for (const auto& item : sweep(q, bound)) {
        auto ra = phase_range(item.lat, a), rb = phase_range(item.lat, b);
        auto offer_abs = [&](const Phase& x, const Phase& y) {
            if (x >= y)
                acc.offer(x, y, item.rep);
            else
                acc.offer(y, x, item.rep);
        };
        offer_abs(ra.max, rb.max);
        offer_abs(ra.min, rb.min);
        ++n;
    }
    require(acc.best.has_value(), "the bound contains no nonzero representation");
    acc.best->objects = n;
    return *acc.best;
}

Distance slicing_distance_inf(const QuiverStability& a, const QuiverStability& b, const Quiver& q,
                              const RepBound& bound) {
    SupAccumulator acc;
    std::size_t n = 0;
    for (const auto& item : sweep(q, bound)) {
        auto vb = is_semistable(item.lat, b);
        if (vb.verdict == Verdict::unstable) continue;
        auto ra = phase_range(item.lat, a);
        // ε must cover both φ_a⁺ - φ and φ - φ_a⁻
        acc.offer(ra.max, vb.phase, item.rep);
        acc.offer(vb.phase, ra.min, item.rep);
        ++n;
    }
    require(acc.best.has_value(), "the bound contains no semistable representation");
    acc.best->objects = n;
    return *acc.best;
}

std::string NormValue::to_string() const {
    if (exact) return exact->to_string();
    std::ostringstream os;
    os.precision(12);
    os << "~" << static_cast<double>(approx);
    return os.str();
}

int compare(const NormValue& a, const NormValue& b) {
    if (a.exact && b.exact) {
        auto c = *a.exact <=> *b.exact;
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    return a.approx < b.approx ? -1 : (a.approx > b.approx ? 1 : 0);
}

namespace {

// sup of ratio(d) over classes d carried by some semistable object.
template <class Ratio>
NormResult sup_over_semistable_classes(const QuiverStability& s, const Quiver& q, const RepBound& bound, Ratio ratio) {
    NormResult out;
    out.squared = exact_norm(Surd(Rational(0)));
    std::map<IVec, bool> seen;
    for (const auto& item : sweep(q, bound)) {
        const auto& d = item.rep.dims();
        if (seen[d]) continue;
        if (is_semistable(item.lat, s).verdict == Verdict::unstable) continue;
        seen[d] = true;
        ++out.classes;
        NormValue v = ratio(d);
        if (out.witness.empty() || compare(v, out.squared) > 0) {
            out.squared = v;
            out.witness = d;
        }
    }
    return out;
}

} // namespace

NormResult stability_norm(const std::vector<QComplex>& u, const QuiverStability& s, const Quiver& q,
                          const RepBound& bound) {
    require(u.size() == static_cast<std::size_t>(q.vertices()), "linear form has the wrong number of values");
    return sup_over_semistable_classes(s, q, bound, [&](const IVec& d) {
        QComplex ud;
        for (std::size_t i = 0; i < u.size(); ++i) ud = ud + u[i] * qq(d[i]);
        return exact_norm(Surd(Rational(ud.norm2() / s.charge(d).norm2())));
    });
}

NormResult perturbation_norm(const QuiverStability& s, const QuiverStability& w, const Quiver& q,
                             const RepBound& bound) {
    require(w.charge.size() == s.charge.size(), "charges have different numbers of vertices");
    Rational x = w.shift - s.shift;
    auto cs = exact_cos_sin_pi(x);
    long double angle = static_cast<long double>(x.get_d()) * std::numbers::pi_v<long double>;
    return sup_over_semistable_classes(s, q, bound, [&](const IVec& d) {
        QComplex z = s.charge(d), wz = w.charge(d);
        QComplex prod = wz * z.conj(); // |e^{iπx} W - Z|² = |W|² + |Z|² - 2 Re(e^{iπx} W Z̄)
        Rational base = wz.norm2() + z.norm2();
        Rational n2 = z.norm2();
        long double approx = (static_cast<long double>(base.get_d()) -
                              2 * (std::cos(angle) * static_cast<long double>(prod.re.get_d()) -
                                   std::sin(angle) * static_cast<long double>(prod.im.get_d()))) /
                             static_cast<long double>(n2.get_d());
        if (!cs) return NormValue{std::nullopt, approx};
        const auto& [c, si] = *cs;
        Rational ra = base - 2 * (c.a() * prod.re - si.a() * prod.im);
        Rational rb = -2 * (c.b() * prod.re - si.b() * prod.im);
        Integer rad = sgn(c.b()) != 0 ? c.d() : si.d();
        return exact_norm(Surd(ra / n2, rb / n2, rad));
    });
}

MassResult mass(const SubobjectLattice& lat, const QuiverStability& s) {
    MassResult out;
    auto hn = hn_filtration(lat, s);
    out.charge_norm_squared = s.charge(lat.object().dims()).norm2();
    Rational rational_part = 0;
    std::map<Integer, Rational> radicals;
    for (const auto& f : hn.factors) {
        Rational n2 = f.z.norm2();
        out.factor_norms_squared.push_back(n2);
        out.approx += approx_sqrt(n2);
        Surd r = surd_sqrt(n2);
        rational_part += r.a();
        if (sgn(r.b()) != 0) radicals[r.d()] += r.b();
    }
    if (radicals.empty())
        out.exact = Surd(rational_part);
    else if (radicals.size() == 1)
        out.exact = Surd(rational_part, radicals.begin()->second, radicals.begin()->first);
    return out;
}

std::string to_string(DeformationStatus s) {
    switch (s) {
    case DeformationStatus::ok: return "ok";
    case DeformationStatus::violation: return "violation";
    case DeformationStatus::not_applicable: return "not-applicable";
    }
    return "?";
}

DeformationReport deformation_test(const QuiverStability& z, const QuiverStability& w, const Rational& eps,
                                   const Quiver& q, const RepBound& bound) {
    require(sgn(eps) > 0 && eps < Rational(1, 2), "deformation radius must lie in (0, 1/2)");
    DeformationReport out;
    out.norm_squared = perturbation_norm(z, w, q, bound).squared;
    if (auto s2 = exact_sin_squared_pi(eps)) {
        out.sin_squared = exact_norm(*s2);
    } else {
        long double s = std::sin(static_cast<long double>(eps.get_d()) * std::numbers::pi_v<long double>);
        out.sin_squared = {std::nullopt, s * s};
    }
    out.exact = out.norm_squared.exact && out.sin_squared.exact;
    if (compare(out.norm_squared, out.sin_squared) >= 0) {
        out.status = DeformationStatus::not_applicable;
        return out;
    }
    out.distance = slicing_distance(z, w, q, bound);
    out.status = out.distance->less_than(eps) ? DeformationStatus::ok : DeformationStatus::violation;
    return out;
}

GPReport gp_principles_check(const QuiverStability& s, const Quiver& q, const RepBound& bound) {
    GPReport out;
    auto items = sweep(q, bound);
    struct Classified {
        const QuiverRep* rep;
        Verdict verdict;
        Phase phase;
    };
    std::vector<Classified> ss;
    auto fail_with = [&](const std::string& msg) {
        if (out.ok) out.failure = msg;
        out.ok = false;
    };
    for (const auto& item : items) {
        auto v = is_semistable(item.lat, s);
        if (v.verdict != Verdict::unstable) {
            ss.push_back({&item.rep, v.verdict, v.phase});
            ++out.semistable;
            if (v.verdict == Verdict::stable) {
                ++out.stable;
                ++out.endomorphisms;
                if (!nonzero_maps_invertible(hom_space(item.rep, item.rep, q), q))
                    fail_with("End(" + item.rep.to_string() + ") has a nonzero non-invertible element");
            }
            continue;
        }
        // (iv): A = maximal destabilizing subobject, B = E/A
        auto hn = hn_filtration(item.lat, s);
        auto a = item.lat.subquotient(item.lat.zero(), hn.chain[1]);
        auto b = item.lat.subquotient(hn.chain[1], item.lat.full());
        ++out.decompositions;
        if (a.is_zero() || b.is_zero() || hom_space(a, b, q).dim != 0)
            fail_with("no decomposition A -> E -> B with Hom(A, B) = 0 for " + item.rep.to_string());
    }
    for (const auto& e : ss)
        for (const auto& f : ss) {
            if (e.phase > f.phase) {
                ++out.hom_pairs;
                if (hom_space(*e.rep, *f.rep, q).dim != 0)
                    fail_with("Hom(" + e.rep->to_string() + ", " + f.rep->to_string() + ") != 0 with decreasing phase");
            } else if (e.phase == f.phase && e.verdict == Verdict::stable && f.verdict == Verdict::stable) {
                ++out.stable_pairs;
                auto h = hom_space(*e.rep, *f.rep, q);
                if (h.dim != 0 && !(is_isomorphic(*e.rep, *f.rep, q) && nonzero_maps_invertible(h, q)))
                    fail_with("stable " + e.rep->to_string() + " and " + f.rep->to_string() +
                              " have a nonzero non-isomorphism");
            }
        }
    return out;
}

LocalFinitenessReport local_finiteness_probe(const QuiverStability& s, const Quiver& q, const Rational& eta,
                                             const RepBound& bound) {
    require(sgn(eta) > 0, "eta must be positive");
    LocalFinitenessReport out;
    auto items = sweep(q, bound);
    std::vector<std::pair<const QuiverRep*, Phase>> ss;
    std::vector<Phase> centers;
    for (const auto& item : items) {
        auto v = is_semistable(item.lat, s);
        if (v.verdict == Verdict::unstable) continue;
        ss.emplace_back(&item.rep, v.phase);
        if (std::find(centers.begin(), centers.end(), v.phase) == centers.end()) centers.push_back(v.phase);
    }
    std::sort(centers.begin(), centers.end(), [](const Phase& a, const Phase& b) { return a > b; });
    for (const auto& c : centers) {
        SliceReport slice;
        slice.center = c;
        Phase lo = c.plus(-eta), hi = c.plus(eta);
        auto inside = [&](const Phase& p) { return lo < p && p < hi; };
        for (const auto& [rep, ph] : ss)
            if (inside(ph)) slice.semistable.push_back(*rep);
        for (const auto& item : items) {
            const auto& lat = item.lat;
            std::vector<long long> longest(lat.size(), -1);
            longest[0] = 0;
            for (int t = 1; t < static_cast<int>(lat.size()); ++t)
                for (int a = 0; a < t; ++a) {
                    if (longest[a] < 0 || longest[a] + 1 <= longest[t] || !lat.contains(a, t)) continue;
                    auto chain = hn_chain(lat, s.charge, a, t);
                    bool ok = true;
                    for (std::size_t k = 1; k < chain.size() && ok; ++k) {
                        IVec d(lat[t].dims.size());
                        for (std::size_t v = 0; v < d.size(); ++v) d[v] = lat[chain[k]].dims[v] - lat[chain[k - 1]].dims[v];
                        ok = inside(s.phase(d));
                    }
                    if (ok) longest[t] = longest[a] + 1;
                }
            long long best = longest[lat.full()];
            if (best < 0) continue; // E is not in P(φ - η, φ + η)
            slice.longest_chain = std::max(slice.longest_chain, best);
            slice.length_bound = std::max(slice.length_bound, item.rep.total());
            if (best > item.rep.total()) out.ok = false;
        }
        out.slices.push_back(std::move(slice));
    }
    out.discrete = true; // charges are rational, so Z(K(A)) ⊂ (1/N)Z[i]
    out.summary = out.ok ? "discrete image, finite type certified up to bound"
                         : "chain longer than the total dimension found";
    return out;
}

} // namespace stabkit
