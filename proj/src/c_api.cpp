#include "stabkit/stabkit.h"

#include "io.hpp"
#include "stabkit/error.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

struct stab_lattice {
    stabkit::io::NamedLattice nl;
};

struct stab_quiver {
    stabkit::io::QuiverConfig cfg;
};

namespace {

using namespace stabkit;
using io::Json;

thread_local std::string last_error;

// A computed report together with the verdict it carries.
struct Report {
    std::string text;
    bool negative = false;
};

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
stab_status guarded(char** out, F&& body) {
    if (out) *out = nullptr;
    last_error.clear();
    try {
        if (!out) fail(ErrorKind::input, "output pointer is NULL");
        Report r = body();
        *out = copy_string(r.text);
        return r.negative ? STAB_NEGATIVE : STAB_OK;
    } catch (const Error& e) {
        last_error = e.what();
        switch (e.kind()) {
        case ErrorKind::input: return STAB_INVALID_INPUT;
        case ErrorKind::resource: return STAB_RESOURCE;
        case ErrorKind::domain:
        case ErrorKind::guard_violation: {
            Json j{{"ok", false}, {"error", e.what()}};
            *out = copy_string(j.dump(2) + "\n");
            return STAB_NEGATIVE;
        }
        case ErrorKind::internal: return STAB_INTERNAL;
        }
    } catch (const Json::exception& e) {
        last_error = std::string("malformed JSON: ") + e.what();
        return STAB_INVALID_INPUT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return STAB_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return STAB_INTERNAL;
    }
    return STAB_INTERNAL;
}

template <class F>
stab_status guarded_create(F&& body) {
    last_error.clear();
    char* unused = nullptr;
    auto status = guarded(&unused, [&] {
        body();
        return Report{};
    });
    std::free(unused);
    return status;
}

Json parse_request(const char* request) {
    if (!request || !*request) return Json::object();
    Json j = Json::parse(request);
    require(j.is_object(), "request must be a JSON object");
    return j;
}

std::string get_string(const Json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j[key];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    fail(ErrorKind::input, std::string("\"") + key + "\" must be a string");
}

std::string format_of(const Json& j, std::initializer_list<const char*> allowed) {
    std::string f = get_string(j, "format", *allowed.begin());
    for (const char* a : allowed)
        if (f == a) return f;
    fail(ErrorKind::input, "unsupported format '" + f + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

DeltaBox box_of(const Json& j) {
    if (!j.contains("bound")) return DeltaBox::cube(4);
    const auto& b = j["bound"];
    if (b.is_number_integer()) {
        require(b.get<long long>() >= 0, "bound must be nonnegative");
        return DeltaBox::cube(b.get<long long>());
    }
    auto parts = get_string(j, "bound", "");
    std::vector<long long> v;
    std::stringstream ss(parts);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto q = parse_rational(item);
        require(q.get_den() == 1 && sgn(q) >= 0, "bound entries must be nonnegative integers");
        v.push_back(q.get_num().get_si());
    }
    require(v.size() == 1 || v.size() == 3, "bound is 'n' or 'r,l,s'");
    return v.size() == 1 ? DeltaBox::cube(v[0]) : DeltaBox{v[0], v[1], v[2]};
}

struct K3Point {
    io::AffineClass B, omega;
    Rational t;
};

K3Point k3_point(const io::NamedLattice& nl, const Json& j) {
    K3Point p{io::parse_affine(get_string(j, "B", "0"), nl), io::parse_affine(get_string(j, "omega", "t*h"), nl), 0};
    bool uses_t = false;
    for (const auto& c : {p.B.c1, p.omega.c1})
        for (const auto& x : c) uses_t = uses_t || sgn(x) != 0;
    if (j.contains("t"))
        p.t = parse_rational(get_string(j, "t", ""));
    else
        require(!uses_t, "the classes depend on t, so the request needs \"t\"");
    return p;
}

K3CentralCharge k3_charge(const io::NamedLattice& nl, const K3Point& p) {
    return K3CentralCharge::create(nl.lat, io::evaluate(p.B, p.t), io::evaluate(p.omega, p.t));
}

Json guard_json(const GuardResult& g) {
    Json out{{"ok", g.ok}, {"truncated", g.truncated}, {"searched", {{"r", g.searched.r}, {"l", g.searched.l}, {"s", g.searched.s}}}};
    if (g.violation) {
        out["violation"] = io::to_json(*g.violation);
        out["value"] = io::to_json(g.value);
    }
    return out;
}

QuiverStability stability_of(const stab_quiver* q, const Json& j) {
    const auto& quiver = q->cfg.quiver;
    std::optional<QuiverStability> s = q->cfg.stability;
    if (j.contains("charge")) {
        auto z = io::parse_charge_values(get_string(j, "charge", ""));
        require(static_cast<int>(z.size()) == quiver.vertices(), "charge needs one value per vertex");
        s = QuiverStability{HeartCharge::create(z), 0};
    }
    require(s.has_value(), "no charge given: set \"charge\" in the quiver config or the request");
    if (j.contains("shift")) s->shift = parse_rational(get_string(j, "shift", "0"));
    return *s;
}

RepBound rep_bound_of(const stab_quiver* q, const Json& j) {
    if (!j.contains("bound")) return RepBound::standard(q->cfg.quiver);
    return io::parse_rep_bound(get_string(j, "bound", ""), q->cfg.quiver);
}

Json factor_json(const IVec& dims, const QComplex& z, const Phase& phase) {
    return Json{{"dims", dims}, {"z", io::to_json(z)}, {"phase", phase.to_string()}};
}

const Quiver& quiver_of(const stab_quiver* q) {
    require(q != nullptr, "quiver handle is NULL");
    return q->cfg.quiver;
}

const io::NamedLattice& lattice_of(const stab_lattice* lat) {
    require(lat != nullptr, "lattice handle is NULL");
    return lat->nl;
}

std::string header(const std::string& command, const Json& request) {
    return std::string("stabkit ") + stab_version() + " " + command + " " + request.dump();
}

} // namespace

extern "C" {

const char* stab_version(void) { return "0.1.0"; }

const char* stab_last_error(void) { return last_error.c_str(); }

void stab_string_free(char* s) { std::free(s); }

stab_status stab_lattice_create(const char* config, stab_lattice** out) {
    if (out) *out = nullptr;
    return guarded_create([&] {
        require(out != nullptr, "output pointer is NULL");
        auto nl = (!config || !*config) ? io::default_lattice() : io::lattice_from_json(Json::parse(config));
        *out = new stab_lattice{std::move(nl)};
    });
}

void stab_lattice_free(stab_lattice* lat) { delete lat; }

stab_status stab_k3_scan(const stab_lattice* lat, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& nl = lattice_of(lat);
        Json j = parse_request(request);
        auto fmt = format_of(j, {"csv", "json", "svg"});
        auto B = io::parse_affine(get_string(j, "B", "0"), nl);
        auto omega = io::parse_affine(get_string(j, "omega", "t*h"), nl);
        require(j.contains("t"), "scan needs a t range \"a..b\"");
        auto range = io::parse_range(get_string(j, "t", ""));
        AffinePath path{B.c0, B.c1, omega.c0, omega.c1};
        auto scan = wall_scan(nl.lat, path, range.first, range.second, box_of(j));
        if (fmt == "csv") return Report{io::walls_csv(scan, nl.lat, header("k3 scan", j))};
        if (fmt == "json") return Report{dump(io::walls_json(scan))};
        require(nl.lat.rank() == 1, "chamber plots need a rank one lattice");
        Rational b_lo = std::min(io::evaluate(B, range.first)[0], io::evaluate(B, range.second)[0]) - 1;
        Rational b_hi = std::max(io::evaluate(B, range.first)[0], io::evaluate(B, range.second)[0]) + 1;
        if (j.contains("b")) std::tie(b_lo, b_hi) = io::parse_range(get_string(j, "b", ""));
        Rational w0 = io::evaluate(omega, range.first)[0], w1 = io::evaluate(omega, range.second)[0];
        Rational t_lo = std::min(w0, w1) / 2, t_hi = std::max(w0, w1) * Rational(3, 2);
        require(sgn(t_lo) > 0, "the scanned path leaves the region ω = t·h with t > 0");
        auto plot = chamber_plot(nl.lat, b_lo, b_hi, t_lo, t_hi);
        return Report{io::chamber_svg(plot, scan, B, omega, range,
                                      "walls along B = " + get_string(j, "B", "0") + ", ω = " +
                                          get_string(j, "omega", "t*h"))};
    });
}

stab_status stab_k3_guard(const stab_lattice* lat, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& nl = lattice_of(lat);
        Json j = parse_request(request);
        auto g = spherical_guard(k3_charge(nl, k3_point(nl, j)), box_of(j));
        return Report{dump(guard_json(g)), !g.ok};
    });
}

stab_status stab_k3_heart_check(const stab_lattice* lat, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& nl = lattice_of(lat);
        Json j = parse_request(request);
        auto zc = k3_charge(nl, k3_point(nl, j));
        auto g = spherical_guard(zc, box_of(j));
        if (!g.ok) {
            Json r{{"ok", false}, {"guard", guard_json(g)}};
            return Report{dump(r), true};
        }
        auto report = heart_image_check(zc, box_of(j));
        Json violations = Json::array();
        for (const auto& v : report.violations)
            violations.push_back(Json{{"v", io::to_json(v.v)}, {"z", io::to_json(v.z)}, {"rule", v.rule}});
        Json r{{"ok", report.violations.empty()},
               {"classes_checked", report.classes_checked},
               {"truncated", report.truncated},
               {"violations", violations}};
        return Report{dump(r), !report.violations.empty()};
    });
}

stab_status stab_k3_normalize(const stab_lattice* lat, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& nl = lattice_of(lat);
        Json j = parse_request(request);
        require(j.contains("re") && j.contains("im"), "normalize needs \"re\" and \"im\" Mukai vectors");
        ComplexMukaiVector om{io::parse_qmukai(get_string(j, "re", ""), nl.lat),
                              io::parse_qmukai(get_string(j, "im", ""), nl.lat)};
        auto e = normalize_to_exp_form(om, nl.lat);
        Json b = Json::array(), w = Json::array();
        for (const auto& x : e.B) b.push_back(to_string(x));
        for (const auto& x : e.omega_unit) w.push_back(to_string(x));
        Json r{{"M_row1", Json::array({to_string(e.m11), to_string(e.m12)})},
               {"M_row2_unit", Json::array({to_string(e.m21), to_string(e.m22)})},
               {"c_squared", to_string(e.c_squared)},
               {"B", b},
               {"omega_unit", w},
               {"omega_squared", to_string(e.omega_squared(nl.lat))},
               {"rational", e.is_rational()}};
        if (auto m = e.matrix())
            r["M"] = Json::array({Json::array({to_string(m->a), to_string(m->b)}),
                                  Json::array({to_string(m->c), to_string(m->d)})});
        if (auto o = e.omega()) {
            Json oj = Json::array();
            for (const auto& x : *o) oj.push_back(to_string(x));
            r["omega"] = oj;
        }
        return Report{dump(r)};
    });
}

stab_status stab_quiver_create(const char* config, stab_quiver** out) {
    if (out) *out = nullptr;
    return guarded_create([&] {
        require(out != nullptr, "output pointer is NULL");
        auto cfg = (!config || !*config) ? io::default_quiver() : io::quiver_from_json(Json::parse(config));
        *out = new stab_quiver{std::move(cfg)};
    });
}

void stab_quiver_free(stab_quiver* q) { delete q; }

stab_status stab_quiver_hn(const stab_quiver* q, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& quiver = quiver_of(q);
        Json j = parse_request(request);
        auto fmt = format_of(j, {"text", "json"});
        auto s = stability_of(q, j);
        require(j.contains("rep"), "hn needs \"rep\"");
        auto e = parse_rep(quiver, get_string(j, "rep", ""));
        require(!e.is_zero(), "the zero representation has no HN filtration");
        auto hn = hn_filtration(e, s, quiver);
        if (fmt == "json") {
            Json factors = Json::array();
            for (const auto& f : hn.factors) factors.push_back(factor_json(f.dims, f.z, f.phase));
            return Report{dump(Json{{"rep", e.to_string()}, {"factors", factors}})};
        }
        std::ostringstream os;
        os << "HN filtration of " << e.to_string() << ": " << hn.factors.size() << " factor"
           << (hn.factors.size() == 1 ? "" : "s") << "\n";
        for (std::size_t i = 0; i < hn.factors.size(); ++i) {
            const auto& f = hn.factors[i];
            os << "  " << i + 1 << ". dims=" << to_string(f.dims) << " Z=" << to_string(f.z)
               << " phase=" << f.phase.to_string() << "\n";
        }
        return Report{os.str()};
    });
}

stab_status stab_quiver_jh(const stab_quiver* q, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& quiver = quiver_of(q);
        Json j = parse_request(request);
        auto fmt = format_of(j, {"text", "json"});
        auto s = stability_of(q, j);
        require(j.contains("rep"), "jh needs \"rep\"");
        auto e = parse_rep(quiver, get_string(j, "rep", ""));
        auto lat = SubobjectLattice::build(quiver, e);
        auto jh = jh_filtration(lat, s);
        if (fmt == "json") {
            Json factors = Json::array();
            for (const auto& f : jh.factors) factors.push_back(f);
            return Report{dump(Json{{"rep", e.to_string()}, {"phase", jh.phase.to_string()}, {"factors", factors}})};
        }
        std::ostringstream os;
        os << "JH filtration of " << e.to_string() << " at phase " << jh.phase.to_string() << "\n";
        for (std::size_t i = 0; i < jh.factors.size(); ++i)
            os << "  " << i + 1 << ". dims=" << to_string(jh.factors[i]) << "\n";
        return Report{os.str()};
    });
}

stab_status stab_quiver_check(const stab_quiver* q, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& quiver = quiver_of(q);
        Json j = parse_request(request);
        auto s = stability_of(q, j);
        auto bound = rep_bound_of(q, j);
        auto suite = get_string(j, "suite", "gp");
        if (suite == "gp") {
            auto r = gp_principles_check(s, quiver, bound);
            Json out{{"suite", "gp"},
                     {"ok", r.ok},
                     {"hom_pairs", r.hom_pairs},
                     {"stable_pairs", r.stable_pairs},
                     {"endomorphisms", r.endomorphisms},
                     {"decompositions", r.decompositions},
                     {"semistable", r.semistable},
                     {"stable", r.stable}};
            if (!r.ok) out["failure"] = r.failure;
            return Report{dump(out), !r.ok};
        }
        if (suite == "finiteness") {
            auto r = local_finiteness_probe(s, quiver, parse_rational(get_string(j, "eta", "1/2")), bound);
            Json slices = Json::array();
            for (const auto& sl : r.slices) {
                Json objects = Json::array();
                for (const auto& e : sl.semistable) objects.push_back(e.to_string());
                slices.push_back(Json{{"center", sl.center.to_string()},
                                      {"semistable", objects},
                                      {"longest_chain", sl.longest_chain},
                                      {"length_bound", sl.length_bound}});
            }
            Json out{{"suite", "finiteness"}, {"ok", r.ok}, {"discrete", r.discrete}, {"summary", r.summary}, {"slices", slices}};
            return Report{dump(out), !r.ok};
        }
        if (suite == "metric") {
            require(j.contains("with"), "the metric suite needs a second charge \"with\"");
            auto z2 = io::parse_charge_values(get_string(j, "with", ""));
            require(static_cast<int>(z2.size()) == quiver.vertices(), "\"with\" needs one value per vertex");
            QuiverStability w{HeartCharge::create(z2), parse_rational(get_string(j, "with_shift", "0"))};
            auto sup = slicing_distance(s, w, quiver, bound);
            auto inf = slicing_distance_inf(s, w, quiver, bound);
            bool agree = compare(sup, inf) == 0;
            Json out{{"suite", "metric"}, {"ok", agree}, {"sup_formula", io::to_json(sup)}, {"inf_formula", io::to_json(inf)}};
            return Report{dump(out), !agree};
        }
        fail(ErrorKind::input, "unknown suite '" + suite + "' (gp, finiteness, metric)");
    });
}

stab_status stab_quiver_deform(const stab_quiver* q, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& quiver = quiver_of(q);
        Json j = parse_request(request);
        auto s = stability_of(q, j);
        auto bound = rep_bound_of(q, j);
        require(j.contains("eps"), "deform needs \"eps\"");
        Rational eps = parse_rational(get_string(j, "eps", ""));
        QuiverStability w = s;
        if (j.contains("perturb")) {
            auto z = io::parse_charge_values(get_string(j, "perturb", ""));
            require(static_cast<int>(z.size()) == quiver.vertices(), "\"perturb\" needs one value per vertex");
            w.charge = HeartCharge::create(z);
        }
        if (j.contains("rotate")) w.shift += parse_rational(get_string(j, "rotate", "0"));
        auto r = deformation_test(s, w, eps, quiver, bound);
        Json report{{"status", to_string(r.status)},
                    {"norm_squared", io::to_json(r.norm_squared)},
                    {"sin_squared", io::to_json(r.sin_squared)},
                    {"exact", r.exact}};
        if (r.distance) report["distance"] = io::to_json(*r.distance);
        return Report{dump(report), r.status == DeformationStatus::violation};
    });
}

stab_status stab_quiver_tilt(const stab_quiver* q, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& quiver = quiver_of(q);
        Json j = parse_request(request);
        auto bound = rep_bound_of(q, j);
        require(j.contains("torsion"), "tilt needs a torsion class \"torsion\"");
        std::optional<QuiverStability> s;
        if (q->cfg.stability || j.contains("charge")) s = stability_of(q, j);
        auto t = TorsionClass::parse(quiver, get_string(j, "torsion", ""), s);
        auto r = tilt_heart_check(t, quiver, bound);
        Json pair{{"ok", r.pair.ok}, {"torsion", r.pair.torsion.size()}, {"free", r.pair.free.size()}, {"checked", r.pair.checked}};
        if (!r.pair.ok) {
            pair["axiom"] = r.pair.axiom;
            pair["witness"] = r.pair.witness->to_string();
        }
        Json report{{"torsion_class", t.name()},
                    {"ok", r.ok},
                    {"pair", pair},
                    {"hom_vanishing", r.hom_vanishing},
                    {"euler_consistent", r.euler_consistent},
                    {"equals_heart", r.equals_heart},
                    {"equals_shift", r.equals_shift},
                    {"objects", r.objects}};
        if (!r.ok) report["failure"] = r.failure;
        return Report{dump(report), !r.ok};
    });
}

stab_status stab_curve_decompose(const char* request, char** out) {
    return guarded(out, [&] {
        Json j = parse_request(request);
        require(j.contains("m"), "decompose needs a charge matrix \"m\"");
        auto zc = CurveCharge::create(parse_mat2(get_string(j, "m", "")));
        auto m = gl_orbit_decompose(zc);
        Json r{{"M", to_string(m)}, {"recomposed", to_string(gl_orbit_recompose(m).matrix())}};
        return Report{dump(r)};
    });
}

stab_status stab_curve_polygon(const char* request, char** out) {
    return guarded(out, [&] {
        Json j = parse_request(request);
        auto fmt = format_of(j, {"csv", "json"});
        auto zc = j.contains("m") ? CurveCharge::create(parse_mat2(get_string(j, "m", ""))) : CurveCharge::standard();
        std::vector<CurveClass> parts;
        std::stringstream ss(get_string(j, "parts", ""));
        std::string item;
        while (ss >> item) {
            auto c = parse_complex(item);
            require(c.re.get_den() == 1 && c.im.get_den() == 1, "classes are integral pairs 'r,d'");
            parts.push_back({c.re.get_num().get_si(), c.im.get_num().get_si()});
        }
        require(!parts.empty(), "polygon needs \"parts\", e.g. \"0,1 1,0\"");
        auto poly = hn_polygon(parts, zc);
        if (fmt == "json") {
            Json vertices = Json::array(), factors = Json::array();
            for (const auto& v : poly.vertices) vertices.push_back(io::to_json(v));
            for (const auto& f : poly.factors)
                factors.push_back(Json{{"r", f.cls.r}, {"d", f.cls.d}, {"z", io::to_json(f.z)}, {"phase", f.phase.to_string()}});
            return Report{dump(Json{{"vertices", vertices}, {"factors", factors}})};
        }
        std::ostringstream os;
        os << "# " << header("curve polygon", j) << "\nre,im\n";
        for (const auto& v : poly.vertices) os << to_string(v.re) << "," << to_string(v.im) << "\n";
        return Report{os.str()};
    });
}

stab_status stab_curve_order_check(const char* request, char** out) {
    return guarded(out, [&] {
        Json j = parse_request(request);
        auto zc = j.contains("m") ? CurveCharge::create(parse_mat2(get_string(j, "m", ""))) : CurveCharge::standard();
        auto [lo, hi] = io::parse_range(get_string(j, "d", "-10..10"));
        require(lo.get_den() == 1 && hi.get_den() == 1, "degree range must be integral");
        auto r = phase_order_check(zc, lo.get_num().get_si(), hi.get_num().get_si());
        Json lines = Json::array();
        for (const auto& [d, phi] : r.line_phases) lines.push_back(Json{{"d", d}, {"phase", phi.to_string()}});
        Json report{{"ok", r.ok}, {"point_phase", r.point_phase.to_string()}, {"line_bundles", lines}};
        if (r.failure) report["failure_degree"] = *r.failure;
        return Report{dump(report), !r.ok};
    });
}

stab_status stab_group_compose(const char* request, char** out) {
    return guarded(out, [&] {
        Json j = parse_request(request);
        require(j.contains("g") && j.contains("h"), "compose needs elements \"g\" and \"h\"");
        auto g = io::group_from_json(j["g"]), h = io::group_from_json(j["h"]);
        return Report{dump(io::to_json(compose(g, h)))};
    });
}

stab_status stab_group_act(const stab_lattice* lat, const char* request, char** out) {
    return guarded(out, [&] {
        Json j = parse_request(request);
        require(j.contains("g"), "act needs an element \"g\"");
        auto g = io::group_from_json(j["g"]);
        if (j.contains("curve")) {
            auto z = act_on_charge(g, CurveCharge::create(parse_mat2(get_string(j, "curve", ""))));
            return Report{dump(Json{{"curve", to_string(z.matrix())}})};
        }
        const auto& nl = lattice_of(lat);
        auto om = k3_charge(nl, k3_point(nl, j)).om();
        auto moved = act_on_charge(g, om);
        return Report{dump(Json{{"re", io::to_json(moved.re)}, {"im", io::to_json(moved.im)}})};
    });
}

stab_status stab_group_commute(const stab_lattice* lat, const char* request, char** out) {
    return guarded(out, [&] {
        const auto& nl = lattice_of(lat);
        Json j = parse_request(request);
        require(j.contains("g"), "commute needs an element \"g\"");
        auto g = io::group_from_json(j["g"]);
        auto iso = io::parse_isometry(get_string(j, "iso", "identity"), nl.lat);
        auto om = k3_charge(nl, k3_point(nl, j)).om();
        bool ok = commute_check(iso, g, om, nl.lat);
        return Report{dump(Json{{"commute", ok}}), !ok};
    });
}

} // extern "C"
