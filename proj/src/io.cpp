#include "io.hpp"

#include "stabkit/error.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace stabkit::io {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

long long int_from_json(const Json& j, const std::string& what) {
    require(j.is_number_integer(), what + " must be an integer");
    return j.get<long long>();
}

IVec ivec_from_json(const Json& j, const std::string& what) {
    require(j.is_array(), what + " must be a list of integers");
    IVec out;
    for (const auto& x : j) out.push_back(int_from_json(x, what));
    return out;
}

std::string fmt(long double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << static_cast<double>(x);
    return os.str();
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    return out;
}

} // namespace

NamedLattice lattice_from_json(const Json& j) {
    require(j.is_object(), "lattice config must be a JSON object");
    require(j.contains("gram"), "lattice config needs \"gram\"");
    std::vector<IVec> gram;
    require(j["gram"].is_array(), "\"gram\" must be a list of rows");
    for (const auto& row : j["gram"]) gram.push_back(ivec_from_json(row, "gram row"));
    QVec ample;
    if (j.contains("ample"))
        ample = rationals_from_json(j["ample"]);
    else
        require(gram.size() == 1, "lattice config needs \"ample\" when the rank exceeds one");
    if (ample.empty()) ample = {Rational(1)};
    std::vector<IVec> curves;
    if (j.contains("curves")) {
        require(j["curves"].is_array(), "\"curves\" must be a list of classes");
        for (const auto& c : j["curves"]) curves.push_back(ivec_from_json(c, "curve"));
    }
    NamedLattice out{NSLattice::create(gram, ample, curves), {}};
    if (j.contains("basis")) {
        require(j["basis"].is_array() && j["basis"].size() == gram.size(), "\"basis\" needs one name per row");
        for (const auto& n : j["basis"]) {
            require(n.is_string(), "basis names must be strings");
            auto name = n.get<std::string>();
            require(!name.empty() && std::isalpha(static_cast<unsigned char>(name[0])) && name != "t",
                    "bad basis name '" + name + "'");
            out.names.push_back(name);
        }
    } else if (gram.size() == 1) {
        out.names = {"h"};
    } else {
        for (std::size_t i = 0; i < gram.size(); ++i) out.names.push_back("e" + std::to_string(i + 1));
    }
    return out;
}

NamedLattice default_lattice() { return lattice_from_json(Json{{"gram", {{2}}}, {"ample", {1}}}); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return qq(j.get<long long>());
    require(j.is_string(), "rational values must be integers or \"p/q\" strings");
    return parse_rational(j.get<std::string>());
}

std::vector<Rational> rationals_from_json(const Json& j) {
    require(j.is_array(), "expected a list of rationals");
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational_from_json(x));
    return out;
}

AffineClass parse_affine(std::string_view text, const NamedLattice& nl) {
    int n = nl.lat.rank();
    AffineClass out{QVec(n, Rational(0)), QVec(n, Rational(0))};
    std::string s(text);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto bad = [&](const std::string& why) { fail(ErrorKind::input, "cannot parse class '" + s + "': " + why); };
    skip();
    if (i == s.size()) bad("empty expression");
    bool first = true;
    while (true) {
        skip();
        if (i == s.size()) break;
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            bad("expected + or -");
        }
        first = false;
        Rational coef = sign;
        int t_power = 0;
        int basis = -1;
        bool any = false;
        while (true) {
            skip();
            if (i == s.size() || s[i] == '+' || s[i] == '-') break;
            if (s[i] == '*') {
                if (!any) bad("dangling *");
                ++i;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(s[i]))) {
                std::size_t j = i;
                while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/' || s[j] == '.'))
                    ++j;
                coef *= parse_rational(s.substr(i, j - i));
                i = j;
            } else if (std::isalpha(static_cast<unsigned char>(s[i]))) {
                std::size_t j = i;
                while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
                std::string name = s.substr(i, j - i);
                i = j;
                if (name == "t") {
                    if (++t_power > 1) bad("only affine dependence on t is allowed");
                } else {
                    auto it = std::find(nl.names.begin(), nl.names.end(), name);
                    if (it == nl.names.end()) bad("unknown basis class '" + name + "'");
                    if (basis >= 0) bad("products of classes are not allowed");
                    basis = static_cast<int>(it - nl.names.begin());
                }
            } else {
                bad(std::string("unexpected character '") + s[i] + "'");
            }
            any = true;
        }
        if (!any) bad("empty term");
        if (basis < 0) {
            if (sgn(coef) != 0) bad("a nonzero term needs a basis class");
            continue;
        }
        (t_power ? out.c1 : out.c0)[basis] += coef;
    }
    return out;
}

QVec evaluate(const AffineClass& a, const Rational& t) {
    QVec out(a.c0.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c0[i] + t * a.c1[i];
    return out;
}

std::pair<Rational, Rational> parse_range(std::string_view text) {
    auto pos = text.find("..");
    require(pos != std::string_view::npos, "range must be written 'a..b'");
    Rational a = parse_rational(text.substr(0, pos)), b = parse_rational(text.substr(pos + 2));
    require(a <= b, "empty range '" + std::string(text) + "'");
    return {a, b};
}

MukaiVector parse_mukai(std::string_view text, const NSLattice& lat) {
    auto q = parse_qmukai(text, lat);
    auto to_int = [&](const Rational& x) {
        require(x.get_den() == 1 && x.get_num().fits_slong_p(), "Mukai vector entries must be integers");
        return static_cast<long long>(x.get_num().get_si());
    };
    MukaiVector v{to_int(q.r), {}, to_int(q.s)};
    for (const auto& x : q.l) v.l.push_back(to_int(x));
    return v;
}

QMukaiVector parse_qmukai(std::string_view text, const NSLattice& lat) {
    auto parts = split(text, ',');
    require(static_cast<int>(parts.size()) == lat.mukai_rank(),
            "Mukai vector needs " + std::to_string(lat.mukai_rank()) + " entries 'r,l...,s'");
    QMukaiVector v{parse_rational(parts.front()), {}, parse_rational(parts.back())};
    for (std::size_t i = 1; i + 1 < parts.size(); ++i) v.l.push_back(parse_rational(parts[i]));
    return v;
}

QuiverConfig quiver_from_json(const Json& j) {
    require(j.is_object(), "quiver config must be a JSON object");
    require(j.contains("vertices"), "quiver config needs \"vertices\"");
    long long n = int_from_json(j["vertices"], "\"vertices\"");
    require(n >= 1 && n <= 16, "a quiver needs between 1 and 16 vertices");
    std::vector<std::pair<int, int>> arrows;
    if (j.contains("arrows")) {
        require(j["arrows"].is_array(), "\"arrows\" must be a list of [source, target] pairs");
        for (const auto& a : j["arrows"]) {
            auto st = ivec_from_json(a, "arrow");
            require(st.size() == 2, "an arrow is a [source, target] pair");
            require(st[0] >= 1 && st[0] <= n && st[1] >= 1 && st[1] <= n, "arrow endpoints are numbered from 1");
            arrows.emplace_back(static_cast<int>(st[0] - 1), static_cast<int>(st[1] - 1));
        }
    }
    int p = j.contains("p") ? static_cast<int>(int_from_json(j["p"], "\"p\"")) : 2;
    QuiverConfig out{Quiver::create(static_cast<int>(n), arrows, p), std::nullopt};
    if (j.contains("charge")) {
        require(j["charge"].is_array() && static_cast<long long>(j["charge"].size()) == n,
                "\"charge\" needs one [re, im] pair per vertex");
        std::vector<QComplex> z;
        for (const auto& c : j["charge"]) {
            require(c.is_array() && c.size() == 2, "a charge value is a [re, im] pair");
            z.push_back({rational_from_json(c[0]), rational_from_json(c[1])});
        }
        Rational shift = j.contains("shift") ? rational_from_json(j["shift"]) : Rational(0);
        out.stability = QuiverStability{HeartCharge::create(z), shift};
    }
    return out;
}

QuiverConfig default_quiver() {
    return quiver_from_json(Json{{"vertices", 2}, {"arrows", {{1, 2}}}, {"p", 2}, {"charge", {{-1, 1}, {1, 1}}}});
}

std::vector<QComplex> parse_charge_values(std::string_view text) {
    std::vector<QComplex> out;
    for (const auto& part : split(text, ';')) out.push_back(parse_complex(part));
    return out;
}

RepBound parse_rep_bound(std::string_view text, const Quiver& q) {
    auto parts = split(text, ',');
    IVec dims;
    for (const auto& part : parts) {
        auto v = parse_rational(part);
        require(v.get_den() == 1 && sgn(v) >= 0 && v <= 16, "bound entries must be integers in [0, 16]");
        dims.push_back(v.get_num().get_si());
    }
    if (dims.size() == 1) dims.assign(q.vertices(), dims.front());
    require(static_cast<int>(dims.size()) == q.vertices(), "bound needs one entry per vertex (or a single entry)");
    return RepBound::box(dims);
}

GLTildeElement group_from_json(const Json& j) {
    require(j.is_object() && j.contains("M") && j.contains("f0"), "group element needs \"M\" and \"f0\"");
    const auto& m = j["M"];
    require(m.is_array() && m.size() == 2 && m[0].is_array() && m[0].size() == 2 && m[1].is_array() &&
                m[1].size() == 2,
            "\"M\" must be a 2x2 matrix");
    Mat2 mat{rational_from_json(m[0][0]), rational_from_json(m[0][1]), rational_from_json(m[1][0]),
             rational_from_json(m[1][1])};
    return GLTildeElement::create(mat, Phase::of_value(rational_from_json(j["f0"])));
}

Json to_json(const GLTildeElement& g) {
    const auto& m = g.matrix();
    Json out;
    out["M"] = Json::array({Json::array({to_string(m.a), to_string(m.b)}), Json::array({to_string(m.c), to_string(m.d)})});
    out["f0"] = g.f0().to_string();
    return out;
}

MukaiMap parse_isometry(std::string_view text, const NSLattice& lat) {
    std::string s = trim(text);
    if (s == "identity") return identity_map(lat);
    if (s.rfind("reflection:", 0) == 0) return reflection_map(parse_mukai(s.substr(11), lat), lat);
    if (s.rfind("tensor:", 0) == 0) {
        IVec b;
        for (const auto& part : split(s.substr(7), ',')) {
            auto v = parse_rational(part);
            require(v.get_den() == 1, "tensor class must be integral");
            b.push_back(v.get_num().get_si());
        }
        lat.check_dim(b);
        return tensor_map(b, lat);
    }
    Json j;
    try {
        j = Json::parse(s);
    } catch (const Json::parse_error&) {
        fail(ErrorKind::input, "isometry must be identity, reflection:..., tensor:... or a JSON list of images");
    }
    require(j.is_array() && static_cast<int>(j.size()) == lat.mukai_rank(), "isometry needs one image per basis vector");
    MukaiMap out;
    for (const auto& img : j) {
        auto c = ivec_from_json(img, "image");
        require(static_cast<int>(c.size()) == lat.mukai_rank(), "image has the wrong length");
        out.push_back(from_coords(c, lat));
    }
    return out;
}

Json to_json(const MukaiVector& v) { return Json{{"r", v.r}, {"l", v.l}, {"s", v.s}}; }

Json to_json(const QMukaiVector& v) {
    Json l = Json::array();
    for (const auto& x : v.l) l.push_back(to_string(x));
    return Json{{"r", to_string(v.r)}, {"l", l}, {"s", to_string(v.s)}};
}

Json to_json(const QComplex& z) { return Json::array({to_string(z.re), to_string(z.im)}); }

Json to_json(const Surd& s) { return s.to_string(); }

Json to_json(const QuiverRep& e) { return e.to_string(); }

Json to_json(const Distance& d) {
    Json out{{"value", d.to_string()}, {"upper", d.upper.to_string()}, {"lower", d.lower.to_string()},
             {"objects", d.objects}, {"truncated", d.truncated}};
    if (d.witness) out["witness"] = to_json(*d.witness);
    return out;
}

Json to_json(const NormValue& v) { return v.to_string(); }

std::string walls_csv(const WallScan& scan, const NSLattice& lat, const std::string& header) {
    std::ostringstream os;
    os << "# " << header << "\n";
    os << "t,kind,r";
    if (lat.rank() == 1)
        os << ",l";
    else
        for (int i = 0; i < lat.rank(); ++i) os << ",l" << i + 1;
    os << ",s,k\n";
    for (const auto& w : scan.walls) {
        os << w.t.to_string() << "," << (w.kind == Wall::Kind::A ? "A" : "C") << "," << w.witness.r;
        for (auto x : w.witness.l) os << "," << x;
        os << "," << w.witness.s << ",";
        if (w.kind == Wall::Kind::C) os << w.k;
        os << "\n";
    }
    return os.str();
}

Json walls_json(const WallScan& scan) {
    Json walls = Json::array();
    for (const auto& w : scan.walls) {
        Json x{{"t", w.t.to_string()}, {"kind", w.kind == Wall::Kind::A ? "A" : "C"}, {"witness", to_json(w.witness)}};
        if (w.kind == Wall::Kind::C) {
            x["curve"] = w.curve;
            x["k"] = w.k;
        }
        walls.push_back(x);
    }
    return Json{{"walls", walls},
                {"truncated", scan.truncated},
                {"searched", {{"r", scan.searched.r}, {"l", scan.searched.l}, {"s", scan.searched.s}}}};
}

std::string chamber_svg(const ChamberPlot& plot, const WallScan& scan, const AffineClass& B, const AffineClass& omega,
                        const std::pair<Rational, Rational>& t_range, const std::string& title) {
    const double width = 720, height = 480, left = 60, right = 220, top = 40, bottom = 50;
    double b0 = plot.b0.get_d(), b1 = plot.b1.get_d(), t0 = plot.t0.get_d(), t1 = plot.t1.get_d();
    auto x_of = [&](long double b) { return left + (b - b0) / (b1 - b0) * (width - left - right); };
    auto y_of = [&](long double t) { return height - bottom - (t - t0) / (t1 - t0) * (height - top - bottom); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<title>" << escape(title) << "</title>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // chambers: the region above every wall, then the strips between walls
    os << "<g id=\"chambers\">\n";
    os << "<rect x=\"" << fmt(x_of(b0)) << "\" y=\"" << fmt(y_of(t1)) << "\" width=\"" << fmt(x_of(b1) - x_of(b0))
       << "\" height=\"" << fmt(y_of(t0) - y_of(t1)) << "\" fill=\"#e8f1fa\"/>\n";
    std::vector<std::pair<double, double>> tops; // (b, t_top) of the tallest wall at each b
    for (const auto& seg : plot.segments) {
        double b = seg.b.get_d(), t = static_cast<double>(seg.t_top.approx());
        if (!tops.empty() && tops.back().first == b)
            tops.back().second = std::max(tops.back().second, t);
        else
            tops.emplace_back(b, t);
    }
    const char* tints[] = {"#fdf0d5", "#e3f2e1"};
    double prev_b = b0, prev_t = t1;
    for (std::size_t i = 0; i <= tops.size(); ++i) {
        double b = i < tops.size() ? tops[i].first : b1;
        double t = i < tops.size() ? tops[i].second : t1;
        double cap = std::min({prev_t, t, t1});
        if (cap > t0 && b > prev_b)
            os << "<rect x=\"" << fmt(x_of(prev_b)) << "\" y=\"" << fmt(y_of(cap)) << "\" width=\""
               << fmt(x_of(b) - x_of(prev_b)) << "\" height=\"" << fmt(y_of(t0) - y_of(cap)) << "\" fill=\""
               << tints[i % 2] << "\"/>\n";
        prev_b = b;
        prev_t = t;
    }
    os << "</g>\n";

    os << "<g id=\"walls\" stroke=\"#b22222\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (const auto& seg : plot.segments) {
        double t = std::min(static_cast<double>(seg.t_top.approx()), t1);
        if (t <= t0) continue;
        os << "<path d=\"M " << fmt(x_of(seg.b.get_d())) << " " << fmt(y_of(t0)) << " L " << fmt(x_of(seg.b.get_d()))
           << " " << fmt(y_of(t)) << "\"><title>" << to_string(seg.witness) << "</title></path>\n";
    }
    os << "</g>\n";

    auto point = [&](long double tau) {
        long double b = B.c0[0].get_d() + tau * B.c1[0].get_d();
        long double w = omega.c0[0].get_d() + tau * omega.c1[0].get_d();
        return std::pair{x_of(b), y_of(w)};
    };
    auto [xa, ya] = point(t_range.first.get_d());
    auto [xb, yb] = point(t_range.second.get_d());
    os << "<path id=\"path\" d=\"M " << fmt(xa) << " " << fmt(ya) << " L " << fmt(xb) << " " << fmt(yb)
       << "\" stroke=\"#1f4e99\" stroke-width=\"2\" fill=\"none\"/>\n";
    os << "<g id=\"crossings\" fill=\"#1f4e99\">\n";
    for (const auto& w : scan.walls) {
        auto [x, y] = point(w.t.approx());
        os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"4\"><title>t=" << w.t.to_string() << " "
           << to_string(w.witness) << "</title></circle>\n";
    }
    os << "</g>\n";

    os << "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n";
    os << "<path d=\"M " << fmt(x_of(b0)) << " " << fmt(y_of(t0)) << " L " << fmt(x_of(b1)) << " " << fmt(y_of(t0))
       << "\"/>\n";
    os << "<path d=\"M " << fmt(x_of(b0)) << " " << fmt(y_of(t0)) << " L " << fmt(x_of(b0)) << " " << fmt(y_of(t1))
       << "\"/>\n";
    os << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<text x=\"" << fmt(x_of(b0)) << "\" y=\"" << fmt(y_of(t0) + 18) << "\">b=" << to_string(plot.b0)
       << "</text>\n";
    os << "<text x=\"" << fmt(x_of(b1) - 40) << "\" y=\"" << fmt(y_of(t0) + 18) << "\">b=" << to_string(plot.b1)
       << "</text>\n";
    os << "<text x=\"8\" y=\"" << fmt(y_of(t1) + 4) << "\">t=" << to_string(plot.t1) << "</text>\n";
    os << "<text x=\"8\" y=\"" << fmt(y_of(t0)) << "\">t=" << to_string(plot.t0) << "</text>\n";
    os << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << escape(title) << "</text>\n";
    os << "</g>\n";

    // legend of witnesses
    os << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
    double ly = top + 10;
    double lx = width - right + 20;
    os << "<text x=\"" << lx << "\" y=\"" << fmt(ly) << "\" font-weight=\"bold\">walls crossed</text>\n";
    for (const auto& w : scan.walls) {
        ly += 16;
        os << "<text x=\"" << lx << "\" y=\"" << fmt(ly) << "\">t=" << w.t.to_string() << " "
           << (w.kind == Wall::Kind::A ? "A " : "C ") << to_string(w.witness) << "</text>\n";
    }
    ly += 24;
    os << "<text x=\"" << lx << "\" y=\"" << fmt(ly) << "\" font-weight=\"bold\">spherical walls</text>\n";
    std::set<std::string> seen;
    for (const auto& seg : plot.segments) {
        auto label = "b=" + to_string(seg.b) + " " + to_string(seg.witness);
        if (!seen.insert(label).second) continue;
        ly += 16;
        if (ly > height - 10) break;
        os << "<text x=\"" << lx << "\" y=\"" << fmt(ly) << "\">" << label << "</text>\n";
    }
    os << "</g>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace stabkit::io
