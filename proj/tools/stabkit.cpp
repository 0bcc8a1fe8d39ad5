// stabkit command-line front end. Every subcommand builds a JSON request and
// hands it to the C interface in libstabkit.

#include "stabkit/stabkit.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_invalid = 2;

struct Options {
    std::string lattice_path;
    std::string config_path;
    std::string B = "0";
    std::string omega = "t*h";
    std::string t;
    std::string b_window;
    std::string bound;
    std::string output;
    std::string format;
    std::string guard_t;
    std::string re, im;
    std::string rep, charge, shift;
    std::string suite = "gp";
    std::string eta = "1/2";
    std::string with, with_shift;
    std::string eps, perturb, rotate;
    std::string torsion;
    std::string m, parts, degrees = "-10..10";
    std::string g, h, curve, iso = "identity";
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("failed writing '" + path + "'");
}

std::string format_for(const Options& o, const std::string& fallback) {
    if (!o.format.empty()) return o.format;
    auto dot = o.output.rfind('.');
    if (dot != std::string::npos) {
        auto ext = o.output.substr(dot + 1);
        if (ext == "csv" || ext == "json" || ext == "svg") return ext;
        if (ext == "txt") return "text";
    }
    return fallback;
}

// An explicit --bound wins over STABKIT_BOUND, which wins over the library default.
void put_bound(Json& req, const Options& o) {
    if (!o.bound.empty())
        req["bound"] = o.bound;
    else if (const char* env = std::getenv("STABKIT_BOUND"); env && *env)
        req["bound"] = env;
}

void put_if(Json& req, const char* key, const std::string& value) {
    if (!value.empty()) req[key] = value;
}

Json group_element(const std::string& text) {
    if (text.empty()) throw InputError("missing group element");
    if (text.front() == '{') return Json::parse(text);
    return Json::parse(read_file(text));
}

int finish(stab_status status, char* report, const std::string& output) {
    std::string text = report ? report : "";
    stab_string_free(report);
    if (status == STAB_OK || status == STAB_NEGATIVE) {
        write_output(text, output);
        if (status == STAB_NEGATIVE && *stab_last_error()) std::cerr << "stabkit: " << stab_last_error() << "\n";
        return status == STAB_OK ? exit_ok : exit_negative;
    }
    std::cerr << "stabkit: " << stab_last_error() << "\n";
    return exit_invalid;
}

int fail_create(stab_status status) {
    std::cerr << "stabkit: " << stab_last_error() << "\n";
    return status == STAB_NEGATIVE ? exit_negative : exit_invalid;
}

using LatticeCall = stab_status (*)(const stab_lattice*, const char*, char**);
using QuiverCall = stab_status (*)(const stab_quiver*, const char*, char**);
using PlainCall = stab_status (*)(const char*, char**);

int with_lattice(const Options& o, LatticeCall call, const Json& req) {
    std::string config = o.lattice_path.empty() ? std::string() : read_file(o.lattice_path);
    stab_lattice* lat = nullptr;
    if (auto s = stab_lattice_create(config.empty() ? nullptr : config.c_str(), &lat); s != STAB_OK)
        return fail_create(s);
    char* out = nullptr;
    auto status = call(lat, req.dump().c_str(), &out);
    stab_lattice_free(lat);
    return finish(status, out, o.output);
}

int with_quiver(const Options& o, QuiverCall call, const Json& req) {
    std::string config = o.config_path.empty() ? std::string() : read_file(o.config_path);
    stab_quiver* q = nullptr;
    if (auto s = stab_quiver_create(config.empty() ? nullptr : config.c_str(), &q); s != STAB_OK)
        return fail_create(s);
    char* out = nullptr;
    auto status = call(q, req.dump().c_str(), &out);
    stab_quiver_free(q);
    return finish(status, out, o.output);
}

int plain(const Options& o, PlainCall call, const Json& req) {
    char* out = nullptr;
    auto status = call(req.dump().c_str(), &out);
    return finish(status, out, o.output);
}

Json k3_point(const Options& o) {
    Json req{{"B", o.B}, {"omega", o.omega}};
    put_if(req, "t", o.t);
    put_bound(req, o);
    return req;
}

int k3_scan(const Options& o) {
    Json req = k3_point(o);
    req["format"] = format_for(o, "csv");
    put_if(req, "b", o.b_window);
    int code = with_lattice(o, stab_k3_scan, req);
    if (code != exit_ok || o.guard_t.empty()) return code;
    Options g = o;
    g.t = o.guard_t;
    g.output.clear();
    Json guard = k3_point(g);
    std::string config = o.lattice_path.empty() ? std::string() : read_file(o.lattice_path);
    stab_lattice* lat = nullptr;
    if (auto s = stab_lattice_create(config.empty() ? nullptr : config.c_str(), &lat); s != STAB_OK)
        return fail_create(s);
    char* out = nullptr;
    auto status = stab_k3_guard(lat, guard.dump().c_str(), &out);
    stab_lattice_free(lat);
    std::string text = out ? out : "";
    stab_string_free(out);
    if (status == STAB_OK) return exit_ok;
    if (status == STAB_NEGATIVE) {
        std::cerr << "stabkit: spherical guard fails at t = " << o.guard_t << "\n" << text;
        return exit_negative;
    }
    std::cerr << "stabkit: " << stab_last_error() << "\n";
    return exit_invalid;
}

Json quiver_request(const Options& o) {
    Json req = Json::object();
    put_if(req, "charge", o.charge);
    put_if(req, "shift", o.shift);
    put_bound(req, o);
    return req;
}

void add_output(CLI::App* cmd, Options& o, const std::string& formats) {
    cmd->add_option("-o,--output", o.output, "Write the report to a file instead of stdout");
    cmd->add_option("--format", o.format, "Report format (" + formats + "); defaults to the output extension");
}

void add_k3_point(CLI::App* cmd, Options& o) {
    cmd->add_option("--lattice", o.lattice_path, "Néron–Severi lattice config (JSON); default NS = Zh, h^2 = 2");
    cmd->add_option("--B", o.B, "B-field over the basis, affine in t")->capture_default_str();
    cmd->add_option("--omega", o.omega, "Ample class over the basis, affine in t")->capture_default_str();
    cmd->add_option("--bound", o.bound, "Delta box bound 'n' or 'r,l,s'");
}

void add_quiver_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config_path, "Quiver config (JSON); default A2 over F2");
    cmd->add_option("--charge", o.charge, "Central charge on the simples, 're,im;re,im;...'");
    cmd->add_option("--shift", o.shift, "Phase shift of the slicing");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabkit: exact computations with Bridgeland stability conditions"};
    app.set_version_flag("--version", std::string(stab_version()));
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto* k3 = app.add_subcommand("k3", "K3 surfaces: walls, spherical guard, heart checks");
    k3->require_subcommand(1);
    auto* scan = k3->add_subcommand("scan", "Scan an affine path (B(t), ω(t)) for walls");
    add_k3_point(scan, o);
    scan->add_option("--t", o.t, "Closed parameter range 'a..b'")->required();
    scan->add_option("--b", o.b_window, "b window 'lo..hi' for SVG chamber plots");
    scan->add_option("--guard", o.guard_t, "Also require the spherical guard at this t");
    add_output(scan, o, "csv, json, svg");
    scan->callback([&] { action = [&] { return k3_scan(o); }; });

    auto* guard = k3->add_subcommand("guard", "Search the box for spherical classes with Z(δ) in R≤0");
    add_k3_point(guard, o);
    guard->add_option("--t", o.t, "Path parameter");
    add_output(guard, o, "json");
    guard->callback([&] { action = [&] { return with_lattice(o, stab_k3_guard, k3_point(o)); }; });

    auto* heart = k3->add_subcommand("heart-check", "Check that the heart maps into the half plane");
    add_k3_point(heart, o);
    heart->add_option("--t", o.t, "Path parameter");
    add_output(heart, o, "json");
    heart->callback([&] { action = [&] { return with_lattice(o, stab_k3_heart_check, k3_point(o)); }; });

    auto* normalize = k3->add_subcommand("normalize", "Write a period as exp(B + iω) up to GL+(2,R)");
    normalize->add_option("--lattice", o.lattice_path, "Néron–Severi lattice config (JSON)");
    normalize->add_option("--re", o.re, "Real part 'r,l...,s'")->required();
    normalize->add_option("--im", o.im, "Imaginary part 'r,l...,s'")->required();
    add_output(normalize, o, "json");
    normalize->callback([&] {
        action = [&] { return with_lattice(o, stab_k3_normalize, Json{{"re", o.re}, {"im", o.im}}); };
    });

    auto* quiver = app.add_subcommand("quiver", "Quiver representations over F_p");
    quiver->require_subcommand(1);
    auto* hn = quiver->add_subcommand("hn", "Harder–Narasimhan filtration of a representation");
    add_quiver_common(hn, o);
    hn->add_option("--rep", o.rep, "Representation, e.g. 'dims=[1,1];f=[[1]]'")->required();
    add_output(hn, o, "text, json");
    hn->callback([&] {
        action = [&] {
            Json req = quiver_request(o);
            req["rep"] = o.rep;
            req["format"] = format_for(o, "text");
            return with_quiver(o, stab_quiver_hn, req);
        };
    });

    auto* jh = quiver->add_subcommand("jh", "Jordan–Hölder factors of a semistable representation");
    add_quiver_common(jh, o);
    jh->add_option("--rep", o.rep, "Representation, e.g. 'dims=[1,1];f=[[1]]'")->required();
    add_output(jh, o, "text, json");
    jh->callback([&] {
        action = [&] {
            Json req = quiver_request(o);
            req["rep"] = o.rep;
            req["format"] = format_for(o, "text");
            return with_quiver(o, stab_quiver_jh, req);
        };
    });

    auto* check = quiver->add_subcommand("check", "Exhaustive property sweeps over bounded representations");
    add_quiver_common(check, o);
    check->add_option("--suite", o.suite, "gp, finiteness or metric")->capture_default_str();
    check->add_option("--bound", o.bound, "Dimension bound, e.g. '2,2'");
    check->add_option("--eta", o.eta, "Slice half-width for the finiteness suite")->capture_default_str();
    check->add_option("--with", o.with, "Second charge for the metric suite");
    check->add_option("--with-shift", o.with_shift, "Phase shift of the second slicing");
    add_output(check, o, "json");
    check->callback([&] {
        action = [&] {
            Json req = quiver_request(o);
            req["suite"] = o.suite;
            req["eta"] = o.eta;
            put_if(req, "with", o.with);
            put_if(req, "with_shift", o.with_shift);
            return with_quiver(o, stab_quiver_check, req);
        };
    });

    auto* deform = quiver->add_subcommand("deform", "Test a perturbation W of Z against the deformation bound");
    add_quiver_common(deform, o);
    deform->add_option("--eps", o.eps, "ε in (0, 1/2)")->required();
    deform->add_option("--perturb", o.perturb, "Perturbed charge 're,im;re,im;...'");
    deform->add_option("--rotate", o.rotate, "Rotate the slicing by this phase");
    deform->add_option("--bound", o.bound, "Dimension bound, e.g. '2,2'");
    add_output(deform, o, "json");
    deform->callback([&] {
        action = [&] {
            Json req = quiver_request(o);
            req["eps"] = o.eps;
            put_if(req, "perturb", o.perturb);
            put_if(req, "rotate", o.rotate);
            return with_quiver(o, stab_quiver_deform, req);
        };
    });

    auto* tilt = quiver->add_subcommand("tilt", "Verify a torsion pair and its tilted heart");
    add_quiver_common(tilt, o);
    tilt->add_option("--torsion", o.torsion, "Torsion class: all, none, support:k, add:<rep> or phase>p")->required();
    tilt->add_option("--bound", o.bound, "Dimension bound, e.g. '2,2'");
    add_output(tilt, o, "json");
    tilt->callback([&] {
        action = [&] {
            Json req = quiver_request(o);
            req["torsion"] = o.torsion;
            return with_quiver(o, stab_quiver_tilt, req);
        };
    });

    auto* curve = app.add_subcommand("curve", "Stability on a curve of positive genus");
    curve->require_subcommand(1);
    auto* decompose = curve->add_subcommand("decompose", "Write Z = M⁻¹·Z_std with M in GL+(2,R)");
    decompose->add_option("--m", o.m, "Charge matrix 'a,b;c,d'")->required();
    add_output(decompose, o, "json");
    decompose->callback([&] { action = [&] { return plain(o, stab_curve_decompose, Json{{"m", o.m}}); }; });

    auto* polygon = curve->add_subcommand("polygon", "HN polygon of a direct sum of semistable parts");
    polygon->add_option("--parts", o.parts, "Classes 'r,d r,d ...'")->required();
    polygon->add_option("--m", o.m, "Charge matrix 'a,b;c,d'; default Z_std");
    add_output(polygon, o, "csv, json");
    polygon->callback([&] {
        action = [&] {
            Json req{{"parts", o.parts}, {"format", format_for(o, "csv")}};
            put_if(req, "m", o.m);
            return plain(o, stab_curve_polygon, req);
        };
    });

    auto* order = curve->add_subcommand("order-check", "Check φ(O(d)) < φ(point) over a degree range");
    order->add_option("--m", o.m, "Charge matrix 'a,b;c,d'; default Z_std");
    order->add_option("--d", o.degrees, "Degree range 'lo..hi'")->capture_default_str();
    add_output(order, o, "json");
    order->callback([&] {
        action = [&] {
            Json req{{"d", o.degrees}};
            put_if(req, "m", o.m);
            return plain(o, stab_curve_order_check, req);
        };
    });

    auto* group = app.add_subcommand("group", "The universal cover of GL+(2,R) and lattice isometries");
    group->require_subcommand(1);
    auto* compose = group->add_subcommand("compose", "Compose two elements (M, f0)");
    compose->add_option("first", o.g, "Left factor as JSON or a JSON file")->required();
    compose->add_option("second", o.h, "Right factor as JSON or a JSON file")->required();
    add_output(compose, o, "json");
    compose->callback([&] {
        action = [&] {
            return plain(o, stab_group_compose, Json{{"g", group_element(o.g)}, {"h", group_element(o.h)}});
        };
    });

    auto* act = group->add_subcommand("act", "Act on a curve charge or a K3 period exp(B + iω)");
    act->add_option("--g", o.g, "Element as JSON or a JSON file")->required();
    act->add_option("--curve", o.curve, "Curve charge matrix 'a,b;c,d'");
    add_k3_point(act, o);
    act->add_option("--t", o.t, "Path parameter");
    add_output(act, o, "json");
    act->callback([&] {
        action = [&] {
            if (!o.curve.empty())
                return plain(o, [](const char* r, char** out) { return stab_group_act(nullptr, r, out); },
                             Json{{"g", group_element(o.g)}, {"curve", o.curve}});
            Json req = k3_point(o);
            req["g"] = group_element(o.g);
            return with_lattice(o, stab_group_act, req);
        };
    });

    auto* commute = group->add_subcommand("commute", "Check that an isometry commutes with an element on a period");
    commute->add_option("--g", o.g, "Element as JSON or a JSON file")->required();
    commute->add_option("--iso", o.iso, "identity, reflection:r,l,s, tensor:l or a JSON list")->capture_default_str();
    add_k3_point(commute, o);
    commute->add_option("--t", o.t, "Path parameter");
    add_output(commute, o, "json");
    commute->callback([&] {
        action = [&] {
            Json req = k3_point(o);
            req["g"] = group_element(o.g);
            req["iso"] = o.iso;
            return with_lattice(o, stab_group_commute, req);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid;
    }
    try {
        return action ? action() : exit_invalid;
    } catch (const InputError& e) {
        std::cerr << "stabkit: " << e.what() << "\n";
    } catch (const Json::exception& e) {
        std::cerr << "stabkit: malformed JSON: " << e.what() << "\n";
    }
    return exit_invalid;
}
