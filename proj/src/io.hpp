#pragma once

// Config parsing and report writers shared by the C API.

#include "stabkit/group.hpp"
#include "stabkit/heart.hpp"
#include "stabkit/k3.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace stabkit::io {

using Json = nlohmann::ordered_json;

/// A Néron–Severi lattice with names for its basis vectors ("h" in rank one,
/// "e1", "e2", ... otherwise, unless the config names them).
struct NamedLattice {
    NSLattice lat;
    std::vector<std::string> names;
};

/// {"gram": [[2]], "ample": [1], "curves": [[...]], "basis": ["h"]}
NamedLattice lattice_from_json(const Json& j);
/// NS = Zh with h² = 2.
NamedLattice default_lattice();

/// Rationals are accepted as JSON integers or "p/q" strings.
Rational rational_from_json(const Json& j);
std::vector<Rational> rationals_from_json(const Json& j);

/// An affine class c0 + t·c1 written over the basis names, e.g. "t*h",
/// "1/2*h + t*h", "0".
struct AffineClass {
    QVec c0, c1;
};
AffineClass parse_affine(std::string_view text, const NamedLattice& nl);
QVec evaluate(const AffineClass& a, const Rational& t);

/// "a..b"
std::pair<Rational, Rational> parse_range(std::string_view text);
/// "r,l1,...,lρ,s"
MukaiVector parse_mukai(std::string_view text, const NSLattice& lat);
QMukaiVector parse_qmukai(std::string_view text, const NSLattice& lat);

/// {"vertices": 2, "arrows": [[1, 2]], "p": 2, "charge": [["-1","1"], ["1","1"]], "shift": "0"};
/// vertices are numbered from 1.
struct QuiverConfig {
    Quiver quiver;
    std::optional<QuiverStability> stability;
};
QuiverConfig quiver_from_json(const Json& j);
/// A₂ over F₂ with z = (-1 + i, 1 + i).
QuiverConfig default_quiver();
/// "re,im;re,im;..." with one value per vertex.
std::vector<QComplex> parse_charge_values(std::string_view text);
/// "2,2" for per-vertex maxima; the total is the sum unless "total" is given.
RepBound parse_rep_bound(std::string_view text, const Quiver& q);

/// {"M": [[a, b], [c, d]], "f0": "p/q"}
GLTildeElement group_from_json(const Json& j);
Json to_json(const GLTildeElement& g);
/// "identity", "reflection:r,l,s", "tensor:l1,...,lρ", or a JSON list of basis images.
MukaiMap parse_isometry(std::string_view text, const NSLattice& lat);

Json to_json(const MukaiVector& v);
Json to_json(const QMukaiVector& v);
Json to_json(const QComplex& z);
Json to_json(const Surd& s);
Json to_json(const QuiverRep& e);
Json to_json(const Distance& d);
Json to_json(const NormValue& v);

std::string walls_csv(const WallScan& scan, const NSLattice& lat, const std::string& header);
Json walls_json(const WallScan& scan);
/// Chamber plot of the (b, t) half plane with the scanned path B = b·h, ω = t·h
/// and its walls marked.
std::string chamber_svg(const ChamberPlot& plot, const WallScan& scan, const AffineClass& B, const AffineClass& omega,
                        const std::pair<Rational, Rational>& t_range, const std::string& title);

} // namespace stabkit::io
