#include "stabkit/quiver.hpp"

#include "fp.hpp"
#include "stabkit/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace stabkit {

using detail::Code;
using detail::Row;

namespace {

Code apply(const FpMatrix& m, Code c, int p) {
    std::uint8_t v[16], w[16];
    detail::decode(c, m.cols, p, v);
    for (int i = 0; i < m.rows; ++i) {
        int acc = 0;
        for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[j];
        w[i] = static_cast<std::uint8_t>(acc % p);
    }
    return detail::encode(w, m.rows, p);
}

std::string matrix_to_string(const FpMatrix& m) {
    std::string out = "[";
    for (std::size_t k = 0; k < m.a.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(m.a[k]);
    }
    return out + "]";
}

} // namespace

Quiver Quiver::create(int vertices, std::vector<std::pair<int, int>> arrows, int p) {
    require(vertices >= 1, "a quiver needs at least one vertex");
    require(p == 2 || p == 3 || p == 5 || p == 7, "field characteristic must be 2, 3, 5 or 7");
    for (const auto& [s, t] : arrows) {
        require(s >= 0 && s < vertices && t >= 0 && t < vertices, "arrow endpoint out of range");
        require(s != t, "loops are not allowed");
    }
    // Kahn's algorithm
    std::vector<int> indeg(vertices, 0);
    for (const auto& a : arrows) ++indeg[a.second];
    std::vector<int> ready;
    for (int v = 0; v < vertices; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++seen;
        for (const auto& a : arrows)
            if (a.first == v && --indeg[a.second] == 0) ready.push_back(a.second);
    }
    require(seen == vertices, "quiver has an oriented cycle");
    Quiver q;
    q.n_ = vertices;
    q.p_ = p;
    q.arrows_ = std::move(arrows);
    return q;
}

QuiverRep QuiverRep::create(const Quiver& q, IVec dims, std::vector<FpMatrix> maps) {
    require(static_cast<int>(dims.size()) == q.vertices(), "dimension vector has the wrong length");
    for (auto d : dims) require(d >= 0 && d <= 16, "vertex dimensions must lie in [0, 16]");
    require(maps.size() == q.arrows().size(), "need one matrix per arrow");
    for (std::size_t k = 0; k < maps.size(); ++k) {
        auto [s, t] = q.arrows()[k];
        const auto& m = maps[k];
        require(m.rows == dims[t] && m.cols == dims[s] && m.a.size() == static_cast<std::size_t>(m.rows * m.cols),
                "matrix of arrow " + std::to_string(k) + " must be " + std::to_string(dims[t]) + "x" +
                    std::to_string(dims[s]));
        for (auto x : m.a) require(x < q.p(), "matrix entries must lie in [0, p)");
    }
    QuiverRep r;
    r.dims_ = std::move(dims);
    r.maps_ = std::move(maps);
    return r;
}

QuiverRep QuiverRep::zero(const Quiver& q) {
    std::vector<FpMatrix> maps(q.arrows().size());
    return create(q, IVec(q.vertices(), 0), maps);
}

QuiverRep QuiverRep::simple(const Quiver& q, int vertex) {
    require(vertex >= 0 && vertex < q.vertices(), "vertex out of range");
    IVec dims(q.vertices(), 0);
    dims[vertex] = 1;
    std::vector<FpMatrix> maps;
    for (const auto& [s, t] : q.arrows()) maps.push_back(FpMatrix::zero(dims[t], dims[s]));
    return create(q, dims, maps);
}

long long QuiverRep::total() const {
    long long t = 0;
    for (auto d : dims_) t += d;
    return t;
}

std::string QuiverRep::to_string() const {
    std::string out = "dims=" + stabkit::to_string(dims_) + ";f=[";
    for (std::size_t k = 0; k < maps_.size(); ++k) {
        if (k) out += ",";
        out += matrix_to_string(maps_[k]);
    }
    return out + "]";
}

QuiverRep direct_sum(const Quiver& q, const QuiverRep& e, const QuiverRep& f) {
    IVec dims(q.vertices());
    for (int v = 0; v < q.vertices(); ++v) dims[v] = e.dims()[v] + f.dims()[v];
    std::vector<FpMatrix> maps;
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        auto [s, t] = q.arrows()[k];
        auto m = FpMatrix::zero(static_cast<int>(dims[t]), static_cast<int>(dims[s]));
        const auto& a = e.maps()[k];
        const auto& b = f.maps()[k];
        for (int i = 0; i < a.rows; ++i)
            for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < b.cols; ++j) m.at(a.rows + i, a.cols + j) = b.at(i, j);
        maps.push_back(std::move(m));
    }
    return QuiverRep::create(q, dims, maps);
}

QuiverRep parse_rep(const Quiver& q, const std::string& text) {
    IVec dims;
    nlohmann::json f = nlohmann::json::array();
    bool have_dims = false;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto eq = part.find('=');
        require(eq != std::string::npos, "representation fields look like key=value");
        std::string key = part.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        nlohmann::json value;
        try {
            value = nlohmann::json::parse(part.substr(eq + 1));
        } catch (const nlohmann::json::exception&) {
            fail(ErrorKind::input, "cannot parse value of '" + key + "'");
        }
        if (key == "dims") {
            require(value.is_array(), "dims must be a list");
            for (const auto& d : value) {
                require(d.is_number_integer(), "dims must be integers");
                dims.push_back(d.get<long long>());
            }
            have_dims = true;
        } else if (key == "f") {
            require(value.is_array(), "f must be a list of matrices");
            f = value;
        } else {
            fail(ErrorKind::input, "unknown representation field '" + key + "'");
        }
    }
    require(have_dims, "representation needs dims=[...]");
    require(static_cast<int>(dims.size()) == q.vertices(), "dimension vector has the wrong length");
    for (auto d : dims) require(d >= 0 && d <= 16, "vertex dimensions must lie in [0, 16]");
    require(f.size() == q.arrows().size(), "need one matrix per arrow in f");
    std::vector<FpMatrix> maps;
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        auto [s, t] = q.arrows()[k];
        auto m = FpMatrix::zero(static_cast<int>(dims[t]), static_cast<int>(dims[s]));
        std::vector<long long> flat;
        for (const auto& entry : f[k]) {
            if (entry.is_array()) {
                for (const auto& x : entry) {
                    require(x.is_number_integer(), "matrix entries must be integers");
                    flat.push_back(x.get<long long>());
                }
            } else {
                require(entry.is_number_integer(), "matrix entries must be integers");
                flat.push_back(entry.get<long long>());
            }
        }
        require(flat.size() == m.a.size(), "matrix of arrow " + std::to_string(k) + " must have " +
                                               std::to_string(m.a.size()) + " entries");
        for (std::size_t i = 0; i < flat.size(); ++i) {
            long long x = flat[i] % q.p();
            if (x < 0) x += q.p();
            m.a[i] = static_cast<std::uint8_t>(x);
        }
        maps.push_back(std::move(m));
    }
    return QuiverRep::create(q, dims, maps);
}

RepBound RepBound::standard(const Quiver& q) { return {IVec(q.vertices(), 3), 8}; }

RepBound RepBound::box(const IVec& max_dims) {
    long long total = 0;
    for (auto d : max_dims) total += d;
    return {max_dims, total};
}

std::vector<IVec> dims_in_bound(const Quiver& q, const RepBound& bound) {
    require(static_cast<int>(bound.max_dims.size()) == q.vertices(), "bound has the wrong length");
    for (auto d : bound.max_dims) require(d >= 0, "bounds must be nonnegative");
    std::vector<IVec> out;
    IVec d(q.vertices(), 0);
    while (true) {
        long long total = 0;
        for (auto x : d) total += x;
        if (total > 0 && total <= bound.max_total) out.push_back(d);
        int i = q.vertices() - 1;
        while (i >= 0 && d[i] == bound.max_dims[i]) d[i--] = 0;
        if (i < 0) break;
        ++d[i];
    }
    return out;
}

void for_each_rep(const Quiver& q, const IVec& dims, const std::function<void(const QuiverRep&)>& f) {
    std::size_t entries = 0;
    for (const auto& [s, t] : q.arrows()) entries += static_cast<std::size_t>(dims[s] * dims[t]);
    double count = 1;
    for (std::size_t i = 0; i < entries; ++i) count *= q.p();
    if (count > double(1 << 22))
        fail(ErrorKind::resource, "more than 2^22 representations of dimension " + stabkit::to_string(dims));
    std::vector<std::uint8_t> digits(entries, 0);
    std::vector<FpMatrix> maps;
    for (const auto& [s, t] : q.arrows()) maps.push_back(FpMatrix::zero(static_cast<int>(dims[t]), static_cast<int>(dims[s])));
    while (true) {
        std::size_t pos = 0;
        for (auto& m : maps)
            for (auto& x : m.a) x = digits[pos++];
        f(QuiverRep::create(q, dims, maps));
        std::size_t i = 0;
        while (i < entries && digits[i] == q.p() - 1) digits[i++] = 0;
        if (i == entries) break;
        ++digits[i];
    }
}

std::vector<QuiverRep> reps_in_bound(const Quiver& q, const RepBound& bound) {
    std::vector<QuiverRep> out;
    for (const auto& d : dims_in_bound(q, bound)) for_each_rep(q, d, [&](const QuiverRep& r) { out.push_back(r); });
    return out;
}

long long euler_pairing(const IVec& d, const IVec& e, const Quiver& q) {
    require(static_cast<int>(d.size()) == q.vertices() && static_cast<int>(e.size()) == q.vertices(),
            "dimension vectors have the wrong length");
    long long out = 0;
    for (int v = 0; v < q.vertices(); ++v) out += d[v] * e[v];
    for (const auto& [s, t] : q.arrows()) out -= d[s] * e[t];
    return out;
}

namespace {

struct HomSystem {
    std::vector<Row> rows;
    int unknowns = 0;
    std::vector<int> offset;
};

// Linear system F_a φ_s - φ_t E_a = 0 in the entries of (φ_v).
HomSystem hom_system(const QuiverRep& e, const QuiverRep& f, const Quiver& q) {
    require(e.dims().size() == f.dims().size() && static_cast<int>(e.dims().size()) == q.vertices(),
            "representations of different quivers");
    int p = q.p();
    HomSystem sys;
    for (int v = 0; v < q.vertices(); ++v) {
        sys.offset.push_back(sys.unknowns);
        sys.unknowns += static_cast<int>(f.dims()[v] * e.dims()[v]);
    }
    auto var = [&](int v, int i, int j) { return sys.offset[v] + i * static_cast<int>(e.dims()[v]) + j; };
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        auto [s, t] = q.arrows()[k];
        const auto& fa = f.maps()[k];
        const auto& ea = e.maps()[k];
        for (int i = 0; i < f.dims()[t]; ++i)
            for (int j = 0; j < e.dims()[s]; ++j) {
                Row r(sys.unknowns, 0);
                for (int l = 0; l < f.dims()[s]; ++l)
                    r[var(s, l, j)] = static_cast<std::uint8_t>((r[var(s, l, j)] + fa.at(i, l)) % p);
                for (int l = 0; l < e.dims()[t]; ++l)
                    r[var(t, i, l)] = static_cast<std::uint8_t>((r[var(t, i, l)] + (p - ea.at(l, j)) % p) % p);
                sys.rows.push_back(std::move(r));
            }
    }
    return sys;
}

Morphism combine(const std::vector<Morphism>& basis, const std::vector<std::uint8_t>& coeff, int p) {
    Morphism out = basis.front();
    for (auto& m : out) std::fill(m.a.begin(), m.a.end(), 0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        if (!coeff[b]) continue;
        for (std::size_t v = 0; v < out.size(); ++v)
            for (std::size_t x = 0; x < out[v].a.size(); ++x)
                out[v].a[x] = static_cast<std::uint8_t>((out[v].a[x] + coeff[b] * basis[b][v].a[x]) % p);
    }
    return out;
}

void require_small_hom(const HomSpace& h, const Quiver& q) {
    double n = 1;
    for (int i = 0; i < h.dim; ++i) n *= q.p();
    if (n > 65536) fail(ErrorKind::resource, "Hom space too large to enumerate");
}

} // namespace

HomSpace hom_space(const QuiverRep& e, const QuiverRep& f, const Quiver& q) {
    auto sys = hom_system(e, f, q);
    HomSpace out;
    if (sys.unknowns == 0) return out;
    auto null = detail::nullspace_mod(sys.rows, sys.unknowns, q.p());
    out.dim = static_cast<int>(null.size());
    for (const auto& x : null) {
        Morphism m;
        for (int v = 0; v < q.vertices(); ++v) {
            auto mat = FpMatrix::zero(static_cast<int>(f.dims()[v]), static_cast<int>(e.dims()[v]));
            for (std::size_t k = 0; k < mat.a.size(); ++k) mat.a[k] = x[sys.offset[v] + k];
            m.push_back(std::move(mat));
        }
        out.basis.push_back(std::move(m));
    }
    return out;
}

int ext1_dim(const QuiverRep& e, const QuiverRep& f, const Quiver& q) {
    auto sys = hom_system(e, f, q);
    int rank = sys.unknowns == 0 ? 0 : detail::rank_mod(sys.rows, q.p());
    return static_cast<int>(sys.rows.size()) - rank;
}

bool is_invertible(const Morphism& m, const Quiver& q) {
    for (const auto& mat : m) {
        if (mat.rows != mat.cols) return false;
        if (mat.rows == 0) continue;
        std::vector<Row> rows;
        for (int i = 0; i < mat.rows; ++i) rows.emplace_back(mat.a.begin() + i * mat.cols, mat.a.begin() + (i + 1) * mat.cols);
        if (detail::rank_mod(rows, q.p()) != mat.rows) return false;
    }
    return true;
}

bool nonzero_maps_invertible(const HomSpace& h, const Quiver& q) {
    if (h.dim == 0) return true;
    require_small_hom(h, q);
    Code total = detail::power(q.p(), h.dim);
    std::vector<std::uint8_t> coeff(h.dim);
    for (Code n = 1; n < total; ++n) {
        detail::decode(n, h.dim, q.p(), coeff.data());
        if (!is_invertible(combine(h.basis, coeff, q.p()), q)) return false;
    }
    return true;
}

bool is_isomorphic(const QuiverRep& e, const QuiverRep& f, const Quiver& q) {
    if (e.dims() != f.dims()) return false;
    if (e.is_zero()) return true;
    auto h = hom_space(e, f, q);
    if (h.dim == 0) return false;
    require_small_hom(h, q);
    Code total = detail::power(q.p(), h.dim);
    std::vector<std::uint8_t> coeff(h.dim);
    for (Code n = 1; n < total; ++n) {
        detail::decode(n, h.dim, q.p(), coeff.data());
        if (is_invertible(combine(h.basis, coeff, q.p()), q)) return true;
    }
    return false;
}

namespace {

// Isomorphism invariants: dims, ranks of every combination of parallel
// arrows, and Hom dimensions against the simples and E itself.
std::vector<long long> iso_signature(const QuiverRep& e, const Quiver& q) {
    std::vector<long long> sig(e.dims().begin(), e.dims().end());
    int p = q.p();
    std::map<std::pair<int, int>, std::vector<int>> parallel;
    for (std::size_t k = 0; k < q.arrows().size(); ++k) parallel[q.arrows()[k]].push_back(static_cast<int>(k));
    for (const auto& [ends, arrows] : parallel) {
        int rows = static_cast<int>(e.dims()[ends.second]), cols = static_cast<int>(e.dims()[ends.first]);
        Code total = detail::power(p, static_cast<int>(arrows.size()));
        std::vector<std::uint8_t> coeff(arrows.size());
        for (Code n = 1; n < total; ++n) {
            detail::decode(n, static_cast<int>(arrows.size()), p, coeff.data());
            std::vector<detail::Row> m(rows, detail::Row(cols, 0));
            for (std::size_t a = 0; a < arrows.size(); ++a)
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < cols; ++j)
                        m[i][j] = static_cast<std::uint8_t>((m[i][j] + coeff[a] * e.maps()[arrows[a]].at(i, j)) % p);
            sig.push_back(detail::rank_mod(std::move(m), p));
        }
    }
    for (int v = 0; v < q.vertices(); ++v) {
        auto s = QuiverRep::simple(q, v);
        sig.push_back(hom_space(s, e, q).dim);
        sig.push_back(hom_space(e, s, q).dim);
    }
    sig.push_back(hom_space(e, e, q).dim);
    return sig;
}

} // namespace

std::vector<QuiverRep> iso_classes_in_bound(const Quiver& q, const RepBound& bound) {
    std::vector<QuiverRep> out;
    std::map<std::vector<long long>, std::vector<std::size_t>> buckets;
    for (const auto& d : dims_in_bound(q, bound))
        for_each_rep(q, d, [&](const QuiverRep& r) {
            auto& bucket = buckets[iso_signature(r, q)];
            for (auto i : bucket)
                if (is_isomorphic(out[i], r, q)) return;
            bucket.push_back(out.size());
            out.push_back(r);
        });
    return out;
}

SubobjectLattice SubobjectLattice::build(const Quiver& q, const QuiverRep& e, long long max_total) {
    if (e.total() > max_total)
        fail(ErrorKind::resource, "total dimension " + std::to_string(e.total()) + " exceeds the subobject bound " +
                                      std::to_string(max_total));
    int n = q.vertices(), p = q.p();
    std::vector<const detail::SubspaceCatalog*> cat(n);
    for (int v = 0; v < n; ++v) cat[v] = &detail::subspace_catalog(p, static_cast<int>(e.dims()[v]));
    // images of every vector under every arrow
    std::vector<std::vector<Code>> img(q.arrows().size());
    std::vector<std::vector<int>> closing(n); // arrows checked once vertex v is assigned
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        auto [s, t] = q.arrows()[k];
        Code size = detail::power(p, static_cast<int>(e.dims()[s]));
        img[k].resize(size);
        for (Code c = 0; c < size; ++c) img[k][c] = apply(e.maps()[k], c, p);
        closing[std::max(s, t)].push_back(static_cast<int>(k));
    }

    SubobjectLattice lat;
    lat.q_ = q;
    lat.e_ = e;
    std::vector<int> choice(n, 0);
    auto closed = [&](int k) {
        auto [s, t] = q.arrows()[k];
        const auto& src = cat[s]->spaces[choice[s]];
        const auto& dst = cat[t]->spaces[choice[t]];
        for (Code b : src.basis)
            if (!dst.contains(img[k][b])) return false;
        return true;
    };
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            Subrep s;
            s.space = choice;
            for (int u = 0; u < n; ++u) {
                s.dims.push_back(cat[u]->spaces[choice[u]].dim);
                s.total += s.dims.back();
            }
            lat.subs_.push_back(std::move(s));
            return;
        }
        for (std::size_t i = 0; i < cat[v]->spaces.size(); ++i) {
            choice[v] = static_cast<int>(i);
            bool ok = true;
            for (int k : closing[v])
                if (!closed(k)) {
                    ok = false;
                    break;
                }
            if (ok) rec(v + 1);
        }
    };
    rec(0);
    std::sort(lat.subs_.begin(), lat.subs_.end(), [](const Subrep& a, const Subrep& b) {
        if (a.total != b.total) return a.total < b.total;
        if (a.dims != b.dims) return a.dims < b.dims;
        return a.space < b.space;
    });
    for (const auto& s : lat.subs_) {
        std::vector<std::uint64_t> bits;
        for (int v = 0; v < n; ++v) {
            const auto& b = cat[v]->spaces[s.space[v]].bits;
            bits.insert(bits.end(), b.begin(), b.end());
        }
        lat.bits_.push_back(std::move(bits));
    }
    return lat;
}

bool SubobjectLattice::contains(int inner, int outer) const {
    if (subs_[inner].total > subs_[outer].total) return false;
    const auto& a = bits_[inner];
    const auto& b = bits_[outer];
    for (std::size_t w = 0; w < a.size(); ++w)
        if (a[w] & ~b[w]) return false;
    return true;
}

QuiverRep SubobjectLattice::subquotient(int lower, int upper) const {
    require(contains(lower, upper), "subquotient needs lower ⊆ upper");
    int n = q_.vertices(), p = q_.p();
    std::vector<std::vector<Code>> complement(n);
    std::vector<std::vector<int>> coords(n); // code in T_v -> code of its complement coordinates
    IVec dims(n);
    for (int v = 0; v < n; ++v) {
        int d = static_cast<int>(e_.dims()[v]);
        const auto& cat = detail::subspace_catalog(p, d);
        const auto& A = cat.spaces[subs_[lower].space[v]];
        const auto& T = cat.spaces[subs_[upper].space[v]];
        std::vector<std::uint8_t> tmp(d), acc(d), x(d);
        // grow span(A) by basis vectors of T until it equals T
        std::vector<Code> members;
        for (Code c = 0; c < detail::power(p, d); ++c)
            if (A.contains(c)) members.push_back(c);
        auto in_members = [&](Code c) { return std::find(members.begin(), members.end(), c) != members.end(); };
        for (Code b : T.basis) {
            if (in_members(b)) continue;
            complement[v].push_back(b);
            std::vector<Code> grown;
            detail::decode(b, d, p, x.data());
            for (Code m : members)
                for (int c = 0; c < p; ++c) {
                    detail::decode(m, d, p, acc.data());
                    for (int j = 0; j < d; ++j) acc[j] = static_cast<std::uint8_t>((acc[j] + c * x[j]) % p);
                    grown.push_back(detail::encode(acc.data(), d, p));
                }
            members = std::move(grown);
        }
        dims[v] = static_cast<long long>(complement[v].size());
        // coordinates: enumerate a + Σ β_j c_j
        coords[v].assign(detail::power(p, d), -1);
        std::vector<Code> a_members;
        for (Code c = 0; c < detail::power(p, d); ++c)
            if (A.contains(c)) a_members.push_back(c);
        int k = static_cast<int>(complement[v].size());
        std::vector<std::uint8_t> beta(k);
        for (Code bc = 0; bc < detail::power(p, k); ++bc) {
            detail::decode(bc, k, p, beta.data());
            std::fill(tmp.begin(), tmp.end(), 0);
            for (int j = 0; j < k; ++j) {
                detail::decode(complement[v][j], d, p, x.data());
                for (int i = 0; i < d; ++i) tmp[i] = static_cast<std::uint8_t>((tmp[i] + beta[j] * x[i]) % p);
            }
            for (Code a : a_members) {
                detail::decode(a, d, p, acc.data());
                for (int i = 0; i < d; ++i) acc[i] = static_cast<std::uint8_t>((acc[i] + tmp[i]) % p);
                coords[v][detail::encode(acc.data(), d, p)] = static_cast<int>(bc);
            }
        }
    }
    std::vector<FpMatrix> maps;
    for (std::size_t k = 0; k < q_.arrows().size(); ++k) {
        auto [s, t] = q_.arrows()[k];
        auto m = FpMatrix::zero(static_cast<int>(dims[t]), static_cast<int>(dims[s]));
        std::vector<std::uint8_t> col(static_cast<std::size_t>(dims[t]));
        for (int j = 0; j < dims[s]; ++j) {
            Code y = apply(e_.maps()[k], complement[s][j], p);
            int c = coords[t][y];
            if (c < 0) fail(ErrorKind::internal, "subquotient image left the upper subobject");
            detail::decode(static_cast<Code>(c), static_cast<int>(dims[t]), p, col.data());
            for (int i = 0; i < dims[t]; ++i) m.at(i, j) = col[i];
        }
        maps.push_back(std::move(m));
    }
    return QuiverRep::create(q_, dims, maps);
}

std::vector<Subrep> subobjects(const QuiverRep& e, const Quiver& q) {
    return SubobjectLattice::build(q, e).subobjects();
}

} // namespace stabkit
