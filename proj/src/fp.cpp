#include "fp.hpp"

#include "stabkit/error.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace stabkit::detail {

namespace {

constexpr std::size_t kMaxCatalogSpaces = 100000;
constexpr Code kMaxCodes = 1u << 13;

// Number of subspaces of F_p^d, saturating at kMaxCatalogSpaces + 1.
std::size_t count_subspaces(int p, int d) {
    // Gaussian binomials via the recursion [d, k] = [d-1, k-1] + p^k [d-1, k]
    std::vector<double> row{1};
    for (int n = 1; n <= d; ++n) {
        std::vector<double> next(n + 1, 0);
        double pk = 1;
        for (int k = 0; k <= n; ++k) {
            double a = k > 0 ? row[k - 1] : 0;
            double b = k < n ? row[k] : 0;
            next[k] = a + pk * b;
            pk *= p;
        }
        row = std::move(next);
    }
    double total = 0;
    for (double x : row) total += x;
    return total > kMaxCatalogSpaces ? kMaxCatalogSpaces + 1 : static_cast<std::size_t>(total);
}

void add_scaled(std::uint8_t* acc, const std::uint8_t* v, std::uint8_t c, int d, int p) {
    for (int j = 0; j < d; ++j) acc[j] = static_cast<std::uint8_t>((acc[j] + c * v[j]) % p);
}

// Fills the membership bitset of span(rows) by enumerating all combinations.
void fill_span(Subspace& s, const std::vector<Row>& rows, int d, int p) {
    Code total = power(p, static_cast<int>(rows.size()));
    std::vector<std::uint8_t> coeff(rows.size(), 0), v(d);
    for (Code n = 0; n < total; ++n) {
        decode(n, static_cast<int>(rows.size()), p, coeff.data());
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t i = 0; i < rows.size(); ++i) add_scaled(v.data(), rows[i].data(), coeff[i], d, p);
        Code c = encode(v.data(), d, p);
        s.bits[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
}

// Enumerates reduced row echelon forms with k rows, pivots strictly increasing.
void enumerate_rref(int p, int d, int k, std::vector<int>& pivots, std::vector<Subspace>& out) {
    if (static_cast<int>(pivots.size()) < k) {
        int start = pivots.empty() ? 0 : pivots.back() + 1;
        for (int c = start; c <= d - (k - static_cast<int>(pivots.size())); ++c) {
            pivots.push_back(c);
            enumerate_rref(p, d, k, pivots, out);
            pivots.pop_back();
        }
        return;
    }
    // free positions: (row i, column j) with j > pivot_i and j not a pivot
    std::vector<std::pair<int, int>> free_pos;
    std::vector<bool> is_pivot(d, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int i = 0; i < k; ++i)
        for (int j = pivots[i] + 1; j < d; ++j)
            if (!is_pivot[j]) free_pos.emplace_back(i, j);
    Code combos = power(p, static_cast<int>(free_pos.size()));
    std::vector<std::uint8_t> vals(free_pos.size());
    Code words = (power(p, d) + 63) / 64;
    for (Code n = 0; n < combos; ++n) {
        decode(n, static_cast<int>(free_pos.size()), p, vals.data());
        std::vector<Row> rows(k, Row(d, 0));
        for (int i = 0; i < k; ++i) rows[i][pivots[i]] = 1;
        for (std::size_t f = 0; f < free_pos.size(); ++f) rows[free_pos[f].first][free_pos[f].second] = vals[f];
        Subspace s;
        s.dim = k;
        s.bits.assign(words, 0);
        for (const auto& r : rows) s.basis.push_back(encode(r.data(), d, p));
        fill_span(s, rows, d, p);
        out.push_back(std::move(s));
    }
}

std::unique_ptr<SubspaceCatalog> build_catalog(int p, int d) {
    auto cat = std::make_unique<SubspaceCatalog>();
    cat->p = p;
    cat->d = d;
    for (int k = 0; k <= d; ++k) {
        std::vector<int> pivots;
        enumerate_rref(p, d, k, pivots, cat->spaces);
    }
    return cat;
}

} // namespace

std::uint8_t inv_mod(std::uint8_t a, int p) {
    for (int x = 1; x < p; ++x)
        if ((a * x) % p == 1) return static_cast<std::uint8_t>(x);
    fail(ErrorKind::internal, "zero has no inverse mod p");
}

Code power(int p, int d) {
    Code out = 1;
    for (int i = 0; i < d; ++i) out *= static_cast<Code>(p);
    return out;
}

Code encode(const std::uint8_t* v, int d, int p) {
    Code c = 0;
    for (int j = d - 1; j >= 0; --j) c = c * static_cast<Code>(p) + v[j];
    return c;
}

void decode(Code c, int d, int p, std::uint8_t* out) {
    for (int j = 0; j < d; ++j) {
        out[j] = static_cast<std::uint8_t>(c % static_cast<Code>(p));
        c /= static_cast<Code>(p);
    }
}

const SubspaceCatalog& subspace_catalog(int p, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<SubspaceCatalog>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, d);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    if (power(p, d) > kMaxCodes || count_subspaces(p, d) > kMaxCatalogSpaces)
        fail(ErrorKind::resource, "subspace enumeration of F_" + std::to_string(p) + "^" + std::to_string(d) +
                                      " exceeds the supported size");
    auto [pos, inserted] = cache.emplace(key, build_catalog(p, d));
    return *pos->second;
}

namespace {

// Row reduces in place; returns pivot columns.
std::vector<int> reduce(std::vector<Row>& rows, int cols, int p) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        std::uint8_t inv = inv_mod(rows[r][c], p);
        for (auto& x : rows[r]) x = static_cast<std::uint8_t>((x * inv) % p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            std::uint8_t f = static_cast<std::uint8_t>(p - rows[i][c]);
            add_scaled(rows[i].data(), rows[r].data(), f, cols, p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

int rank_mod(std::vector<Row> rows, int p) {
    if (rows.empty()) return 0;
    int cols = static_cast<int>(rows.front().size());
    return static_cast<int>(reduce(rows, cols, p).size());
}

std::vector<Row> nullspace_mod(std::vector<Row> rows, int cols, int p) {
    auto pivots = reduce(rows, cols, p);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Row> out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Row x(cols, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[pivots[i]] = static_cast<std::uint8_t>((p - rows[i][f]) % p);
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace stabkit::detail
