#include "equimap/fp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace equimap {

FpVector::FpVector(std::uint32_t p_, std::vector<std::uint32_t> entries_)
    : p(p_), entries(std::move(entries_)) {
    require_prime(p);
    for (auto e : entries)
        if (e >= p) throw InputError("residue out of range for F_" + std::to_string(p));
}

FpVector FpVector::reduce(std::uint32_t p, const std::vector<std::int64_t>& raw) {
    require_prime(p);
    FpVector v;
    v.p = p;
    v.entries.reserve(raw.size());
    for (auto x : raw) {
        std::int64_t r = x % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        v.entries.push_back(static_cast<std::uint32_t>(r));
    }
    return v;
}

bool FpVector::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](std::uint32_t e) { return e == 0; });
}

bool FpVector::operator<(const FpVector& other) const {
    return entries < other.entries;
}

std::string FpVector::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ',';
        os << entries[i];
    }
    os << ')';
    return os.str();
}

namespace {

void check_compatible(const FpVector& a, const FpVector& b) {
    if (a.p != b.p) throw InputError("mixed moduli");
    if (a.size() != b.size()) throw InputError("mixed vector lengths");
}

} // namespace

std::uint32_t fp_dot(const FpVector& a, const FpVector& b) {
    check_compatible(a, b);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc = (acc + static_cast<std::uint64_t>(a.entries[i]) * b.entries[i]) % a.p;
    return static_cast<std::uint32_t>(acc);
}

FpVector fp_scale(const FpVector& v, std::uint32_t c) {
    FpVector out = v;
    for (auto& e : out.entries)
        e = static_cast<std::uint32_t>((static_cast<std::uint64_t>(e) * c) % v.p);
    return out;
}

bool FpSubspace::contains(const FpVector& v) const {
    if (v.p != p || v.size() != ambient) throw InputError("vector/subspace mismatch");
    FpVector r = v;
    for (const auto& row : basis) {
        // row has a unit pivot; eliminate r's entry at that column
        std::size_t piv = 0;
        while (piv < row.size() && row.entries[piv] == 0) ++piv;
        std::uint32_t c = r.entries[piv];
        if (c == 0) continue;
        for (std::size_t j = 0; j < r.size(); ++j) {
            std::uint64_t sub = (static_cast<std::uint64_t>(c) * row.entries[j]) % p;
            r.entries[j] = static_cast<std::uint32_t>((r.entries[j] + p - sub) % p);
        }
    }
    return r.is_zero();
}

bool FpSubspace::contains(const FpSubspace& other) const {
    return std::all_of(other.basis.begin(), other.basis.end(),
                       [&](const FpVector& v) { return contains(v); });
}

bool FpSubspace::operator<(const FpSubspace& other) const {
    if (rank() != other.rank()) return rank() < other.rank();
    for (std::size_t i = 0; i < rank(); ++i)
        if (!(basis[i] == other.basis[i])) return basis[i] < other.basis[i];
    return false;
}

std::string FpSubspace::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << "span{";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i) os << ',';
        os << basis[i].to_string();
    }
    os << '}';
    return os.str();
}

std::pair<FpSubspace, std::size_t> rref(const std::vector<FpVector>& rows) {
    if (rows.empty()) throw InputError("rref: no rows");
    const std::uint32_t p = rows[0].p;
    const std::size_t k = rows[0].size();
    for (const auto& r : rows) check_compatible(rows[0], r);
    if (k == 0) throw InputError("rref: zero-length rows");

    std::vector<std::vector<std::uint32_t>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.push_back(r.entries);

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < k && pivot_row < m.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[pivot_row], m[sel]);
        const std::uint32_t inv = mod_inverse(m[pivot_row][col], p);
        for (auto& e : m[pivot_row])
            e = static_cast<std::uint32_t>((static_cast<std::uint64_t>(e) * inv) % p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == pivot_row || m[i][col] == 0) continue;
            const std::uint32_t c = m[i][col];
            for (std::size_t j = 0; j < k; ++j) {
                std::uint64_t sub = (static_cast<std::uint64_t>(c) * m[pivot_row][j]) % p;
                m[i][j] = static_cast<std::uint32_t>((m[i][j] + p - sub) % p);
            }
        }
        ++pivot_row;
    }

    FpSubspace s;
    s.p = p;
    s.ambient = static_cast<std::uint32_t>(k);
    for (std::size_t i = 0; i < pivot_row; ++i)
        s.basis.emplace_back(p, m[i]);
    return {s, pivot_row};
}

FpSubspace fp_zero_subspace(std::uint32_t p, std::uint32_t ambient) {
    require_prime(p);
    FpSubspace s;
    s.p = p;
    s.ambient = ambient;
    return s;
}

FpSubspace fp_full_space(std::uint32_t p, std::uint32_t ambient) {
    std::vector<FpVector> rows;
    for (std::uint32_t i = 0; i < ambient; ++i) {
        std::vector<std::uint32_t> e(ambient, 0);
        e[i] = 1;
        rows.emplace_back(p, e);
    }
    return rref(rows).first;
}

FpSubspace annihilator(const FpSubspace& s) {
    const std::uint32_t p = s.p, k = s.ambient;
    require_prime(p);
    if (s.is_zero()) return fp_full_space(p, k);

    // Kernel of the RREF basis matrix: one generator per free column.
    std::vector<std::size_t> pivot_col(s.rank());
    std::vector<bool> is_pivot(k, false);
    for (std::size_t i = 0; i < s.rank(); ++i) {
        std::size_t c = 0;
        while (s.basis[i].entries[c] == 0) ++c;
        pivot_col[i] = c;
        is_pivot[c] = true;
    }
    std::vector<FpVector> gens;
    for (std::size_t f = 0; f < k; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint32_t> w(k, 0);
        w[f] = 1;
        for (std::size_t i = 0; i < s.rank(); ++i)
            w[pivot_col[i]] = (p - s.basis[i].entries[f]) % p;
        gens.emplace_back(p, w);
    }
    if (gens.empty()) return fp_zero_subspace(p, k);
    return rref(gens).first;
}

std::uint32_t mod_inverse(std::uint32_t j, std::uint32_t p) {
    require_prime(p);
    j %= p;
    if (j == 0) throw InputError("0 has no inverse mod " + std::to_string(p));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = j;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

std::vector<FpSubspace> span_of_subsets(const std::vector<FpVector>& vectors) {
    if (vectors.empty()) throw InputError("span_of_subsets: empty generator list");
    for (const auto& v : vectors) check_compatible(vectors[0], v);

    std::set<FpSubspace> seen;
    std::vector<FpSubspace> frontier;
    for (const auto& v : vectors) {
        FpSubspace s = rref({v}).first;
        if (seen.insert(s).second) frontier.push_back(s);
    }
    while (!frontier.empty()) {
        std::vector<FpSubspace> next;
        for (const auto& s : frontier) {
            for (const auto& v : vectors) {
                if (s.contains(v)) continue;
                std::vector<FpVector> rows = s.basis;
                rows.push_back(v);
                FpSubspace grown = rref(rows).first;
                if (seen.insert(grown).second) next.push_back(grown);
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

} // namespace equimap
