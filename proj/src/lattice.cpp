#include "equimap/lattice.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace equimap {

namespace {

// Row reduction runs on GMP integers: Hermite elimination swells
// intermediates far beyond the final canonical entries (saturation takes
// minors of minors), so fixed-width arithmetic is only used at the API
// boundary.
using MpzVec = std::vector<mpz_class>;
using MpzMat = std::vector<MpzVec>;

MpzMat to_mpz(const std::vector<IntVector>& rows) {
    MpzMat m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        MpzVec row;
        row.reserve(r.size());
        for (std::int64_t e : r) row.emplace_back(static_cast<long>(e));
        m.push_back(std::move(row));
    }
    return m;
}

std::int64_t narrow(const mpz_class& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("lattice entry exceeds 64-bit range");
    return static_cast<std::int64_t>(x.get_si());
}

// row_i -= q * row_j
void row_axpy(MpzMat& m, std::size_t i, std::size_t j, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < m[i].size(); ++c) m[i][c] -= q * m[j][c];
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// In-place row HNF over columns [0, ncols); returns the row count of the
// echelon part. Only unimodular operations (swap, negate, add multiple).
std::size_t hnf_in_place(MpzMat& m, std::size_t ncols) {
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < ncols && pivot_row < m.size(); ++col) {
        // Euclidean elimination within the column.
        while (true) {
            std::size_t best = m.size();
            for (std::size_t i = pivot_row; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                if (best == m.size() || cmp(abs(m[i][col]), abs(m[best][col])) < 0) best = i;
            }
            if (best == m.size()) break; // column clear below pivot_row
            std::swap(m[pivot_row], m[best]);
            bool reduced_all = true;
            for (std::size_t i = pivot_row + 1; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                row_axpy(m, i, pivot_row, mpz_class(m[i][col] / m[pivot_row][col]));
                if (m[i][col] != 0) reduced_all = false;
            }
            if (reduced_all) break;
        }
        if (m[pivot_row][col] == 0) continue;
        if (m[pivot_row][col] < 0)
            for (auto& e : m[pivot_row]) e = -e;
        for (std::size_t i = 0; i < pivot_row; ++i)
            row_axpy(m, i, pivot_row, floor_div(m[i][col], m[pivot_row][col]));
        ++pivot_row;
    }
    return pivot_row;
}

IntLattice from_echelon(const MpzMat& m, std::size_t rank, std::uint32_t ambient) {
    IntLattice l;
    l.ambient = ambient;
    for (std::size_t i = 0; i < rank; ++i) {
        IntVector row;
        row.reserve(m[i].size());
        for (const auto& e : m[i]) row.push_back(narrow(e));
        l.basis.push_back(std::move(row));
    }
    return l;
}

// Basis of the full integer kernel {x : x . row_i = 0 for all i} of the
// matrix whose columns are the rows of `basis`: reduce [M | I] with
// unimodular row operations; rows whose M part vanished carry the kernel.
MpzMat kernel_rows(const MpzMat& basis, std::size_t ambient) {
    const std::size_t r = basis.size();
    MpzMat aug(ambient, MpzVec(r + ambient, 0));
    for (std::size_t a = 0; a < ambient; ++a) {
        for (std::size_t i = 0; i < r; ++i) aug[a][i] = basis[i][a];
        aug[a][r + a] = 1;
    }
    hnf_in_place(aug, r);

    MpzMat kernel;
    for (const auto& row : aug) {
        if (!std::all_of(row.begin(), row.begin() + r, [](const mpz_class& x) { return x == 0; }))
            continue;
        kernel.emplace_back(row.begin() + r, row.end());
    }
    return kernel;
}

IntLattice canonical_from(MpzMat rows, std::uint32_t ambient) {
    if (rows.empty()) return hnf_empty(ambient);
    const std::size_t rank = hnf_in_place(rows, ambient);
    return from_echelon(rows, rank, ambient);
}

} // namespace

std::int64_t int_dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw InputError("mixed vector lengths");
    __int128 acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += static_cast<__int128>(a[i]) * static_cast<__int128>(b[i]);
    if (acc > std::numeric_limits<std::int64_t>::max() ||
        acc < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("dot product exceeds 64-bit range");
    return static_cast<std::int64_t>(acc);
}

bool int_is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

bool IntLattice::contains(const IntVector& v) const {
    if (v.size() != ambient) throw InputError("vector/lattice mismatch");
    // Pivot columns increase and later rows vanish on earlier pivots, so the
    // coefficient at each pivot is forced; membership iff all divisions are
    // exact and the remainder is zero.
    MpzVec r;
    r.reserve(v.size());
    for (std::int64_t e : v) r.emplace_back(static_cast<long>(e));
    for (const auto& row : basis) {
        std::size_t piv = 0;
        while (piv < row.size() && row[piv] == 0) ++piv;
        const mpz_class pivot(static_cast<long>(row[piv]));
        if (r[piv] % pivot != 0) return false;
        const mpz_class q = r[piv] / pivot;
        for (std::size_t c = 0; c < r.size(); ++c) r[c] -= q * static_cast<long>(row[c]);
    }
    return std::all_of(r.begin(), r.end(), [](const mpz_class& x) { return x == 0; });
}

bool IntLattice::contains(const IntLattice& other) const {
    return std::all_of(other.basis.begin(), other.basis.end(),
                       [&](const IntVector& v) { return contains(v); });
}

bool IntLattice::operator<(const IntLattice& other) const {
    if (rank() != other.rank()) return rank() < other.rank();
    return basis < other.basis;
}

std::string IntLattice::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << "span_Z{";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i) os << ',';
        os << '(';
        for (std::size_t j = 0; j < basis[i].size(); ++j) {
            if (j) os << ',';
            os << basis[i][j];
        }
        os << ')';
    }
    os << '}';
    return os.str();
}

IntLattice hnf(const std::vector<IntVector>& rows) {
    if (rows.empty()) throw InputError("hnf: no rows; use hnf_empty");
    const std::size_t k = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != k) throw InputError("hnf: mixed row lengths");
    if (k == 0) throw InputError("hnf: zero-length rows");
    return canonical_from(to_mpz(rows), static_cast<std::uint32_t>(k));
}

IntLattice hnf_empty(std::uint32_t ambient) {
    IntLattice l;
    l.ambient = ambient;
    return l;
}

IntLattice int_full_lattice(std::uint32_t ambient) {
    std::vector<IntVector> rows;
    for (std::uint32_t i = 0; i < ambient; ++i) {
        IntVector e(ambient, 0);
        e[i] = 1;
        rows.push_back(e);
    }
    return hnf(rows);
}

IntLattice integer_orthogonal(const IntLattice& l) {
    const std::uint32_t k = l.ambient;
    if (l.is_zero()) return int_full_lattice(k);
    return canonical_from(kernel_rows(to_mpz(l.basis), k), k);
}

IntLattice saturate(const IntLattice& l) {
    if (l.is_zero()) return l;
    // double integer orthogonal, kept in GMP end to end; only the final
    // (small) canonical basis is narrowed
    MpzMat orth = kernel_rows(to_mpz(l.basis), l.ambient);
    if (orth.empty()) return int_full_lattice(l.ambient);
    return canonical_from(kernel_rows(orth, l.ambient), l.ambient);
}

std::vector<IntLattice> saturated_span_closure(const std::vector<IntVector>& vectors) {
    if (vectors.empty()) throw InputError("saturated_span_closure: empty generator list");
    for (const auto& v : vectors)
        if (v.size() != vectors[0].size())
            throw InputError("saturated_span_closure: mixed lengths");

    std::set<IntLattice> seen;
    std::vector<IntLattice> frontier;
    for (const auto& v : vectors) {
        IntLattice s = saturate(hnf({v}));
        if (seen.insert(s).second) frontier.push_back(s);
    }
    while (!frontier.empty()) {
        std::vector<IntLattice> next;
        for (const auto& s : frontier) {
            for (const auto& v : vectors) {
                if (s.contains(v)) continue;
                std::vector<IntVector> rows = s.basis;
                rows.push_back(v);
                IntLattice grown = saturate(hnf(rows));
                if (seen.insert(grown).second) next.push_back(grown);
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

} // namespace equimap
