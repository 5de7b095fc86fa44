#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equimap/common.hpp"

namespace equimap {

using IntVector = std::vector<std::int64_t>;

/// Sublattice of Z^k held as a row Hermite-normal-form basis (positive
/// pivots, entries above a pivot reduced into [0, pivot), increasing
/// pivot columns). The HNF basis is canonical for the row lattice.
struct IntLattice {
    std::uint32_t ambient = 0;
    std::vector<IntVector> basis; // HNF, no zero rows

    std::size_t rank() const { return basis.size(); }
    bool is_zero() const { return basis.empty(); }

    /// Exact membership test against the HNF basis.
    bool contains(const IntVector& v) const;
    bool contains(const IntLattice& other) const;

    bool operator==(const IntLattice&) const = default;
    bool operator<(const IntLattice& other) const;

    std::string to_string() const;
};

std::int64_t int_dot(const IntVector& a, const IntVector& b);
bool int_is_zero(const IntVector& v);

/// Canonical Hermite normal form of the lattice generated by the rows.
/// Rows must share a length; an empty row list yields the rank-0 lattice
/// (ambient must then be passed explicitly via hnf_empty).
IntLattice hnf(const std::vector<IntVector>& rows);
IntLattice hnf_empty(std::uint32_t ambient);
IntLattice int_full_lattice(std::uint32_t ambient);

/// Saturated lattice { w : <w, l> = 0 for all l in L }; ranks sum to the
/// ambient rank when L is saturated.
IntLattice integer_orthogonal(const IntLattice& l);

/// Smallest primitive lattice containing L: same rational span, torsion-free
/// quotient. Computed as the double integer orthogonal (the full integer
/// kernel of the orthogonal-relations matrix, via unimodular row reduction).
IntLattice saturate(const IntLattice& l);

/// Deduplicated saturated spans of all nonempty subsets of the generators,
/// by breadth-first closure. Used for subtorus isotropy enumeration.
std::vector<IntLattice> saturated_span_closure(const std::vector<IntVector>& vectors);

} // namespace equimap
