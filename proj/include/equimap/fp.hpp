#pragma once

#include <cstdint>
#include <vector>

#include "equimap/common.hpp"

namespace equimap {

/// Vector of residues over F_p. Entries are kept reduced into [0, p).
struct FpVector {
    std::uint32_t p = 0;
    std::vector<std::uint32_t> entries;

    FpVector() = default;
    FpVector(std::uint32_t p_, std::vector<std::uint32_t> entries_);

    /// Reduces arbitrary integers mod p (negatives wrap into [0, p)).
    static FpVector reduce(std::uint32_t p, const std::vector<std::int64_t>& raw);

    std::size_t size() const { return entries.size(); }
    bool is_zero() const;

    bool operator==(const FpVector&) const = default;
    bool operator<(const FpVector& other) const; // lexicographic, same (p, size) assumed

    std::string to_string() const;
};

/// Dot product mod p. Lengths and moduli must agree.
std::uint32_t fp_dot(const FpVector& a, const FpVector& b);

/// Scalar multiple c*v mod p.
FpVector fp_scale(const FpVector& v, std::uint32_t c);

/// Subspace of F_p^k held as a reduced row-echelon basis. Strict RREF
/// (unit pivots, zeros above and below, increasing pivot columns) makes
/// the basis canonical: two subspaces are equal iff their bases are.
struct FpSubspace {
    std::uint32_t p = 0;
    std::uint32_t ambient = 0;
    std::vector<FpVector> basis; // strict RREF, no zero rows

    std::size_t rank() const { return basis.size(); }
    bool is_zero() const { return basis.empty(); }
    bool is_full() const { return rank() == ambient; }

    /// Membership: does v reduce to zero against the basis?
    bool contains(const FpVector& v) const;
    /// Subspace containment.
    bool contains(const FpSubspace& other) const;

    bool operator==(const FpSubspace&) const = default;
    bool operator<(const FpSubspace& other) const; // (rank, basis) lexicographic

    std::string to_string() const;
};

/// Canonical RREF span of the given rows; second member of the pair is
/// the rank. Rows must share p and length.
std::pair<FpSubspace, std::size_t> rref(const std::vector<FpVector>& rows);

/// Zero subspace / full space of F_p^k.
FpSubspace fp_zero_subspace(std::uint32_t p, std::uint32_t ambient);
FpSubspace fp_full_space(std::uint32_t p, std::uint32_t ambient);

/// { beta : <beta, s> = 0 (mod p) for all s in S }. Ranks of S and of the
/// result sum to the ambient rank.
FpSubspace annihilator(const FpSubspace& s);

/// Inverse of j mod p, as a residue in [1, p-1]. j must not be 0 mod p.
std::uint32_t mod_inverse(std::uint32_t j, std::uint32_t p);

/// Deduplicated spans of all nonempty subsets of the generators, computed
/// by breadth-first closure (one generator added at a time), never by
/// explicit 2^n subset iteration. Output sorted by (rank, basis).
std::vector<FpSubspace> span_of_subsets(const std::vector<FpVector>& vectors);

} // namespace equimap
