#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "equimap/fp.hpp"
#include "equimap/lattice.hpp"

namespace equimap {

/// G = Z_p^k (p prime) or G = T^k, k >= 1.
struct GroupDescriptor {
    GroupKind kind = GroupKind::PTorus;
    std::uint32_t p = 0; // p-torus only
    std::uint32_t rank = 0;

    static GroupDescriptor p_torus(std::uint32_t p, std::uint32_t rank);
    static GroupDescriptor torus(std::uint32_t rank);

    bool operator==(const GroupDescriptor&) const = default;
    std::string to_string() const;
};

/// Closed subgroup used as an isotropy group: a subspace of F_p^k for a
/// p-torus, or a subtorus given by its saturated cocharacter lattice.
using Subgroup = std::variant<FpSubspace, IntLattice>;

std::size_t subgroup_rank(const Subgroup& h);
std::string subgroup_to_string(const Subgroup& h);
Subgroup trivial_subgroup(const GroupDescriptor& g);

/// A weight (character) with multiplicity. Entries are residues in [0, p)
/// for a p-torus and arbitrary integers for a torus.
struct WeightEntry {
    IntVector weight;
    std::uint32_t mult = 1;
    bool operator==(const WeightEntry&) const = default;
};

/// Fixed-point-free orthogonal representation encoded by its nonzero
/// weights. Slots expand multiplicities in input order: slot s carries one
/// complex coordinate (odd p, torus) or one real coordinate (p = 2).
class Representation {
public:
    Representation() = default;

    /// Validates: nonzero weights (this is the V^G = {0} condition),
    /// pairwise distinct, multiplicities >= 1, lengths equal to the rank.
    /// p-torus weights are reduced mod p first.
    Representation(GroupDescriptor group, std::vector<WeightEntry> weights);

    const GroupDescriptor& group() const { return group_; }
    const std::vector<WeightEntry>& weights() const { return weights_; }

    std::size_t num_slots() const { return slot_weight_.size(); }
    /// Index into weights() for a slot.
    std::size_t slot_weight_index(std::size_t slot) const { return slot_weight_[slot]; }
    const IntVector& slot_weight(std::size_t slot) const;
    FpVector slot_fp_weight(std::size_t slot) const; // p-torus only
    FpVector fp_weight(std::size_t widx) const;      // p-torus only

    bool empty() const { return weights_.empty(); }
    bool operator==(const Representation&) const = default;

    /// Sub-representation spanned by the given slots (order preserved,
    /// equal weights merged back into multiplicities).
    Representation sub_representation(const std::vector<std::size_t>& slots) const;

private:
    GroupDescriptor group_;
    std::vector<WeightEntry> weights_;
    std::vector<std::size_t> slot_weight_; // slot -> weight index
};

/// Real dimension: 2 * (slot count) for odd p and torus, slot count for p=2.
std::size_t real_dim(const Representation& r);
/// Complex dimension (slot count). Rejected for p = 2, which has no
/// complex structure here.
std::size_t complex_dim(const Representation& r);

/// Sub-representation V^H of weights vanishing on H.
Representation fixed_subrep(const Representation& r, const Subgroup& h);

/// All isotropy subgroups of the sphere action: intersections of weight
/// kernels over nonempty weight subsets. For a torus, identity components
/// (subtori) only. Sorted by (rank, canonical basis).
std::vector<Subgroup> isotropy_subgroups(const Representation& r);

/// The corank-1 kernels ker(alpha), one per projective line met by the
/// weights (p-torus only). Ordered like line_partition.
std::vector<Subgroup> maximal_isotropy(const Representation& r);

/// Slots grouped by projective line [alpha] (p-torus only).
struct LineBlock {
    FpVector rep;                   // first nonzero entry scaled to 1
    std::vector<std::size_t> slots; // member slots, in slot order
    std::size_t real_dim = 0;
};

struct LinePartition {
    std::vector<LineBlock> lines; // in order of first slot appearance
};

LinePartition line_partition(const Representation& r);

/// Canonical representative of the line through a nonzero weight, and the
/// coefficient j with weight = j * rep (p-torus only).
FpVector line_representative(const FpVector& w);
std::uint32_t line_coefficient(const FpVector& w);

} // namespace equimap
