#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "equimap/reps.hpp"

namespace equimap {

enum class Verdict { Exists, NotExists, NonexistenceByDimension, Unknown };

std::string verdict_to_string(Verdict v);

/// Per-projective-line comparison record for the existence criterion:
/// H = ker(line_rep), dims are of V^H and W^H.
struct LineLedgerEntry {
    FpVector line_rep;
    std::size_t dim_r_v_h = 0;
    std::size_t dim_r_w_h = 0;
    bool satisfied = false;
};

struct DecisionReport {
    Verdict verdict = Verdict::Unknown;
    std::vector<LineLedgerEntry> ledger;      // p-torus only; line order of V
    std::vector<FpVector> violating_lines;
};

/// Lower bound for the zero-set dimension restricted to S(V^H).
struct SubgroupBound {
    Subgroup subgroup;
    std::size_t dim_r_v_h = 0;
    std::size_t dim_r_w_h = 0;
    std::int64_t bound = 0;              // dim_R V^H - dim_R W^H - 1
    bool derived_by_restriction = false; // torus entries are derived, not direct
};

struct BoundReport {
    std::int64_t global_bound = 0; // dim_R V - dim_R W - 1, possibly negative
    std::vector<SubgroupBound> per_subgroup;
    std::int64_t best_bound = 0;
    bool parity_refined = false;
};

/// dim_R V - dim_R W - 1. Negative values are reported as-is (vacuous).
std::int64_t global_bound(const Representation& v, const Representation& w);

/// For odd p and the torus the bound equals 2(d(V)-d(W))-1 and is odd;
/// refined (guaranteed >= 1) exactly when dim_R V > dim_R W. Never refined
/// for p = 2.
std::pair<std::int64_t, bool> parity_refine(const Representation& v, const Representation& w,
                                            std::int64_t bound);

/// One bound per isotropy subgroup of V, the trivial subgroup always
/// included (it reproduces the global bound). best_bound is the maximum.
BoundReport refined_bounds(const Representation& v, const Representation& w);

/// Existence of an equivariant map S(V) -> S(W). For a p-torus this is the
/// exact per-line criterion (dim_R V^H <= dim_R W^H at every maximal
/// isotropy subgroup H of S(V)); for a torus only the dimension
/// obstruction is decided, otherwise Unknown.
DecisionReport decide_map_existence(const Representation& v, const Representation& w);

/// On-demand weight source standing in for an infinite-dimensional V:
/// a finite generator block, optionally cycled forever.
struct WeightStream {
    std::vector<IntVector> generators;
    bool repeat = false;

    std::optional<IntVector> at(std::size_t i) const {
        if (i < generators.size()) return generators[i];
        if (repeat && !generators.empty()) return generators[i % generators.size()];
        return std::nullopt;
    }
};

struct WitnessResult {
    Representation v_d;
    std::int64_t bound = 0; // dim_R V(d) - dim_R W - 1
};

/// Smallest stream prefix whose representation reaches real dimension
/// target_d, with the induced zero-set bound. Errors if the stream is
/// exhausted first.
WitnessResult infinite_witness(const WeightStream& stream, const Representation& w,
                               std::size_t target_d);

} // namespace equimap
