#include "equimap/reps.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace equimap {

GroupDescriptor GroupDescriptor::p_torus(std::uint32_t p, std::uint32_t rank) {
    require_prime(p);
    if (rank < 1) throw InputError("group rank must be >= 1");
    return {GroupKind::PTorus, p, rank};
}

GroupDescriptor GroupDescriptor::torus(std::uint32_t rank) {
    if (rank < 1) throw InputError("group rank must be >= 1");
    return {GroupKind::Torus, 0, rank};
}

std::string GroupDescriptor::to_string() const {
    std::ostringstream os;
    if (kind == GroupKind::PTorus)
        os << "Z_" << p << '^' << rank;
    else
        os << "T^" << rank;
    return os.str();
}

std::size_t subgroup_rank(const Subgroup& h) {
    return std::visit([](const auto& s) { return s.rank(); }, h);
}

std::string subgroup_to_string(const Subgroup& h) {
    return std::visit([](const auto& s) { return s.to_string(); }, h);
}

Subgroup trivial_subgroup(const GroupDescriptor& g) {
    if (g.kind == GroupKind::PTorus) return fp_zero_subspace(g.p, g.rank);
    return hnf_empty(g.rank);
}

Representation::Representation(GroupDescriptor group, std::vector<WeightEntry> weights)
    : group_(group) {
    if (group.kind == GroupKind::PTorus) require_prime(group.p);
    if (group.rank < 1) throw InputError("group rank must be >= 1");

    weights_.reserve(weights.size());
    for (auto& entry : weights) {
        if (entry.weight.size() != group.rank)
            throw InputError("weight length " + std::to_string(entry.weight.size()) +
                             " does not match group rank " + std::to_string(group.rank));
        if (entry.mult < 1) throw InputError("weight multiplicity must be >= 1");
        if (group.kind == GroupKind::PTorus) {
            FpVector reduced = FpVector::reduce(group.p, entry.weight);
            entry.weight.assign(reduced.entries.begin(), reduced.entries.end());
        }
        if (int_is_zero(entry.weight))
            throw InputError("zero weight: fixed-point-free condition V^G = {0} violated");
        for (const auto& prev : weights_)
            if (prev.weight == entry.weight)
                throw InputError("duplicate weight in representation");
        weights_.push_back(std::move(entry));
    }
    for (std::size_t i = 0; i < weights_.size(); ++i)
        for (std::uint32_t m = 0; m < weights_[i].mult; ++m)
            slot_weight_.push_back(i);
}

const IntVector& Representation::slot_weight(std::size_t slot) const {
    return weights_[slot_weight_[slot]].weight;
}

FpVector Representation::fp_weight(std::size_t widx) const {
    if (group_.kind != GroupKind::PTorus) throw InputError("fp_weight: not a p-torus representation");
    return FpVector::reduce(group_.p, weights_[widx].weight);
}

FpVector Representation::slot_fp_weight(std::size_t slot) const {
    return fp_weight(slot_weight_[slot]);
}

Representation Representation::sub_representation(const std::vector<std::size_t>& slots) const {
    std::vector<WeightEntry> entries;
    for (std::size_t s : slots) {
        if (s >= num_slots()) throw InputError("slot index out of range");
        const IntVector& w = slot_weight(s);
        auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const WeightEntry& e) { return e.weight == w; });
        if (it == entries.end())
            entries.push_back({w, 1});
        else
            ++it->mult;
    }
    return Representation(group_, std::move(entries));
}

std::size_t real_dim(const Representation& r) {
    const bool real_coords = r.group().kind == GroupKind::PTorus && r.group().p == 2;
    return real_coords ? r.num_slots() : 2 * r.num_slots();
}

std::size_t complex_dim(const Representation& r) {
    if (r.group().kind == GroupKind::PTorus && r.group().p == 2)
        throw InputError("complex dimension is undefined for p = 2 (real coordinates)");
    return r.num_slots();
}

namespace {

bool weight_vanishes_on(const Representation& r, std::size_t widx, const Subgroup& h) {
    if (r.group().kind == GroupKind::PTorus) {
        const auto& s = std::get<FpSubspace>(h);
        if (s.ambient != r.group().rank || s.p != r.group().p)
            throw InputError("subgroup does not match representation group");
        FpVector w = r.fp_weight(widx);
        return std::all_of(s.basis.begin(), s.basis.end(),
                           [&](const FpVector& b) { return fp_dot(w, b) == 0; });
    }
    const auto& l = std::get<IntLattice>(h);
    if (l.ambient != r.group().rank)
        throw InputError("subgroup does not match representation group");
    const IntVector& w = r.weights()[widx].weight;
    return std::all_of(l.basis.begin(), l.basis.end(),
                       [&](const IntVector& b) { return int_dot(w, b) == 0; });
}

} // namespace

Representation fixed_subrep(const Representation& r, const Subgroup& h) {
    std::vector<WeightEntry> kept;
    for (std::size_t i = 0; i < r.weights().size(); ++i)
        if (weight_vanishes_on(r, i, h)) kept.push_back(r.weights()[i]);
    return Representation(r.group(), std::move(kept));
}

std::vector<Subgroup> isotropy_subgroups(const Representation& r) {
    std::vector<Subgroup> out;
    if (r.empty()) return out;
    if (r.group().kind == GroupKind::PTorus) {
        std::vector<FpVector> gens;
        for (std::size_t i = 0; i < r.weights().size(); ++i) gens.push_back(r.fp_weight(i));
        for (const auto& span : span_of_subsets(gens)) out.emplace_back(annihilator(span));
    } else {
        std::vector<IntVector> gens;
        for (const auto& e : r.weights()) gens.push_back(e.weight);
        for (const auto& span : saturated_span_closure(gens))
            out.emplace_back(integer_orthogonal(span));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.index() != b.index()) return a.index() < b.index();
        if (std::holds_alternative<FpSubspace>(a))
            return std::get<FpSubspace>(a) < std::get<FpSubspace>(b);
        return std::get<IntLattice>(a) < std::get<IntLattice>(b);
    });
    return out;
}

FpVector line_representative(const FpVector& w) {
    if (w.is_zero()) throw InputError("zero weight has no projective line");
    std::size_t i = 0;
    while (w.entries[i] == 0) ++i;
    return fp_scale(w, mod_inverse(w.entries[i], w.p));
}

std::uint32_t line_coefficient(const FpVector& w) {
    if (w.is_zero()) throw InputError("zero weight has no projective line");
    std::size_t i = 0;
    while (w.entries[i] == 0) ++i;
    return w.entries[i];
}

LinePartition line_partition(const Representation& r) {
    if (r.group().kind != GroupKind::PTorus)
        throw InputError("line_partition requires a p-torus representation");
    LinePartition part;
    std::map<FpVector, std::size_t> line_index;
    for (std::size_t s = 0; s < r.num_slots(); ++s) {
        FpVector rep = line_representative(r.slot_fp_weight(s));
        auto [it, fresh] = line_index.try_emplace(rep, part.lines.size());
        if (fresh) part.lines.push_back({rep, {}, 0});
        part.lines[it->second].slots.push_back(s);
    }
    const std::size_t per_slot = r.group().p == 2 ? 1 : 2;
    for (auto& line : part.lines) line.real_dim = per_slot * line.slots.size();
    return part;
}

std::vector<Subgroup> maximal_isotropy(const Representation& r) {
    std::vector<Subgroup> out;
    for (const auto& line : line_partition(r).lines)
        out.emplace_back(annihilator(rref({line.rep}).first));
    return out;
}

} // namespace equimap
