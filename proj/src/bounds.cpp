#include "equimap/bounds.hpp"

#include <algorithm>

namespace equimap {

std::string verdict_to_string(Verdict v) {
    switch (v) {
        case Verdict::Exists: return "Exists";
        case Verdict::NotExists: return "NotExists";
        case Verdict::NonexistenceByDimension: return "NonexistenceByDimension";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

void check_same_group(const Representation& v, const Representation& w) {
    if (!(v.group() == w.group()))
        throw InputError("V and W must be representations of the same group");
}

} // namespace

std::int64_t global_bound(const Representation& v, const Representation& w) {
    check_same_group(v, w);
    return static_cast<std::int64_t>(real_dim(v)) - static_cast<std::int64_t>(real_dim(w)) - 1;
}

std::pair<std::int64_t, bool> parity_refine(const Representation& v, const Representation& w,
                                            std::int64_t bound) {
    check_same_group(v, w);
    const bool p2 = v.group().kind == GroupKind::PTorus && v.group().p == 2;
    if (p2) return {bound, false};
    // Complex structure forces 2(d(V)-d(W))-1, odd for any sign.
    if (bound % 2 == 0) throw std::logic_error("even bound for a complex-structure group");
    return {bound, real_dim(v) > real_dim(w)};
}

BoundReport refined_bounds(const Representation& v, const Representation& w) {
    check_same_group(v, w);
    BoundReport report;
    report.global_bound = global_bound(v, w);

    std::vector<Subgroup> subgroups = isotropy_subgroups(v);
    const Subgroup trivial = trivial_subgroup(v.group());
    if (std::find(subgroups.begin(), subgroups.end(), trivial) == subgroups.end())
        subgroups.insert(subgroups.begin(), trivial);

    const bool torus = v.group().kind == GroupKind::Torus;
    for (const auto& h : subgroups) {
        SubgroupBound entry;
        entry.subgroup = h;
        entry.dim_r_v_h = real_dim(fixed_subrep(v, h));
        entry.dim_r_w_h = real_dim(fixed_subrep(w, h));
        entry.bound = static_cast<std::int64_t>(entry.dim_r_v_h) -
                      static_cast<std::int64_t>(entry.dim_r_w_h) - 1;
        entry.derived_by_restriction = torus && subgroup_rank(h) > 0;
        report.per_subgroup.push_back(std::move(entry));
    }
    report.best_bound = report.global_bound;
    for (const auto& e : report.per_subgroup) report.best_bound = std::max(report.best_bound, e.bound);
    report.parity_refined = parity_refine(v, w, report.global_bound).second;
    return report;
}

DecisionReport decide_map_existence(const Representation& v, const Representation& w) {
    check_same_group(v, w);
    DecisionReport report;

    if (v.group().kind == GroupKind::Torus) {
        report.verdict = real_dim(v) > real_dim(w) ? Verdict::NonexistenceByDimension
                                                   : Verdict::Unknown;
        return report;
    }

    bool all_satisfied = true;
    for (const auto& line : line_partition(v).lines) {
        Subgroup h = annihilator(rref({line.rep}).first);
        LineLedgerEntry entry;
        entry.line_rep = line.rep;
        entry.dim_r_v_h = real_dim(fixed_subrep(v, h));
        entry.dim_r_w_h = real_dim(fixed_subrep(w, h));
        entry.satisfied = entry.dim_r_v_h <= entry.dim_r_w_h;
        if (!entry.satisfied) {
            all_satisfied = false;
            report.violating_lines.push_back(line.rep);
        }
        report.ledger.push_back(std::move(entry));
    }
    report.verdict = all_satisfied ? Verdict::Exists : Verdict::NotExists;
    return report;
}

WitnessResult infinite_witness(const WeightStream& stream, const Representation& w,
                               std::size_t target_d) {
    if (target_d < 1) throw InputError("target dimension must be >= 1");
    const GroupDescriptor group = w.group();
    const std::size_t per_slot =
        (group.kind == GroupKind::PTorus && group.p == 2) ? 1 : 2;

    std::vector<WeightEntry> entries;
    std::size_t dim = 0;
    for (std::size_t i = 0; dim < target_d; ++i) {
        std::optional<IntVector> next = stream.at(i);
        if (!next)
            throw InputError("weight stream exhausted before reaching real dimension " +
                             std::to_string(target_d));
        IntVector weight = *next;
        if (group.kind == GroupKind::PTorus) {
            FpVector reduced = FpVector::reduce(group.p, weight);
            weight.assign(reduced.entries.begin(), reduced.entries.end());
        }
        if (weight.size() != group.rank) throw InputError("stream weight length mismatch");
        if (int_is_zero(weight))
            throw InputError("zero weight in stream: fixed-point-free condition violated");
        auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const WeightEntry& e) { return e.weight == weight; });
        if (it == entries.end())
            entries.push_back({weight, 1});
        else
            ++it->mult;
        dim += per_slot;
    }

    WitnessResult result;
    result.v_d = Representation(group, std::move(entries));
    result.bound = static_cast<std::int64_t>(real_dim(result.v_d)) -
                   static_cast<std::int64_t>(real_dim(w)) - 1;
    return result;
}

} // namespace equimap
