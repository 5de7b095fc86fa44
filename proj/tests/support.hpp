// Brute-force oracles and random instance generators shared by the unit
// and acceptance suites. Everything here recomputes results from first
// principles, independently of the library's linear-algebra path.
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "equimap/bounds.hpp"
#include "equimap/fp.hpp"
#include "equimap/reps.hpp"
#include "equimap/synth.hpp"

namespace testsupport {

using namespace equimap;

// All p^k vectors of F_p^k, lexicographic.
inline std::vector<FpVector> all_fp_vectors(std::uint32_t p, std::uint32_t k) {
    std::vector<FpVector> out;
    std::vector<std::uint32_t> cur(k, 0);
    while (true) {
        out.emplace_back(p, cur);
        std::size_t i = 0;
        while (i < k && ++cur[i] == p) cur[i++] = 0;
        if (i == k) break;
    }
    return out;
}

// Every element of a subspace, as a sorted set of entry vectors.
inline std::set<std::vector<std::uint32_t>> subspace_elements(const FpSubspace& s) {
    std::set<std::vector<std::uint32_t>> out;
    const std::size_t r = s.rank();
    std::vector<std::uint32_t> coeff(r, 0);
    while (true) {
        std::vector<std::uint32_t> v(s.ambient, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s.ambient; ++j)
                v[j] = (v[j] + coeff[i] * s.basis[i].entries[j]) % s.p;
        out.insert(v);
        std::size_t i = 0;
        while (i < r && ++coeff[i] == s.p) coeff[i++] = 0;
        if (i == r) break;
    }
    return out;
}

// Annihilator by exhaustive pairing against every element of S.
inline std::set<std::vector<std::uint32_t>> brute_annihilator_elements(const FpSubspace& s) {
    const auto elements = subspace_elements(s);
    std::set<std::vector<std::uint32_t>> out;
    for (const auto& beta : all_fp_vectors(s.p, s.ambient)) {
        bool ok = true;
        for (const auto& e : elements) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < e.size(); ++i) acc += std::uint64_t(beta.entries[i]) * e[i];
            if (acc % s.p != 0) { ok = false; break; }
        }
        if (ok) out.insert(beta.entries);
    }
    return out;
}

// Span of one explicit subset as an element set (all coefficient tuples).
inline std::set<std::vector<std::uint32_t>> brute_span_elements(const std::vector<FpVector>& gens) {
    const std::uint32_t p = gens[0].p;
    const std::size_t k = gens[0].size(), n = gens.size();
    std::set<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> coeff(n, 0);
    while (true) {
        std::vector<std::uint32_t> v(k, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j)
                v[j] = (v[j] + coeff[i] * gens[i].entries[j]) % p;
        out.insert(v);
        std::size_t i = 0;
        while (i < n && ++coeff[i] == p) coeff[i++] = 0;
        if (i == n) break;
    }
    return out;
}

// Every subspace of F_p^k (spans of all vector subsets, plus {0}).
inline std::vector<FpSubspace> all_subspaces(std::uint32_t p, std::uint32_t k) {
    std::vector<FpVector> nonzero;
    for (const auto& v : all_fp_vectors(p, k))
        if (!v.is_zero()) nonzero.push_back(v);
    std::vector<FpSubspace> out = span_of_subsets(nonzero);
    out.push_back(fp_zero_subspace(p, k));
    return out;
}

// dim_R V^H recomputed by evaluating every weight on every element of H.
inline std::size_t brute_fixed_dim(const Representation& r, const FpSubspace& h) {
    const auto elements = subspace_elements(h);
    const std::size_t per_slot = r.group().p == 2 ? 1 : 2;
    std::size_t total = 0;
    for (const auto& entry : r.weights()) {
        bool fixed = true;
        for (const auto& g : elements) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < g.size(); ++i)
                acc += std::uint64_t(entry.weight[i] % r.group().p) * g[i];
            if (acc % r.group().p != 0) { fixed = false; break; }
        }
        if (fixed) total += entry.mult;
    }
    return per_slot * total;
}

// dim_R V^H for a subtorus, by direct pairing with the cocharacter basis.
inline std::size_t brute_fixed_dim_torus(const Representation& r, const IntLattice& h) {
    std::size_t total = 0;
    for (const auto& entry : r.weights()) {
        bool fixed = true;
        for (const auto& lambda : h.basis)
            if (int_dot(entry.weight, lambda) != 0) { fixed = false; break; }
        if (fixed) total += entry.mult;
    }
    return 2 * total;
}

// Existence decision recomputed by scanning scalar multiples per line,
// never touching the annihilator machinery.
inline Verdict brute_decide(const Representation& v, const Representation& w) {
    const std::uint32_t p = v.group().p;
    std::set<std::vector<std::uint32_t>> seen_lines;
    for (const auto& alpha : all_fp_vectors(p, v.group().rank)) {
        if (alpha.is_zero()) continue;
        if (!seen_lines.insert(line_representative(alpha).entries).second) continue;
        const FpVector rep = line_representative(alpha);
        auto line_mult = [&](const Representation& r) {
            std::size_t total = 0;
            for (const auto& entry : r.weights()) {
                FpVector wv = FpVector::reduce(p, entry.weight);
                for (std::uint32_t j = 1; j < p; ++j)
                    if (fp_scale(rep, j) == wv) { total += entry.mult; break; }
            }
            return total;
        };
        const std::size_t vm = line_mult(v);
        if (vm == 0) continue;
        if (vm > line_mult(w)) return Verdict::NotExists;
    }
    return Verdict::Exists;
}

// ---------------------------------------------------------------------
// Random instances

inline FpVector random_nonzero_fp(std::uint32_t p, std::uint32_t k, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
    while (true) {
        std::vector<std::uint32_t> e(k);
        for (auto& x : e) x = dist(rng);
        FpVector v(p, e);
        if (!v.is_zero()) return v;
    }
}

inline Representation random_p_torus_rep(const GroupDescriptor& g, std::size_t max_weights,
                                         std::size_t max_slots, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> nw(1, max_weights);
    std::vector<WeightEntry> entries;
    std::size_t slots = 0;
    const std::size_t want = nw(rng);
    for (std::size_t i = 0; i < want && slots < max_slots; ++i) {
        FpVector w = random_nonzero_fp(g.p, g.rank, rng);
        IntVector raw(w.entries.begin(), w.entries.end());
        if (std::any_of(entries.begin(), entries.end(),
                        [&](const WeightEntry& e) { return e.weight == raw; }))
            continue;
        std::uniform_int_distribution<std::uint32_t> md(
            1, static_cast<std::uint32_t>(std::min<std::size_t>(3, max_slots - slots)));
        const std::uint32_t mult = md(rng);
        entries.push_back({raw, mult});
        slots += mult;
    }
    return Representation(g, std::move(entries));
}

struct RandomInstance {
    Representation v;
    Representation w;
};

// p in {2,3,5}, k <= 3, V and W each at most 6 slots. With probability
// one half W is built to dominate V line by line, so both verdicts occur.
inline RandomInstance random_instance(std::mt19937_64& rng) {
    const std::uint32_t primes[] = {2, 3, 5};
    std::uniform_int_distribution<int> pick3(0, 2);
    const std::uint32_t p = primes[pick3(rng)];
    std::uniform_int_distribution<std::uint32_t> kd(1, 3);
    const GroupDescriptor g = GroupDescriptor::p_torus(p, kd(rng));

    RandomInstance inst;
    inst.v = random_p_torus_rep(g, 4, 6, rng);
    if (rng() % 2 == 0) {
        inst.w = random_p_torus_rep(g, 4, 6, rng);
        return inst;
    }
    // dominate: per weight of V, put at least the same multiplicity on a
    // random multiple of that weight
    std::map<IntVector, std::uint32_t> acc;
    std::uniform_int_distribution<std::uint32_t> cd(1, p - 1);
    for (const auto& e : inst.v.weights()) {
        FpVector w = fp_scale(FpVector::reduce(p, e.weight), cd(rng));
        acc[IntVector(w.entries.begin(), w.entries.end())] += e.mult;
    }
    std::vector<WeightEntry> entries;
    for (const auto& [vec, mult] : acc) entries.push_back({vec, mult});
    inst.w = Representation(g, std::move(entries));
    return inst;
}

inline IntVector random_torus_weight(std::uint32_t k, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> dist(-3, 3);
    while (true) {
        IntVector v(k);
        for (auto& x : v) x = dist(rng);
        if (!int_is_zero(v)) return v;
    }
}

// Copy of the map with one assignment exponent bumped by 1 mod p.
inline SynthesizedMap perturb_one_exponent(const SynthesizedMap& f, std::mt19937_64& rng) {
    std::vector<std::size_t> assign_indices;
    for (std::size_t i = 0; i < f.blocks().size(); ++i)
        if (std::holds_alternative<Assignment>(f.blocks()[i])) assign_indices.push_back(i);
    std::vector<MapBlock> blocks = f.blocks();
    auto& a = std::get<Assignment>(blocks[assign_indices[rng() % assign_indices.size()]]);
    a.exponent = (a.exponent + 1) % f.source().group().p;
    return SynthesizedMap(f.source(), f.target(), std::move(blocks));
}

inline RandomInstance random_torus_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> kd(1, 3);
    const GroupDescriptor g = GroupDescriptor::torus(kd(rng));
    auto make = [&](std::size_t max_weights) {
        std::uniform_int_distribution<std::size_t> nw(1, max_weights);
        std::vector<WeightEntry> entries;
        const std::size_t want = nw(rng);
        for (std::size_t i = 0; i < want; ++i) {
            IntVector w = random_torus_weight(g.rank, rng);
            if (std::any_of(entries.begin(), entries.end(),
                            [&](const WeightEntry& e) { return e.weight == w; }))
                continue;
            std::uniform_int_distribution<std::uint32_t> md(1, 3);
            entries.push_back({w, md(rng)});
        }
        return Representation(g, std::move(entries));
    };
    return {make(4), make(4)};
}

} // namespace testsupport
