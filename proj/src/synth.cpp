#include "equimap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace equimap {

SynthesizedMap::SynthesizedMap(Representation source, Representation target,
                               std::vector<MapBlock> blocks)
    : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {
    std::vector<bool> src_seen(source_.num_slots(), false);
    std::vector<bool> dst_seen(target_.num_slots(), false);
    for (const auto& block : blocks_) {
        if (const auto* a = std::get_if<Assignment>(&block)) {
            if (a->src_slot >= source_.num_slots() || a->dst_slot >= target_.num_slots())
                throw InputError("map block slot out of range");
            if (src_seen[a->src_slot]) throw InputError("source slot assigned twice");
            if (dst_seen[a->dst_slot]) throw InputError("target slot hit twice");
            src_seen[a->src_slot] = true;
            dst_seen[a->dst_slot] = true;
        } else {
            const auto& z = std::get<ZeroBlock>(block);
            if (z.src_slot >= source_.num_slots()) throw InputError("map block slot out of range");
            if (src_seen[z.src_slot]) throw InputError("source slot assigned twice");
            src_seen[z.src_slot] = true;
            zero_slots_.push_back(z.src_slot);
        }
    }
    if (!std::all_of(src_seen.begin(), src_seen.end(), [](bool b) { return b; }))
        throw InputError("every source slot must appear in exactly one block");
    std::sort(zero_slots_.begin(), zero_slots_.end());
}

std::int64_t SynthesizedMap::analytic_zero_set_dim() const {
    return static_cast<std::int64_t>(real_dim(zero_set_subrep())) - 1;
}

bool SynthesizedMap::exponents_coherent() const {
    if (source_.group().kind != GroupKind::PTorus) {
        // torus maps only carry identity assignments between equal weights
        return std::all_of(blocks_.begin(), blocks_.end(), [&](const MapBlock& b) {
            const auto* a = std::get_if<Assignment>(&b);
            return !a || (a->exponent == 1 &&
                          source_.slot_weight(a->src_slot) == target_.slot_weight(a->dst_slot));
        });
    }
    const std::uint32_t p = source_.group().p;
    for (const auto& block : blocks_) {
        const auto* a = std::get_if<Assignment>(&block);
        if (!a) continue;
        FpVector src_w = source_.slot_fp_weight(a->src_slot);
        FpVector dst_w = target_.slot_fp_weight(a->dst_slot);
        if (!(line_representative(src_w) == line_representative(dst_w))) return false;
        const std::uint32_t j1 = line_coefficient(src_w), j2 = line_coefficient(dst_w);
        if ((static_cast<std::uint64_t>(a->exponent) * j1) % p != j2) return false;
    }
    return true;
}

std::uint32_t power_exponent(std::uint32_t j1, std::uint32_t j2, std::uint32_t p) {
    require_prime(p);
    if (j1 % p == 0 || j2 % p == 0) throw InputError("power_exponent: coefficient is 0 mod p");
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(mod_inverse(j1, p)) * (j2 % p)) % p);
}

namespace {

// Slots of a line sorted by (weight lex, slot index); the injection below
// pairs them positionally, which is deterministic.
std::vector<std::size_t> sorted_line_slots(const Representation& r,
                                           const std::vector<std::size_t>& slots) {
    std::vector<std::size_t> out = slots;
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        const IntVector& wa = r.slot_weight(a);
        const IntVector& wb = r.slot_weight(b);
        if (wa != wb) return wa < wb;
        return a < b;
    });
    return out;
}

struct LineJoin {
    std::vector<MapBlock> blocks;
    bool any_violation = false;
    FpVector first_violating_line;
};

// Join assignments for satisfied lines of V, zero blocks for violating
// ones (a line is satisfied when W matches or exceeds its dimension).
LineJoin join_blocks(const Representation& v, const Representation& w) {
    if (v.group().kind != GroupKind::PTorus)
        throw InputError("map synthesis requires a p-torus problem");
    const std::uint32_t p = v.group().p;

    std::map<FpVector, std::vector<std::size_t>> w_lines;
    if (!w.empty())
        for (const auto& line : line_partition(w).lines) w_lines[line.rep] = line.slots;

    LineJoin join;
    for (const auto& line : line_partition(v).lines) {
        auto it = w_lines.find(line.rep);
        const std::vector<std::size_t> w_slots =
            it == w_lines.end() ? std::vector<std::size_t>{} : it->second;
        if (line.slots.size() > w_slots.size()) {
            if (!join.any_violation) {
                join.any_violation = true;
                join.first_violating_line = line.rep;
            }
            for (std::size_t s : line.slots) join.blocks.emplace_back(ZeroBlock{s});
            continue;
        }
        std::vector<std::size_t> src = sorted_line_slots(v, line.slots);
        std::vector<std::size_t> dst = sorted_line_slots(w, w_slots);
        for (std::size_t i = 0; i < src.size(); ++i) {
            const std::uint32_t j1 = line_coefficient(v.slot_fp_weight(src[i]));
            const std::uint32_t j2 = line_coefficient(w.slot_fp_weight(dst[i]));
            join.blocks.emplace_back(Assignment{src[i], dst[i], power_exponent(j1, j2, p)});
        }
    }
    return join;
}

} // namespace

SynthesizedMap synthesize_equivariant(const Representation& v, const Representation& w) {
    LineJoin join = join_blocks(v, w);
    if (join.any_violation)
        throw SynthesisRefused("no equivariant map S(V) -> S(W): line [" +
                               join.first_violating_line.to_string() +
                               "] has dim_R V^H > dim_R W^H");
    return SynthesizedMap(v, w, std::move(join.blocks));
}

SynthesizedMap synthesize_partial(const Representation& v, const Representation& w) {
    LineJoin join = join_blocks(v, w);
    return SynthesizedMap(v, w, std::move(join.blocks));
}

SynthesizedMap projection_map(const Representation& v,
                              const std::vector<std::size_t>& target_slots) {
    std::vector<bool> keep(v.num_slots(), false);
    for (std::size_t s : target_slots) {
        if (s >= v.num_slots()) throw InputError("projection target slot out of range");
        if (keep[s]) throw InputError("duplicate projection target slot");
        keep[s] = true;
    }
    Representation w = v.sub_representation(target_slots);
    // sub_representation merges equal weights, which may reorder slots
    // relative to the selection; pair each chosen slot with an unused
    // target slot of the same weight
    std::vector<bool> used(w.num_slots(), false);
    std::vector<MapBlock> blocks;
    for (std::size_t s : target_slots) {
        std::size_t dst = 0;
        while (used[dst] || !(w.slot_weight(dst) == v.slot_weight(s))) ++dst;
        used[dst] = true;
        blocks.emplace_back(Assignment{s, dst, 1});
    }
    for (std::size_t s = 0; s < v.num_slots(); ++s)
        if (!keep[s]) blocks.emplace_back(ZeroBlock{s});
    return SynthesizedMap(v, std::move(w), std::move(blocks));
}

double Point::norm() const {
    double acc = 0;
    for (const auto& c : coords) acc += std::norm(c);
    return std::sqrt(acc);
}

double distance(const Point& a, const Point& b) {
    if (a.coords.size() != b.coords.size()) throw InputError("point dimension mismatch");
    double acc = 0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) acc += std::norm(a.coords[i] - b.coords[i]);
    return std::sqrt(acc);
}

namespace {

std::complex<double> unit_pow(std::complex<double> u, std::uint32_t e) {
    std::complex<double> acc(1.0, 0.0);
    while (e) {
        if (e & 1) acc *= u;
        u *= u;
        e >>= 1;
    }
    return acc;
}

} // namespace

Point evaluate_raw(const SynthesizedMap& f, const Point& x) {
    if (x.coords.size() != f.source().num_slots())
        throw InputError("point has wrong number of coordinates");
    Point y;
    y.coords.assign(f.target().num_slots(), {0.0, 0.0});
    for (const auto& block : f.blocks()) {
        const auto* a = std::get_if<Assignment>(&block);
        if (!a) continue;
        const std::complex<double> z = x.coords[a->src_slot];
        const double mag = std::abs(z);
        if (mag == 0.0) continue; // continuous extension of |z| (z/|z|)^e
        y.coords[a->dst_slot] = mag * unit_pow(z / mag, a->exponent);
    }
    return y;
}

Point evaluate(const SynthesizedMap& f, const Point& x, double norm_tol) {
    if (std::abs(x.norm() - 1.0) > norm_tol)
        throw InputError("point is not on the unit sphere");
    const GroupDescriptor& g = f.source().group();
    if (g.kind == GroupKind::PTorus && g.p == 2)
        for (const auto& c : x.coords)
            if (c.imag() != 0.0)
                throw InputError("p = 2 coordinates are real-valued");
    return evaluate_raw(f, x);
}

Point act(const GroupElement& g, const Representation& r, const Point& x) {
    if (x.coords.size() != r.num_slots()) throw InputError("point has wrong number of coordinates");
    Point y = x;
    const GroupDescriptor& group = r.group();
    if (group.kind == GroupKind::PTorus) {
        if (g.residues.size() != group.rank) throw InputError("group element rank mismatch");
        const std::uint32_t p = group.p;
        FpVector gv = FpVector::reduce(p, g.residues);
        for (std::size_t s = 0; s < r.num_slots(); ++s) {
            const std::uint32_t m = fp_dot(r.slot_fp_weight(s), gv);
            if (m == 0) continue;
            if (p == 2)
                y.coords[s] = -y.coords[s]; // antipodal on that slot
            else
                y.coords[s] *= std::polar(1.0, 2.0 * std::numbers::pi * m / p);
        }
    } else {
        if (g.angles.size() != group.rank) throw InputError("group element rank mismatch");
        for (std::size_t s = 0; s < r.num_slots(); ++s) {
            const IntVector& w = r.slot_weight(s);
            double phase = 0;
            for (std::size_t i = 0; i < w.size(); ++i) phase += static_cast<double>(w[i]) * g.angles[i];
            y.coords[s] *= std::polar(1.0, 2.0 * std::numbers::pi * phase);
        }
    }
    return y;
}

} // namespace equimap
