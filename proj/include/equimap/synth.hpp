#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "equimap/bounds.hpp"
#include "equimap/reps.hpp"

namespace equimap {

/// Refusal to synthesize a witness map when the existence criterion fails.
/// Carries the first violating projective line. Maps to CLI exit 1.
class SynthesisRefused : public InputError {
public:
    explicit SynthesisRefused(const std::string& what) : InputError(what) {}
};

/// One coordinate block of a synthesized map: the source slot is either
/// carried to a target slot by z -> |z| (z/|z|)^e, or killed.
struct Assignment {
    std::size_t src_slot = 0;
    std::size_t dst_slot = 0;
    std::uint32_t exponent = 1;
    bool operator==(const Assignment&) const = default;
};

struct ZeroBlock {
    std::size_t src_slot = 0;
    bool operator==(const ZeroBlock&) const = default;
};

using MapBlock = std::variant<Assignment, ZeroBlock>;

/// Block-structured equivariant map S(V) -> W. Every source slot appears in
/// exactly one block and assignments hit pairwise distinct target slots;
/// the zero set is exactly the sphere of the sub-representation spanned by
/// the ZeroBlock slots.
class SynthesizedMap {
public:
    SynthesizedMap(Representation source, Representation target, std::vector<MapBlock> blocks);

    const Representation& source() const { return source_; }
    const Representation& target() const { return target_; }
    const std::vector<MapBlock>& blocks() const { return blocks_; }

    /// Source slots killed by the map, ascending.
    const std::vector<std::size_t>& zero_set_slots() const { return zero_slots_; }
    /// The sub-representation U with Z_f = S(U).
    Representation zero_set_subrep() const { return source_.sub_representation(zero_slots_); }
    /// Manifold dimension of S(U): dim_R U - 1 (-1 when U = 0, i.e. Z_f empty).
    std::int64_t analytic_zero_set_dim() const;

    bool has_zero_blocks() const { return !zero_slots_.empty(); }

    /// Checks e * j1 = j2 (mod p) on every assignment (line coefficients of
    /// source and target weights). False for e.g. a corrupted exponent.
    bool exponents_coherent() const;

    bool operator==(const SynthesizedMap&) const = default;

private:
    Representation source_;
    Representation target_;
    std::vector<MapBlock> blocks_;
    std::vector<std::size_t> zero_slots_;
};

/// Exponent e of the power map z -> z^e carrying the character j1*alpha to
/// j2*alpha: e = j1^{-1} j2 mod p.
std::uint32_t power_exponent(std::uint32_t j1, std::uint32_t j2, std::uint32_t p);

/// The join-of-power-maps witness: per projective line, source slots are
/// injected into target slots in sorted order. Requires verdict Exists
/// (p-torus); otherwise throws SynthesisRefused naming a violating line.
SynthesizedMap synthesize_equivariant(const Representation& v, const Representation& w);

/// Witness with known zero set: satisfied lines are joined as above,
/// violating lines are killed, so Z_f = S(U) for the killed block U.
SynthesizedMap synthesize_partial(const Representation& v, const Representation& w);

/// Identity on the chosen slots, zero elsewhere; Z_f is the sphere of the
/// complementary sub-representation. Valid for any group kind. An empty
/// target yields the zero map.
SynthesizedMap projection_map(const Representation& v, const std::vector<std::size_t>& target_slots);

/// Point of (the ambient space of) S(V): one complex coordinate per slot.
/// For p = 2 the coordinates are real-valued (imaginary parts zero).
struct Point {
    std::vector<std::complex<double>> coords;

    double norm() const;
};

double distance(const Point& a, const Point& b);

/// Group element: residues mod p for a p-torus, angles in [0,1) per
/// coordinate for a torus.
struct GroupElement {
    std::vector<std::int64_t> residues; // p-torus
    std::vector<double> angles;         // torus
};

/// Evaluates the block map at x. |x| must be 1 within norm_tol.
Point evaluate(const SynthesizedMap& f, const Point& x, double norm_tol = 1e-6);

/// Evaluation without the sphere check, for off-sphere probes
/// (finite-difference gradients).
Point evaluate_raw(const SynthesizedMap& f, const Point& x);

/// Character action of g on a point of R's ambient space: each slot is
/// multiplied by the value of its weight at g.
Point act(const GroupElement& g, const Representation& r, const Point& x);

} // namespace equimap
