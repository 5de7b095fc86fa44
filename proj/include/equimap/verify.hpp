#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "equimap/synth.hpp"

namespace equimap {

struct VerificationConfig {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    double equiv_tol = 1e-9;
    double norm_tol = 1e-12;
    double zero_tol = 1e-7;
    double fd_step = 1e-6;            // central finite-difference step
    double pca_cutoff = 0.1;          // singular-value ratio threshold
    double neighborhood_radius = 0.05;
    std::size_t min_neighbors = 10;   // below this a neighborhood is skipped
    std::size_t min_zero_samples = 20;
    std::size_t max_neighborhoods = 300;
    std::size_t descent_max_iters = 500;
    unsigned workers = 0; // 0 = pick from hardware, capped

    void validate() const;
};

/// Uniform point of S(V): normalized Gaussian coordinates (real-valued
/// for p = 2).
Point random_sphere_point(const Representation& r, std::mt19937_64& rng);

/// Uniform group element: residues for a p-torus, angles for a torus.
GroupElement random_group_element(const GroupDescriptor& g, std::mt19937_64& rng);

/// Max over seeded trials of |f(g x) - g f(x)| at uniform random g and
/// uniform random sphere points x. Deterministic given cfg.seed.
double check_equivariance(const SynthesizedMap& f, const VerificationConfig& cfg);

/// Max over seeded trials of | |f(x)| - 1 | on random sphere points.
/// Meaningful for maps without zero blocks (witnesses into S(W)).
double check_norm(const SynthesizedMap& f, const VerificationConfig& cfg);

/// Zero-set samples found by projected gradient descent of |f|^2 on the
/// sphere from random starts (gradient by central finite differences,
/// renormalization after each step). Every returned point x satisfies
/// |f(x)| < zero_tol and | |x| - 1 | < 1e-9. Deterministic given cfg.seed.
std::vector<Point> sample_zero_set(const SynthesizedMap& f, const VerificationConfig& cfg);

/// Local-PCA intrinsic dimension: per neighborhood of radius
/// neighborhood_radius, the count of singular values above
/// pca_cutoff * largest; the estimate is the median count.
struct DimensionEstimate {
    bool conclusive = false;
    std::size_t estimated_dim = 0;
    std::size_t n_zero_samples = 0;
    std::size_t n_neighborhoods = 0;
    std::vector<std::vector<double>> spectra; // per-neighborhood singular values
    std::optional<std::int64_t> bound_checked;
};

DimensionEstimate estimate_local_dimension(const std::vector<Point>& samples,
                                           const VerificationConfig& cfg);

/// Confronts the zero-set dimension with the global lower bound
/// dim_R V - dim_R W - 1. The analytic dimension (from the map's killed
/// block) is authoritative; the sampled estimate is reported alongside.
struct BoundVerification {
    enum class Status { Pass, Fail, Inconclusive };
    Status status = Status::Inconclusive;
    std::int64_t bound = 0;
    std::optional<std::int64_t> analytic_dim;
    DimensionEstimate estimate;
    bool numeric_agrees = true; // vacuous when the estimate is inconclusive
};

BoundVerification verify_bound(const Representation& v, const Representation& w,
                               const SynthesizedMap& f, const VerificationConfig& cfg);

/// Full verification of a map against its problem: equivariance residual,
/// norm deviation (maps into S(W)), zero-set bound check.
struct VerificationReport {
    enum class Status { Pass, Fail, Inconclusive };
    Status status = Status::Inconclusive;
    double max_equiv_residual = 0;
    std::optional<double> max_norm_deviation; // only for maps without zero blocks
    std::optional<BoundVerification> bound_check;
};

VerificationReport run_verification(const Representation& v, const Representation& w,
                                    const SynthesizedMap& f, const VerificationConfig& cfg);

} // namespace equimap
