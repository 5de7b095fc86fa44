#include <doctest.h>

#include <random>

#include "equimap/rng.hpp"
#include "equimap/verify.hpp"
#include "support.hpp"

using namespace equimap;
using namespace testsupport;

namespace {

Representation make_rep(GroupDescriptor g, std::vector<std::pair<IntVector, std::uint32_t>> ws) {
    std::vector<WeightEntry> entries;
    for (auto& [w, m] : ws) entries.push_back({std::move(w), m});
    return Representation(g, std::move(entries));
}

// d nonzero real coordinates out of n, normalized: a sample of the
// coordinate subsphere S(R^d) in S(R^n).
std::vector<Point> subsphere_samples(std::size_t d, std::size_t n, std::size_t count,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Point x;
        x.coords.assign(n, {0.0, 0.0});
        double norm2 = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double g = gauss(rng);
            x.coords[j] = {g, 0.0};
            norm2 += g * g;
        }
        const double norm = std::sqrt(norm2);
        for (auto& c : x.coords) c /= norm;
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace

TEST_CASE("check_equivariance accepts exact maps and is deterministic") {
    const GroupDescriptor g = GroupDescriptor::p_torus(5, 2);
    Representation v = make_rep(g, {{{1, 2}, 2}, {{0, 1}, 1}});
    Representation w = make_rep(g, {{{2, 4}, 2}, {{0, 3}, 2}});
    REQUIRE(decide_map_existence(v, w).verdict == Verdict::Exists);
    SynthesizedMap f = synthesize_equivariant(v, w);

    VerificationConfig cfg;
    cfg.trials = 1000;
    cfg.seed = 99;
    const double r1 = check_equivariance(f, cfg);
    CHECK(r1 < 1e-9);
    CHECK(check_equivariance(f, cfg) == r1); // same seed, same residual

    VerificationConfig serial = cfg;
    serial.workers = 1;
    VerificationConfig wide = cfg;
    wide.workers = 4;
    CHECK(check_equivariance(f, serial) == check_equivariance(f, wide));

    SynthesizedMap id = synthesize_equivariant(v, v);
    CHECK(check_equivariance(id, cfg) < 1e-12);
    CHECK(check_norm(f, cfg) < 1e-12);
}

TEST_CASE("a corrupted exponent is flagged with a large residual") {
    std::mt19937_64 rng(7777);
    VerificationConfig cfg;
    cfg.trials = 1000;
    int faults = 0;
    while (faults < 20) {
        RandomInstance inst = random_instance(rng);
        if (inst.v.group().p == 2) continue;
        if (decide_map_existence(inst.v, inst.w).verdict != Verdict::Exists) continue;
        SynthesizedMap f = synthesize_equivariant(inst.v, inst.w);
        SynthesizedMap bad = perturb_one_exponent(f, rng);
        CHECK_FALSE(bad.exponents_coherent());
        cfg.seed = 31337 + faults;
        CHECK(check_equivariance(bad, cfg) > 0.1);
        ++faults;
    }
}

TEST_CASE("sample_zero_set on the classical projection") {
    const GroupDescriptor g2 = GroupDescriptor::p_torus(2, 1);
    Representation v = make_rep(g2, {{{1}, 5}});
    SynthesizedMap f = projection_map(v, {0, 1});

    VerificationConfig cfg;
    cfg.trials = 300;
    cfg.seed = 5;
    std::vector<Point> samples = sample_zero_set(f, cfg);
    CHECK(samples.size() > 250); // descent converges from almost every start
    for (const auto& x : samples) {
        CHECK(std::abs(x.norm() - 1.0) < 1e-9);
        CHECK(evaluate_raw(f, x).norm() < cfg.zero_tol);
        CHECK(std::abs(x.coords[0]) < cfg.zero_tol);
        CHECK(std::abs(x.coords[1]) < cfg.zero_tol);
    }

    // determinism of the whole sample set, independent of the worker count
    std::vector<Point> again = sample_zero_set(f, cfg);
    REQUIRE(again.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        CHECK(distance(samples[i], again[i]) == 0.0);

    VerificationConfig wide = cfg;
    wide.workers = 4;
    std::vector<Point> parallel = sample_zero_set(f, wide);
    REQUIRE(parallel.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        CHECK(distance(samples[i], parallel[i]) == 0.0);
}

TEST_CASE("sample_zero_set is empty for maps into the sphere") {
    const GroupDescriptor g3 = GroupDescriptor::p_torus(3, 1);
    Representation v = make_rep(g3, {{{1}, 2}});
    SynthesizedMap f = synthesize_equivariant(v, v);
    VerificationConfig cfg;
    cfg.trials = 50;
    CHECK(sample_zero_set(f, cfg).empty());
}

TEST_CASE("sample_zero_set covers the sphere for the zero map") {
    const GroupDescriptor g3 = GroupDescriptor::p_torus(3, 1);
    Representation v = make_rep(g3, {{{1}, 3}});
    SynthesizedMap zero = projection_map(v, {});
    VerificationConfig cfg;
    cfg.trials = 40;
    std::vector<Point> samples = sample_zero_set(zero, cfg);
    CHECK(samples.size() == 40); // every start is already a zero
}

TEST_CASE("estimate_local_dimension on synthetic data") {
    VerificationConfig cfg;
    cfg.neighborhood_radius = 0.2;

    // unit circle embedded in R^5
    std::vector<Point> circle;
    for (int i = 0; i < 800; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 800.0;
        Point x;
        x.coords.assign(5, {0.0, 0.0});
        x.coords[0] = {std::cos(t), 0.0};
        x.coords[1] = {std::sin(t), 0.0};
        circle.push_back(std::move(x));
    }
    DimensionEstimate est = estimate_local_dimension(circle, cfg);
    REQUIRE(est.conclusive);
    CHECK(est.estimated_dim == 1);

    // identical samples have dimension 0
    std::vector<Point> same(30, circle[0]);
    DimensionEstimate est0 = estimate_local_dimension(same, cfg);
    REQUIRE(est0.conclusive);
    CHECK(est0.estimated_dim == 0);

    // insufficient samples are reported, never guessed
    std::vector<Point> few(5, circle[0]);
    CHECK_FALSE(estimate_local_dimension(few, cfg).conclusive);
}

TEST_CASE("estimator recovers coordinate subsphere dimensions") {
    // per intrinsic dimension s = d-1: sample count and radius
    struct Recipe { std::size_t samples; double radius; };
    const Recipe recipe[] = {
        {60, 0.2},     // s = 0
        {800, 0.2},    // s = 1
        {2500, 0.2},   // s = 2
        {7000, 0.25},  // s = 3
        {18000, 0.3},  // s = 4
        {45000, 0.32}, // s = 5
        {220000, 0.3}, // s = 6
    };
    std::size_t runs = 0, hits = 0;
    for (std::size_t d = 1; d < 8; ++d) {
        for (std::size_t n = d + 1; n <= 8; ++n) {
            const Recipe& rc = recipe[d - 1];
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                VerificationConfig cfg;
                cfg.neighborhood_radius = rc.radius;
                cfg.max_neighborhoods = 100;
                DimensionEstimate est =
                    estimate_local_dimension(subsphere_samples(d, n, rc.samples, seed), cfg);
                ++runs;
                if (est.conclusive && est.estimated_dim == d - 1) ++hits;
            }
        }
    }
    // exact recovery in at least 95% of seeded runs
    CHECK(hits * 100 >= runs * 95);
}

TEST_CASE("verify_bound") {
    // classical projection: analytic dimension meets the bound exactly
    const GroupDescriptor g2 = GroupDescriptor::p_torus(2, 1);
    Representation v = make_rep(g2, {{{1}, 5}});
    Representation w = make_rep(g2, {{{1}, 2}});
    SynthesizedMap proj = projection_map(v, {0, 1});
    VerificationConfig cfg;
    cfg.trials = 4000;
    cfg.seed = 17;
    cfg.neighborhood_radius = 0.2;
    BoundVerification bv = verify_bound(v, w, proj, cfg);
    CHECK(bv.status == BoundVerification::Status::Pass);
    CHECK(bv.bound == 2);
    REQUIRE(bv.analytic_dim.has_value());
    CHECK(*bv.analytic_dim == 2);
    REQUIRE(bv.estimate.conclusive);
    CHECK(bv.estimate.estimated_dim == 2);
    CHECK(bv.numeric_agrees);

    // partial witness with killed line
    const GroupDescriptor g3 = GroupDescriptor::p_torus(3, 2);
    Representation v3 = make_rep(g3, {{{1, 0}, 2}, {{0, 1}, 1}});
    Representation w3 = make_rep(g3, {{{0, 1}, 1}});
    SynthesizedMap part = synthesize_partial(v3, w3);
    VerificationConfig cfg3;
    cfg3.trials = 3000;
    cfg3.seed = 23;
    cfg3.neighborhood_radius = 0.25;
    BoundVerification bv3 = verify_bound(v3, w3, part, cfg3);
    CHECK(bv3.status == BoundVerification::Status::Pass);
    CHECK(bv3.bound == 3);
    CHECK(*bv3.analytic_dim == 3);
    REQUIRE(bv3.estimate.conclusive);
    CHECK(bv3.estimate.estimated_dim == 3);

    // witness map: empty zero set, vacuous pass against a negative bound
    const GroupDescriptor g1 = GroupDescriptor::p_torus(3, 1);
    Representation a = make_rep(g1, {{{1}, 2}});
    SynthesizedMap id = synthesize_equivariant(a, a);
    VerificationConfig small;
    small.trials = 30;
    BoundVerification bvw = verify_bound(a, a, id, small);
    CHECK(bvw.status == BoundVerification::Status::Pass);
    CHECK(bvw.bound == -1);
    CHECK(*bvw.analytic_dim == -1);
    CHECK_FALSE(bvw.estimate.conclusive);
}

TEST_CASE("run_verification end to end") {
    const GroupDescriptor g = GroupDescriptor::p_torus(5, 1);
    Representation v = make_rep(g, {{{1}, 2}, {{3}, 1}});
    Representation w = make_rep(g, {{{2}, 3}});
    REQUIRE(decide_map_existence(v, w).verdict == Verdict::Exists);
    SynthesizedMap f = synthesize_equivariant(v, w);

    VerificationConfig cfg;
    cfg.trials = 500;
    cfg.seed = 3;
    VerificationReport report = run_verification(v, w, f, cfg);
    CHECK(report.status == VerificationReport::Status::Pass);
    CHECK(report.max_equiv_residual < cfg.equiv_tol);
    REQUIRE(report.max_norm_deviation.has_value());
    CHECK(*report.max_norm_deviation < cfg.norm_tol);

    std::mt19937_64 rng(1);
    SynthesizedMap bad = perturb_one_exponent(f, rng);
    VerificationReport bad_report = run_verification(v, w, bad, cfg);
    CHECK(bad_report.status == VerificationReport::Status::Fail);
    CHECK(bad_report.max_equiv_residual > 0.1);

    // mismatched problem is an input error
    CHECK_THROWS_AS(run_verification(w, v, f, cfg), InputError);
}

TEST_CASE("estimator spectra are attached to the estimate") {
    VerificationConfig cfg;
    cfg.neighborhood_radius = 0.2;
    std::vector<Point> samples = subsphere_samples(3, 5, 2500, 9);
    DimensionEstimate est = estimate_local_dimension(samples, cfg);
    REQUIRE(est.conclusive);
    CHECK(est.estimated_dim == 2);
    CHECK(est.n_zero_samples == 2500);
    CHECK(est.n_neighborhoods == est.spectra.size());
    CHECK(est.n_neighborhoods > 0);
    for (const auto& spectrum : est.spectra) CHECK(!spectrum.empty());
}
