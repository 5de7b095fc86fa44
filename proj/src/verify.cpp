#include "equimap/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <thread>

#include "equimap/rng.hpp"

namespace equimap {

void VerificationConfig::validate() const {
    if (trials < 1) throw InputError("trials must be >= 1");
    for (double t : {equiv_tol, norm_tol, zero_tol, fd_step, pca_cutoff, neighborhood_radius})
        if (!(t > 0)) throw InputError("tolerances and steps must be positive");
}

Point random_sphere_point(const Representation& r, std::mt19937_64& rng) {
    if (r.num_slots() == 0) throw InputError("S(V) is empty for the zero representation");
    const bool real_coords = r.group().kind == GroupKind::PTorus && r.group().p == 2;
    std::normal_distribution<double> gauss(0.0, 1.0);
    Point x;
    x.coords.reserve(r.num_slots());
    for (std::size_t i = 0; i < r.num_slots(); ++i) {
        const double re = gauss(rng);
        const double im = real_coords ? 0.0 : gauss(rng);
        x.coords.emplace_back(re, im);
    }
    const double n = x.norm();
    for (auto& c : x.coords) c /= n;
    return x;
}

GroupElement random_group_element(const GroupDescriptor& g, std::mt19937_64& rng) {
    GroupElement out;
    if (g.kind == GroupKind::PTorus) {
        std::uniform_int_distribution<std::int64_t> dist(0, g.p - 1);
        for (std::uint32_t i = 0; i < g.rank; ++i) out.residues.push_back(dist(rng));
    } else {
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        for (std::uint32_t i = 0; i < g.rank; ++i) out.angles.push_back(dist(rng));
    }
    return out;
}

namespace {

unsigned effective_workers(const VerificationConfig& cfg, std::size_t trials) {
    unsigned w = cfg.workers ? cfg.workers : std::min(4u, std::thread::hardware_concurrency());
    if (w == 0) w = 1;
    return static_cast<unsigned>(std::min<std::size_t>(w, trials));
}

// Runs fn(trial) for every trial index; chunked across workers, results
// keyed by trial so the aggregate never depends on the split.
template <typename Fn>
void parallel_trials(std::size_t trials, unsigned workers, Fn&& fn) {
    if (workers <= 1) {
        for (std::size_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t t = lo; t < hi; ++t) fn(t);
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<double> to_reals(const Point& x) {
    std::vector<double> out;
    out.reserve(2 * x.coords.size());
    for (const auto& c : x.coords) {
        out.push_back(c.real());
        out.push_back(c.imag());
    }
    return out;
}

Point from_reals(const std::vector<double>& v) {
    Point x;
    x.coords.reserve(v.size() / 2);
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) x.coords.emplace_back(v[i], v[i + 1]);
    return x;
}

double vec_norm(const std::vector<double>& v) {
    double acc = 0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

} // namespace

double check_equivariance(const SynthesizedMap& f, const VerificationConfig& cfg) {
    cfg.validate();
    std::vector<double> residuals(cfg.trials, 0.0);
    parallel_trials(cfg.trials, effective_workers(cfg, cfg.trials), [&](std::size_t t) {
        std::mt19937_64 rng = substream(cfg.seed, t);
        const Point x = random_sphere_point(f.source(), rng);
        const GroupElement g = random_group_element(f.source().group(), rng);
        const Point lhs = evaluate_raw(f, act(g, f.source(), x));
        const Point rhs = act(g, f.target(), evaluate_raw(f, x));
        residuals[t] = distance(lhs, rhs);
    });
    return *std::max_element(residuals.begin(), residuals.end());
}

double check_norm(const SynthesizedMap& f, const VerificationConfig& cfg) {
    cfg.validate();
    std::vector<double> devs(cfg.trials, 0.0);
    parallel_trials(cfg.trials, effective_workers(cfg, cfg.trials), [&](std::size_t t) {
        std::mt19937_64 rng = substream(cfg.seed, t);
        const Point x = random_sphere_point(f.source(), rng);
        devs[t] = std::abs(evaluate_raw(f, x).norm() - 1.0);
    });
    return *std::max_element(devs.begin(), devs.end());
}

namespace {

double objective(const SynthesizedMap& f, const std::vector<double>& reals) {
    const Point y = evaluate_raw(f, from_reals(reals));
    double acc = 0;
    for (const auto& c : y.coords) acc += std::norm(c);
    return acc; // |f(x)|^2
}

// Projected gradient descent of |f|^2 on the sphere; returns the point if
// it converged below zero_tol.
std::optional<Point> descend_to_zero(const SynthesizedMap& f, const Point& start,
                                     const VerificationConfig& cfg) {
    std::vector<double> x = to_reals(start);
    const std::size_t dim = x.size();

    for (std::size_t iter = 0; iter < cfg.descent_max_iters; ++iter) {
        double fx = objective(f, x);
        if (std::sqrt(fx) < cfg.zero_tol) break;

        // central finite differences
        std::vector<double> grad(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const double save = x[i];
            x[i] = save + cfg.fd_step;
            const double fp = objective(f, x);
            x[i] = save - cfg.fd_step;
            const double fm = objective(f, x);
            x[i] = save;
            grad[i] = (fp - fm) / (2.0 * cfg.fd_step);
        }
        // project onto the tangent space at x
        const double radial = vec_dot(grad, x) / vec_dot(x, x);
        for (std::size_t i = 0; i < dim; ++i) grad[i] -= radial * x[i];
        if (vec_norm(grad) < 1e-13) break; // stationary (|f| constant or a plateau)

        // backtracking step, renormalizing each candidate; require a
        // relative decrease so FD noise on a flat objective cannot pass
        double eta = 0.5;
        bool moved = false;
        while (eta > 1e-9) {
            std::vector<double> cand(dim);
            for (std::size_t i = 0; i < dim; ++i) cand[i] = x[i] - eta * grad[i];
            const double n = vec_norm(cand);
            for (auto& c : cand) c /= n;
            if (objective(f, cand) < fx * (1.0 - 1e-12)) {
                x = std::move(cand);
                moved = true;
                break;
            }
            eta /= 2;
        }
        if (!moved) break;
    }

    const double n = vec_norm(x);
    for (auto& c : x) c /= n;
    if (std::sqrt(objective(f, x)) >= cfg.zero_tol) return std::nullopt;
    return from_reals(x);
}

} // namespace

std::vector<Point> sample_zero_set(const SynthesizedMap& f, const VerificationConfig& cfg) {
    cfg.validate();
    std::vector<std::optional<Point>> found(cfg.trials);
    parallel_trials(cfg.trials, effective_workers(cfg, cfg.trials), [&](std::size_t t) {
        std::mt19937_64 rng = substream(cfg.seed, t);
        found[t] = descend_to_zero(f, random_sphere_point(f.source(), rng), cfg);
    });
    std::vector<Point> samples;
    for (auto& p : found)
        if (p) samples.push_back(std::move(*p));
    return samples;
}

DimensionEstimate estimate_local_dimension(const std::vector<Point>& samples,
                                           const VerificationConfig& cfg) {
    cfg.validate();
    DimensionEstimate est;
    est.n_zero_samples = samples.size();
    if (samples.empty() || samples.size() < cfg.min_zero_samples) return est; // inconclusive

    const std::size_t n = samples.size();
    const std::size_t dim = 2 * samples[0].coords.size();
    Eigen::MatrixXd pts(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> r = to_reals(samples[i]);
        for (std::size_t j = 0; j < dim; ++j) pts(i, j) = r[j];
    }

    const std::size_t stride = std::max<std::size_t>(1, n / cfg.max_neighborhoods);
    std::vector<std::size_t> counts;
    for (std::size_t q = 0; q < n; q += stride) {
        std::vector<std::size_t> nb;
        for (std::size_t i = 0; i < n; ++i)
            if ((pts.row(i) - pts.row(q)).norm() <= cfg.neighborhood_radius) nb.push_back(i);
        if (nb.size() < cfg.min_neighbors) continue;

        Eigen::MatrixXd local(nb.size(), dim);
        for (std::size_t i = 0; i < nb.size(); ++i) local.row(i) = pts.row(nb[i]);
        local.rowwise() -= local.colwise().mean();

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(local);
        const auto& sv = svd.singularValues();
        std::vector<double> spectrum(sv.data(), sv.data() + sv.size());
        std::size_t count = 0;
        if (sv.size() > 0 && sv(0) > 1e-12)
            count = static_cast<std::size_t>(
                std::count_if(spectrum.begin(), spectrum.end(),
                              [&](double s) { return s > cfg.pca_cutoff * spectrum[0]; }));
        counts.push_back(count);
        est.spectra.push_back(std::move(spectrum));
    }

    est.n_neighborhoods = counts.size();
    if (counts.empty()) return est; // inconclusive: no neighborhood was dense enough
    std::sort(counts.begin(), counts.end());
    est.estimated_dim = counts[(counts.size() - 1) / 2];
    est.conclusive = true;
    return est;
}

BoundVerification verify_bound(const Representation& v, const Representation& w,
                               const SynthesizedMap& f, const VerificationConfig& cfg) {
    BoundVerification out;
    out.bound = global_bound(v, w);
    out.analytic_dim = f.analytic_zero_set_dim();

    out.estimate = estimate_local_dimension(sample_zero_set(f, cfg), cfg);
    out.estimate.bound_checked = out.bound;
    if (out.estimate.conclusive)
        out.numeric_agrees = static_cast<std::int64_t>(out.estimate.estimated_dim) >= out.bound;

    if (out.analytic_dim) {
        // analytic value is authoritative
        out.status = *out.analytic_dim >= out.bound ? BoundVerification::Status::Pass
                                                    : BoundVerification::Status::Fail;
    } else if (out.estimate.conclusive) {
        out.status = out.numeric_agrees ? BoundVerification::Status::Pass
                                        : BoundVerification::Status::Fail;
    } else {
        out.status = BoundVerification::Status::Inconclusive;
    }
    return out;
}

VerificationReport run_verification(const Representation& v, const Representation& w,
                                    const SynthesizedMap& f, const VerificationConfig& cfg) {
    if (!(f.source() == v) || !(f.target() == w))
        throw InputError("map does not match the problem's representations");

    VerificationReport report;
    report.max_equiv_residual = check_equivariance(f, cfg);
    bool fail = report.max_equiv_residual > cfg.equiv_tol;

    if (!f.has_zero_blocks()) {
        report.max_norm_deviation = check_norm(f, cfg);
        fail = fail || *report.max_norm_deviation > cfg.norm_tol;
    }

    report.bound_check = verify_bound(v, w, f, cfg);
    bool inconclusive = false;
    if (report.bound_check->status == BoundVerification::Status::Fail) fail = true;
    if (report.bound_check->status == BoundVerification::Status::Inconclusive &&
        f.has_zero_blocks())
        inconclusive = true;

    report.status = fail ? VerificationReport::Status::Fail
                         : (inconclusive ? VerificationReport::Status::Inconclusive
                                         : VerificationReport::Status::Pass);
    return report;
}

} // namespace equimap
