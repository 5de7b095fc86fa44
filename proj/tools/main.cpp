// equimap: decide existence of equivariant sphere maps for p-torus and
// torus representations, synthesize explicit witnesses, bound zero-set
// dimensions, and verify constructions numerically.
//
// Exit codes: 0 success (any verdict), 1 invalid input, 2 verification FAIL.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

#include "equimap/io.hpp"

using namespace equimap;

namespace {

std::string weights_str(const Representation& r) {
    if (r.empty()) return "{}";
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < r.weights().size(); ++i) {
        const auto& e = r.weights()[i];
        if (i) os << ", ";
        os << '(';
        for (std::size_t j = 0; j < e.weight.size(); ++j) {
            if (j) os << ',';
            os << e.weight[j];
        }
        os << ") x" << e.mult;
    }
    os << '}';
    return os.str();
}

std::string dims_str(const Representation& r) {
    std::ostringstream os;
    os << "real dim " << real_dim(r);
    if (!(r.group().kind == GroupKind::PTorus && r.group().p == 2))
        os << ", complex dim " << complex_dim(r);
    return os.str();
}

void emit(const json& doc, bool as_json, const std::string& out_path,
          const std::string& table) {
    if (!out_path.empty()) {
        save_document(doc, out_path);
        return;
    }
    if (as_json)
        std::cout << dump_document(doc);
    else
        std::cout << table;
}

std::string analyze_table(const Problem& problem, const BoundReport& bounds) {
    std::ostringstream os;
    const Representation& v = problem.v;
    const Representation& w = problem.w;
    os << "group: " << v.group().to_string() << "\n";
    os << "V: " << dims_str(v) << ", weights " << weights_str(v) << "\n";
    os << "W: " << dims_str(w) << ", weights " << weights_str(w) << "\n";

    if (v.group().kind == GroupKind::PTorus && !v.empty()) {
        os << "\nprojective lines of V:\n";
        std::map<FpVector, std::size_t> w_dims;
        if (!w.empty())
            for (const auto& line : line_partition(w).lines) w_dims[line.rep] = line.real_dim;
        for (const auto& line : line_partition(v).lines) {
            const auto it = w_dims.find(line.rep);
            os << "  [" << line.rep.to_string() << "]  slots " << line.slots.size()
               << "  dim_R V_L " << line.real_dim << "  dim_R W_L "
               << (it == w_dims.end() ? 0 : it->second) << "\n";
        }
    }

    os << "\nzero-set bounds (dim_R V^H - dim_R W^H - 1 per isotropy subgroup H):\n";
    for (const auto& e : bounds.per_subgroup) {
        os << "  H = " << subgroup_to_string(e.subgroup) << "  dim_R V^H " << e.dim_r_v_h
           << "  dim_R W^H " << e.dim_r_w_h << "  bound " << e.bound;
        if (e.bound >= 0) os << "  [Z_f nonempty]";
        if (e.derived_by_restriction) os << "  [derived by restriction]";
        os << "\n";
    }
    os << "global bound " << bounds.global_bound;
    if (bounds.parity_refined) os << " (parity-refined, odd)";
    os << ", best bound " << bounds.best_bound << "\n";
    return os.str();
}

std::string decide_table(const DecisionReport& report) {
    std::ostringstream os;
    os << "verdict: " << verdict_to_string(report.verdict) << "\n";
    if (!report.ledger.empty()) {
        os << "line ledger (H = ker alpha):\n";
        for (const auto& e : report.ledger)
            os << "  [" << e.line_rep.to_string() << "]  dim_R V^H " << e.dim_r_v_h
               << "  dim_R W^H " << e.dim_r_w_h << "  "
               << (e.satisfied ? "satisfied" : "VIOLATED") << "\n";
    }
    return os.str();
}

std::string verify_table(const VerificationReport& report, const VerificationConfig& cfg) {
    std::ostringstream os;
    const char* status = report.status == VerificationReport::Status::Pass ? "PASS"
                         : report.status == VerificationReport::Status::Fail ? "FAIL"
                                                                             : "INCONCLUSIVE";
    os << "verification: " << status << "\n";
    os << "equivariance: max residual " << report.max_equiv_residual << " (tol " << cfg.equiv_tol
       << ", " << cfg.trials << " trials, seed " << cfg.seed << ")\n";
    if (report.max_norm_deviation)
        os << "norm: max deviation " << *report.max_norm_deviation << " (tol " << cfg.norm_tol
           << ")\n";
    if (report.bound_check) {
        const auto& bc = *report.bound_check;
        os << "zero set: bound " << bc.bound;
        if (bc.analytic_dim) os << ", analytic dim " << *bc.analytic_dim;
        os << ", " << bc.estimate.n_zero_samples << " samples";
        if (bc.estimate.conclusive)
            os << ", estimated dim " << bc.estimate.estimated_dim;
        else
            os << ", estimate inconclusive";
        os << "\n";
    }
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"equivariant sphere maps: existence, witnesses, zero-set bounds"};
    app.require_subcommand(1);

    std::string problem_path, map_path, out_path, format = "table";
    std::size_t trials = 1000, target_d = 0;
    std::uint64_t seed = 0;
    bool partial = false;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json"}));
        cmd->add_option("-o,--output", out_path, "write the document to a file");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "dimensions, lines, isotropy, bounds");
    analyze->add_option("problem", problem_path, "problem file")->required();
    add_format(analyze);

    CLI::App* decide = app.add_subcommand("decide", "existence of a map S(V) -> S(W)");
    decide->add_option("problem", problem_path, "problem file")->required();
    add_format(decide);

    CLI::App* synth = app.add_subcommand("synthesize", "construct a witness map");
    synth->add_option("problem", problem_path, "problem file")->required();
    synth->add_option("map", map_path, "output map file")->required();
    synth->add_flag("--partial", partial,
                    "kill violating lines instead of refusing (zero set becomes a sphere)");

    CLI::App* verify = app.add_subcommand("verify", "equivariance / norm / zero-set checks");
    verify->add_option("problem", problem_path, "problem file")->required();
    verify->add_option("map", map_path, "map file")->required();
    verify->add_option("--trials", trials, "Monte-Carlo trials");
    verify->add_option("--seed", seed, "RNG seed");
    add_format(verify);

    CLI::App* witness =
        app.add_subcommand("witness", "finite sub-representation bound from a stream");
    witness->add_option("stream", problem_path, "stream file")->required();
    witness->add_option("--target-dim", target_d, "target real dimension")->required();
    add_format(witness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e); // prints help or the error
        return rc == 0 ? 0 : 1;
    }

    if (analyze->parsed()) {
        Problem problem = load_problem(problem_path);
        BoundReport bounds = refined_bounds(problem.v, problem.w);
        const json pj = problem_to_json(problem);
        json doc;
        doc["group"] = group_to_json(problem.v.group());
        json vj, wj;
        vj["weights"] = pj["V"]["weights"];
        vj["real_dim"] = real_dim(problem.v);
        wj["weights"] = pj["W"]["weights"];
        wj["real_dim"] = real_dim(problem.w);
        if (!(problem.v.group().kind == GroupKind::PTorus && problem.v.group().p == 2)) {
            vj["complex_dim"] = complex_dim(problem.v);
            wj["complex_dim"] = complex_dim(problem.w);
        }
        doc["V"] = std::move(vj);
        doc["W"] = std::move(wj);
        if (problem.v.group().kind == GroupKind::PTorus && !problem.v.empty()) {
            json lines = json::array();
            for (const auto& line : line_partition(problem.v).lines) {
                json lj;
                lj["rep"] = line.rep.entries;
                lj["slots"] = line.slots;
                lj["dim_R"] = line.real_dim;
                lines.push_back(std::move(lj));
            }
            doc["lines"] = std::move(lines);
        }
        json iso = json::array();
        for (const auto& h : isotropy_subgroups(problem.v)) iso.push_back(subgroup_to_json(h));
        doc["isotropy"] = std::move(iso);
        doc["bounds"] = bound_report_to_json(bounds);
        emit(doc, format == "json", out_path, analyze_table(problem, bounds));
        return 0;
    }

    if (decide->parsed()) {
        Problem problem = load_problem(problem_path);
        DecisionReport report = decide_map_existence(problem.v, problem.w);
        emit(decision_to_json(report), format == "json", out_path, decide_table(report));
        return 0;
    }

    if (synth->parsed()) {
        Problem problem = load_problem(problem_path);
        SynthesizedMap f = partial ? synthesize_partial(problem.v, problem.w)
                                   : synthesize_equivariant(problem.v, problem.w);
        save_document(map_to_json(f), map_path);
        std::size_t assigns = f.blocks().size() - f.zero_set_slots().size();
        std::cout << "map written to " << map_path << " (" << assigns << " assignments, "
                  << f.zero_set_slots().size() << " zero blocks)\n";
        if (f.has_zero_blocks())
            std::cout << "zero set: sphere of dimension " << f.analytic_zero_set_dim() << "\n";
        return 0;
    }

    if (verify->parsed()) {
        Problem problem = load_problem(problem_path);
        SynthesizedMap f = load_map(map_path);
        VerificationConfig cfg;
        cfg.trials = trials;
        cfg.seed = seed;
        VerificationReport report = run_verification(problem.v, problem.w, f, cfg);
        emit(verification_to_json(report, cfg), format == "json", out_path,
             verify_table(report, cfg));
        return report.status == VerificationReport::Status::Fail ? 2 : 0;
    }

    if (witness->parsed()) {
        StreamProblem sp = load_stream_problem(problem_path);
        WitnessResult result = infinite_witness(sp.stream, sp.w, target_d);
        std::ostringstream table;
        table << "target real dim " << target_d << " reached with " << result.v_d.num_slots()
              << " slots\n"
              << "V(d): weights " << weights_str(result.v_d) << ", real dim "
              << real_dim(result.v_d) << "\n"
              << "bound: dim_R V(d) - dim_R W - 1 = " << result.bound << "\n";
        emit(witness_to_json(result, target_d), format == "json", out_path, table.str());
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
