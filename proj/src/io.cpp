#include "equimap/io.hpp"

#include <algorithm>
#include <fstream>

namespace equimap {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InputError(msg); }

const json& field(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) bad(std::string("missing field \"") + key + '"');
    return *it;
}

std::int64_t int_field(const json& doc, const char* key, std::int64_t lo, std::int64_t hi) {
    const json& v = field(doc, key);
    if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
    const std::int64_t x = v.get<std::int64_t>();
    if (x < lo || x > hi)
        bad(std::string("\"") + key + "\" = " + std::to_string(x) + " is out of range [" +
            std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

IntVector parse_int_vector(const json& arr, const char* what) {
    if (!arr.is_array()) bad(std::string(what) + " must be an array of integers");
    IntVector v;
    for (const auto& x : arr) {
        if (!x.is_number_integer()) bad(std::string(what) + " must contain integers");
        v.push_back(x.get<std::int64_t>());
    }
    return v;
}

GroupDescriptor parse_group(const json& g) {
    const std::string kind = field(g, "kind").get<std::string>();
    const auto rank = static_cast<std::uint32_t>(int_field(g, "rank", 1, 64));
    if (kind == "p-torus")
        return GroupDescriptor::p_torus(static_cast<std::uint32_t>(int_field(g, "p", 2, 1 << 20)),
                                        rank);
    if (kind == "torus") {
        if (g.contains("p")) bad("\"p\" is only valid for a p-torus group");
        return GroupDescriptor::torus(rank);
    }
    bad("group kind must be \"p-torus\" or \"torus\"");
}

std::vector<WeightEntry> parse_weights(const json& rep) {
    const json& arr = field(rep, "weights");
    if (!arr.is_array()) bad("\"weights\" must be an array");
    std::vector<WeightEntry> out;
    for (const auto& entry : arr) {
        WeightEntry e;
        e.weight = parse_int_vector(field(entry, "w"), "weight");
        e.mult = entry.contains("mult")
                     ? static_cast<std::uint32_t>(int_field(entry, "mult", 1, 1000000))
                     : 1;
        out.push_back(std::move(e));
    }
    return out;
}

json weights_to_json(const Representation& r) {
    json arr = json::array();
    for (const auto& e : r.weights()) {
        json w;
        w["w"] = e.weight;
        w["mult"] = e.mult;
        arr.push_back(std::move(w));
    }
    json rep;
    rep["weights"] = std::move(arr);
    return rep;
}

} // namespace

json group_to_json(const GroupDescriptor& g) {
    json out;
    out["kind"] = g.kind == GroupKind::PTorus ? "p-torus" : "torus";
    if (g.kind == GroupKind::PTorus) out["p"] = g.p;
    out["rank"] = g.rank;
    return out;
}

Problem parse_problem(const json& doc) {
    const GroupDescriptor group = parse_group(field(doc, "group"));
    Problem p;
    p.v = Representation(group, parse_weights(field(doc, "V")));
    p.w = Representation(group, parse_weights(field(doc, "W")));
    return p;
}

json problem_to_json(const Problem& p) {
    json doc;
    doc["group"] = group_to_json(p.v.group());
    doc["V"] = weights_to_json(p.v);
    doc["W"] = weights_to_json(p.w);
    return doc;
}

StreamProblem parse_stream_problem(const json& doc) {
    const GroupDescriptor group = parse_group(field(doc, "group"));
    StreamProblem sp;
    sp.w = Representation(group, parse_weights(field(doc, "W")));
    const json& stream = field(doc, "stream");
    for (const auto& w : field(stream, "weights"))
        sp.stream.generators.push_back(parse_int_vector(w, "stream weight"));
    sp.stream.repeat = stream.contains("repeat") && stream["repeat"].get<bool>();
    if (sp.stream.generators.empty()) bad("stream has no weights");
    return sp;
}

json map_to_json(const SynthesizedMap& f) {
    json doc;
    doc["group"] = group_to_json(f.source().group());
    doc["V"] = weights_to_json(f.source());
    doc["W"] = weights_to_json(f.target());
    json blocks = json::array();
    for (const auto& block : f.blocks()) {
        json b;
        if (const auto* a = std::get_if<Assignment>(&block)) {
            b["type"] = "assign";
            b["src"] = a->src_slot;
            b["dst"] = a->dst_slot;
            b["exp"] = a->exponent;
        } else {
            b["type"] = "zero";
            b["src"] = std::get<ZeroBlock>(block).src_slot;
        }
        blocks.push_back(std::move(b));
    }
    doc["blocks"] = std::move(blocks);
    doc["zero_set_slots"] = f.zero_set_slots();
    return doc;
}

SynthesizedMap map_from_json(const json& doc) {
    const GroupDescriptor group = parse_group(field(doc, "group"));
    Representation v(group, parse_weights(field(doc, "V")));
    Representation w(group, parse_weights(field(doc, "W")));

    std::vector<MapBlock> blocks;
    for (const auto& b : field(doc, "blocks")) {
        const std::string type = field(b, "type").get<std::string>();
        if (type == "assign") {
            Assignment a;
            a.src_slot = static_cast<std::size_t>(int_field(b, "src", 0, 1 << 30));
            a.dst_slot = static_cast<std::size_t>(int_field(b, "dst", 0, 1 << 30));
            a.exponent = static_cast<std::uint32_t>(int_field(b, "exp", 0, 1 << 30));
            if (group.kind == GroupKind::PTorus && a.exponent >= group.p)
                bad("assignment exponent out of range for F_p");
            blocks.emplace_back(a);
        } else if (type == "zero") {
            blocks.emplace_back(ZeroBlock{static_cast<std::size_t>(int_field(b, "src", 0, 1 << 30))});
        } else {
            bad("block type must be \"assign\" or \"zero\"");
        }
    }
    SynthesizedMap f(std::move(v), std::move(w), std::move(blocks));
    if (doc.contains("zero_set_slots")) {
        std::vector<std::size_t> listed;
        for (const auto& s : doc["zero_set_slots"]) listed.push_back(s.get<std::size_t>());
        if (listed != f.zero_set_slots())
            bad("zero_set_slots does not match the map's zero blocks");
    }
    return f;
}

json decision_to_json(const DecisionReport& report) {
    json doc;
    doc["verdict"] = verdict_to_string(report.verdict);
    json ledger = json::array();
    for (const auto& e : report.ledger) {
        json row;
        row["line"] = e.line_rep.entries;
        row["dim_R_V_H"] = e.dim_r_v_h;
        row["dim_R_W_H"] = e.dim_r_w_h;
        row["satisfied"] = e.satisfied;
        ledger.push_back(std::move(row));
    }
    doc["ledger"] = std::move(ledger);
    json viol = json::array();
    for (const auto& l : report.violating_lines) viol.push_back(l.entries);
    doc["violating_lines"] = std::move(viol);
    return doc;
}

json subgroup_to_json(const Subgroup& h) {
    json out;
    if (const auto* s = std::get_if<FpSubspace>(&h)) {
        out["kind"] = "fp-subspace";
        out["rank"] = s->rank();
        json basis = json::array();
        for (const auto& b : s->basis) basis.push_back(b.entries);
        out["basis"] = std::move(basis);
    } else {
        const auto& l = std::get<IntLattice>(h);
        out["kind"] = "subtorus";
        out["rank"] = l.rank();
        out["cocharacters"] = l.basis;
    }
    return out;
}

json bound_report_to_json(const BoundReport& report) {
    json doc;
    doc["global"] = report.global_bound;
    doc["best"] = report.best_bound;
    doc["parity_refined"] = report.parity_refined;
    doc["zero_set_nonempty"] = report.global_bound >= 0;
    json per = json::array();
    for (const auto& e : report.per_subgroup) {
        json row;
        row["subgroup"] = subgroup_to_json(e.subgroup);
        row["dim_R_V_H"] = e.dim_r_v_h;
        row["dim_R_W_H"] = e.dim_r_w_h;
        row["bound"] = e.bound;
        if (e.derived_by_restriction) row["derived_by_restriction"] = true;
        per.push_back(std::move(row));
    }
    doc["per_subgroup"] = std::move(per);
    return doc;
}

namespace {

const char* bound_status_str(BoundVerification::Status s) {
    switch (s) {
        case BoundVerification::Status::Pass: return "PASS";
        case BoundVerification::Status::Fail: return "FAIL";
        case BoundVerification::Status::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

// Element-wise median of the per-neighborhood spectra, each normalized by
// its largest singular value; truncated to the shortest spectrum.
std::vector<double> median_spectrum(const std::vector<std::vector<double>>& spectra) {
    if (spectra.empty()) return {};
    std::size_t len = spectra[0].size();
    for (const auto& s : spectra) len = std::min(len, s.size());
    std::vector<double> out;
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<double> column;
        column.reserve(spectra.size());
        for (const auto& s : spectra) column.push_back(s[0] > 0 ? s[i] / s[0] : 0.0);
        std::nth_element(column.begin(), column.begin() + (column.size() - 1) / 2, column.end());
        out.push_back(column[(column.size() - 1) / 2]);
    }
    return out;
}

} // namespace

json verification_to_json(const VerificationReport& report, const VerificationConfig& cfg) {
    json doc;
    switch (report.status) {
        case VerificationReport::Status::Pass: doc["status"] = "PASS"; break;
        case VerificationReport::Status::Fail: doc["status"] = "FAIL"; break;
        case VerificationReport::Status::Inconclusive: doc["status"] = "INCONCLUSIVE"; break;
    }
    doc["seed"] = cfg.seed;
    doc["trials"] = cfg.trials;
    json equiv;
    equiv["max_residual"] = report.max_equiv_residual;
    equiv["tolerance"] = cfg.equiv_tol;
    doc["equivariance"] = std::move(equiv);
    if (report.max_norm_deviation) {
        json norm;
        norm["max_deviation"] = *report.max_norm_deviation;
        norm["tolerance"] = cfg.norm_tol;
        doc["norm"] = std::move(norm);
    }
    if (report.bound_check) {
        const auto& bc = *report.bound_check;
        json zs;
        zs["status"] = bound_status_str(bc.status);
        zs["bound"] = bc.bound;
        if (bc.analytic_dim) zs["analytic_dim"] = *bc.analytic_dim;
        zs["n_samples"] = bc.estimate.n_zero_samples;
        if (bc.estimate.conclusive) {
            zs["estimated_dim"] = bc.estimate.estimated_dim;
            zs["n_neighborhoods"] = bc.estimate.n_neighborhoods;
            zs["median_spectrum"] = median_spectrum(bc.estimate.spectra);
            zs["numeric_agrees"] = bc.numeric_agrees;
        } else {
            zs["estimated_dim"] = nullptr;
        }
        doc["zero_set"] = std::move(zs);
    }
    return doc;
}

json witness_to_json(const WitnessResult& result, std::size_t target_d) {
    json doc;
    doc["target_real_dim"] = target_d;
    doc["group"] = group_to_json(result.v_d.group());
    doc["V_d"] = weights_to_json(result.v_d);
    doc["slots"] = result.v_d.num_slots();
    doc["real_dim"] = real_dim(result.v_d);
    doc["bound"] = result.bound;
    return doc;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

void save_document(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << dump_document(doc);
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

Problem load_problem(const std::string& path) { return parse_problem(load_json(path)); }

StreamProblem load_stream_problem(const std::string& path) {
    return parse_stream_problem(load_json(path));
}

SynthesizedMap load_map(const std::string& path) { return map_from_json(load_json(path)); }

} // namespace equimap
