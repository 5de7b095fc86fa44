#pragma once

#include <string>

#include <json.hpp>

#include "equimap/bounds.hpp"
#include "equimap/synth.hpp"
#include "equimap/verify.hpp"

namespace equimap {

// Documents preserve key order so re-serialization is byte-identical.
using json = nlohmann::ordered_json;

struct Problem {
    Representation v;
    Representation w;
};

/// Problem document:
/// { "group": {"kind": "p-torus"|"torus", "p": <prime>, "rank": k},
///   "V": {"weights": [{"w": [...], "mult": m}, ...]},
///   "W": {"weights": [...]} }
/// p-torus weights are reduced mod p; a weight reducing to zero is an error.
Problem parse_problem(const json& doc);
Problem load_problem(const std::string& path);
json problem_to_json(const Problem& p);

/// Stream document for the witness command: W plus a finite generator
/// block and a repetition rule standing in for an infinite V.
struct StreamProblem {
    Representation w;
    WeightStream stream;
};

StreamProblem parse_stream_problem(const json& doc);
StreamProblem load_stream_problem(const std::string& path);

json map_to_json(const SynthesizedMap& f);
SynthesizedMap map_from_json(const json& doc);
SynthesizedMap load_map(const std::string& path);

json group_to_json(const GroupDescriptor& g);
json subgroup_to_json(const Subgroup& h);
json decision_to_json(const DecisionReport& report);
json bound_report_to_json(const BoundReport& report);
json verification_to_json(const VerificationReport& report, const VerificationConfig& cfg);
json witness_to_json(const WitnessResult& result, std::size_t target_d);

/// Canonical serialization used for every emitted document (2-space
/// indent, trailing newline).
std::string dump_document(const json& doc);
void save_document(const json& doc, const std::string& path);
json load_json(const std::string& path);

} // namespace equimap
