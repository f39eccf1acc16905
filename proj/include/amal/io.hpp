#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "amal/shelah.hpp"

namespace amal {

using json = nlohmann::ordered_json;

// Group spec files: {"family":"cyclic","n":51} and friends, or an explicit
// {"table":[[...]],"name":"..."}.
GroupSpec parse_group_spec(const json& j);

struct AmalgamSpec {
  GroupSpec L, G, H;
  std::vector<Elem> emb_L, emb_G;
};

AmalgamSpec parse_amalgam_spec(const json& j);
AmalgamContext load_context(const json& j);

// Instance files add a "params" object to the amalgam spec.
ShelahParams parse_params(const json& j);

json read_json_file(const std::string& path);
std::string fnv1a64_file(const std::string& path);

json to_json(const SolverStats& s);
json to_json(const AmalgamWord& w);
json to_json(const Conclusion& c);
json to_json(const VerificationReport& r);
json to_json(const PieceReport& r, const RelatorSet& R);
json to_json(const CprimeReport& r, const RelatorSet& R);
json to_json(const QlgReport& r);
json trace_to_json(const DehnTrace& t, bool member);
DehnTrace trace_from_json(const AmalgamContext& ctx, const json& j);

// Relator dumps: one JSON string per line, word-literal syntax.
void write_relators_jsonl(std::ostream& out, const RelatorSet& R);
std::vector<AmalgamWord> read_relators_jsonl(const AmalgamContext& ctx,
                                             std::istream& in);

}  // namespace amal
