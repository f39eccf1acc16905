#include "amal/io.hpp"

#include <fstream>
#include <sstream>

namespace amal {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

GroupSpec parse_group_spec(const json& j) {
  if (!j.is_object()) throw ParseError("group spec must be a JSON object");
  GroupSpec spec;
  if (j.contains("name")) spec.name = field<std::string>(j, "name");
  if (j.contains("table")) {
    spec.kind = GroupSpec::Kind::table;
    spec.table = field<std::vector<std::vector<Elem>>>(j, "table");
    return spec;
  }
  const auto family = field<std::string>(j, "family");
  if (family == "cyclic") {
    spec.kind = GroupSpec::Kind::cyclic;
    spec.n = field<int>(j, "n");
  } else if (family == "dihedral") {
    spec.kind = GroupSpec::Kind::dihedral;
    spec.n = field<int>(j, "n");
  } else if (family == "symmetric") {
    spec.kind = GroupSpec::Kind::symmetric;
    spec.n = field<int>(j, "n");
  } else if (family == "product") {
    spec.kind = GroupSpec::Kind::product;
    if (!j.contains("parts") || !j.at("parts").is_array())
      throw ParseError("product spec needs a 'parts' array");
    for (const auto& part : j.at("parts"))
      spec.parts.push_back(parse_group_spec(part));
  } else {
    throw ParseError("unknown group family '" + family + "'");
  }
  if (spec.kind != GroupSpec::Kind::product && spec.n < 1)
    throw ParseError("group family size must be positive");
  return spec;
}

AmalgamSpec parse_amalgam_spec(const json& j) {
  AmalgamSpec spec;
  if (!j.contains("L") || !j.contains("G") || !j.contains("H"))
    throw ParseError("amalgam spec needs 'L', 'G' and 'H' group objects");
  spec.L = parse_group_spec(j.at("L"));
  spec.G = parse_group_spec(j.at("G"));
  spec.H = parse_group_spec(j.at("H"));
  spec.emb_L = field<std::vector<Elem>>(j, "emb_L");
  spec.emb_G = field<std::vector<Elem>>(j, "emb_G");
  return spec;
}

AmalgamContext load_context(const json& j) {
  AmalgamSpec spec = parse_amalgam_spec(j);
  return build_context(make_group(spec.L), make_group(spec.G),
                       make_group(spec.H), std::move(spec.emb_L),
                       std::move(spec.emb_G));
}

ShelahParams parse_params(const json& j) {
  if (!j.contains("params")) throw ParseError("instance file has no 'params'");
  const json& p = j.at("params");
  ShelahParams out;
  out.n = field<int>(p, "n");
  out.lambda = Rational::parse(field<std::string>(p, "lambda"));
  out.a_seq = field<std::vector<Elem>>(p, "a_seq");
  out.x_seq = field<std::vector<Elem>>(p, "x_seq");
  out.a = field<Elem>(p, "a");
  out.b = field<Elem>(p, "b");
  if (p.contains("budgets")) {
    const json& b = p.at("budgets");
    if (b.contains("conj_len")) out.budgets.conj_len = field<int>(b, "conj_len");
    if (b.contains("product_n"))
      out.budgets.product_n = field<int>(b, "product_n");
    if (b.contains("samples")) out.budgets.samples = field<int>(b, "samples");
    if (b.contains("seed"))
      out.budgets.seed = field<std::uint64_t>(b, "seed");
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
}

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

json to_json(const SolverStats& s) {
  return json{{"greendlinger_calls", s.greendlinger_calls},
              {"dehn_calls", s.dehn_calls},
              {"dehn_steps", s.dehn_steps},
              {"shortcut_decisions", s.shortcut_decisions},
              {"candidate_scans", s.candidate_scans}};
}

json to_json(const AmalgamWord& w) { return format_word(w); }

json to_json(const Conclusion& c) {
  json j{{"id", c.id},
         {"pass", c.pass},
         {"mode", c.mode},
         {"detail", c.detail}};
  if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
  return j;
}

json to_json(const VerificationReport& r) {
  json conclusions = json::array();
  for (const auto& c : r.conclusions) conclusions.push_back(to_json(c));
  return json{{"lemma", r.lemma},
              {"conclusions", std::move(conclusions)},
              {"stats", to_json(r.stats)},
              {"all_pass", r.all_pass()}};
}

json to_json(const PieceReport& r, const RelatorSet& R) {
  json hist = json::object();
  for (const auto& [len, count] : r.histogram)
    hist[std::to_string(len)] = count;
  json j{{"max_piece_length", r.max_piece_length},
         {"sampled", r.sampled},
         {"pairs_considered", r.pairs_considered},
         {"histogram", std::move(hist)}};
  if (r.witness) {
    const auto& [a, b, piece] = *r.witness;
    j["witness"] = json{{"relator_a", format_word(R.relators[a])},
                        {"relator_b", format_word(R.relators[b])},
                        {"piece", format_word(piece)}};
  }
  return j;
}

json to_json(const CprimeReport& r, const RelatorSet& R) {
  json j{{"ok", r.ok},
         {"lambda", r.lambda.str()},
         {"min_relator_length", r.min_relator_length},
         {"max_piece_length", r.max_piece_length},
         {"relator_count", R.size()}};
  if (!r.ok) j["violation"] = r.violation;
  if (r.witness) {
    const auto& [a, b, piece] = *r.witness;
    j["witness"] = json{{"relator_a", format_word(R.relators[a])},
                        {"relator_b", format_word(R.relators[b])},
                        {"piece", format_word(piece)}};
  }
  return j;
}

json to_json(const QlgReport& r) {
  json j{{"injective_on_factors", r.injective_on_factors},
         {"h_cap_ok", r.h_cap_ok},
         {"pairs_checked", r.pairs_checked},
         {"solver_calls", r.solver_calls},
         {"shortcut", r.shortcut}};
  if (r.witness)
    j["witness"] = json{{"x", format_word(r.witness->first)},
                        {"y", format_word(r.witness->second)}};
  return j;
}

json trace_to_json(const DehnTrace& t, bool member) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back(json{{"before", format_word(s.before)},
                         {"relator", s.match.relator},
                         {"position", s.match.position},
                         {"u", format_word(s.match.u)},
                         {"s", format_word(s.match.s)},
                         {"v", format_word(s.match.v)},
                         {"t", format_word(s.match.t)},
                         {"after", format_word(s.after)}});
  }
  return json{{"member", member},
              {"steps", std::move(steps)},
              {"terminal", format_word(t.terminal)}};
}

DehnTrace trace_from_json(const AmalgamContext& ctx, const json& j) {
  DehnTrace t;
  for (const auto& s : j.at("steps")) {
    DehnStep step;
    step.before = parse_word(ctx, field<std::string>(s, "before"));
    step.match.relator = field<int>(s, "relator");
    step.match.position = field<int>(s, "position");
    step.match.u = parse_word(ctx, field<std::string>(s, "u"));
    step.match.s = parse_word(ctx, field<std::string>(s, "s"));
    step.match.v = parse_word(ctx, field<std::string>(s, "v"));
    step.match.t = parse_word(ctx, field<std::string>(s, "t"));
    step.after = parse_word(ctx, field<std::string>(s, "after"));
    t.steps.push_back(std::move(step));
  }
  t.terminal = parse_word(ctx, field<std::string>(j, "terminal"));
  return t;
}

void write_relators_jsonl(std::ostream& out, const RelatorSet& R) {
  for (const auto& r : R.relators) out << json(format_word(r)) << "\n";
}

std::vector<AmalgamWord> read_relators_jsonl(const AmalgamContext& ctx,
                                             std::istream& in) {
  std::vector<AmalgamWord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(parse_word(ctx, json::parse(line).get<std::string>()));
    } catch (const json::exception& e) {
      throw ParseError("relator dump line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return out;
}

}  // namespace amal
