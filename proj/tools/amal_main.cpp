// Batch front end: group/amalgam ingestion, verification runs, JSON reports.
//
// Exit codes: 0 all checks pass, 1 a check failed (counterexample in the
// report), 2 input or usage error.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "amal/io.hpp"
#include "amal/parallel.hpp"

namespace {

using namespace amal;

constexpr const char* kToolVersion = "0.1.0";

struct Outcome {
  json result;
  bool ok = true;
};

template <typename T>
T cfg_get(const json& cfg, const char* key, T fallback) {
  return cfg.contains(key) ? cfg.at(key).get<T>() : fallback;
}

std::string cfg_str(const json& cfg, const char* key) {
  if (!cfg.contains(key))
    throw ParseError(std::string("config is missing '") + key + "'");
  return cfg.at(key).get<std::string>();
}

// ---- subcommand bodies, callable both from the CLI and from recheck ----

Outcome run_group_check(const json& cfg) {
  const auto path = cfg_str(cfg, "group");
  GroupSpec spec = parse_group_spec(read_json_file(path));
  spec.assoc_check_bound = cfg_get<int>(cfg, "assoc_bound", 256);
  const FiniteGroup g = make_group(spec);
  return Outcome{json{{"name", g.name},
                      {"order", g.order},
                      {"identity", g.identity},
                      {"assoc_checked", g.order <= spec.assoc_check_bound}},
                 true};
}

SubgroupEmbedding subgroup_from_cfg(const FiniteGroup& g, const json& cfg) {
  std::vector<Elem> gens;
  if (cfg.contains("generators"))
    gens = cfg.at("generators").get<std::vector<Elem>>();
  else if (cfg.contains("subgroup")) {
    const json sub = read_json_file(cfg.at("subgroup").get<std::string>());
    if (!sub.contains("generators"))
      throw ParseError("subgroup spec has no 'generators'");
    gens = sub.at("generators").get<std::vector<Elem>>();
  }
  if (gens.empty()) return trivial_embedding(g);
  return subgroup_from_generators(g, gens);
}

Outcome run_group_malnormal(const json& cfg) {
  const FiniteGroup g =
      make_group(parse_group_spec(read_json_file(cfg_str(cfg, "group"))));
  const SubgroupEmbedding emb = subgroup_from_cfg(g, cfg);
  const SequenceReport rep = is_malnormal(g, emb);
  json result{{"group", g.name},
              {"subgroup_order", emb.sub.order},
              {"malnormal", rep.ok}};
  if (!rep.ok)
    result["witness"] = json{{"x", rep.witness->first},
                             {"h", rep.witness->second},
                             {"what", rep.what}};
  return Outcome{std::move(result), rep.ok};
}

Outcome run_find_separated(const json& cfg) {
  const FiniteGroup g =
      make_group(parse_group_spec(read_json_file(cfg_str(cfg, "group"))));
  const SubgroupEmbedding emb = subgroup_from_cfg(g, cfg);
  const int n = cfg.at("n").get<int>();
  std::vector<Elem> pool;
  if (cfg.contains("pool"))
    pool = cfg.at("pool").get<std::vector<Elem>>();
  else
    for (Elem x = 0; x < g.order; ++x) pool.push_back(x);
  const auto seq = find_pm_separated(g, emb, pool, n);
  json result{{"group", g.name}, {"n", n}, {"found", seq.has_value()}};
  if (seq) {
    if (!is_pm_separated(g, emb, *seq))
      throw Error("internal: search output failed the separatedness oracle");
    result["sequence"] = *seq;
    result["verified"] = true;
  }
  return Outcome{std::move(result), true};
}

Outcome run_amalgam_nf(const json& cfg) {
  const AmalgamContext ctx = load_context(read_json_file(cfg_str(cfg, "amalgam")));
  const AmalgamWord w = parse_word(ctx, cfg_str(cfg, "word"));
  return Outcome{json{{"input", cfg_str(cfg, "word")},
                      {"normal_form", format_word(w)},
                      {"length", w.length()}},
                 true};
}

Outcome run_amalgam_mul(const json& cfg) {
  const AmalgamContext ctx = load_context(read_json_file(cfg_str(cfg, "amalgam")));
  const AmalgamWord a = parse_word(ctx, cfg_str(cfg, "lhs"));
  const AmalgamWord b = parse_word(ctx, cfg_str(cfg, "rhs"));
  const AmalgamWord p = mul(ctx, a, b);
  return Outcome{json{{"lhs", format_word(a)},
                      {"rhs", format_word(b)},
                      {"product", format_word(p)},
                      {"length", p.length()}},
                 true};
}

Outcome run_amalgam_len(const json& cfg) {
  const AmalgamContext ctx = load_context(read_json_file(cfg_str(cfg, "amalgam")));
  const AmalgamWord w = parse_word(ctx, cfg_str(cfg, "word"));
  return Outcome{json{{"word", format_word(w)}, {"length", w.length()}}, true};
}

RelatorSet load_full_relator_set(const AmalgamContext& ctx,
                                 const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  RelatorSet R =
      make_relator_set(ctx, read_relators_jsonl(ctx, in), SymStatus::full);
  for (const auto& r : R.relators)
    if (!std::binary_search(R.relators.begin(), R.relators.end(),
                            invert(ctx, r)))
      throw ParseError("relator set in '" + path +
                       "' is not closed under inversion at " + format_word(r));
  return R;
}

Outcome run_sc_hull(const json& cfg) {
  const AmalgamContext ctx = load_context(read_json_file(cfg_str(cfg, "amalgam")));
  const AmalgamWord r = parse_word(ctx, cfg_str(cfg, "relator"));
  const std::string mode = cfg_get<std::string>(cfg, "mode", "full");
  const bool closure = cfg_get<bool>(cfg, "check_closure", false);
  const RelatorSet R =
      hull(ctx, r, mode == "half" ? SymStatus::half : SymStatus::full, closure,
           cfg_get<int>(cfg, "jobs", 1));
  json result{{"relator", format_word(r)},
              {"mode", mode},
              {"count", R.size()},
              {"min_length", R.min_length()},
              {"max_length", R.max_length()},
              {"closure_checked", closure}};
  const auto out_path = cfg_get<std::string>(cfg, "relators_out", "");
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write '" + out_path + "'");
    write_relators_jsonl(out, R);
    result["relators_out"] = out_path;
  }
  return Outcome{std::move(result), true};
}

Outcome run_sc_pieces(const json& cfg) {
  const AmalgamContext ctx = load_context(read_json_file(cfg_str(cfg, "amalgam")));
  const RelatorSet R = load_full_relator_set(ctx, cfg_str(cfg, "relators"));
  const std::string mode = cfg_get<std::string>(cfg, "mode", "exhaustive");
  PieceReport rep;
  if (mode == "sampled")
    rep = sample_pieces(ctx, R, cfg_get<std::uint64_t>(cfg, "samples", 100000),
                        cfg_get<std::uint64_t>(cfg, "seed", 0x5EED));
  else
    rep = enumerate_pieces(ctx, R, cfg_get<int>(cfg, "jobs", 1));
  return Outcome{to_json(rep, R), true};
}

Outcome run_sc_cprime(const json& cfg) {
  const AmalgamContext ctx = load_context(read_json_file(cfg_str(cfg, "amalgam")));
  RelatorSet R = load_full_relator_set(ctx, cfg_str(cfg, "relators"));
  const Rational lambda = Rational::parse(cfg_str(cfg, "lambda"));
  const std::string mode = cfg_get<std::string>(cfg, "mode", "exhaustive");
  if (mode == "sampled") {
    const auto pieces =
        sample_pieces(ctx, R, cfg_get<std::uint64_t>(cfg, "samples", 100000),
                      cfg_get<std::uint64_t>(cfg, "seed", 0x5EED));
    bool ok = lambda.den < static_cast<std::int64_t>(R.min_length()) * lambda.num;
    std::string violation =
        ok ? "" : "1/lambda >= min relator length";
    for (int i = 0; ok && i < R.size(); ++i)
      if (!(static_cast<std::int64_t>(lambda.den) * pieces.per_relator_max[i] <
            static_cast<std::int64_t>(lambda.num) * R.relators[i].length())) {
        ok = false;
        violation = "sampled piece of length " +
                    std::to_string(pieces.per_relator_max[i]) +
                    " reaches lambda * " +
                    std::to_string(R.relators[i].length());
      }
    json result{{"ok", ok},
                {"lambda", lambda.str()},
                {"mode", "sampled"},
                {"min_relator_length", R.min_length()},
                {"max_piece_length", pieces.max_piece_length},
                {"pieces", to_json(pieces, R)}};
    if (!ok) result["violation"] = violation;
    return Outcome{std::move(result), ok};
  }
  const CprimeReport rep = check_cprime(ctx, R, lambda, cfg_get<int>(cfg, "jobs", 1));
  return Outcome{to_json(rep, R), rep.ok};
}

Outcome run_sc_dehn(const json& cfg) {
  const AmalgamContext ctx = load_context(read_json_file(cfg_str(cfg, "amalgam")));
  RelatorSet R = load_full_relator_set(ctx, cfg_str(cfg, "relators"));
  const Rational lambda = Rational::parse(cfg_str(cfg, "lambda"));
  const int jobs = cfg_get<int>(cfg, "jobs", 1);
  const CprimeReport cp = check_cprime(ctx, R, lambda, jobs);
  if (!cp.ok)
    return Outcome{json{{"cprime", to_json(cp, R)}}, false};
  const AmalgamWord w = parse_word(ctx, cfg_str(cfg, "word"));
  SolverStats stats;
  const auto [member, trace] = dehn_membership(ctx, R, lambda, w, &stats);
  verify_trace(ctx, R, lambda, w, member, trace);
  json result{{"word", format_word(w)},
              {"lambda", lambda.str()},
              {"member", member},
              {"trace", trace_to_json(trace, member)},
              {"stats", to_json(stats)}};
  return Outcome{std::move(result), true};
}

std::pair<AmalgamContext, ShelahParams> load_instance(const json& cfg) {
  const json j = read_json_file(cfg_str(cfg, "instance"));
  AmalgamContext ctx = load_context(j);
  ShelahParams p = parse_params(j);
  if (cfg.contains("lambda"))
    p.lambda = Rational::parse(cfg.at("lambda").get<std::string>());
  if (cfg.contains("samples")) p.budgets.samples = cfg.at("samples").get<int>();
  if (cfg.contains("seed"))
    p.budgets.seed = cfg.at("seed").get<std::uint64_t>();
  return {std::move(ctx), std::move(p)};
}

Outcome run_shelah_build_r(const json& cfg) {
  const auto [ctx, params] = load_instance(cfg);
  const auto base = build_special_relators(ctx, params);
  json words = json::array();
  for (const auto& r : base) words.push_back(format_word(r));
  json result{{"count", base.size()},
              {"length", 2 * params.n},
              {"relators", std::move(words)}};
  const auto out_path = cfg_get<std::string>(cfg, "relators_out", "");
  if (!out_path.empty()) {
    const RelatorSet R = make_relator_set(ctx, base, SymStatus::raw);
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write '" + out_path + "'");
    write_relators_jsonl(out, R);
    result["relators_out"] = out_path;
  }
  return Outcome{std::move(result), true};
}

Outcome run_shelah_hull(const json& cfg) {
  const auto [ctx, params] = load_instance(cfg);
  const RelatorSet R = build_explicit_hull(ctx, params, cfg_get<int>(cfg, "jobs", 1));
  json result{{"count", R.size()},
              {"min_length", R.min_length()},
              {"max_length", R.max_length()}};
  const auto out_path = cfg_get<std::string>(cfg, "relators_out", "");
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write '" + out_path + "'");
    write_relators_jsonl(out, R);
    result["relators_out"] = out_path;
  }
  return Outcome{std::move(result), true};
}

Outcome run_shelah_verify_cprime(const json& cfg) {
  const auto [ctx, params] = load_instance(cfg);
  const VerificationReport rep =
      verify_cprime_lemma(ctx, params, cfg_get<int>(cfg, "jobs", 1));
  return Outcome{to_json(rep), rep.all_pass()};
}

Outcome run_shelah_verify_amalgamation(const json& cfg) {
  const auto [ctx, params] = load_instance(cfg);
  const auto [quotient, rep] =
      verify_amalgamation(ctx, params, cfg_get<int>(cfg, "jobs", 1));
  json result = to_json(rep);
  result["relator_count"] = quotient.relators.size();
  return Outcome{std::move(result), rep.all_pass()};
}

Outcome run_shelah_verify_malnormal(const json& cfg) {
  const auto [ctx, params] = load_instance(cfg);
  const auto base = build_special_relators(ctx, params);
  try {
    const VerificationReport rep = verify_malnormal_preservation(
        ctx, base, params.lambda, params.budgets, cfg_get<int>(cfg, "jobs", 1));
    return Outcome{to_json(rep), rep.all_pass()};
  } catch (const HypothesisFailed& e) {
    return Outcome{json{{"lemma", "malnormal"},
                        {"hypothesis_failed", e.hypothesis},
                        {"detail", e.what()}},
                   false};
  }
}

Outcome dispatch(const std::string& command, const json& cfg) {
  if (command == "group check") return run_group_check(cfg);
  if (command == "group malnormal") return run_group_malnormal(cfg);
  if (command == "fingroup find-separated") return run_find_separated(cfg);
  if (command == "amalgam nf") return run_amalgam_nf(cfg);
  if (command == "amalgam mul") return run_amalgam_mul(cfg);
  if (command == "amalgam len") return run_amalgam_len(cfg);
  if (command == "sc hull") return run_sc_hull(cfg);
  if (command == "sc pieces") return run_sc_pieces(cfg);
  if (command == "sc cprime") return run_sc_cprime(cfg);
  if (command == "sc dehn") return run_sc_dehn(cfg);
  if (command == "shelah build-r") return run_shelah_build_r(cfg);
  if (command == "shelah hull") return run_shelah_hull(cfg);
  if (command == "shelah verify-cprime") return run_shelah_verify_cprime(cfg);
  if (command == "shelah verify-amalgamation")
    return run_shelah_verify_amalgamation(cfg);
  if (command == "shelah verify-malnormal")
    return run_shelah_verify_malnormal(cfg);
  throw ParseError("unknown command '" + command + "'");
}

std::vector<std::string> input_paths_of(const json& cfg) {
  std::vector<std::string> paths;
  for (const char* key : {"group", "subgroup", "amalgam", "relators",
                          "instance"})
    if (cfg.contains(key)) paths.push_back(cfg.at(key).get<std::string>());
  return paths;
}

json envelope(const std::string& command, const json& cfg,
              const Outcome& outcome) {
  json inputs = json::array();
  for (const auto& p : input_paths_of(cfg))
    inputs.push_back(json{{"path", p}, {"fnv1a64", fnv1a64_file(p)}});
  return json{{"schema_version", 1},
              {"tool", "amal"},
              {"tool_version", kToolVersion},
              {"command", command},
              {"config", cfg},
              {"inputs", std::move(inputs)},
              {"result", outcome.result},
              {"ok", outcome.ok}};
}

int emit(const std::string& out_path, const json& report) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << report.dump(2) << "\n";
  }
  return report.at("ok").get<bool>() ? 0 : 1;
}

// Re-verifies a report: inputs unchanged, the re-executed run reproduces the
// result byte for byte, and embedded witnesses check out structurally.
int run_recheck(const std::string& report_path) {
  const json report = read_json_file(report_path);
  const std::string command = report.at("command").get<std::string>();
  json cfg = report.at("config");
  for (const auto& input : report.at("inputs")) {
    const auto path = input.at("path").get<std::string>();
    const auto digest = input.at("fnv1a64").get<std::string>();
    if (fnv1a64_file(path) != digest) {
      std::cerr << "recheck: input '" << path << "' changed since the run\n";
      return 1;
    }
  }
  // Suppress side outputs on re-execution.
  if (cfg.contains("relators_out")) cfg.erase("relators_out");
  const Outcome fresh = dispatch(command, cfg);
  json recorded = report.at("result");
  if (recorded.contains("relators_out")) recorded.erase("relators_out");
  if (fresh.result != recorded) {
    std::cerr << "recheck: re-executed result differs from the report\n";
    return 1;
  }
  if (fresh.ok != report.at("ok").get<bool>()) {
    std::cerr << "recheck: ok flag differs\n";
    return 1;
  }

  // Structural witness verification where one is embedded.
  if (command == "group malnormal" && recorded.contains("witness")) {
    const FiniteGroup g =
        make_group(parse_group_spec(read_json_file(cfg_str(cfg, "group"))));
    const SubgroupEmbedding emb = subgroup_from_cfg(g, cfg);
    const Elem x = recorded.at("witness").at("x").get<Elem>();
    const Elem h = recorded.at("witness").at("h").get<Elem>();
    const Elem conj = g.op(g.op(x, h), g.inv(x));
    if (emb.contains(x) || !emb.contains(h) || h == g.identity ||
        !emb.contains(conj)) {
      std::cerr << "recheck: malnormality witness does not verify\n";
      return 1;
    }
  }
  if (command == "sc cprime" && recorded.contains("witness")) {
    const AmalgamContext ctx =
        load_context(read_json_file(cfg_str(cfg, "amalgam")));
    const auto& w = recorded.at("witness");
    const AmalgamWord ra = parse_word(ctx, w.at("relator_a").get<std::string>());
    const AmalgamWord rb = parse_word(ctx, w.at("relator_b").get<std::string>());
    const AmalgamWord piece = parse_word(ctx, w.at("piece").get<std::string>());
    if (!is_semi_prefix(ctx, piece, ra) ||
        (ra != rb && !is_semi_prefix(ctx, piece, rb))) {
      std::cerr << "recheck: C' witness piece does not verify\n";
      return 1;
    }
  }
  if (command == "sc dehn" && recorded.contains("trace")) {
    const AmalgamContext ctx =
        load_context(read_json_file(cfg_str(cfg, "amalgam")));
    RelatorSet R = load_full_relator_set(ctx, cfg_str(cfg, "relators"));
    const Rational lambda = Rational::parse(cfg_str(cfg, "lambda"));
    const CprimeReport cp = check_cprime(ctx, R, lambda);
    if (!cp.ok) {
      std::cerr << "recheck: C' no longer holds for the relator set\n";
      return 1;
    }
    const AmalgamWord w = parse_word(ctx, recorded.at("word").get<std::string>());
    verify_trace(ctx, R, lambda, w,
                 recorded.at("member").get<bool>(),
                 trace_from_json(ctx, recorded.at("trace")));
  }
  std::cout << "recheck: ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation in free products with amalgamation over "
               "finite groups: normal forms, symmetrized hulls, C'(lambda) "
               "verification, Dehn membership and lemma-level verifiers"};
  app.require_subcommand(1);

  std::string out_path;
  int jobs = default_jobs();
  app.add_option("--out", out_path, "write the JSON report here (default stdout)");
  app.add_option("--jobs", jobs,
                 "worker threads inside verifiers (default: logical cores, "
                 "env AMALGAM_JOBS)");

  json cfg;
  std::string command;

  // group
  auto* group = app.add_subcommand("group", "finite group operations");
  std::string group_file, subgroup_file;
  std::vector<Elem> generators;
  int assoc_bound = 256;
  auto* gcheck = group->add_subcommand("check", "validate a group spec file");
  gcheck->add_option("group", group_file, "group spec JSON")->required();
  gcheck->add_option("--assoc-bound", assoc_bound,
                     "associativity check bound (default 256)");
  gcheck->callback([&] {
    command = "group check";
    cfg = json{{"group", group_file}, {"assoc_bound", assoc_bound}};
  });
  auto* gmal = group->add_subcommand("malnormal",
                                     "test malnormality of a subgroup");
  gmal->add_option("group", group_file, "group spec JSON")->required();
  gmal->add_option("--generators", generators, "subgroup generators");
  gmal->add_option("--subgroup", subgroup_file, "subgroup spec JSON");
  gmal->callback([&] {
    command = "group malnormal";
    cfg = json{{"group", group_file}};
    if (!generators.empty()) cfg["generators"] = generators;
    if (!subgroup_file.empty()) cfg["subgroup"] = subgroup_file;
  });

  // fingroup
  auto* fingroup = app.add_subcommand("fingroup", "search operations");
  auto* fsep = fingroup->add_subcommand(
      "find-separated", "greedy search for an H^{+-}-separated sequence");
  int sep_n = 1;
  std::vector<Elem> pool;
  fsep->add_option("group", group_file, "group spec JSON")->required();
  fsep->add_option("--n", sep_n, "sequence length")->required();
  fsep->add_option("--generators", generators, "subgroup generators");
  fsep->add_option("--subgroup", subgroup_file, "subgroup spec JSON");
  fsep->add_option("--pool", pool, "candidate pool (default: all elements)");
  fsep->callback([&] {
    command = "fingroup find-separated";
    cfg = json{{"group", group_file}, {"n", sep_n}};
    if (!generators.empty()) cfg["generators"] = generators;
    if (!subgroup_file.empty()) cfg["subgroup"] = subgroup_file;
    if (!pool.empty()) cfg["pool"] = pool;
  });

  // amalgam
  auto* amalgam = app.add_subcommand("amalgam", "normal form arithmetic");
  std::string amalgam_file, word, lhs, rhs;
  auto* anf = amalgam->add_subcommand("nf", "normal form of a raw word");
  anf->add_option("--amalgam", amalgam_file, "amalgam spec JSON")->required();
  anf->add_option("--word", word, "word literal, e.g. \"L:1 G:4 L:2\"")
      ->required();
  anf->callback([&] {
    command = "amalgam nf";
    cfg = json{{"amalgam", amalgam_file}, {"word", word}};
  });
  auto* amul = amalgam->add_subcommand("mul", "product of two words");
  amul->add_option("--amalgam", amalgam_file, "amalgam spec JSON")->required();
  amul->add_option("--lhs", lhs, "left word literal")->required();
  amul->add_option("--rhs", rhs, "right word literal")->required();
  amul->callback([&] {
    command = "amalgam mul";
    cfg = json{{"amalgam", amalgam_file}, {"lhs", lhs}, {"rhs", rhs}};
  });
  auto* alen = amalgam->add_subcommand("len", "syllable length of a word");
  alen->add_option("--amalgam", amalgam_file, "amalgam spec JSON")->required();
  alen->add_option("--word", word, "word literal")->required();
  alen->callback([&] {
    command = "amalgam len";
    cfg = json{{"amalgam", amalgam_file}, {"word", word}};
  });

  // sc
  auto* sc = app.add_subcommand("sc", "small cancellation toolkit");
  std::string relator, relators_file, relators_out, mode = "exhaustive",
              lambda_text;
  bool check_closure = false;
  std::uint64_t seed = 0x5EED, samples = 100000;
  auto* shull = sc->add_subcommand("hull", "symmetrized hull of a relator");
  shull->add_option("--amalgam", amalgam_file, "amalgam spec JSON")->required();
  shull->add_option("--relator", relator, "word literal")->required();
  shull->add_option("--mode", mode, "half | full (default full)");
  shull->add_flag("--check-closure", check_closure,
                  "cross-validate against the generic closure");
  shull->add_option("--relators-out", relators_out, "write the hull here");
  shull->callback([&] {
    command = "sc hull";
    cfg = json{{"amalgam", amalgam_file},
               {"relator", relator},
               {"mode", mode == "exhaustive" ? "full" : mode},
               {"check_closure", check_closure},
               {"jobs", jobs}};
    if (!relators_out.empty()) cfg["relators_out"] = relators_out;
  });
  auto* spieces = sc->add_subcommand("pieces", "piece report for a relator set");
  spieces->add_option("--amalgam", amalgam_file, "amalgam spec JSON")
      ->required();
  spieces->add_option("--relators", relators_file, "relator dump (JSON lines)")
      ->required();
  spieces->add_option("--mode", mode, "exhaustive | sampled");
  spieces->add_option("--samples", samples, "sampled pair count");
  spieces->add_option("--seed", seed, "sampling seed (default 0x5EED)");
  spieces->callback([&] {
    command = "sc pieces";
    cfg = json{{"amalgam", amalgam_file},
               {"relators", relators_file},
               {"mode", mode},
               {"samples", samples},
               {"seed", seed},
               {"jobs", jobs}};
  });
  auto* scprime = sc->add_subcommand("cprime", "C'(lambda) verification");
  scprime->add_option("--amalgam", amalgam_file, "amalgam spec JSON")
      ->required();
  scprime->add_option("--relators", relators_file, "relator dump (JSON lines)")
      ->required();
  scprime->add_option("--lambda", lambda_text, "exact rational, e.g. 1/7")
      ->required();
  scprime->add_option("--mode", mode, "exhaustive | sampled");
  scprime->add_option("--samples", samples, "sampled pair count");
  scprime->add_option("--seed", seed, "sampling seed");
  scprime->callback([&] {
    command = "sc cprime";
    cfg = json{{"amalgam", amalgam_file},
               {"relators", relators_file},
               {"lambda", lambda_text},
               {"mode", mode},
               {"samples", samples},
               {"seed", seed},
               {"jobs", jobs}};
  });
  auto* sdehn = sc->add_subcommand("dehn", "Dehn membership with trace");
  sdehn->add_option("--amalgam", amalgam_file, "amalgam spec JSON")->required();
  sdehn->add_option("--relators", relators_file, "relator dump (JSON lines)")
      ->required();
  sdehn->add_option("--lambda", lambda_text, "exact rational")->required();
  sdehn->add_option("--word", word, "word literal")->required();
  sdehn->callback([&] {
    command = "sc dehn";
    cfg = json{{"amalgam", amalgam_file},
               {"relators", relators_file},
               {"lambda", lambda_text},
               {"word", word},
               {"jobs", jobs}};
  });

  // shelah
  auto* shelah = app.add_subcommand("shelah", "special families and verifiers");
  std::string instance_file, lambda_override;
  std::int64_t sh_samples = -1;
  std::int64_t sh_seed = -1;
  auto add_instance_opts = [&](CLI::App* cmd, const char* name) {
    cmd->add_option("--instance", instance_file, "instance JSON")->required();
    cmd->add_option("--lambda", lambda_override, "override lambda");
    cmd->add_option("--samples", sh_samples, "override sample budget");
    cmd->add_option("--seed", sh_seed, "override sampling seed");
    cmd->callback([&, name] {
      command = name;
      cfg = json{{"instance", instance_file}, {"jobs", jobs}};
      if (!lambda_override.empty()) cfg["lambda"] = lambda_override;
      if (sh_samples >= 0) cfg["samples"] = sh_samples;
      if (sh_seed >= 0) cfg["seed"] = static_cast<std::uint64_t>(sh_seed);
    });
  };
  auto* sbuild = shelah->add_subcommand("build-r", "build the special relators");
  sbuild->add_option("--relators-out", relators_out, "write the family here");
  add_instance_opts(sbuild, "shelah build-r");
  auto* shullx = shelah->add_subcommand("hull", "build the explicit hull");
  shullx->add_option("--relators-out", relators_out, "write the hull here");
  add_instance_opts(shullx, "shelah hull");
  add_instance_opts(shelah->add_subcommand(
                        "verify-cprime", "hull equality, pieces, C'(lambda)"),
                    "shelah verify-cprime");
  add_instance_opts(
      shelah->add_subcommand("verify-amalgamation",
                             "the amalgamation construction, conclusions (1)-(6)"),
      "shelah verify-amalgamation");
  add_instance_opts(shelah->add_subcommand(
                        "verify-malnormal",
                        "malnormality preservation under the quotient"),
                    "shelah verify-malnormal");

  // recheck
  auto* recheck = app.add_subcommand("recheck", "re-verify a report file");
  std::string report_file;
  recheck->add_option("report", report_file, "report JSON")->required();

  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (auto* s : a->get_subcommands([](CLI::App*) { return true; }))
      enable_fallthrough(s);
  };
  enable_fallthrough(&app);

  CLI11_PARSE(app, argc, argv);

  try {
    if (recheck->parsed()) return run_recheck(report_file);
    if ((command == "shelah build-r" || command == "shelah hull") &&
        !relators_out.empty())
      cfg["relators_out"] = relators_out;
    const Outcome outcome = dispatch(command, cfg);
    return emit(out_path, envelope(command, cfg, outcome));
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotLatinSquare& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NoIdentity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonAssociative& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BadEmbedding& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}
