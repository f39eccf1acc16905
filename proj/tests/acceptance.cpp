// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amal/io.hpp"
#include "amal/parallel.hpp"
#include "amal/shelah.hpp"
#include "helpers.hpp"

using namespace amal;

namespace {

int failures = 0;

void criterion(int number, const std::string& name,
               const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (error.empty()) {
    std::printf("PASS [%d] %s (%.1fs)\n", number, name.c_str(), elapsed);
  } else {
    std::printf("FAIL [%d] %s (%.1fs): %s\n", number, name.c_str(), elapsed,
                error.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

void expect(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

struct InstanceB {
  AmalgamContext ctx;
  ShelahParams params;
  std::vector<AmalgamWord> base;
  RelatorSet hull_set;

  InstanceB()
      : ctx(build_context(make_cyclic(51), make_cyclic(51), FiniteGroup{}, {0},
                          {0})) {
    params.n = 18;
    params.lambda = Rational(1, 7);
    for (int i = 1; i <= 18; ++i) {
      params.a_seq.push_back(i);
      params.x_seq.push_back(i);
    }
    params.a = 20;
    params.b = 0;
    base = build_special_relators(ctx, params);
    hull_set = hull_of_set(ctx, base, SymStatus::full, false, default_jobs());
    const auto cp = check_cprime(ctx, hull_set, params.lambda, default_jobs());
    expect(cp.ok, "C'(1/7) failed on the Instance B hull");
  }
};

InstanceB& instance_b() {
  static InstanceB fixture;
  return fixture;
}

// ---- criterion 1 ------------------------------------------------------

void normal_form_soundness() {
  const AmalgamContext ctx = build_context(
      make_cyclic(4), make_cyclic(6), make_cyclic(2), {0, 2}, {0, 3});
  std::mt19937_64 rng(0x5EED);
  for (int trial = 0; trial < 10000; ++trial) {
    RawWord raw = testutil::random_raw(ctx, rng, 12);
    const AmalgamWord nf = normalize(ctx, raw);
    expect(valid_word(ctx, nf), "normal form violates structural invariants");
    expect(normalize(ctx, expand(ctx, nf)) == nf, "normalize not idempotent");
    const Elem h = static_cast<Elem>(rng() % ctx.H().order);
    const Factor f1 = (rng() & 1) ? Factor::G : Factor::L;
    const Factor f2 = (rng() & 1) ? Factor::G : Factor::L;
    RawWord twisted = raw;
    twisted.insert(twisted.begin() + rng() % (raw.size() + 1),
                   {{f1, ctx.image(f1, h)},
                    {f2, ctx.image(f2, ctx.H().inv(h))}});
    expect(normalize(ctx, twisted) == nf,
           "normal form not invariant under H-twist insertion");
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = testutil::random_word(ctx, rng, 8);
    const auto y = testutil::random_word(ctx, rng, 8);
    const auto z = testutil::random_word(ctx, rng, 8);
    expect(mul(ctx, mul(ctx, x, y), z) == mul(ctx, x, mul(ctx, y, z)),
           "multiplication not associative");
    expect(mul(ctx, x, y).length() <= x.length() + y.length(),
           "triangle inequality violated");
  }
}

// ---- criterion 2 ------------------------------------------------------

void hull_triple_equality() {
  const AmalgamContext ctx = build_context(
      make_cyclic(37), make_cyclic(37), FiniteGroup{}, {0}, {0});
  ShelahParams p;
  p.n = 16;
  p.lambda = Rational(1, 6);
  for (int i = 1; i <= 16; ++i) {
    p.a_seq.push_back(i);
    p.x_seq.push_back(i);
  }
  p.a = 20;
  p.b = 0;
  const auto base = build_special_relators(ctx, p);
  const RelatorSet formula =
      hull_of_set(ctx, base, SymStatus::full, false, default_jobs());
  const RelatorSet families = build_explicit_hull(ctx, p, default_jobs());
  const std::vector<AmalgamWord> closure =
      hull_closure(ctx, base, SymStatus::full);
  expect(formula.relators == families.relators,
         "rotation formula differs from the eight-family enumeration");
  expect(formula.relators == closure,
         "rotation formula differs from the generic closure");
  expect(formula.size() == 85248, "unexpected hull cardinality");
}

// ---- criterion 3 ------------------------------------------------------

void piece_bound() {
  auto& fx = instance_b();
  expect(fx.hull_set.size() == 183600, "unexpected Instance B hull size");
  const PieceReport rep =
      enumerate_pieces(fx.ctx, fx.hull_set, default_jobs());
  expect(rep.max_piece_length <= 5,
         "piece of length > 5 found: " +
             std::to_string(rep.max_piece_length));
  expect(fx.hull_set.cprime_verified(Rational(1, 7)),
         "C'(1/7) not established");

  const auto t0 = std::chrono::steady_clock::now();
  const PieceReport sampled = sample_pieces(fx.ctx, fx.hull_set, 100000, 0x5EED);
  const double sampled_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  expect(sampled.max_piece_length <= rep.max_piece_length,
         "sampled max exceeds the exhaustive max");
  expect(sampled_s < 5.0, "sampled mode took " + std::to_string(sampled_s) +
                              "s, budget is 5s");
}

// ---- criterion 4 ------------------------------------------------------

void qlg_suite() {
  auto& fx = instance_b();
  SolverStats stats;
  const QlgReport rep =
      verify_qLG(fx.ctx, fx.hull_set, fx.params.lambda, &stats);
  expect(rep.injective_on_factors, "quotient map not injective on L u G");
  expect(rep.h_cap_ok, "q[H] != q[L] cap q[G]");
  expect(rep.solver_calls == 0, "length shortcut should decide all pairs");

  std::mt19937_64 rng(0x5EED);
  int rejected = 0;
  while (rejected < 10000) {
    const AmalgamWord w = testutil::random_word(fx.ctx, rng, 4);
    if (w.is_identity()) continue;
    expect(!dehn_membership(fx.ctx, fx.hull_set, fx.params.lambda, w).first,
           "nonidentity word of length <= 4 accepted into N");
    ++rejected;
  }
}

// ---- criterion 5 ------------------------------------------------------

void dehn_round_trip() {
  auto& fx = instance_b();
  std::mt19937_64 rng(0x5EED);
  for (int trial = 0; trial < 1000; ++trial) {
    AmalgamWord w = identity_word();
    const int parts = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < parts; ++k) {
      const auto& r = fx.hull_set.relators[rng() % fx.hull_set.relators.size()];
      const auto c = testutil::random_word(fx.ctx, rng, 2);
      w = mul(fx.ctx, w, conjugate(fx.ctx, c, r));
    }
    const auto [member, trace] =
        dehn_membership(fx.ctx, fx.hull_set, fx.params.lambda, w);
    expect(member, "product of conjugated relators rejected from N");
    for (size_t i = 1; i < trace.steps.size(); ++i)
      expect(trace.steps[i].before.length() <
                 trace.steps[i - 1].before.length(),
             "trace lengths do not strictly decrease");
    verify_trace(fx.ctx, fx.hull_set, fx.params.lambda, w, member, trace);
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const AmalgamWord w = testutil::random_word(fx.ctx, rng, 8);
    const auto [member, trace] =
        dehn_membership(fx.ctx, fx.hull_set, fx.params.lambda, w);
    expect(static_cast<int>(trace.steps.size()) <= std::max(w.length(), 1),
           "solver exceeded the step bound");
    verify_trace(fx.ctx, fx.hull_set, fx.params.lambda, w, member, trace);
  }
}

// ---- criterion 6 ------------------------------------------------------

void amalgamation_report() {
  auto& fx = instance_b();
  const auto [quotient, rep] =
      verify_amalgamation(fx.ctx, fx.params, default_jobs());
  expect(rep.conclusions.size() == 7, "unexpected conclusion count");
  for (const auto& c : rep.conclusions)
    expect(c.pass, "conclusion '" + c.id + "' failed: " + c.counterexample);
  // (5) runs one Dehn step per x in G\H.
  for (const auto& c : rep.conclusions)
    if (c.id.rfind("(5)", 0) == 0)
      expect(c.detail.find("50 relator instances") != std::string::npos &&
                 c.detail.find("1 Dehn step") != std::string::npos,
             "(5) did not decide all 50 instances in one step: " + c.detail);
  // (4) is decided by the length bound alone.
  for (const auto& c : rep.conclusions)
    if (c.id.rfind("(4)", 0) == 0)
      expect(c.mode == "shortcut", "(4) was not decided by the shortcut");
}

// ---- criterion 7 ------------------------------------------------------

void malnormal_preservation() {
  auto& fx = instance_b();
  // (1 - 6/7) * 36 = 36/7 > 4, checked exactly inside.
  const VerificationReport rep = verify_malnormal_preservation(
      fx.ctx, fx.base, fx.params.lambda, fx.params.budgets, default_jobs());
  for (const auto& c : rep.conclusions)
    expect(c.pass, "conclusion '" + c.id + "' failed: " + c.counterexample);
  bool sampled_seen = false;
  for (const auto& c : rep.conclusions)
    if (c.mode == "sampled") {
      sampled_seen = true;
      expect(c.detail.find("100 sampled") != std::string::npos,
             "expected 100 sampled conjugations: " + c.detail);
    }
  expect(sampled_seen, "no sampled conclusion in the report");
}

// ---- criterion 8 ------------------------------------------------------

void fingroup_oracles() {
  const auto d7 = make_dihedral(7);
  expect(is_malnormal(d7, subgroup_from_generators(d7, {7})).ok,
         "D7 reflection subgroup must be malnormal");
  const auto z4 = make_cyclic(4);
  expect(!is_malnormal(z4, subgroup_from_generators(z4, {2})).ok,
         "abelian counterexample must be rejected");

  const auto z51 = make_cyclic(51);
  std::vector<Elem> pool(51);
  for (int i = 0; i < 51; ++i) pool[i] = i;
  const auto seq = find_pm_separated(z51, trivial_embedding(z51), pool, 18);
  expect(seq.has_value(), "no separated sequence found in Z51");
  expect(is_pm_separated(z51, trivial_embedding(z51), *seq).ok,
         "search output fails the separatedness oracle");

  const auto z5 = make_cyclic(5);
  std::vector<Elem> pool5{0, 1, 2, 3, 4};
  expect(!find_pm_separated(z5, trivial_embedding(z5), pool5, 3).has_value(),
         "Z5 cannot contain a +-separated triple");

  const auto cov = cov_bounded(make_cyclic(2), 1, 4);
  expect(cov.count.has_value() && *cov.count == 2,
         "cov(Z2, degree 1) must be 2");
}

// ---- criterion 9 ------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void cli_determinism() {
  const std::string bin = AMAL_BIN;
  const std::string fixtures = FIXTURE_DIR;
  auto run = [&](const std::string& args) {
    return std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
  };
  auto code = [](int status) { return WEXITSTATUS(status); };

  // Byte-identical reports for identical config + fixtures.
  expect(code(run("shelah verify-cprime --instance " + fixtures +
                  "/instance_b_small.json --out /tmp/amal_acc_r1.json")) == 0,
         "verify-cprime run 1 failed");
  expect(code(run("shelah verify-cprime --instance " + fixtures +
                  "/instance_b_small.json --out /tmp/amal_acc_r2.json")) == 0,
         "verify-cprime run 2 failed");
  const std::string r1 = slurp("/tmp/amal_acc_r1.json");
  expect(!r1.empty() && r1 == slurp("/tmp/amal_acc_r2.json"),
         "reports differ between identical runs");

  // Seeded sampling is part of the determinism contract.
  expect(code(run("shelah hull --instance " + fixtures +
                  "/instance_c_small.json --relators-out "
                  "/tmp/amal_acc_hull.jsonl")) == 0,
         "hull dump failed");
  expect(code(run("sc pieces --amalgam " + fixtures +
                  "/instance_c_small.json --relators /tmp/amal_acc_hull.jsonl "
                  "--mode sampled --samples 5000 --seed 24301 --out "
                  "/tmp/amal_acc_p1.json")) == 0,
         "sampled pieces run 1 failed");
  expect(code(run("sc pieces --amalgam " + fixtures +
                  "/instance_c_small.json --relators /tmp/amal_acc_hull.jsonl "
                  "--mode sampled --samples 5000 --seed 24301 --out "
                  "/tmp/amal_acc_p2.json")) == 0,
         "sampled pieces run 2 failed");
  expect(slurp("/tmp/amal_acc_p1.json") == slurp("/tmp/amal_acc_p2.json"),
         "sampled reports differ between identical runs");

  // Exit-code contract: pass / check-failed / usage error.
  expect(code(run("group malnormal " + fixtures +
                  "/group_d7.json --generators 7")) == 0,
         "expected exit 0 for a passing check");
  expect(code(run("group malnormal " + fixtures +
                  "/group_z4.json --generators 2 --out "
                  "/tmp/amal_acc_mal.json")) == 1,
         "expected exit 1 for a failing check");
  expect(code(run("group check " + fixtures + "/bad_group.json")) == 2,
         "expected exit 2 for a malformed group file");
  expect(code(run("group check " + fixtures + "/no_such_file.json")) == 2,
         "expected exit 2 for a missing file");

  // Exit-1 reports embed a machine-checkable counterexample.
  expect(code(run("recheck /tmp/amal_acc_mal.json")) == 0,
         "recheck of the failing report did not verify");
}

}  // namespace

int main() {
  criterion(1, "normal-form soundness on Instance A", normal_form_soundness);
  criterion(2, "hull triple equality on Instance B-small",
            hull_triple_equality);
  criterion(3, "piece bound and C'(1/7) on Instance B", piece_bound);
  criterion(4, "qLG suite on Instance B", qlg_suite);
  criterion(5, "Dehn round-trip on Instance B", dehn_round_trip);
  criterion(6, "amalgamation report on Instance B", amalgamation_report);
  criterion(7, "malnormality preservation on Instance B",
            malnormal_preservation);
  criterion(8, "finite-group oracle suite", fingroup_oracles);
  criterion(9, "CLI determinism and exit codes", cli_determinism);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria pass\n");
  return 0;
}
