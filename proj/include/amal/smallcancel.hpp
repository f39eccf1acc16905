#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "amal/amalgam.hpp"
#include "amal/rational.hpp"

namespace amal {

enum class SymStatus { raw, half, full };

struct SolverStats {
  std::uint64_t greendlinger_calls = 0;
  std::uint64_t dehn_calls = 0;
  std::uint64_t dehn_steps = 0;
  std::uint64_t shortcut_decisions = 0;
  std::uint64_t candidate_scans = 0;

  void merge(const SolverStats& o) {
    greendlinger_calls += o.greendlinger_calls;
    dehn_calls += o.dehn_calls;
    dehn_steps += o.dehn_steps;
    shortcut_decisions += o.shortcut_decisions;
    candidate_scans += o.candidate_scans;
  }
};

// A finite relator family with its symmetrization status and a prefix index
// keyed by the H-double-coset-normalized first two letters.
struct RelatorSet {
  std::vector<AmalgamWord> relators;  // sorted, deduplicated
  SymStatus status = SymStatus::raw;
  std::unordered_map<AmalgamWord, std::vector<int>, WordHash> prefix_index;
  std::optional<Rational> lambda;  // set by a successful exhaustive C' check

  int size() const { return static_cast<int>(relators.size()); }
  int min_length() const;
  int max_length() const;
  bool cprime_verified(const Rational& lam) const {
    return lambda.has_value() && *lambda == lam;
  }
};

RelatorSet make_relator_set(const AmalgamContext& ctx,
                            std::vector<AmalgamWord> relators,
                            SymStatus status);

// Canonical representative of the right coset wH (lexicographic minimum).
AmalgamWord right_coset_canonical(const AmalgamContext& ctx,
                                  const AmalgamWord& w);
// Canonical representative of the double coset HwH.
AmalgamWord double_coset_canonical(const AmalgamContext& ctx,
                                   const AmalgamWord& w);

// Exact symmetrized (or half-symmetrized) hull of a cyclically reduced
// element, by the rotation-conjugation formula. check_closure re-derives the
// set by a generic conjugation fixpoint and asserts equality.
RelatorSet hull(const AmalgamContext& ctx, const AmalgamWord& r, SymStatus mode,
                bool check_closure = false, int jobs = 1);
RelatorSet hull_of_set(const AmalgamContext& ctx,
                       const std::vector<AmalgamWord>& base, SymStatus mode,
                       bool check_closure = false, int jobs = 1);
// The generic fixpoint computation on its own (test oracle).
std::vector<AmalgamWord> hull_closure(const AmalgamContext& ctx,
                                      const std::vector<AmalgamWord>& base,
                                      SymStatus mode);

struct PieceReport {
  int max_piece_length = 0;
  // (relator id, relator id, piece) witnessing the maximum
  std::optional<std::tuple<int, int, AmalgamWord>> witness;
  // maximal common-prefix length -> number of unordered relator pairs
  std::map<int, std::uint64_t> histogram;
  std::vector<int> per_relator_max;
  bool sampled = false;
  std::uint64_t pairs_considered = 0;
};

PieceReport enumerate_pieces(const AmalgamContext& ctx, const RelatorSet& R,
                             int jobs = 1);
PieceReport sample_pieces(const AmalgamContext& ctx, const RelatorSet& R,
                          std::uint64_t samples, std::uint64_t seed);
// Length of the longest common semi-prefix of two relators.
int pair_piece_length(const AmalgamContext& ctx, const AmalgamWord& r,
                      const AmalgamWord& q);

struct CprimeReport {
  bool ok = false;
  Rational lambda;
  int min_relator_length = 0;
  int max_piece_length = 0;
  std::string violation;  // empty when ok
  std::optional<std::tuple<int, int, AmalgamWord>> witness;
};

// Exhaustive C'(lambda) verification; stamps R.lambda on success.
CprimeReport check_cprime(const AmalgamContext& ctx, RelatorSet& R,
                          const Rational& lambda, int jobs = 1);

struct GreendlingerMatch {
  AmalgamWord u, s, v, t;
  int relator = -1;   // id within the relator set
  int position = 0;   // letters of w preceding s
};

std::optional<GreendlingerMatch> greendlinger_search(
    const AmalgamContext& ctx, const RelatorSet& R, const Rational& lambda,
    const AmalgamWord& w, SolverStats* stats = nullptr);

struct DehnStep {
  AmalgamWord before;
  GreendlingerMatch match;
  AmalgamWord after;
};

struct DehnTrace {
  std::vector<DehnStep> steps;
  AmalgamWord terminal;
};

// Dehn's algorithm: true with a trace ending at the identity iff w lies in
// the normal closure of R; otherwise false with the terminal irreducible
// word.
std::pair<bool, DehnTrace> dehn_membership(const AmalgamContext& ctx,
                                           const RelatorSet& R,
                                           const Rational& lambda,
                                           const AmalgamWord& w,
                                           SolverStats* stats = nullptr);

// Replays a trace step by step and rechecks every invariant; throws Error on
// the first inconsistency.
void verify_trace(const AmalgamContext& ctx, const RelatorSet& R,
                  const Rational& lambda, const AmalgamWord& w, bool verdict,
                  const DehnTrace& trace);

// Membership in N decided by the qLG length bound when it applies, by the
// solver otherwise.
bool is_in_N(const AmalgamContext& ctx, const RelatorSet& R,
             const Rational& lambda, const AmalgamWord& w,
             SolverStats* stats = nullptr);

// Membership in GN: some g in G has g^-1 w in N.
bool is_in_GN(const AmalgamContext& ctx, const RelatorSet& R,
              const Rational& lambda, const AmalgamWord& w,
              SolverStats* stats = nullptr);

struct QlgReport {
  bool injective_on_factors = false;
  bool h_cap_ok = false;
  std::uint64_t pairs_checked = 0;
  std::uint64_t solver_calls = 0;
  std::string shortcut;  // the length bound used
  std::optional<std::pair<AmalgamWord, AmalgamWord>> witness;

  bool ok() const { return injective_on_factors && h_cap_ok; }
};

// Quotient-level checks: injectivity of the quotient map on L u G and
// q[H] = q[L] cap q[G], decided by the length bound.
QlgReport verify_qLG(const AmalgamContext& ctx, const RelatorSet& R,
                     const Rational& lambda, SolverStats* stats = nullptr);

}  // namespace amal
