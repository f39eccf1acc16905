#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amal/smallcancel.hpp"

namespace amal {

struct Budgets {
  int conj_len = 2;    // conjugator / sampled-x length bound
  int product_n = 3;   // factor count bound for the product conclusion
  int samples = 100;
  std::uint64_t seed = 0x5EED;
};

// Parameters of the special relator families: n letters, the cancellation
// parameter, the two separated sequences, the extra letter a and the twist
// b in H.
struct ShelahParams {
  int n = 18;
  Rational lambda{1, 7};
  std::vector<Elem> a_seq;  // H^{\pm}-separated H-malnormal, in L\H
  std::vector<Elem> x_seq;  // H^{\pm}-separated, in G\H
  Elem a = 0;               // H-malnormal element of L\H
  Elem b = 0;               // H element index
  Budgets budgets;
};

// Checks the hypotheses (n >= 3, lambda > 5/(2n), separatedness,
// malnormality; with solver_grade also lambda <= 1/6). Throws
// HypothesisFailed / SeparatednessViolated / MalnormalityViolated.
void validate_params(const AmalgamContext& ctx, const ShelahParams& p,
                     bool solver_grade);

// {a_0 x a_1 x ... a_{n-1} x : x in G\H} u {b^-1 x_0 a x_1 a ... x_{n-1} a}.
std::vector<AmalgamWord> build_special_relators(const AmalgamContext& ctx,
                                                const ShelahParams& p);

// The symmetrized hull assembled directly from its eight closed-form
// families (the b-twist replaces x_0 by b^-1 x_0 throughout the families
// that came from the second relator).
RelatorSet build_explicit_hull(const AmalgamContext& ctx,
                               const ShelahParams& p, int jobs = 1);

struct HalfSepReport {
  bool ok = true;
  int offender = -1;  // index into the checked set
  std::string what;
  explicit operator bool() const { return ok; }
};

// Every member has positive even length and admits a frame shift making all
// even-position letters pairwise inverse-double-coset-separated.
HalfSepReport is_half_hminus_separated(const AmalgamContext& ctx,
                                       const std::vector<AmalgamWord>& R);

struct Conclusion {
  std::string id;
  bool pass = false;
  std::string mode;  // exhaustive | shortcut | sampled
  std::string detail;
  std::string counterexample;  // empty when pass
};

struct VerificationReport {
  std::string lemma;
  std::vector<Conclusion> conclusions;
  SolverStats stats;

  bool all_pass() const {
    for (const auto& c : conclusions)
      if (!c.pass) return false;
    return true;
  }
  void add(Conclusion c) { conclusions.push_back(std::move(c)); }
};

// Lemma-level driver: explicit hull = generic hull, piece bound, C'(lambda).
VerificationReport verify_cprime_lemma(const AmalgamContext& ctx,
                                       const ShelahParams& p, int jobs = 1);

// The quotient M = F*/N presented by its stamped relator set.
struct QuotientHandle {
  RelatorSet relators;
  Rational lambda;
};

struct AmalgamationResult {
  QuotientHandle quotient;
  VerificationReport report;
};

// Executable form of the amalgamation construction: builds the quotient and
// verifies conclusions (1)-(6).
AmalgamationResult verify_amalgamation(const AmalgamContext& ctx,
                                       const ShelahParams& p, int jobs = 1);

// The single-family variant (no second relator).
AmalgamationResult verify_amalgamation2(const AmalgamContext& ctx,
                                        const std::vector<Elem>& a_seq,
                                        const Rational& lambda,
                                        const Budgets& budgets = {},
                                        int jobs = 1);

// Malnormality preservation: hypothesis (1-6 lambda)|r| > 4 checked exactly,
// conclusion sampled over (x outside GN, y in G\{e}).
VerificationReport verify_malnormal_preservation(
    const AmalgamContext& ctx, const std::vector<AmalgamWord>& R,
    const Rational& lambda, const Budgets& budgets = {}, int jobs = 1);

// Free product L * G (trivial amalgam); checks malnormality of G over all
// conjugators of length <= conj_bound and throws on a counterexample.
AmalgamContext free_product_embed(FiniteGroup L, FiniteGroup G,
                                  int conj_bound = 3);

struct BoundedMalnormalReport {
  bool ok = true;
  std::uint64_t conjugators_checked = 0;
  std::string counterexample;
};

// Exhaustive check that x g x^-1 stays outside G for every word x with
// 1 <= |x| <= max_len outside G and every g in G\{e}.
BoundedMalnormalReport bounded_malnormality_of_G(const AmalgamContext& ctx,
                                                 int max_len);

// All normal forms of exactly the given length (desk scale only).
std::vector<AmalgamWord> enumerate_words(const AmalgamContext& ctx, int len);

}  // namespace amal
