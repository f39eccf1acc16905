#include "amal/shelah.hpp"

#include <algorithm>
#include <random>

#include "amal/parallel.hpp"

namespace amal {

namespace {

std::string pair_str(Elem a, Elem b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

AmalgamWord random_word_of_len(const AmalgamContext& ctx, std::mt19937_64& rng,
                               int len) {
  while (true) {
    RawWord raw;
    Factor f = (rng() & 1) ? Factor::G : Factor::L;
    for (int i = 0; i < len; ++i) {
      const FiniteGroup& F = ctx.factor(f);
      Elem x;
      do {
        x = static_cast<Elem>(rng() % F.order);
      } while (ctx.in_h(f, x));
      raw.emplace_back(f, x);
      f = other(f);
    }
    AmalgamWord w = normalize(ctx, raw);
    if (w.length() == len) return w;
  }
}

}  // namespace

void validate_params(const AmalgamContext& ctx, const ShelahParams& p,
                     bool solver_grade) {
  if (p.n < 3)
    throw HypothesisFailed("n >= 3", "n = " + std::to_string(p.n));
  if (!(Rational(0, 1) < p.lambda) || !(p.lambda < Rational(1, 1)))
    throw HypothesisFailed("0 < lambda < 1", "lambda = " + p.lambda.str());
  if (!(p.lambda.num * 2 * p.n > 5 * p.lambda.den))
    throw HypothesisFailed("lambda > 5/(2n)",
                           "lambda = " + p.lambda.str() + ", n = " +
                               std::to_string(p.n));
  if (solver_grade && !(p.lambda <= Rational(1, 6)))
    throw HypothesisFailed("lambda <= 1/6",
                           "solver-backed checks need lambda <= 1/6, got " +
                               p.lambda.str());
  if (static_cast<int>(p.a_seq.size()) != p.n ||
      static_cast<int>(p.x_seq.size()) != p.n)
    throw HypothesisFailed("sequence lengths equal n",
                           "a_seq: " + std::to_string(p.a_seq.size()) +
                               ", x_seq: " + std::to_string(p.x_seq.size()));
  for (Elem v : p.a_seq)
    if (v < 0 || v >= ctx.L().order)
      throw Error("a_seq element out of range");
  for (Elem v : p.x_seq)
    if (v < 0 || v >= ctx.G().order)
      throw Error("x_seq element out of range");
  if (p.a < 0 || p.a >= ctx.L().order) throw Error("a out of range");
  if (p.b < 0 || p.b >= ctx.H().order) throw Error("b out of range");

  const auto a_sep =
      is_pm_separated(ctx.L(), ctx.embedding(Factor::L), p.a_seq);
  if (!a_sep)
    throw SeparatednessViolated(a_sep.witness->first, a_sep.witness->second,
                                "a_seq is not H^+-separated at " +
                                    pair_str(a_sep.witness->first,
                                             a_sep.witness->second));
  const auto x_sep =
      is_pm_separated(ctx.G(), ctx.embedding(Factor::G), p.x_seq);
  if (!x_sep)
    throw SeparatednessViolated(x_sep.witness->first, x_sep.witness->second,
                                "x_seq is not H^+-separated at " +
                                    pair_str(x_sep.witness->first,
                                             x_sep.witness->second));
  for (Elem v : p.a_seq)
    if (!is_h_malnormal(ctx.L(), ctx.embedding(Factor::L), v))
      throw MalnormalityViolated(v, "a_seq element " + std::to_string(v) +
                                        " is not H-malnormal in L");
  if (ctx.in_h(Factor::L, p.a))
    throw HypothesisFailed("a in L\\H",
                           "a = " + std::to_string(p.a) + " lies in H");
  if (!is_h_malnormal(ctx.L(), ctx.embedding(Factor::L), p.a))
    throw MalnormalityViolated(p.a, "a = " + std::to_string(p.a) +
                                        " is not H-malnormal in L");
}

std::vector<AmalgamWord> build_special_relators(const AmalgamContext& ctx,
                                                const ShelahParams& p) {
  validate_params(ctx, p, false);
  std::vector<AmalgamWord> rs;
  for (Elem x = 0; x < ctx.G().order; ++x) {
    if (ctx.in_h(Factor::G, x)) continue;
    RawWord raw;
    raw.reserve(2 * p.n);
    for (int i = 0; i < p.n; ++i) {
      raw.emplace_back(Factor::L, p.a_seq[i]);
      raw.emplace_back(Factor::G, x);
    }
    rs.push_back(normalize(ctx, raw));
  }
  RawWord raw;
  raw.reserve(2 * p.n + 1);
  raw.emplace_back(Factor::G, ctx.image(Factor::G, ctx.H().inv(p.b)));
  for (int i = 0; i < p.n; ++i) {
    raw.emplace_back(Factor::G, p.x_seq[i]);
    raw.emplace_back(Factor::L, p.a);
  }
  rs.push_back(normalize(ctx, raw));
  for (const auto& r : rs)
    if (r.length() != 2 * p.n || !cyclically_reduced(ctx, r))
      throw Error("internal: special relator is not cyclically reduced of "
                  "length 2n");
  return rs;
}

namespace {

using Core = std::vector<std::pair<Factor, Elem>>;

// All conjugates c * core * c^-1 with c in core[0]'s factor and
// c * core[0] outside H.
void emit_conjugates(const AmalgamContext& ctx, const Core& core,
                     std::vector<AmalgamWord>& out) {
  const Factor fc = core[0].first;
  const FiniteGroup& F = ctx.factor(fc);
  RawWord raw(core.size() + 2, {Factor::L, 0});
  std::copy(core.begin(), core.end(), raw.begin() + 1);
  for (Elem c = 0; c < F.order; ++c) {
    if (ctx.in_h(fc, F.op(c, core[0].second))) continue;
    raw.front() = {fc, c};
    raw.back() = {fc, F.inv(c)};
    out.push_back(normalize(ctx, raw));
  }
}

// The eight rotation-conjugation families of the special hull. Families
// 3, 4, 7, 8 come from the second relator and use the b-twisted sequence.
std::vector<AmalgamWord> explicit_hull_words(const AmalgamContext& ctx,
                                             const ShelahParams& p,
                                             bool with_second_relator) {
  const int n = p.n;
  const FiniteGroup& L = ctx.L();
  const FiniteGroup& G = ctx.G();
  std::vector<Elem> as = p.a_seq, as_inv(n), xt(n), xt_inv(n);
  for (int i = 0; i < n; ++i) as_inv[i] = L.inv(as[i]);
  for (int i = 0; i < n; ++i) xt[i] = p.x_seq[i];
  xt[0] = G.op(ctx.image(Factor::G, ctx.H().inv(p.b)), xt[0]);
  for (int i = 0; i < n; ++i) xt_inv[i] = G.inv(xt[i]);
  const Elem a = p.a, a_inv = L.inv(p.a);

  std::vector<AmalgamWord> out;
  Core core(2 * n);
  for (int i = 0; i < n; ++i) {
    for (Elem x = 0; x < G.order; ++x) {
      if (ctx.in_h(Factor::G, x)) continue;
      // R1: a_i x a_{i+1} x ... conjugated by L\Ha_i^-1
      for (int k = 0; k < n; ++k) {
        core[2 * k] = {Factor::L, as[mod_add(i, k, n)]};
        core[2 * k + 1] = {Factor::G, x};
      }
      emit_conjugates(ctx, core, out);
      // R2: x a_i x a_{i+1} ... conjugated by G\Hx^-1
      for (int k = 0; k < n; ++k) {
        core[2 * k] = {Factor::G, x};
        core[2 * k + 1] = {Factor::L, as[mod_add(i, k, n)]};
      }
      emit_conjugates(ctx, core, out);
      // R5: x a_i^-1 x a_{i-1}^-1 ... conjugated by G\Hx^-1
      for (int k = 0; k < n; ++k) {
        core[2 * k] = {Factor::G, x};
        core[2 * k + 1] = {Factor::L, as_inv[mod_sub(i, k, n)]};
      }
      emit_conjugates(ctx, core, out);
      // R6: a_i^-1 x a_{i-1}^-1 x ... conjugated by L\Ha_i
      for (int k = 0; k < n; ++k) {
        core[2 * k] = {Factor::L, as_inv[mod_sub(i, k, n)]};
        core[2 * k + 1] = {Factor::G, x};
      }
      emit_conjugates(ctx, core, out);
    }
    if (!with_second_relator) continue;
    // R3: x~_i a x~_{i+1} a ... conjugated by G\Hx~_i^-1
    for (int k = 0; k < n; ++k) {
      core[2 * k] = {Factor::G, xt[mod_add(i, k, n)]};
      core[2 * k + 1] = {Factor::L, a};
    }
    emit_conjugates(ctx, core, out);
    // R4: a x~_i a x~_{i+1} ... conjugated by L\Ha^-1
    for (int k = 0; k < n; ++k) {
      core[2 * k] = {Factor::L, a};
      core[2 * k + 1] = {Factor::G, xt[mod_add(i, k, n)]};
    }
    emit_conjugates(ctx, core, out);
    // R7: a^-1 x~_i^-1 a^-1 x~_{i-1}^-1 ... conjugated by L\Ha
    for (int k = 0; k < n; ++k) {
      core[2 * k] = {Factor::L, a_inv};
      core[2 * k + 1] = {Factor::G, xt_inv[mod_sub(i, k, n)]};
    }
    emit_conjugates(ctx, core, out);
    // R8: x~_i^-1 a^-1 x~_{i-1}^-1 a^-1 ... conjugated by G\Hx~_i
    for (int k = 0; k < n; ++k) {
      core[2 * k] = {Factor::G, xt_inv[mod_sub(i, k, n)]};
      core[2 * k + 1] = {Factor::L, a_inv};
    }
    emit_conjugates(ctx, core, out);
  }
  return out;
}

}  // namespace

RelatorSet build_explicit_hull(const AmalgamContext& ctx,
                               const ShelahParams& p, int jobs) {
  validate_params(ctx, p, false);
  (void)jobs;
  return make_relator_set(ctx, explicit_hull_words(ctx, p, true),
                          SymStatus::full);
}

HalfSepReport is_half_hminus_separated(const AmalgamContext& ctx,
                                       const std::vector<AmalgamWord>& R) {
  for (size_t idx = 0; idx < R.size(); ++idx) {
    const AmalgamWord& r = R[idx];
    const int n = static_cast<int>(r.letters.size());
    if (n == 0 || n % 2 != 0 || r.length() != n)
      return HalfSepReport{false, static_cast<int>(idx),
                           "relator does not have positive even length"};
    std::vector<std::pair<Factor, Elem>> x(n);
    const Factor f0 = r.letters[0].factor;
    x[0] = {f0, ctx.factor(f0).op(ctx.image(f0, r.h), r.letters[0].elem)};
    for (int i = 1; i < n; ++i) x[i] = {r.letters[i].factor, r.letters[i].elem};
    bool some_eps = false;
    for (int eps = 0; eps < 2 && !some_eps; ++eps) {
      bool ok = true;
      for (int i = 0; i < n && ok; i += 2)
        for (int j = 0; j < n && ok; j += 2) {
          if (i == j) continue;
          const auto& [fi, xi] = x[mod_add(eps, i, n)];
          const auto& [fj, xj] = x[mod_add(eps, j, n)];
          const FiniteGroup& F = ctx.factor(fi);
          if (fi == fj &&
              in_double_coset(F, ctx.embedding(fi), F.inv(xi), xj))
            ok = false;
        }
      some_eps = ok;
    }
    if (!some_eps)
      return HalfSepReport{false, static_cast<int>(idx),
                           "even-position letters collide in an "
                           "inverse-double-coset"};
  }
  return HalfSepReport{};
}

VerificationReport verify_cprime_lemma(const AmalgamContext& ctx,
                                       const ShelahParams& p, int jobs) {
  validate_params(ctx, p, false);
  VerificationReport rep;
  rep.lemma = "C'";
  const auto base = build_special_relators(ctx, p);
  {
    const int expect = ctx.G().order - ctx.H().order + 1;
    Conclusion c{"relator-family", false, "exhaustive", "", ""};
    c.detail = std::to_string(base.size()) + " relators of length " +
               std::to_string(2 * p.n);
    c.pass = static_cast<int>(base.size()) == expect;
    if (!c.pass) c.counterexample = "expected " + std::to_string(expect);
    rep.add(std::move(c));
  }
  RelatorSet generic = hull_of_set(ctx, base, SymStatus::full, false, jobs);
  {
    const RelatorSet explicit_hull = build_explicit_hull(ctx, p, jobs);
    Conclusion c{"hull-equality", false, "exhaustive", "", ""};
    c.pass = explicit_hull.relators == generic.relators;
    c.detail = std::to_string(generic.size()) + " hull elements";
    if (!c.pass)
      c.counterexample = "explicit formula yields " +
                         std::to_string(explicit_hull.size()) +
                         " elements, generic hull " +
                         std::to_string(generic.size());
    rep.add(std::move(c));
  }
  const PieceReport pieces = enumerate_pieces(ctx, generic, jobs);
  {
    Conclusion c{"piece-bound", pieces.max_piece_length <= 5, "exhaustive",
                 "max piece length " + std::to_string(pieces.max_piece_length),
                 ""};
    if (!c.pass && pieces.witness)
      c.counterexample = format_word(std::get<2>(*pieces.witness));
    rep.add(std::move(c));
  }
  {
    const CprimeReport cp = check_cprime(ctx, generic, p.lambda, jobs);
    Conclusion c{"cprime", cp.ok, "exhaustive",
                 "lambda = " + p.lambda.str() + ", min |r| = " +
                     std::to_string(cp.min_relator_length),
                 cp.violation};
    rep.add(std::move(c));
  }
  return rep;
}

namespace {

AmalgamationResult verify_amalgamation_impl(const AmalgamContext& ctx,
                                            const std::vector<AmalgamWord>& base,
                                            std::size_t a_family_count,
                                            const std::vector<Elem>& a_seq,
                                            const Rational& lambda,
                                            const Budgets& budgets,
                                            const std::string& lemma,
                                            int jobs) {
  VerificationReport rep;
  rep.lemma = lemma;
  RelatorSet R = hull_of_set(ctx, base, SymStatus::full, false, jobs);
  {
    const CprimeReport cp = check_cprime(ctx, R, lambda, jobs);
    Conclusion c{"cprime", cp.ok, "exhaustive",
                 "hull of " + std::to_string(R.size()) + " relators, max piece " +
                     std::to_string(cp.max_piece_length),
                 cp.violation};
    rep.add(std::move(c));
    if (!cp.ok) return {{std::move(R), lambda}, std::move(rep)};
  }

  // (1), (2): the quotient map is injective on L u G and identifies exactly
  // H = L cap G; the kernel is N by construction.
  const QlgReport qlg = verify_qLG(ctx, R, lambda, &rep.stats);
  {
    Conclusion c1{"(1) L and G embed in M", qlg.injective_on_factors,
                  "shortcut", qlg.shortcut, ""};
    if (!qlg.injective_on_factors && qlg.witness)
      c1.counterexample = format_word(qlg.witness->first) + " = " +
                          format_word(qlg.witness->second) + " in M";
    rep.add(std::move(c1));
    Conclusion c2{"(2) kernel is N and q[H] = q[L] cap q[G]", qlg.h_cap_ok,
                  "shortcut", "kernel equals N by construction", ""};
    if (!qlg.h_cap_ok && qlg.witness)
      c2.counterexample = format_word(qlg.witness->first) + " = " +
                          format_word(qlg.witness->second) + " in M";
    rep.add(std::move(c2));
  }

  std::mt19937_64 rng(budgets.seed);

  // (3) malnormality of G in M, sampled over (x, y).
  {
    Conclusion c{"(3) G malnormal in M", true, "sampled", "", ""};
    int checked = 0;
    for (int s = 0; s < budgets.samples; ++s) {
      AmalgamWord x;
      int attempts = 0;
      do {
        const int len = 1 + static_cast<int>(rng() % budgets.conj_len);
        x = random_word_of_len(ctx, rng, len);
      } while (is_in_GN(ctx, R, lambda, x, &rep.stats) && ++attempts < 64);
      if (attempts >= 64) continue;
      Elem y;
      do {
        y = static_cast<Elem>(rng() % ctx.G().order);
      } while (y == ctx.G().identity);
      const AmalgamWord conj =
          conjugate(ctx, x, letter_word(ctx, Factor::G, y));
      ++checked;
      if (is_in_GN(ctx, R, lambda, conj, &rep.stats)) {
        c.pass = false;
        c.counterexample = "x = " + format_word(x) + ", y = G:" +
                           std::to_string(y) + " gives xyx^-1 in GN";
        break;
      }
    }
    c.detail = std::to_string(checked) + " sampled (x, y) pairs, |x| <= " +
               std::to_string(budgets.conj_len);
    rep.add(std::move(c));
  }

  // (4) (a_k) is G^{\pm}-separated in M: a_i^-1 g a_j^eps g' is too short to
  // lie in N unless it is the identity in F*.
  {
    Conclusion c{"(4) (a_k) G^+-separated", true, "shortcut", "", ""};
    const int n = static_cast<int>(a_seq.size());
    std::uint64_t checked = 0;
    for (int i = 0; i < n && c.pass; ++i) {
      const AmalgamWord ai_inv =
          invert(ctx, letter_word(ctx, Factor::L, a_seq[i]));
      for (int j = 0; j < n && c.pass; ++j) {
        if (i == j) continue;
        for (int eps = 0; eps < 2 && c.pass; ++eps) {
          const AmalgamWord aj =
              eps == 0 ? letter_word(ctx, Factor::L, a_seq[j])
                       : invert(ctx, letter_word(ctx, Factor::L, a_seq[j]));
          for (Elem g = 0; g < ctx.G().order && c.pass; ++g) {
            const AmalgamWord left =
                mul(ctx, ai_inv, mul(ctx, letter_word(ctx, Factor::G, g), aj));
            for (Elem g2 = 0; g2 < ctx.G().order; ++g2) {
              const AmalgamWord w =
                  mul(ctx, left, letter_word(ctx, Factor::G, g2));
              ++checked;
              if (is_in_N(ctx, R, lambda, w, &rep.stats)) {
                c.pass = false;
                c.counterexample =
                    "a_" + std::to_string(i) + " = G:" + std::to_string(g) +
                    " * a_" + std::to_string(j) + (eps ? "^-1" : "") +
                    " * G:" + std::to_string(g2) + " in M";
                break;
              }
            }
          }
        }
      }
    }
    c.detail = std::to_string(checked) + " membership checks via the length "
               "bound";
    rep.add(std::move(c));
  }

  // (5) every base relator dies in M, one Dehn step each.
  {
    Conclusion c{"(5) a_0 x a_1 x ... a_{n-1} x = e in M", true, "exhaustive",
                 "", ""};
    int instances = 0;
    std::uint64_t max_steps = 0;
    for (const auto& r : base) {
      const auto [member, trace] =
          dehn_membership(ctx, R, lambda, r, &rep.stats);
      ++instances;
      max_steps = std::max<std::uint64_t>(max_steps, trace.steps.size());
      if (!member || trace.steps.size() != 1) {
        c.pass = false;
        c.counterexample = format_word(r);
        break;
      }
    }
    c.detail = std::to_string(instances) + " relator instances, " +
               std::to_string(max_steps) + " Dehn step(s) each";
    rep.add(std::move(c));
  }

  // (6) products l g c_1 l g c_2 ... stay nontrivial in M, sampled.
  {
    Conclusion c{"(6) lgc products nontrivial", true, "sampled", "", ""};
    int checked = 0;
    for (int s = 0; s < budgets.samples; ++s) {
      Elem l, g;
      do {
        l = static_cast<Elem>(rng() % ctx.L().order);
      } while (ctx.in_h(Factor::L, l));
      do {
        g = static_cast<Elem>(rng() % ctx.G().order);
      } while (ctx.in_h(Factor::G, g));
      const int reps = 1 + static_cast<int>(rng() % budgets.product_n);
      RawWord raw;
      for (int k = 0; k < reps; ++k) {
        raw.emplace_back(Factor::L, l);
        raw.emplace_back(Factor::G, g);
        const Elem ck = static_cast<Elem>(rng() % ctx.H().order);
        raw.emplace_back(Factor::L, ctx.image(Factor::L, ck));
      }
      const AmalgamWord w = normalize(ctx, raw);
      ++checked;
      if (is_in_N(ctx, R, lambda, w, &rep.stats)) {
        c.pass = false;
        c.counterexample = format_word(w) + " lies in N";
        break;
      }
    }
    c.detail = std::to_string(checked) + " sampled products with n <= " +
               std::to_string(budgets.product_n);
    rep.add(std::move(c));
  }

  return {{std::move(R), lambda}, std::move(rep)};
}

}  // namespace

AmalgamationResult verify_amalgamation(const AmalgamContext& ctx,
                                       const ShelahParams& p, int jobs) {
  validate_params(ctx, p, true);
  const auto mal = is_malnormal(ctx.L(), ctx.embedding(Factor::L));
  if (!mal)
    throw HypothesisFailed(
        "H malnormal in L",
        "witness " + pair_str(mal.witness->first, mal.witness->second));
  const auto base = build_special_relators(ctx, p);
  return verify_amalgamation_impl(ctx, base, p.a_seq, p.lambda, p.budgets,
                                  "amalgamation", jobs);
}

AmalgamationResult verify_amalgamation2(const AmalgamContext& ctx,
                                        const std::vector<Elem>& a_seq,
                                        const Rational& lambda,
                                        const Budgets& budgets, int jobs) {
  const int n = static_cast<int>(a_seq.size());
  if (n < 3)
    throw HypothesisFailed("n >= 3", "a_seq has " + std::to_string(n) +
                                         " elements");
  if (!(lambda.num * 2 * n > 5 * lambda.den))
    throw HypothesisFailed("lambda > 5/(2n)", "lambda = " + lambda.str());
  if (!(lambda <= Rational(1, 6)))
    throw HypothesisFailed("lambda <= 1/6", "lambda = " + lambda.str());
  const auto mal = is_malnormal(ctx.L(), ctx.embedding(Factor::L));
  if (!mal)
    throw HypothesisFailed(
        "H malnormal in L",
        "witness " + pair_str(mal.witness->first, mal.witness->second));
  const auto sep = is_pm_separated(ctx.L(), ctx.embedding(Factor::L), a_seq);
  if (!sep)
    throw SeparatednessViolated(
        sep.witness->first, sep.witness->second,
        "a_seq is not H^+-separated at " +
            pair_str(sep.witness->first, sep.witness->second));

  std::vector<AmalgamWord> base;
  for (Elem x = 0; x < ctx.G().order; ++x) {
    if (ctx.in_h(Factor::G, x)) continue;
    RawWord raw;
    for (int i = 0; i < n; ++i) {
      raw.emplace_back(Factor::L, a_seq[i]);
      raw.emplace_back(Factor::G, x);
    }
    base.push_back(normalize(ctx, raw));
  }
  return verify_amalgamation_impl(ctx, base, a_seq, lambda, budgets,
                                  "amalgamation2", jobs);
}

VerificationReport verify_malnormal_preservation(
    const AmalgamContext& ctx, const std::vector<AmalgamWord>& R,
    const Rational& lambda, const Budgets& budgets, int jobs) {
  VerificationReport rep;
  rep.lemma = "malnormal";
  const auto hs = is_half_hminus_separated(ctx, R);
  if (!hs)
    throw HypothesisFailed("R half H^--separated",
                           hs.what + " (relator " +
                               std::to_string(hs.offender) + ")");
  if (!(lambda < Rational(1, 6)))
    throw HypothesisFailed("lambda < 1/6", "lambda = " + lambda.str());
  RelatorSet hull_set = hull_of_set(ctx, R, SymStatus::full, false, jobs);
  const CprimeReport cp = check_cprime(ctx, hull_set, lambda, jobs);
  if (!cp.ok)
    throw HypothesisFailed("C'(lambda) for the hull", cp.violation);
  // (1 - 6 lambda) |r| > 4 for every cyclically reduced hull element.
  for (const auto& r : hull_set.relators) {
    if (r.length() % 2 != 0) continue;  // only cyclically reduced members
    const std::int64_t lhs =
        (lambda.den - 6 * lambda.num) * static_cast<std::int64_t>(r.length());
    if (!(lhs > 4 * lambda.den))
      throw HypothesisFailed(
          "(1-6lambda)|r| > 4",
          "violated at |r| = " + std::to_string(r.length()) + " with lambda = " +
              lambda.str());
  }
  {
    Conclusion c{"hypothesis", true, "exhaustive",
                 "(1-6*" + lambda.str() + ")*" +
                     std::to_string(hull_set.min_length()) + " > 4 and C'(" +
                     lambda.str() + ") hold",
                 ""};
    rep.add(std::move(c));
  }
  {
    Conclusion c{"conjugates stay outside GN", true, "sampled", "", ""};
    std::mt19937_64 rng(budgets.seed);
    int checked = 0;
    for (int s = 0; s < budgets.samples; ++s) {
      AmalgamWord x;
      int attempts = 0;
      do {
        const int len = 1 + static_cast<int>(rng() % budgets.conj_len);
        x = random_word_of_len(ctx, rng, len);
      } while (is_in_GN(ctx, hull_set, lambda, x, &rep.stats) &&
               ++attempts < 64);
      if (attempts >= 64) continue;
      Elem y;
      do {
        y = static_cast<Elem>(rng() % ctx.G().order);
      } while (y == ctx.G().identity);
      const AmalgamWord conj =
          conjugate(ctx, x, letter_word(ctx, Factor::G, y));
      ++checked;
      if (is_in_GN(ctx, hull_set, lambda, conj, &rep.stats)) {
        c.pass = false;
        c.counterexample = "x = " + format_word(x) + ", y = G:" +
                           std::to_string(y);
        break;
      }
    }
    c.detail = std::to_string(checked) + " sampled (x, y) conjugations";
    rep.add(std::move(c));
  }
  return rep;
}

std::vector<AmalgamWord> enumerate_words(const AmalgamContext& ctx, int len) {
  std::vector<AmalgamWord> out;
  std::vector<Elem> reps[2];
  for (Factor f : {Factor::L, Factor::G})
    for (Elem t : ctx.transversal(f))
      if (t != ctx.factor(f).identity)
        reps[static_cast<int>(f)].push_back(t);
  if (len == 0) {
    for (Elem h = 0; h < ctx.H().order; ++h) {
      if (h == ctx.H().identity)
        out.push_back(identity_word());
      // H\{e} elements have length 1, handled below.
    }
    return out;
  }
  AmalgamWord w;
  auto rec = [&](auto&& self, int pos, Factor f) -> void {
    if (pos == len) {
      out.push_back(w);
      return;
    }
    for (Elem t : reps[static_cast<int>(f)]) {
      w.letters.push_back(Letter{f, t});
      self(self, pos + 1, other(f));
      w.letters.pop_back();
    }
  };
  for (Elem h = 0; h < ctx.H().order; ++h) {
    w.h = h;
    if (len == 1 && h != ctx.H().identity) {
      // pure H elements also have canonical length 1
      AmalgamWord hw;
      hw.h = h;
      out.push_back(hw);
    }
    rec(rec, 0, Factor::L);
    rec(rec, 0, Factor::G);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BoundedMalnormalReport bounded_malnormality_of_G(const AmalgamContext& ctx,
                                                 int max_len) {
  BoundedMalnormalReport rep;
  auto in_G = [&](const AmalgamWord& w) {
    return w.letters.empty() ||
           (w.letters.size() == 1 && w.letters[0].factor == Factor::G);
  };
  for (int len = 1; len <= max_len && rep.ok; ++len) {
    for (const auto& x : enumerate_words(ctx, len)) {
      if (in_G(x)) continue;
      ++rep.conjugators_checked;
      for (Elem g = 0; g < ctx.G().order; ++g) {
        if (g == ctx.G().identity) continue;
        const AmalgamWord conj =
            conjugate(ctx, x, letter_word(ctx, Factor::G, g));
        if (in_G(conj)) {
          rep.ok = false;
          rep.counterexample = "x = " + format_word(x) + ", g = G:" +
                               std::to_string(g) + " gives " +
                               format_word(conj);
          break;
        }
      }
      if (!rep.ok) break;
    }
  }
  return rep;
}

AmalgamContext free_product_embed(FiniteGroup L, FiniteGroup G,
                                  int conj_bound) {
  const Elem l_id = L.identity, g_id = G.identity;
  AmalgamContext ctx = build_context(std::move(L), std::move(G), FiniteGroup{},
                                     {l_id}, {g_id});
  const auto rep = bounded_malnormality_of_G(ctx, conj_bound);
  if (!rep.ok)
    throw Error("free product malnormality check failed: " +
                rep.counterexample);
  return ctx;
}

}  // namespace amal
