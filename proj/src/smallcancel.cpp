#include "amal/smallcancel.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_set>

#include "amal/parallel.hpp"

namespace amal {

namespace {

AmalgamWord prefix_word(const AmalgamWord& w, int k) {
  AmalgamWord p;
  p.h = w.h;
  p.letters.assign(w.letters.begin(), w.letters.begin() + k);
  return p;
}

void require_solver_ready(const RelatorSet& R, const Rational& lambda) {
  if (R.status != SymStatus::full)
    throw PreconditionUnverified("relator set is not fully symmetrized");
  if (!R.cprime_verified(lambda))
    throw PreconditionUnverified("C'(" + lambda.str() +
                                 ") was not established for this relator set");
  if (!(lambda <= Rational(1, 6)))
    throw PreconditionUnverified("lambda = " + lambda.str() +
                                 " exceeds 1/6; the Greendlinger bound needs "
                                 "lambda <= 1/6");
}

// Largest length decided by the "nontrivial members of N are longer than
// 1/lambda - 3" bound.
int shortcut_bound(const Rational& lambda) {
  return static_cast<int>((lambda.den - 3 * lambda.num) / lambda.num);
}

}  // namespace

int RelatorSet::min_length() const {
  int m = relators.empty() ? 0 : relators.front().length();
  for (const auto& r : relators) m = std::min(m, r.length());
  return m;
}

int RelatorSet::max_length() const {
  int m = 0;
  for (const auto& r : relators) m = std::max(m, r.length());
  return m;
}

AmalgamWord right_coset_canonical(const AmalgamContext& ctx,
                                  const AmalgamWord& w) {
  AmalgamWord best = w;
  for (Elem h = 1; h < ctx.H().order; ++h) {
    AmalgamWord cand = mul(ctx, w, h_word(ctx, h));
    if (cand < best) best = cand;
  }
  return best;
}

AmalgamWord double_coset_canonical(const AmalgamContext& ctx,
                                   const AmalgamWord& w) {
  if (ctx.H().order == 1) return w;
  AmalgamWord best = right_coset_canonical(ctx, w);
  for (Elem h = 1; h < ctx.H().order; ++h) {
    AmalgamWord cand = right_coset_canonical(ctx, mul(ctx, h_word(ctx, h), w));
    if (cand < best) best = cand;
  }
  return best;
}

RelatorSet make_relator_set(const AmalgamContext& ctx,
                            std::vector<AmalgamWord> relators,
                            SymStatus status) {
  std::sort(relators.begin(), relators.end());
  relators.erase(std::unique(relators.begin(), relators.end()),
                 relators.end());
  if (status != SymStatus::raw)
    for (const auto& r : relators)
      if (!weakly_cyclically_reduced(ctx, r))
        throw Error("relator '" + format_word(r) +
                    "' of a symmetrized set is not weakly cyclically reduced");
  RelatorSet R;
  R.relators = std::move(relators);
  R.status = status;
  for (int i = 0; i < R.size(); ++i) {
    const auto& r = R.relators[i];
    if (r.letters.size() < 2) continue;
    AmalgamWord two;
    two.letters = {r.letters[0], r.letters[1]};
    two.h = r.h;
    R.prefix_index[double_coset_canonical(ctx, two)].push_back(i);
  }
  return R;
}

namespace {

// All weakly cyclically reduced conjugates c x_i ... x_{i+n-1} c^-1 with c a
// factor element of x_i's side outside H x_i^-1.
void rotation_family(const AmalgamContext& ctx, const AmalgamWord& r,
                     std::vector<AmalgamWord>& out) {
  const int n = static_cast<int>(r.letters.size());
  std::vector<std::pair<Factor, Elem>> x(n);
  {
    const Factor f0 = r.letters[0].factor;
    x[0] = {f0, ctx.factor(f0).op(ctx.image(f0, r.h), r.letters[0].elem)};
    for (int i = 1; i < n; ++i) x[i] = {r.letters[i].factor, r.letters[i].elem};
  }
  RawWord raw(n + 2, {Factor::L, 0});
  for (int i = 0; i < n; ++i) {
    const Factor f = x[i].first;
    const FiniteGroup& F = ctx.factor(f);
    for (int k = 0; k < n; ++k) raw[k + 1] = x[(i + k) % n];
    for (Elem c = 0; c < F.order; ++c) {
      if (ctx.in_h(f, F.op(c, x[i].second))) continue;  // c in Hx_i^-1
      raw[0] = {f, c};
      raw[n + 1] = {f, F.inv(c)};
      out.push_back(normalize(ctx, raw));
    }
  }
}

std::vector<AmalgamWord> hull_words(const AmalgamContext& ctx,
                                    const std::vector<AmalgamWord>& base,
                                    SymStatus mode, int jobs) {
  for (const auto& r : base)
    if (r.length() < 2 || !cyclically_reduced(ctx, r))
      throw NotCyclicallyReduced("hull input '" + format_word(r) +
                                 "' is not cyclically reduced of length >= 2");
  std::vector<std::vector<AmalgamWord>> chunks(base.size());
  parallel_chunks(base.size(), jobs, base.size(),
                  [&](std::size_t c, std::size_t b, std::size_t e) {
                    for (std::size_t i = b; i < e; ++i) {
                      rotation_family(ctx, base[i], chunks[c]);
                      if (mode == SymStatus::full)
                        rotation_family(ctx, invert(ctx, base[i]), chunks[c]);
                    }
                  });
  std::vector<AmalgamWord> out;
  for (auto& c : chunks)
    out.insert(out.end(), std::make_move_iterator(c.begin()),
               std::make_move_iterator(c.end()));
  return out;
}

}  // namespace

std::vector<AmalgamWord> hull_closure(const AmalgamContext& ctx,
                                      const std::vector<AmalgamWord>& base,
                                      SymStatus mode) {
  int cap = 0;
  for (const auto& r : base) {
    if (r.length() < 2 || !cyclically_reduced(ctx, r))
      throw NotCyclicallyReduced("closure input '" + format_word(r) +
                                 "' is not cyclically reduced of length >= 2");
    cap = std::max(cap, r.length());
  }
  cap += 1;
  std::unordered_set<AmalgamWord, WordHash> seen;
  std::deque<AmalgamWord> queue;
  auto push = [&](AmalgamWord w) {
    if (w.length() <= cap && seen.insert(w).second)
      queue.push_back(std::move(w));
  };
  for (const auto& r : base) {
    push(r);
    if (mode == SymStatus::full) push(invert(ctx, r));
  }
  while (!queue.empty()) {
    const AmalgamWord w = std::move(queue.front());
    queue.pop_front();
    for (Factor f : {Factor::L, Factor::G}) {
      const FiniteGroup& F = ctx.factor(f);
      for (Elem c = 0; c < F.order; ++c)
        push(conjugate(ctx, letter_word(ctx, f, c), w));
    }
  }
  std::vector<AmalgamWord> out;
  for (const auto& w : seen)
    if (weakly_cyclically_reduced(ctx, w)) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

RelatorSet hull(const AmalgamContext& ctx, const AmalgamWord& r, SymStatus mode,
                bool check_closure, int jobs) {
  return hull_of_set(ctx, {r}, mode, check_closure, jobs);
}

RelatorSet hull_of_set(const AmalgamContext& ctx,
                       const std::vector<AmalgamWord>& base, SymStatus mode,
                       bool check_closure, int jobs) {
  if (mode == SymStatus::raw) throw Error("hull mode must be half or full");
  RelatorSet R = make_relator_set(ctx, hull_words(ctx, base, mode, jobs), mode);
  if (check_closure) {
    const std::vector<AmalgamWord> closed = hull_closure(ctx, base, mode);
    if (closed != R.relators)
      throw Error("hull formula disagrees with the generic closure (" +
                  std::to_string(R.relators.size()) + " vs " +
                  std::to_string(closed.size()) + " elements)");
  }
  return R;
}

int pair_piece_length(const AmalgamContext& ctx, const AmalgamWord& r,
                      const AmalgamWord& q) {
  if (r == q || r.is_identity() || q.is_identity()) return 0;
  int best = ctx.H().order > 1 ? 1 : 0;
  const size_t n = std::min(r.letters.size(), q.letters.size());
  if (n == 0 || r.letters[0].factor != q.letters[0].factor) return best;
  Elem delta = ctx.H().op(ctx.H().inv(q.h), r.h);
  for (size_t k = 1; k <= n; ++k) {
    const Letter& tr = r.letters[k - 1];
    const Letter& tq = q.letters[k - 1];
    if (tr.factor != tq.factor) break;
    best = std::max<int>(best, static_cast<int>(k));
    const FiniteGroup& F = ctx.factor(tr.factor);
    const Elem x =
        F.op(F.op(F.inv(tq.elem), ctx.image(tr.factor, delta)), tr.elem);
    if (!ctx.in_h(tr.factor, x)) break;
    delta = ctx.preimage(tr.factor, x);
  }
  return best;
}

namespace {

std::uint64_t pairs2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace

PieceReport enumerate_pieces(const AmalgamContext& ctx, const RelatorSet& R,
                             int jobs) {
  if (R.status != SymStatus::full)
    throw PreconditionUnverified(
        "piece enumeration needs a fully symmetrized set");
  (void)jobs;
  const int N = R.size();
  PieceReport rep;
  rep.per_relator_max.assign(N, 0);
  if (N < 2) return rep;
  rep.pairs_considered = pairs2(N);

  std::vector<std::uint64_t> pairs_ge{rep.pairs_considered};  // level 0
  std::vector<std::pair<int, int>> level_pairs;  // per-level witness pair

  // Level 1: an H\{e} element semi-prefixes every relator; letter pieces
  // additionally need a shared first-letter factor.
  std::vector<std::vector<int>> groups;
  {
    std::vector<int> by_factor[2];
    for (int i = 0; i < N; ++i)
      if (!R.relators[i].letters.empty())
        by_factor[static_cast<int>(R.relators[i].letters[0].factor)]
            .push_back(i);
    std::uint64_t letter_pairs = 0;
    std::pair<int, int> wit{-1, -1};
    for (auto& g : by_factor) {
      letter_pairs += pairs2(g.size());
      if (g.size() >= 2 && wit.first < 0) wit = {g[0], g[1]};
      if (g.size() >= 2) groups.push_back(std::move(g));
    }
    const std::uint64_t lvl1 =
        ctx.H().order > 1 ? rep.pairs_considered : letter_pairs;
    if (lvl1 > 0) {
      pairs_ge.push_back(lvl1);
      if (ctx.H().order > 1) {
        for (int i = 0; i < N; ++i) rep.per_relator_max[i] = 1;
        level_pairs.push_back({0, 1});
      } else {
        for (const auto& g : groups)
          for (int rid : g) rep.per_relator_max[rid] = 1;
        level_pairs.push_back(wit);
      }
    }
  }

  // Refine level by level; the canonical right-coset form of the (k-1)-letter
  // prefix is the level-k bucket key.
  for (int k = 2; !groups.empty(); ++k) {
    std::vector<std::vector<int>> next;
    std::uint64_t pairs = 0;
    std::pair<int, int> wit{-1, -1};
    for (const auto& g : groups) {
      std::unordered_map<AmalgamWord, std::vector<int>, WordHash> buckets;
      for (int rid : g) {
        const AmalgamWord& r = R.relators[rid];
        if (static_cast<int>(r.letters.size()) < k) continue;
        buckets[right_coset_canonical(ctx, prefix_word(r, k - 1))].push_back(
            rid);
      }
      for (auto& [key, members] : buckets) {
        if (members.size() < 2) continue;
        pairs += pairs2(members.size());
        for (int rid : members) rep.per_relator_max[rid] = k;
        std::sort(members.begin(), members.end());
        const std::pair<int, int> cand{members[0], members[1]};
        if (wit.first < 0 || cand < wit) wit = cand;
        next.push_back(std::move(members));
      }
    }
    if (pairs == 0) break;
    pairs_ge.push_back(pairs);
    level_pairs.push_back(wit);
    groups = std::move(next);
  }

  rep.max_piece_length = static_cast<int>(pairs_ge.size()) - 1;
  for (size_t k = 0; k < pairs_ge.size(); ++k) {
    const std::uint64_t ge_next = k + 1 < pairs_ge.size() ? pairs_ge[k + 1] : 0;
    if (pairs_ge[k] > ge_next)
      rep.histogram[static_cast<int>(k)] = pairs_ge[k] - ge_next;
  }
  if (rep.max_piece_length > 0) {
    const auto [a, b] = level_pairs[rep.max_piece_length - 1];
    AmalgamWord piece;
    if (static_cast<int>(R.relators[a].letters.size()) >= rep.max_piece_length)
      piece = prefix_word(R.relators[a], rep.max_piece_length);
    else
      piece = h_word(ctx, 1);  // the |H| > 1 floor
    rep.witness = std::make_tuple(a, b, piece);
  } else if (N >= 2) {
    rep.witness = std::make_tuple(0, 1, identity_word());
  }
  return rep;
}

PieceReport sample_pieces(const AmalgamContext& ctx, const RelatorSet& R,
                          std::uint64_t samples, std::uint64_t seed) {
  if (R.status != SymStatus::full)
    throw PreconditionUnverified(
        "piece enumeration needs a fully symmetrized set");
  const int N = R.size();
  PieceReport rep;
  rep.sampled = true;
  rep.per_relator_max.assign(N, 0);
  if (N < 2) return rep;
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const int a = static_cast<int>(rng() % N);
    int b = static_cast<int>(rng() % (N - 1));
    if (b >= a) ++b;
    const int len = pair_piece_length(ctx, R.relators[a], R.relators[b]);
    ++rep.histogram[len];
    ++rep.pairs_considered;
    rep.per_relator_max[a] = std::max(rep.per_relator_max[a], len);
    rep.per_relator_max[b] = std::max(rep.per_relator_max[b], len);
    if (len > rep.max_piece_length || !rep.witness) {
      rep.max_piece_length = len;
      AmalgamWord piece;
      if (len > 0 && len <= static_cast<int>(R.relators[a].letters.size()))
        piece = prefix_word(R.relators[a], len);
      else if (len == 1)
        piece = h_word(ctx, 1);
      rep.witness = std::make_tuple(std::min(a, b), std::max(a, b), piece);
    }
  }
  return rep;
}

CprimeReport check_cprime(const AmalgamContext& ctx, RelatorSet& R,
                          const Rational& lambda, int jobs) {
  if (R.status != SymStatus::full)
    throw PreconditionUnverified("C' check needs a fully symmetrized set");
  if (!(Rational(0, 1) < lambda) || !(lambda < Rational(1, 1)))
    throw Error("lambda must lie in (0, 1)");
  CprimeReport rep;
  rep.lambda = lambda;
  rep.min_relator_length = R.min_length();
  // Clause 1: 1/lambda < min |r|.
  if (!(lambda.den <
        static_cast<std::int64_t>(rep.min_relator_length) * lambda.num)) {
    rep.violation = "1/lambda >= min relator length (" +
                    std::to_string(rep.min_relator_length) + ")";
    for (int i = 0; i < R.size(); ++i)
      if (R.relators[i].length() == rep.min_relator_length) {
        rep.witness = std::make_tuple(i, i, R.relators[i]);
        break;
      }
    return rep;
  }
  // Clause 2: every piece of every relator is shorter than lambda * |r|.
  const PieceReport pieces = enumerate_pieces(ctx, R, jobs);
  rep.max_piece_length = pieces.max_piece_length;
  for (int i = 0; i < R.size(); ++i) {
    const int len = R.relators[i].length();
    const int p = pieces.per_relator_max[i];
    if (!(static_cast<std::int64_t>(lambda.den) * p <
          static_cast<std::int64_t>(lambda.num) * len)) {
      rep.violation = "piece of length " + std::to_string(p) +
                      " reaches lambda * " + std::to_string(len);
      if (pieces.witness && pieces.max_piece_length == p)
        rep.witness = pieces.witness;
      else
        rep.witness = std::make_tuple(i, i, prefix_word(R.relators[i], p));
      return rep;
    }
  }
  rep.ok = true;
  R.lambda = lambda;
  return rep;
}

std::optional<GreendlingerMatch> greendlinger_search(
    const AmalgamContext& ctx, const RelatorSet& R, const Rational& lambda,
    const AmalgamWord& w, SolverStats* stats) {
  require_solver_ready(R, lambda);
  if (stats) ++stats->greendlinger_calls;
  const int m = static_cast<int>(w.letters.size());
  if (m < 2) return std::nullopt;
  const std::int64_t num = lambda.num, den = lambda.den;
  const FiniteGroup& H = ctx.H();

  int best_len = 0, best_rid = -1, best_pos = -1;
  Elem best_h = 0;
  std::vector<Elem> M, M2;
  for (int i = 0; i + 2 <= m; ++i) {
    AmalgamWord two;
    two.letters = {w.letters[i], w.letters[i + 1]};
    const auto it = R.prefix_index.find(double_coset_canonical(ctx, two));
    if (it == R.prefix_index.end()) continue;
    for (const int rid : it->second) {
      if (stats) ++stats->candidate_scans;
      const AmalgamWord& r = R.relators[rid];
      const int rlen = r.length();
      const std::int64_t need = (den - 3 * num) * rlen;  // den*l must exceed
      M.clear();
      if (i == 0) {
        M.push_back(H.op(H.inv(r.h), w.h));
      } else {
        for (Elem h = 0; h < H.order; ++h) M.push_back(h);
      }
      const int lmax = std::min<int>(static_cast<int>(r.letters.size()), m - i);
      for (int l = 1; l <= lmax; ++l) {
        const Letter& t = r.letters[l - 1];
        const Letter& wl = w.letters[i + l - 1];
        if (t.factor != wl.factor) break;
        const FiniteGroup& F = ctx.factor(t.factor);
        M2.clear();
        for (const Elem h : M) {
          const Elem x =
              F.op(F.op(F.inv(t.elem), ctx.image(t.factor, h)), wl.elem);
          const Elem pre = ctx.preimage(t.factor, x);
          if (pre >= 0 && std::find(M2.begin(), M2.end(), pre) == M2.end())
            M2.push_back(pre);
        }
        if (M2.empty()) break;
        M.swap(M2);
        if (den * l > need) {
          const Elem h_pick = *std::min_element(M.begin(), M.end());
          if (l > best_len ||
              (l == best_len &&
               (rid < best_rid || (rid == best_rid && i < best_pos)))) {
            best_len = l;
            best_rid = rid;
            best_pos = i;
            best_h = h_pick;
          }
        }
      }
    }
  }
  if (best_rid < 0) return std::nullopt;

  const AmalgamWord& r = R.relators[best_rid];
  GreendlingerMatch match;
  match.relator = best_rid;
  match.position = best_pos;
  match.s = mul(ctx, prefix_word(r, best_len), h_word(ctx, best_h));
  match.v.letters.assign(w.letters.begin() + best_pos + best_len,
                         w.letters.end());
  match.u = mul(ctx, w, invert(ctx, mul(ctx, match.s, match.v)));
  match.t = mul(ctx, invert(ctx, match.s), r);
  if (match.u.length() != best_pos ||
      match.s.length() + match.t.length() != r.length())
    throw Error("internal: Greendlinger match reconstruction failed");
  return match;
}

std::pair<bool, DehnTrace> dehn_membership(const AmalgamContext& ctx,
                                           const RelatorSet& R,
                                           const Rational& lambda,
                                           const AmalgamWord& w,
                                           SolverStats* stats) {
  require_solver_ready(R, lambda);
  if (stats) ++stats->dehn_calls;
  DehnTrace trace;
  AmalgamWord cur = w;
  int guard = w.length();
  while (!cur.is_identity()) {
    const auto match = greendlinger_search(ctx, R, lambda, cur, stats);
    if (!match) break;
    if (stats) ++stats->dehn_steps;
    AmalgamWord next =
        mul(ctx, mul(ctx, match->u, invert(ctx, match->t)), match->v);
    if (next.length() >= cur.length())
      throw Error("internal: Dehn replacement did not shorten the word");
    trace.steps.push_back(DehnStep{cur, *match, next});
    cur = std::move(next);
    if (--guard < 0) throw Error("internal: Dehn loop exceeded the step bound");
  }
  trace.terminal = cur;
  return {cur.is_identity(), std::move(trace)};
}

void verify_trace(const AmalgamContext& ctx, const RelatorSet& R,
                  const Rational& lambda, const AmalgamWord& w, bool verdict,
                  const DehnTrace& trace) {
  AmalgamWord cur = w;
  for (const DehnStep& step : trace.steps) {
    if (step.before != cur)
      throw Error("trace: step does not continue the run");
    const GreendlingerMatch& m = step.match;
    if (m.relator < 0 || m.relator >= R.size())
      throw Error("trace: relator id out of range");
    const AmalgamWord& r = R.relators[m.relator];
    if (mul(ctx, mul(ctx, m.u, m.s), m.v) != cur)
      throw Error("trace: u*s*v does not reproduce the word");
    if (m.u.length() + m.s.length() + m.v.length() != cur.length())
      throw Error("trace: u*s*v is not a length-additive decomposition");
    if (mul(ctx, m.s, m.t) != r)
      throw Error("trace: s*t does not reproduce the relator");
    if (m.s.length() + m.t.length() != r.length())
      throw Error("trace: s*t is not a length-additive decomposition");
    if (!(static_cast<std::int64_t>(lambda.den) * m.s.length() >
          (lambda.den - 3 * lambda.num) * static_cast<std::int64_t>(r.length())))
      throw Error("trace: |s| does not exceed (1-3lambda)|r|");
    if (step.after != mul(ctx, mul(ctx, m.u, invert(ctx, m.t)), m.v))
      throw Error("trace: replacement word mismatch");
    if (step.after.length() >= cur.length())
      throw Error("trace: step does not decrease length");
    cur = step.after;
  }
  if (trace.terminal != cur) throw Error("trace: terminal word mismatch");
  if (verdict != cur.is_identity())
    throw Error("trace: verdict disagrees with the terminal word");
  if (!verdict && greendlinger_search(ctx, R, lambda, cur))
    throw Error("trace: terminal word still admits a Greendlinger match");
}

bool is_in_N(const AmalgamContext& ctx, const RelatorSet& R,
             const Rational& lambda, const AmalgamWord& w, SolverStats* stats) {
  require_solver_ready(R, lambda);
  if (w.length() <= shortcut_bound(lambda)) {
    if (stats) ++stats->shortcut_decisions;
    return w.is_identity();
  }
  return dehn_membership(ctx, R, lambda, w, stats).first;
}

bool is_in_GN(const AmalgamContext& ctx, const RelatorSet& R,
              const Rational& lambda, const AmalgamWord& w,
              SolverStats* stats) {
  for (Elem g = 0; g < ctx.G().order; ++g) {
    const AmalgamWord gw = letter_word(ctx, Factor::G, g);
    if (is_in_N(ctx, R, lambda, mul(ctx, invert(ctx, gw), w), stats))
      return true;
  }
  return false;
}

QlgReport verify_qLG(const AmalgamContext& ctx, const RelatorSet& R,
                     const Rational& lambda, SolverStats* stats) {
  require_solver_ready(R, lambda);
  QlgReport rep;
  rep.shortcut =
      "|w| <= " + std::to_string(shortcut_bound(lambda)) + " forces w = e";
  std::vector<AmalgamWord> l_elems, g_elems, all;
  for (Elem x = 0; x < ctx.L().order; ++x)
    l_elems.push_back(letter_word(ctx, Factor::L, x));
  for (Elem x = 0; x < ctx.G().order; ++x)
    g_elems.push_back(letter_word(ctx, Factor::G, x));
  all = l_elems;
  all.insert(all.end(), g_elems.begin(), g_elems.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  const std::uint64_t dehn_before = stats ? stats->dehn_calls : 0;
  rep.injective_on_factors = true;
  for (size_t a = 0; a < all.size() && rep.injective_on_factors; ++a)
    for (size_t b = a + 1; b < all.size(); ++b) {
      ++rep.pairs_checked;
      const AmalgamWord diff = mul(ctx, invert(ctx, all[a]), all[b]);
      if (is_in_N(ctx, R, lambda, diff, stats)) {
        rep.injective_on_factors = false;
        rep.witness = std::make_pair(all[a], all[b]);
        break;
      }
    }
  rep.h_cap_ok = true;
  for (const auto& l : l_elems) {
    for (const auto& g : g_elems) {
      if (l == g) continue;  // the amalgamated subgroup itself
      ++rep.pairs_checked;
      const AmalgamWord diff = mul(ctx, invert(ctx, g), l);
      if (is_in_N(ctx, R, lambda, diff, stats)) {
        rep.h_cap_ok = false;
        rep.witness = std::make_pair(l, g);
        break;
      }
    }
    if (!rep.h_cap_ok) break;
  }
  if (stats) rep.solver_calls = stats->dehn_calls - dehn_before;
  return rep;
}

}  // namespace amal
