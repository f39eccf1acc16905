#include "amal/amalgam.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace amal {

AmalgamContext::AmalgamContext(FiniteGroup L, FiniteGroup G, FiniteGroup H,
                               std::vector<Elem> emb_L, std::vector<Elem> emb_G)
    : L_(std::move(L)),
      G_(std::move(G)),
      H_(std::move(H)),
      emb_L_(make_embedding(L_, H_, std::move(emb_L))),
      emb_G_(make_embedding(G_, H_, std::move(emb_G))) {
  for (Factor f : {Factor::L, Factor::G}) {
    const FiniteGroup& F = factor(f);
    const SubgroupEmbedding& emb = embedding(f);
    auto& transversal = f == Factor::L ? transversal_L_ : transversal_G_;
    auto& coset_id = f == Factor::L ? coset_id_L_ : coset_id_G_;
    auto& coset_h = f == Factor::L ? coset_h_L_ : coset_h_G_;
    auto& pre = f == Factor::L ? pre_L_ : pre_G_;

    pre.assign(F.order, -1);
    for (size_t i = 0; i < emb.image.size(); ++i)
      pre[emb.image[i]] = static_cast<Elem>(i);

    coset_id.assign(F.order, -1);
    for (Elem x = 0; x < F.order; ++x) {
      if (coset_id[x] >= 0) continue;
      // Right coset Hx; representative is the minimal element index except
      // for the coset H itself, which is represented by the identity.
      Elem rep = F.order;
      bool is_h_coset = false;
      for (Elem h = 0; h < H_.order; ++h) {
        const Elem y = F.op(emb.image[h], x);
        rep = std::min(rep, y);
        if (y == F.identity) is_h_coset = true;
      }
      if (is_h_coset) rep = F.identity;
      const int id = static_cast<int>(transversal.size());
      transversal.push_back(rep);
      for (Elem h = 0; h < H_.order; ++h)
        coset_id[F.op(emb.image[h], x)] = id;
    }
    coset_h.assign(F.order, -1);
    for (Elem x = 0; x < F.order; ++x) {
      const Elem t = transversal[coset_id[x]];
      const Elem h_elem = F.op(x, F.inv(t));  // x = h_elem * t
      coset_h[x] = pre[h_elem];
      if (coset_h[x] < 0)
        throw BadEmbedding(x, t, "coset decomposition left the image of H");
    }
  }
}

AmalgamContext build_context(FiniteGroup L, FiniteGroup G, FiniteGroup H,
                             std::vector<Elem> emb_L, std::vector<Elem> emb_G) {
  return AmalgamContext(std::move(L), std::move(G), std::move(H),
                        std::move(emb_L), std::move(emb_G));
}

namespace {

// Working form with letters stored in reverse so that building a word from
// the right is O(1) per letter.
struct Builder {
  const AmalgamContext& ctx;
  Elem h = 0;
  std::vector<Letter> rev;

  explicit Builder(const AmalgamContext& c) : ctx(c), h(c.H().identity) {}

  void mul_h_left(Elem k) { h = ctx.H().op(k, h); }

  void mul_letter_left(Factor f, Elem x) {
    const FiniteGroup& F = ctx.factor(f);
    if (ctx.in_h(f, x)) {
      mul_h_left(ctx.preimage(f, x));
      return;
    }
    Elem g = F.op(x, ctx.image(f, h));  // absorb the coefficient
    if (!rev.empty() && rev.back().factor == f) {
      const Elem merged = F.op(g, rev.back().elem);
      rev.pop_back();
      if (ctx.in_h(f, merged)) {
        h = ctx.preimage(f, merged);
        return;
      }
      g = merged;
    }
    h = ctx.h_part(f, g);
    rev.push_back(Letter{f, ctx.rep_of(f, g)});
  }

  AmalgamWord take() {
    AmalgamWord w;
    w.h = h;
    w.letters.assign(rev.rbegin(), rev.rend());
    return w;
  }
};

}  // namespace

AmalgamWord identity_word() { return AmalgamWord{}; }

AmalgamWord normalize(const AmalgamContext& ctx, const RawWord& raw) {
  Builder b(ctx);
  for (auto it = raw.rbegin(); it != raw.rend(); ++it)
    b.mul_letter_left(it->first, it->second);
  return b.take();
}

AmalgamWord h_word(const AmalgamContext& ctx, Elem h) {
  AmalgamWord w;
  w.h = h;
  (void)ctx;
  return w;
}

AmalgamWord letter_word(const AmalgamContext& ctx, Factor f, Elem x) {
  return normalize(ctx, {{f, x}});
}

RawWord expand(const AmalgamContext& ctx, const AmalgamWord& w) {
  RawWord raw;
  if (w.h != ctx.H().identity)
    raw.emplace_back(Factor::L, ctx.image(Factor::L, w.h));
  for (const Letter& l : w.letters) raw.emplace_back(l.factor, l.elem);
  return raw;
}

AmalgamWord mul(const AmalgamContext& ctx, const AmalgamWord& a,
                const AmalgamWord& b) {
  Builder out(ctx);
  out.h = b.h;
  out.rev.assign(b.letters.rbegin(), b.letters.rend());
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
    out.mul_letter_left(it->factor, it->elem);
  out.mul_h_left(a.h);
  return out.take();
}

AmalgamWord invert(const AmalgamContext& ctx, const AmalgamWord& w) {
  RawWord raw;
  raw.reserve(w.letters.size() + 1);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    raw.emplace_back(it->factor, ctx.factor(it->factor).inv(it->elem));
  raw.emplace_back(Factor::L, ctx.image(Factor::L, ctx.H().inv(w.h)));
  return normalize(ctx, raw);
}

AmalgamWord conjugate(const AmalgamContext& ctx, const AmalgamWord& c,
                      const AmalgamWord& w) {
  return mul(ctx, mul(ctx, c, w), invert(ctx, c));
}

AmalgamWord pow(const AmalgamContext& ctx, const AmalgamWord& w, int k) {
  AmalgamWord base = k < 0 ? invert(ctx, w) : w;
  int reps = k < 0 ? -k : k;
  AmalgamWord acc = identity_word();
  for (int i = 0; i < reps; ++i) acc = mul(ctx, acc, base);
  return acc;
}

bool valid_word(const AmalgamContext& ctx, const AmalgamWord& w) {
  if (w.h < 0 || w.h >= ctx.H().order) return false;
  Factor prev = Factor::L;
  bool first = true;
  for (const Letter& l : w.letters) {
    const FiniteGroup& F = ctx.factor(l.factor);
    if (l.elem < 0 || l.elem >= F.order) return false;
    if (ctx.in_h(l.factor, l.elem)) return false;
    if (ctx.rep_of(l.factor, l.elem) != l.elem) return false;
    if (!first && l.factor == prev) return false;
    prev = l.factor;
    first = false;
  }
  return true;
}

void require_valid(const AmalgamContext& ctx, const AmalgamWord& w) {
  if (!valid_word(ctx, w))
    throw ContextMismatch("word '" + format_word(w) +
                          "' is not a normal form for this context");
}

ReductionStatus reduction_status(const AmalgamContext& ctx,
                                 const AmalgamWord& w) {
  const size_t n = w.letters.size();
  if (n <= 1) return ReductionStatus::cyclically_reduced;
  if (n % 2 == 0) return ReductionStatus::cyclically_reduced;
  // Odd length > 1: first and last letters share a factor. Weakly reduced
  // iff some H-twist of the end product escapes H.
  const Factor f = w.letters.front().factor;
  const FiniteGroup& F = ctx.factor(f);
  const Elem x1 = F.op(ctx.image(f, w.h), w.letters.front().elem);
  const Elem xn = w.letters.back().elem;
  for (Elem k = 0; k < ctx.H().order; ++k) {
    const Elem prod = F.op(F.op(x1, ctx.image(f, k)), xn);
    if (!ctx.in_h(f, prod)) return ReductionStatus::weakly_only;
  }
  return ReductionStatus::neither;
}

bool weakly_cyclically_reduced(const AmalgamContext& ctx,
                               const AmalgamWord& w) {
  return reduction_status(ctx, w) != ReductionStatus::neither;
}

bool cyclically_reduced(const AmalgamContext& ctx, const AmalgamWord& w) {
  return reduction_status(ctx, w) == ReductionStatus::cyclically_reduced;
}

bool is_semi_prefix(const AmalgamContext& ctx, const AmalgamWord& p,
                    const AmalgamWord& w) {
  const AmalgamWord x = mul(ctx, invert(ctx, p), w);
  return p.length() + x.length() <= w.length() + 1;
}

std::vector<Factorization> semi_factorizations(const AmalgamContext& ctx,
                                               const AmalgamWord& w) {
  std::set<AmalgamWord> lefts;
  std::vector<Factorization> out;
  auto emit = [&](const AmalgamWord& left) {
    if (!lefts.insert(left).second) return;
    const AmalgamWord right = mul(ctx, invert(ctx, left), w);
    const int slack = left.length() + right.length() - w.length();
    out.push_back(Factorization{left, right, slack});
  };
  emit(identity_word());
  emit(w);
  const int n = static_cast<int>(w.letters.size());
  for (int k = 1; k <= n; ++k) {
    AmalgamWord prefix;
    prefix.h = w.h;
    prefix.letters.assign(w.letters.begin(), w.letters.begin() + (k - 1));
    const Factor f = w.letters[k - 1].factor;
    const FiniteGroup& F = ctx.factor(f);
    for (Elem c = 0; c < F.order; ++c) {
      if (ctx.in_h(f, c)) continue;
      emit(mul(ctx, prefix, letter_word(ctx, f, c)));
    }
  }
  std::sort(out.begin(), out.end(), [](const Factorization& a,
                                       const Factorization& b) {
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  });
  return out;
}

std::vector<std::pair<Factor, Elem>> support(const AmalgamContext& ctx,
                                             const AmalgamWord& w) {
  std::set<std::pair<Factor, Elem>> set;
  if (w.letters.empty()) {
    if (w.h != ctx.H().identity)
      set.emplace(Factor::L, ctx.image(Factor::L, w.h));
  } else {
    const Factor f0 = w.letters.front().factor;
    set.emplace(f0, ctx.factor(f0).op(ctx.image(f0, w.h),
                                      w.letters.front().elem));
    for (size_t i = 1; i < w.letters.size(); ++i)
      set.emplace(w.letters[i].factor, w.letters[i].elem);
  }
  return {set.begin(), set.end()};
}

std::string format_word(const AmalgamWord& w) {
  if (w.is_identity()) return "e";
  std::string out;
  if (w.h != 0) out = "H:" + std::to_string(w.h);
  for (const Letter& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += l.factor == Factor::L ? "L:" : "G:";
    out += std::to_string(l.elem);
  }
  return out;
}

AmalgamWord parse_word(const AmalgamContext& ctx, const std::string& text) {
  RawWord raw;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    if (tok.size() < 3 || tok[1] != ':')
      throw ParseError("bad word token '" + tok + "'");
    int value = 0;
    try {
      value = std::stoi(tok.substr(2));
    } catch (const std::exception&) {
      throw ParseError("bad word token '" + tok + "'");
    }
    switch (tok[0]) {
      case 'L':
        if (value < 0 || value >= ctx.L().order)
          throw ParseError("L element out of range in '" + tok + "'");
        raw.emplace_back(Factor::L, value);
        break;
      case 'G':
        if (value < 0 || value >= ctx.G().order)
          throw ParseError("G element out of range in '" + tok + "'");
        raw.emplace_back(Factor::G, value);
        break;
      case 'H':
        if (value < 0 || value >= ctx.H().order)
          throw ParseError("H element out of range in '" + tok + "'");
        raw.emplace_back(Factor::L, ctx.image(Factor::L, value));
        break;
      default:
        throw ParseError("bad word token '" + tok + "'");
    }
  }
  return normalize(ctx, raw);
}

}  // namespace amal
