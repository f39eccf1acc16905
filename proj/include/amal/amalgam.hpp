#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amal/fingroup.hpp"

namespace amal {

enum class Factor : std::uint8_t { L = 0, G = 1 };

inline Factor other(Factor f) { return f == Factor::L ? Factor::G : Factor::L; }

// A syllable outside H: an element of one factor group.
struct Letter {
  Factor factor;
  Elem elem;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// The ambient data of F* = L *_H G: both factors, the amalgamated subgroup
// with its two embeddings, and fixed right-coset transversals.
class AmalgamContext {
 public:
  AmalgamContext(FiniteGroup L, FiniteGroup G, FiniteGroup H,
                 std::vector<Elem> emb_L, std::vector<Elem> emb_G);

  const FiniteGroup& factor(Factor f) const {
    return f == Factor::L ? L_ : G_;
  }
  const FiniteGroup& L() const { return L_; }
  const FiniteGroup& G() const { return G_; }
  const FiniteGroup& H() const { return H_; }
  const SubgroupEmbedding& embedding(Factor f) const {
    return f == Factor::L ? emb_L_ : emb_G_;
  }

  int coset_count(Factor f) const {
    return static_cast<int>(transversal(f).size());
  }
  const std::vector<Elem>& transversal(Factor f) const {
    return f == Factor::L ? transversal_L_ : transversal_G_;
  }
  // x = image(h) * rep(coset)
  int coset_of(Factor f, Elem x) const { return coset_id(f)[x]; }
  Elem h_part(Factor f, Elem x) const { return coset_h(f)[x]; }
  Elem rep_of(Factor f, Elem x) const {
    return transversal(f)[coset_id(f)[x]];
  }

  Elem image(Factor f, Elem h) const { return embedding(f).image[h]; }
  // -1 when the factor element is outside the image of H.
  Elem preimage(Factor f, Elem x) const { return pre(f)[x]; }
  bool in_h(Factor f, Elem x) const { return pre(f)[x] >= 0; }

 private:
  const std::vector<Elem>& coset_id(Factor f) const {
    return f == Factor::L ? coset_id_L_ : coset_id_G_;
  }
  const std::vector<Elem>& coset_h(Factor f) const {
    return f == Factor::L ? coset_h_L_ : coset_h_G_;
  }
  const std::vector<Elem>& pre(Factor f) const {
    return f == Factor::L ? pre_L_ : pre_G_;
  }

  FiniteGroup L_, G_, H_;
  SubgroupEmbedding emb_L_, emb_G_;
  std::vector<Elem> transversal_L_, transversal_G_;  // coset id -> rep
  std::vector<Elem> coset_id_L_, coset_id_G_;        // elem -> coset id
  std::vector<Elem> coset_h_L_, coset_h_G_;          // elem -> H part
  std::vector<Elem> pre_L_, pre_G_;                  // elem -> H index or -1
};

AmalgamContext build_context(FiniteGroup L, FiniteGroup G, FiniteGroup H,
                             std::vector<Elem> emb_L, std::vector<Elem> emb_G);

// Normal form of an element of F*: left H-coefficient followed by strictly
// alternating transversal-representative letters.
struct AmalgamWord {
  Elem h = 0;
  std::vector<Letter> letters;

  // Canonical-representation length; elements of H\{e} have length 1.
  int length() const {
    if (!letters.empty()) return static_cast<int>(letters.size());
    return h == 0 ? 0 : 1;
  }
  bool is_identity() const { return h == 0 && letters.empty(); }

  friend auto operator<=>(const AmalgamWord&, const AmalgamWord&) = default;
};

struct WordHash {
  std::size_t operator()(const AmalgamWord& w) const {
    std::uint64_t x = 0xcbf29ce484222325ull;
    auto mix = [&x](std::uint64_t v) {
      x ^= v;
      x *= 0x100000001b3ull;
    };
    mix(static_cast<std::uint64_t>(w.h));
    for (const Letter& l : w.letters)
      mix((static_cast<std::uint64_t>(l.elem) << 1) |
          static_cast<std::uint64_t>(l.factor));
    return static_cast<std::size_t>(x);
  }
};

using RawWord = std::vector<std::pair<Factor, Elem>>;

AmalgamWord identity_word();
// Unique normal form of an arbitrary product of factor elements. Raw input
// may contain identity letters, H-elements and same-factor adjacencies.
AmalgamWord normalize(const AmalgamContext& ctx, const RawWord& raw);
AmalgamWord h_word(const AmalgamContext& ctx, Elem h);
AmalgamWord letter_word(const AmalgamContext& ctx, Factor f, Elem x);

// The letters of w as factor elements, with the coefficient folded into the
// first letter; inverse of parsing a normal form back to a raw product.
RawWord expand(const AmalgamContext& ctx, const AmalgamWord& w);

AmalgamWord mul(const AmalgamContext& ctx, const AmalgamWord& a,
                const AmalgamWord& b);
AmalgamWord invert(const AmalgamContext& ctx, const AmalgamWord& w);
AmalgamWord conjugate(const AmalgamContext& ctx, const AmalgamWord& c,
                      const AmalgamWord& w);
AmalgamWord pow(const AmalgamContext& ctx, const AmalgamWord& w, int k);

// Structural validity of w against this context (letter ranges, transversal
// representatives, alternation). Used at trust boundaries.
bool valid_word(const AmalgamContext& ctx, const AmalgamWord& w);
void require_valid(const AmalgamContext& ctx, const AmalgamWord& w);

enum class ReductionStatus { cyclically_reduced, weakly_only, neither };

ReductionStatus reduction_status(const AmalgamContext& ctx,
                                 const AmalgamWord& w);
bool weakly_cyclically_reduced(const AmalgamContext& ctx, const AmalgamWord& w);
bool cyclically_reduced(const AmalgamContext& ctx, const AmalgamWord& w);

// p semi-prefixes w: there is x with w = p*x and |p|+|x|-1 <= |w|.
bool is_semi_prefix(const AmalgamContext& ctx, const AmalgamWord& p,
                    const AmalgamWord& w);

struct Factorization {
  AmalgamWord left;
  AmalgamWord right;
  int slack = 0;  // |left| + |right| - |word|
};

// All semi-reduced factorizations with the left part drawn from the
// candidate prefix family (first k-1 letters followed by a free letter in
// the factor of the k-th), plus the two trivial ones.
std::vector<Factorization> semi_factorizations(const AmalgamContext& ctx,
                                               const AmalgamWord& w);

// {h*t1, t2, ..., tn} read off the stored normal form.
std::vector<std::pair<Factor, Elem>> support(const AmalgamContext& ctx,
                                             const AmalgamWord& w);

// Word literal syntax: space-separated "L:3", "G:5", "H:1" tokens; "e" is
// the identity.
std::string format_word(const AmalgamWord& w);
AmalgamWord parse_word(const AmalgamContext& ctx, const std::string& text);

}  // namespace amal
