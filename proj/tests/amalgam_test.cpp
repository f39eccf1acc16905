#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "amal/amalgam.hpp"
#include "helpers.hpp"

using namespace amal;
using testutil::instance_a;
using testutil::RightOracle;

TEST_CASE("context construction fixes transversals and coset tables") {
  const auto& ctx = instance_a();
  CHECK(ctx.coset_count(Factor::L) == 2);
  CHECK(ctx.coset_count(Factor::G) == 3);
  CHECK(ctx.transversal(Factor::L)[0] == 0);
  CHECK(ctx.rep_of(Factor::L, 3) == 1);  // a^3 = a^2 * a
  CHECK(ctx.h_part(Factor::L, 3) == 1);
  for (Factor f : {Factor::L, Factor::G}) {
    const FiniteGroup& F = ctx.factor(f);
    for (Elem x = 0; x < F.order; ++x) {
      const Elem h = ctx.h_part(f, x);
      CHECK(F.op(ctx.image(f, h), ctx.rep_of(f, x)) == x);
    }
  }

  // Trivial H: transversals are the full factor element lists.
  const auto& free_ctx = testutil::instance_b();
  CHECK(free_ctx.coset_count(Factor::L) == 51);
  CHECK(free_ctx.coset_count(Factor::G) == 51);

  CHECK_THROWS_AS(build_context(make_cyclic(4), make_cyclic(6), make_cyclic(2),
                                {0, 1}, {0, 3}),
                  BadEmbedding);
}

TEST_CASE("normalize reproduces the frozen instance-A forms") {
  const auto& ctx = instance_a();
  const auto e = normalize(ctx, {});
  CHECK(e.is_identity());
  CHECK(e.length() == 0);

  // a * b^3 = a^3 = a^2 * a
  const auto w1 = normalize(ctx, {{Factor::L, 1}, {Factor::G, 3}});
  CHECK(w1.h == 1);
  CHECK(w1.letters == std::vector<Letter>{{Factor::L, 1}});
  CHECK(w1.length() == 1);

  // a b a^2 b = a^2; a, b^2
  const auto w2 = normalize(
      ctx, {{Factor::L, 1}, {Factor::G, 1}, {Factor::L, 2}, {Factor::G, 1}});
  CHECK(w2.h == 1);
  CHECK(w2.letters == std::vector<Letter>{{Factor::L, 1}, {Factor::G, 2}});
  CHECK(w2.length() == 2);
}

TEST_CASE("normalize agrees with the independent right-form oracle") {
  const auto& ctx = instance_a();
  RightOracle oracle(ctx);
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 2000; ++trial) {
    const RawWord raw = testutil::random_raw(ctx, rng, 10);
    const AmalgamWord nf = normalize(ctx, raw);
    CHECK(valid_word(ctx, nf));
    CHECK(oracle.equal(raw, expand(ctx, nf)));
    CHECK(normalize(ctx, expand(ctx, nf)) == nf);
  }
}

TEST_CASE("normalize is invariant under H-twist insertions") {
  const auto& ctx = instance_a();
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 1000; ++trial) {
    RawWord raw = testutil::random_raw(ctx, rng, 8);
    const AmalgamWord nf = normalize(ctx, raw);
    // Insert h, h^-1 at a random position; either factor can host them.
    const Elem h = static_cast<Elem>(rng() % ctx.H().order);
    const Factor f1 = (rng() & 1) ? Factor::G : Factor::L;
    const Factor f2 = (rng() & 1) ? Factor::G : Factor::L;
    const size_t pos = rng() % (raw.size() + 1);
    RawWord twisted = raw;
    twisted.insert(twisted.begin() + pos,
                   {{f1, ctx.image(f1, h)},
                    {f2, ctx.image(f2, ctx.H().inv(h))}});
    CHECK(normalize(ctx, twisted) == nf);
  }
}

TEST_CASE("group operations in F*") {
  const auto& ctx = instance_a();
  std::mt19937_64 rng(103);

  const auto a = letter_word(ctx, Factor::L, 1);
  const auto b = letter_word(ctx, Factor::G, 1);
  const auto ab = mul(ctx, a, b);
  CHECK(ab.letters == std::vector<Letter>{{Factor::L, 1}, {Factor::G, 1}});
  CHECK(ab.length() == 2);

  // a b * b^5 a^3 = e via the amalgamation relation.
  const auto w2 = normalize(ctx, {{Factor::G, 5}, {Factor::L, 3}});
  CHECK(mul(ctx, ab, w2).is_identity());

  for (int trial = 0; trial < 500; ++trial) {
    const auto x = testutil::random_word(ctx, rng, 8);
    const auto y = testutil::random_word(ctx, rng, 8);
    const auto z = testutil::random_word(ctx, rng, 8);
    CHECK(mul(ctx, x, invert(ctx, x)).is_identity());
    CHECK(invert(ctx, x).length() == x.length());
    CHECK(mul(ctx, mul(ctx, x, y), z) == mul(ctx, x, mul(ctx, y, z)));
    CHECK(mul(ctx, x, identity_word()) == x);
    CHECK(mul(ctx, identity_word(), x) == x);
    CHECK(mul(ctx, x, y).length() <= x.length() + y.length());
    CHECK(conjugate(ctx, y, x).length() <= x.length() + 2 * y.length());
  }
}

TEST_CASE("reduction status classification") {
  const auto& ctx = instance_a();
  const auto ab = normalize(ctx, {{Factor::L, 1}, {Factor::G, 1}});
  CHECK(reduction_status(ctx, ab) == ReductionStatus::cyclically_reduced);

  const auto aba = normalize(ctx, {{Factor::L, 1}, {Factor::G, 1}, {Factor::L, 1}});
  CHECK(aba.length() == 3);
  CHECK(reduction_status(ctx, aba) == ReductionStatus::neither);

  const auto bab = normalize(ctx, {{Factor::G, 1}, {Factor::L, 1}, {Factor::G, 1}});
  CHECK(bab.length() == 3);
  CHECK(reduction_status(ctx, bab) == ReductionStatus::weakly_only);

  CHECK(reduction_status(ctx, identity_word()) ==
        ReductionStatus::cyclically_reduced);
  CHECK(reduction_status(ctx, letter_word(ctx, Factor::L, 1)) ==
        ReductionStatus::cyclically_reduced);
  CHECK(reduction_status(ctx, h_word(ctx, 1)) ==
        ReductionStatus::cyclically_reduced);

  // Even length > 1 is exactly cyclic reducedness.
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 300; ++trial) {
    const auto w = testutil::random_word(ctx, rng, 9);
    if (w.length() > 1)
      CHECK((reduction_status(ctx, w) == ReductionStatus::cyclically_reduced) ==
            (w.length() % 2 == 0));
  }
}

TEST_CASE("semi-prefix predicate") {
  const auto& ctx = instance_a();
  const auto w = normalize(ctx, {{Factor::L, 1}, {Factor::G, 1}});
  CHECK(is_semi_prefix(ctx, identity_word(), w));
  CHECK(is_semi_prefix(ctx, w, w));
  // p = a^3: p^-1 w = a b = b^3 b = b^4, single letter.
  const auto p = letter_word(ctx, Factor::L, 3);
  CHECK(is_semi_prefix(ctx, p, w));
  // A G-letter cannot semi-prefix a word starting on the L side at length 2.
  const auto q = normalize(ctx, {{Factor::G, 1}, {Factor::L, 1}});
  CHECK_FALSE(is_semi_prefix(ctx, q, w));
}

TEST_CASE("semi-factorizations enumerate the candidate family") {
  const auto& ctx = instance_a();

  const auto trivial = semi_factorizations(ctx, identity_word());
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].left.is_identity());
  CHECK(trivial[0].right.is_identity());
  CHECK(trivial[0].slack == 0);

  const auto w = normalize(ctx, {{Factor::L, 1}, {Factor::G, 1}});
  const auto facts = semi_factorizations(ctx, w);
  bool has_trivial_left = false, has_trivial_right = false;
  for (const auto& f : facts) {
    CHECK(mul(ctx, f.left, f.right) == w);
    CHECK(f.slack == f.left.length() + f.right.length() - w.length());
    CHECK(0 <= f.slack);
    CHECK(f.slack <= 1);
    if (f.left.is_identity()) has_trivial_left = true;
    if (f.right.is_identity() && f.left == w) has_trivial_right = true;
  }
  CHECK(has_trivial_left);
  CHECK(has_trivial_right);

  // Independent count: candidate prefixes r1..r_{k-1}c filtered by the
  // semi-prefix criterion, plus the identity.
  std::set<AmalgamWord> expected;
  expected.insert(identity_word());
  expected.insert(w);
  for (int k = 1; k <= w.length(); ++k) {
    AmalgamWord prefix;
    prefix.h = w.h;
    prefix.letters.assign(w.letters.begin(), w.letters.begin() + (k - 1));
    const Factor f = w.letters[k - 1].factor;
    for (Elem c = 0; c < ctx.factor(f).order; ++c) {
      if (ctx.in_h(f, c)) continue;
      const auto p = mul(ctx, prefix, letter_word(ctx, f, c));
      if (is_semi_prefix(ctx, p, w)) expected.insert(p);
    }
  }
  CHECK(facts.size() == expected.size());
  for (const auto& f : facts) CHECK(expected.count(f.left) == 1);
}

TEST_CASE("is_semi_prefix matches the factorization family on candidates") {
  const auto& ctx = instance_a();
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = testutil::random_word(ctx, rng, 6);
    const auto facts = semi_factorizations(ctx, w);
    std::set<AmalgamWord> lefts;
    for (const auto& f : facts) lefts.insert(f.left);
    for (const auto& p : lefts) CHECK(is_semi_prefix(ctx, p, w));
  }
}

TEST_CASE("support reads off the stored normal form") {
  const auto& ctx = instance_a();
  CHECK(support(ctx, identity_word()).empty());

  const auto single = letter_word(ctx, Factor::G, 2);
  const auto s1 = support(ctx, single);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == std::make_pair(Factor::G, Elem{2}));

  // (a^2; a, b): support {a^3, b}.
  AmalgamWord w;
  w.h = 1;
  w.letters = {{Factor::L, 1}, {Factor::G, 1}};
  const auto s2 = support(ctx, w);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == std::make_pair(Factor::L, Elem{3}));
  CHECK(s2[1] == std::make_pair(Factor::G, Elem{1}));
}

TEST_CASE("word literals round-trip") {
  const auto& ctx = instance_a();
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = testutil::random_word(ctx, rng, 8);
    CHECK(parse_word(ctx, format_word(w)) == w);
  }
  CHECK(parse_word(ctx, "e").is_identity());
  CHECK(parse_word(ctx, "L:1 G:4 L:2").length() <= 3);
  CHECK_THROWS_AS(parse_word(ctx, "X:1"), ParseError);
  CHECK_THROWS_AS(parse_word(ctx, "L:9"), ParseError);

  AmalgamWord bad;
  bad.h = 0;
  bad.letters = {{Factor::L, 2}};  // a^2 lies in H
  CHECK_THROWS_AS(require_valid(ctx, bad), ContextMismatch);
}
