#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amal/errors.hpp"

namespace amal {

using Elem = std::int32_t;

// Addition and subtraction modulo n on the index set {0,...,n-1}.
inline int mod_add(int i, int j, int n) {
  const int s = i + j;
  return s < n ? s : s - n;
}
inline int mod_sub(int i, int j, int n) {
  const int d = i - j;
  return d >= 0 ? d : d + n;
}
inline int mod_neg(int i, int n) { return mod_sub(0, i, n); }

struct CyclicIndex {
  int modulus;
  int value;

  CyclicIndex(int n, int v) : modulus(n), value(((v % n) + n) % n) {}
  CyclicIndex plus(int j) const {
    return CyclicIndex(modulus, mod_add(value, ((j % modulus) + modulus) % modulus, modulus));
  }
  CyclicIndex minus(int j) const {
    return CyclicIndex(modulus, mod_sub(value, ((j % modulus) + modulus) % modulus, modulus));
  }
  friend bool operator==(const CyclicIndex&, const CyclicIndex&) = default;
};

// A finite group given by a verified Cayley table. Elements are dense
// indices 0..order-1.
struct FiniteGroup {
  int order = 1;
  std::vector<Elem> table{0};  // row-major: table[a*order+b] = a*b
  Elem identity = 0;
  std::vector<Elem> inverses{0};
  std::string name = "trivial";

  Elem op(Elem a, Elem b) const { return table[a * order + b]; }
  Elem inv(Elem a) const { return inverses[a]; }
};

struct GroupSpec {
  enum class Kind { cyclic, dihedral, symmetric, product, table };
  Kind kind = Kind::cyclic;
  int n = 1;
  std::vector<GroupSpec> parts;            // product
  std::vector<std::vector<Elem>> table;    // explicit table
  std::string name;
  int assoc_check_bound = 256;
};

FiniteGroup make_group(const GroupSpec& spec);
FiniteGroup make_cyclic(int n);
FiniteGroup make_dihedral(int n);   // order 2n; 0..n-1 rotations, n..2n-1 reflections
FiniteGroup make_symmetric(int n);  // order n!, lexicographic permutation ranks
FiniteGroup make_product(const std::vector<FiniteGroup>& parts);
FiniteGroup make_from_table(const std::vector<std::vector<Elem>>& table,
                            std::string name, int assoc_check_bound = 256);

// Re-runs the full invariant suite (Latin square, identity, inverses and,
// for order <= assoc_check_bound, all associativity triples).
void verify_group(const FiniteGroup& g, int assoc_check_bound = 256);

// An injective homomorphism sub -> sup, verified exhaustively at build.
struct SubgroupEmbedding {
  FiniteGroup sub;
  std::vector<Elem> image;  // sub element index -> sup element index

  bool contains(Elem sup_elem) const;
  // sup element -> sub index, or -1 when outside the image.
  Elem preimage(Elem sup_elem) const;
};

SubgroupEmbedding make_embedding(const FiniteGroup& sup, FiniteGroup sub,
                                 std::vector<Elem> image);
SubgroupEmbedding trivial_embedding(const FiniteGroup& sup);
// Subgroup generated by the given elements, with its own dense index set.
SubgroupEmbedding subgroup_from_generators(const FiniteGroup& sup,
                                           const std::vector<Elem>& generators);
// Embedding of the same abstract subgroup with image conjugated by x.
SubgroupEmbedding conjugate_embedding(const FiniteGroup& sup,
                                      const SubgroupEmbedding& emb, Elem x);

struct SequenceReport {
  bool ok = true;
  std::optional<std::pair<Elem, Elem>> witness;
  std::string what;

  explicit operator bool() const { return ok; }
};

// g is H-malnormal: g outside H and H \cap gHg^{-1} = {e}.
bool is_h_malnormal(const FiniteGroup& sup, const SubgroupEmbedding& H, Elem g);

// Every x in sup\H is H-malnormal. Witness is a violating (x, h) pair.
SequenceReport is_malnormal(const FiniteGroup& sup, const SubgroupEmbedding& H);

bool in_double_coset(const FiniteGroup& sup, const SubgroupEmbedding& H,
                     Elem g, Elem center);  // g in H*center*H

// Double-coset separatedness of a sequence in sup\H. With plus_minus the
// inverse cosets H g_j^{-1} H are excluded as well.
SequenceReport is_pm_separated(const FiniteGroup& sup, const SubgroupEmbedding& H,
                               const std::vector<Elem>& seq,
                               bool plus_minus = true);

// Greedy search (ascending element index) for an H^{\pm}-separated sequence
// of length n inside pool, with an exhaustive DFS fallback for small pools.
std::optional<std::vector<Elem>> find_pm_separated(
    const FiniteGroup& sup, const SubgroupEmbedding& H,
    const std::vector<Elem>& pool, int n, int exhaustive_bound = 64);

// {x : c0*x*c1*x*c2...x*cn = b}, evaluated over all elements. The optional
// leading coefficient defaults to the identity.
std::vector<Elem> algebraic_set(const FiniteGroup& g,
                                const std::vector<Elem>& coeffs, Elem b,
                                std::optional<Elem> c0 = std::nullopt);

struct CovResult {
  std::optional<int> count;  // nullopt: budget exhausted, unknown
  int lower_bound = 1;       // covers of fewer sets were ruled out
};

// Smallest k <= max_sets such that the group is a union of k algebraic sets
// of polynomial degree <= max_degree; coefficient tuples searched
// exhaustively.
CovResult cov_bounded(const FiniteGroup& g, int max_degree, int max_sets);

int group_exponent(const FiniteGroup& g);

}  // namespace amal
