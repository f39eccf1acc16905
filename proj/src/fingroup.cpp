#include "amal/fingroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace amal {

namespace {

void check_latin_and_identity(FiniteGroup& g) {
  const int n = g.order;
  std::vector<char> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      const Elem v = g.table[r * n + c];
      if (v < 0 || v >= n || seen[v])
        throw NotLatinSquare(r, "row " + std::to_string(r) +
                                    " of the multiplication table is not a "
                                    "permutation");
      seen[v] = 1;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      const Elem v = g.table[r * n + c];
      if (seen[v])
        throw NotLatinSquare(c, "column " + std::to_string(c) +
                                    " of the multiplication table is not a "
                                    "permutation");
      seen[v] = 1;
    }
  }
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = g.table[e * n + x] == x && g.table[x * n + e] == x;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw NoIdentity("multiplication table has no identity element");
  g.identity = id;
  g.inverses.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (g.table[x * n + y] == id && g.table[y * n + x] == id) {
        g.inverses[x] = y;
        break;
      }
    }
    if (g.inverses[x] < 0)
      throw NotLatinSquare(x, "element " + std::to_string(x) +
                                  " has no two-sided inverse");
  }
}

void check_associativity(const FiniteGroup& g) {
  const int n = g.order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Elem ab = g.table[a * n + b];
      for (int c = 0; c < n; ++c) {
        if (g.table[ab * n + c] != g.table[a * n + g.table[b * n + c]])
          throw NonAssociative(a, b, c,
                               "(a*b)*c != a*(b*c) at (" + std::to_string(a) +
                                   "," + std::to_string(b) + "," +
                                   std::to_string(c) + ")");
      }
    }
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

void verify_group(const FiniteGroup& g, int assoc_check_bound) {
  FiniteGroup copy = g;
  check_latin_and_identity(copy);
  if (copy.identity != g.identity || copy.inverses != g.inverses)
    throw NoIdentity("stored identity/inverse tables disagree with the table");
  if (g.order <= assoc_check_bound) check_associativity(g);
}

FiniteGroup make_cyclic(int n) {
  FiniteGroup g;
  g.order = n;
  g.name = "C" + std::to_string(n);
  g.table.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[a * n + b] = mod_add(a, b, n);
  g.identity = 0;
  g.inverses.resize(n);
  for (int a = 0; a < n; ++a) g.inverses[a] = mod_neg(a, n);
  return g;
}

FiniteGroup make_dihedral(int n) {
  // Indices 0..n-1 are rotations r^k, n..2n-1 are reflections s*r^k.
  const int m = 2 * n;
  FiniteGroup g;
  g.order = m;
  g.name = "D" + std::to_string(n);
  g.table.resize(static_cast<size_t>(m) * m);
  auto idx = [n](bool refl, int k) { return (refl ? n : 0) + k; };
  for (int a = 0; a < m; ++a) {
    const bool ar = a >= n;
    const int ak = ar ? a - n : a;
    for (int b = 0; b < m; ++b) {
      const bool br = b >= n;
      const int bk = br ? b - n : b;
      // s*r^k * s*r^j = r^(j-k); s*r^k * r^j = s*r^(k+j);
      // r^k * s*r^j = s*r^(j-k); r^k * r^j = r^(k+j)
      Elem v;
      if (!ar && !br) v = idx(false, mod_add(ak, bk, n));
      else if (!ar && br) v = idx(true, mod_sub(bk, ak, n));
      else if (ar && !br) v = idx(true, mod_add(ak, bk, n));
      else v = idx(false, mod_sub(bk, ak, n));
      g.table[a * m + b] = v;
    }
  }
  g.identity = 0;
  g.inverses.resize(m);
  for (int a = 0; a < m; ++a)
    g.inverses[a] = a >= n ? a : mod_neg(a, n);
  return g;
}

FiniteGroup make_symmetric(int n) {
  const auto perms = all_permutations(n);
  const int m = static_cast<int>(perms.size());
  std::vector<int> radix(n);  // rank lookup via lexicographic order
  auto rank_of = [&](const std::vector<int>& p) {
    const auto it = std::lower_bound(perms.begin(), perms.end(), p);
    return static_cast<int>(it - perms.begin());
  };
  FiniteGroup g;
  g.order = m;
  g.name = "S" + std::to_string(n);
  g.table.resize(static_cast<size_t>(m) * m);
  std::vector<int> comp(n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
      g.table[a * m + b] = rank_of(comp);
    }
  g.identity = 0;
  g.inverses.resize(m);
  std::vector<int> inv(n);
  for (int a = 0; a < m; ++a) {
    for (int i = 0; i < n; ++i) inv[perms[a][i]] = i;
    g.inverses[a] = rank_of(inv);
  }
  (void)radix;
  return g;
}

FiniteGroup make_product(const std::vector<FiniteGroup>& parts) {
  FiniteGroup g;
  g.order = 1;
  g.name = "";
  for (const auto& p : parts) {
    g.order *= p.order;
    g.name += (g.name.empty() ? "" : "x") + p.name;
  }
  if (parts.empty()) return FiniteGroup{};
  const int n = g.order;
  auto decode = [&](int x, std::vector<int>& digits) {
    for (size_t i = parts.size(); i-- > 0;) {
      digits[i] = x % parts[i].order;
      x /= parts[i].order;
    }
  };
  auto encode = [&](const std::vector<int>& digits) {
    int x = 0;
    for (size_t i = 0; i < parts.size(); ++i) x = x * parts[i].order + digits[i];
    return x;
  };
  g.table.resize(static_cast<size_t>(n) * n);
  std::vector<int> da(parts.size()), db(parts.size()), dc(parts.size());
  for (int a = 0; a < n; ++a) {
    decode(a, da);
    for (int b = 0; b < n; ++b) {
      decode(b, db);
      for (size_t i = 0; i < parts.size(); ++i)
        dc[i] = parts[i].op(da[i], db[i]);
      g.table[a * n + b] = encode(dc);
    }
  }
  g.identity = 0;
  g.inverses.resize(n);
  for (int a = 0; a < n; ++a) {
    decode(a, da);
    for (size_t i = 0; i < parts.size(); ++i) db[i] = parts[i].inv(da[i]);
    g.inverses[a] = encode(db);
  }
  return g;
}

FiniteGroup make_from_table(const std::vector<std::vector<Elem>>& table,
                            std::string name, int assoc_check_bound) {
  FiniteGroup g;
  g.order = static_cast<int>(table.size());
  if (g.order == 0) throw NoIdentity("empty multiplication table");
  g.name = std::move(name);
  g.table.clear();
  g.table.reserve(static_cast<size_t>(g.order) * g.order);
  for (int r = 0; r < g.order; ++r) {
    if (static_cast<int>(table[r].size()) != g.order)
      throw NotLatinSquare(r, "row " + std::to_string(r) + " has wrong width");
    g.table.insert(g.table.end(), table[r].begin(), table[r].end());
  }
  check_latin_and_identity(g);
  if (g.order <= assoc_check_bound) check_associativity(g);
  return g;
}

FiniteGroup make_group(const GroupSpec& spec) {
  FiniteGroup g;
  switch (spec.kind) {
    case GroupSpec::Kind::cyclic: g = make_cyclic(spec.n); break;
    case GroupSpec::Kind::dihedral: g = make_dihedral(spec.n); break;
    case GroupSpec::Kind::symmetric: g = make_symmetric(spec.n); break;
    case GroupSpec::Kind::product: {
      std::vector<FiniteGroup> parts;
      parts.reserve(spec.parts.size());
      for (const auto& p : spec.parts) parts.push_back(make_group(p));
      g = make_product(parts);
      break;
    }
    case GroupSpec::Kind::table:
      g = make_from_table(spec.table, spec.name.empty() ? "table" : spec.name,
                          spec.assoc_check_bound);
      break;
  }
  if (!spec.name.empty()) g.name = spec.name;
  if (spec.kind != GroupSpec::Kind::table && g.order <= spec.assoc_check_bound)
    check_associativity(g);
  return g;
}

bool SubgroupEmbedding::contains(Elem sup_elem) const {
  return preimage(sup_elem) >= 0;
}

Elem SubgroupEmbedding::preimage(Elem sup_elem) const {
  for (size_t i = 0; i < image.size(); ++i)
    if (image[i] == sup_elem) return static_cast<Elem>(i);
  return -1;
}

SubgroupEmbedding make_embedding(const FiniteGroup& sup, FiniteGroup sub,
                                 std::vector<Elem> image) {
  if (static_cast<int>(image.size()) != sub.order)
    throw BadEmbedding(-1, -1, "image size differs from subgroup order");
  for (Elem v : image)
    if (v < 0 || v >= sup.order)
      throw BadEmbedding(v, -1, "image element out of range");
  std::set<Elem> distinct(image.begin(), image.end());
  if (static_cast<int>(distinct.size()) != sub.order)
    throw BadEmbedding(-1, -1, "image map is not injective");
  if (image[sub.identity] != sup.identity)
    throw BadEmbedding(sub.identity, image[sub.identity],
                       "identity does not map to identity");
  for (Elem a = 0; a < sub.order; ++a)
    for (Elem b = 0; b < sub.order; ++b)
      if (image[sub.op(a, b)] != sup.op(image[a], image[b]))
        throw BadEmbedding(a, b,
                           "image map is not a homomorphism at (" +
                               std::to_string(a) + "," + std::to_string(b) +
                               ")");
  return SubgroupEmbedding{std::move(sub), std::move(image)};
}

SubgroupEmbedding trivial_embedding(const FiniteGroup& sup) {
  return make_embedding(sup, FiniteGroup{}, {sup.identity});
}

SubgroupEmbedding subgroup_from_generators(const FiniteGroup& sup,
                                           const std::vector<Elem>& generators) {
  std::set<Elem> closure{sup.identity};
  std::vector<Elem> frontier{sup.identity};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier)
      for (Elem gen : generators) {
        if (gen < 0 || gen >= sup.order)
          throw BadEmbedding(gen, -1, "generator out of range");
        for (Elem y : {sup.op(x, gen), sup.op(x, sup.inv(gen))})
          if (closure.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<Elem> image(closure.begin(), closure.end());
  const int m = static_cast<int>(image.size());
  auto local = [&](Elem sup_elem) {
    return static_cast<Elem>(
        std::lower_bound(image.begin(), image.end(), sup_elem) - image.begin());
  };
  FiniteGroup sub;
  sub.order = m;
  sub.name = sup.name + "_sub";
  sub.table.resize(static_cast<size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      sub.table[a * m + b] = local(sup.op(image[a], image[b]));
  sub.identity = local(sup.identity);
  sub.inverses.resize(m);
  for (int a = 0; a < m; ++a) sub.inverses[a] = local(sup.inv(image[a]));
  return make_embedding(sup, std::move(sub), std::move(image));
}

SubgroupEmbedding conjugate_embedding(const FiniteGroup& sup,
                                      const SubgroupEmbedding& emb, Elem x) {
  std::vector<Elem> image(emb.image.size());
  for (size_t i = 0; i < emb.image.size(); ++i)
    image[i] = sup.op(sup.op(x, emb.image[i]), sup.inv(x));
  return make_embedding(sup, emb.sub, std::move(image));
}

bool is_h_malnormal(const FiniteGroup& sup, const SubgroupEmbedding& H,
                    Elem g) {
  if (H.contains(g)) return false;
  for (Elem h = 0; h < H.sub.order; ++h) {
    if (h == H.sub.identity) continue;
    const Elem c = sup.op(sup.op(g, H.image[h]), sup.inv(g));
    if (H.contains(c)) return false;
  }
  return true;
}

SequenceReport is_malnormal(const FiniteGroup& sup, const SubgroupEmbedding& H) {
  for (Elem x = 0; x < sup.order; ++x) {
    if (H.contains(x)) continue;
    for (Elem h = 0; h < H.sub.order; ++h) {
      if (h == H.sub.identity) continue;
      const Elem c = sup.op(sup.op(x, H.image[h]), sup.inv(x));
      if (H.contains(c))
        return SequenceReport{false,
                              std::make_pair(x, H.image[h]),
                              "H cap xHx^-1 is nontrivial"};
    }
  }
  return SequenceReport{};
}

bool in_double_coset(const FiniteGroup& sup, const SubgroupEmbedding& H,
                     Elem g, Elem center) {
  for (Elem h1 = 0; h1 < H.sub.order; ++h1) {
    const Elem left = sup.op(H.image[h1], center);
    for (Elem h2 = 0; h2 < H.sub.order; ++h2)
      if (sup.op(left, H.image[h2]) == g) return true;
  }
  return false;
}

SequenceReport is_pm_separated(const FiniteGroup& sup,
                               const SubgroupEmbedding& H,
                               const std::vector<Elem>& seq, bool plus_minus) {
  for (size_t i = 0; i < seq.size(); ++i)
    if (H.contains(seq[i]))
      throw ElementInH(static_cast<int>(i),
                       "sequence element " + std::to_string(i) + " lies in H");
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = 0; j < seq.size(); ++j) {
      if (i == j) continue;
      if (in_double_coset(sup, H, seq[i], seq[j]) ||
          (plus_minus && in_double_coset(sup, H, seq[i], sup.inv(seq[j]))))
        return SequenceReport{
            false,
            std::make_pair(static_cast<Elem>(i), static_cast<Elem>(j)),
            plus_minus ? "g_i in Hg_jH u Hg_j^-1H" : "g_i in Hg_jH"};
    }
  return SequenceReport{};
}

namespace {

bool admissible(const FiniteGroup& sup, const SubgroupEmbedding& H,
                const std::vector<Elem>& chosen, Elem cand) {
  for (Elem prev : chosen) {
    if (in_double_coset(sup, H, cand, prev) ||
        in_double_coset(sup, H, cand, sup.inv(prev)))
      return false;
  }
  return true;
}

bool extend_exhaustive(const FiniteGroup& sup, const SubgroupEmbedding& H,
                       const std::vector<Elem>& pool, size_t from, int n,
                       std::vector<Elem>& chosen) {
  if (static_cast<int>(chosen.size()) == n) return true;
  for (size_t k = from; k < pool.size(); ++k) {
    if (!admissible(sup, H, chosen, pool[k])) continue;
    chosen.push_back(pool[k]);
    if (extend_exhaustive(sup, H, pool, k + 1, n, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<Elem>> find_pm_separated(
    const FiniteGroup& sup, const SubgroupEmbedding& H,
    const std::vector<Elem>& pool, int n, int exhaustive_bound) {
  std::vector<Elem> usable;
  for (Elem x : pool)
    if (!H.contains(x)) usable.push_back(x);
  std::sort(usable.begin(), usable.end());
  usable.erase(std::unique(usable.begin(), usable.end()), usable.end());

  std::vector<Elem> chosen;
  for (Elem cand : usable) {
    if (admissible(sup, H, chosen, cand)) chosen.push_back(cand);
    if (static_cast<int>(chosen.size()) == n) return chosen;
  }
  if (static_cast<int>(pool.size()) <= exhaustive_bound) {
    chosen.clear();
    if (extend_exhaustive(sup, H, usable, 0, n, chosen)) return chosen;
  }
  return std::nullopt;
}

std::vector<Elem> algebraic_set(const FiniteGroup& g,
                                const std::vector<Elem>& coeffs, Elem b,
                                std::optional<Elem> c0) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order; ++x) {
    Elem v = c0.value_or(g.identity);
    for (Elem c : coeffs) v = g.op(g.op(v, x), c);
    if (v == b) out.push_back(x);
  }
  return out;
}

int group_exponent(const FiniteGroup& g) {
  long long exp = 1;
  for (Elem x = 0; x < g.order; ++x) {
    int ord = 1;
    Elem v = x;
    while (v != g.identity) {
      v = g.op(v, x);
      ++ord;
    }
    exp = std::lcm(exp, static_cast<long long>(ord));
  }
  return static_cast<int>(exp);
}

namespace {

using Mask = std::vector<std::uint64_t>;

bool cover_search(const std::vector<Mask>& sets, const Mask& covered,
                  int remaining, int order) {
  if (remaining == 0) {
    for (int x = 0; x < order; ++x)
      if (!(covered[x >> 6] & (1ull << (x & 63)))) return false;
    return true;
  }
  int pivot = -1;
  for (int x = 0; x < order; ++x)
    if (!(covered[x >> 6] & (1ull << (x & 63)))) {
      pivot = x;
      break;
    }
  if (pivot < 0) return true;
  for (const Mask& s : sets) {
    if (!(s[pivot >> 6] & (1ull << (pivot & 63)))) continue;
    Mask next = covered;
    for (size_t w = 0; w < next.size(); ++w) next[w] |= s[w];
    if (cover_search(sets, next, remaining - 1, order)) return true;
  }
  return false;
}

}  // namespace

CovResult cov_bounded(const FiniteGroup& g, int max_degree, int max_sets) {
  const int order = g.order;
  const size_t words = (order + 63) / 64;
  std::set<Mask> distinct;
  std::vector<Elem> vals(order);

  // Enumerate coefficient tuples (c0,...,cn); one evaluation pass yields all
  // fibers of the polynomial at once.
  std::uint64_t cap = 4'000'000;
  for (int deg = 1; deg <= max_degree; ++deg) {
    std::uint64_t tuples = 1;
    bool overflow = false;
    for (int i = 0; i <= deg; ++i) {
      tuples *= static_cast<std::uint64_t>(order);
      if (tuples > cap) {
        overflow = true;
        break;
      }
    }
    if (overflow)
      throw BudgetExceeded(1, "coefficient enumeration exceeds budget at degree " +
                                  std::to_string(deg));
    std::vector<Elem> coef(deg + 1, 0);
    while (true) {
      for (Elem x = 0; x < order; ++x) {
        Elem v = coef[0];
        for (int i = 1; i <= deg; ++i) v = g.op(g.op(v, x), coef[i]);
        vals[x] = v;
      }
      std::vector<Mask> fibers(order, Mask(words, 0));
      for (Elem x = 0; x < order; ++x)
        fibers[vals[x]][x >> 6] |= 1ull << (x & 63);
      for (auto& f : fibers) {
        bool empty = true;
        for (auto w : f)
          if (w) empty = false;
        if (!empty) distinct.insert(f);
      }
      int pos = deg;
      while (pos >= 0 && ++coef[pos] == order) coef[pos--] = 0;
      if (pos < 0) break;
    }
  }

  std::vector<Mask> sets(distinct.begin(), distinct.end());
  Mask none(words, 0);
  for (int k = 1; k <= max_sets; ++k)
    if (cover_search(sets, none, k, order)) return CovResult{k, k};
  return CovResult{std::nullopt, max_sets + 1};
}

}  // namespace amal
