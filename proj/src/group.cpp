#include "conlat/group.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

namespace conlat {

namespace {

// Product closure of elems under g. elems[0..closed_prefix) is assumed
// already closed; new elements are appended and mask is kept in sync. Every
// pair is multiplied in both orders once the later of the two has been
// reached, so the result is product-closed (and hence a subgroup: in a
// finite group the powers of each element supply identity and inverses).
void close_under_product(const FiniteGroup& g, std::vector<int>& elems,
                         IndexMask& mask, std::size_t closed_prefix) {
  for (std::size_t i = closed_prefix; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      int p = g.mul(elems[i], elems[j]);
      if (!mask.test(p)) {
        mask.set(p);
        elems.push_back(p);
      }
      p = g.mul(elems[j], elems[i]);
      if (!mask.test(p)) {
        mask.set(p);
        elems.push_back(p);
      }
    }
  }
}

// Same closure, but gives up once the size exceeds cap and reports the full
// group order instead. A proper subgroup has order at most the largest
// proper divisor of |g|, so exceeding that cap forces the closure to be G.
int closure_size_capped(const FiniteGroup& g, const std::vector<int>& base,
                        const IndexMask& base_mask, int extra, int cap) {
  std::vector<int> elems = base;
  IndexMask mask = base_mask;
  std::size_t prefix = elems.size();
  mask.set(extra);
  elems.push_back(extra);
  for (std::size_t i = prefix; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      int p = g.mul(elems[i], elems[j]);
      if (!mask.test(p)) {
        mask.set(p);
        elems.push_back(p);
        if (static_cast<int>(elems.size()) > cap) return g.order;
      }
      p = g.mul(elems[j], elems[i]);
      if (!mask.test(p)) {
        mask.set(p);
        elems.push_back(p);
        if (static_cast<int>(elems.size()) > cap) return g.order;
      }
    }
  }
  return static_cast<int>(elems.size());
}

SubgroupSet subgroup_from_sorted(const FiniteGroup& g, std::vector<int> members) {
  SubgroupSet h;
  h.parent_order = g.order;
  h.mask = IndexMask(g.order);
  for (int m : members) h.mask.set(m);
  h.members = std::move(members);
  return h;
}

int largest_proper_divisor(int n) {
  for (int p = 2; p <= n; ++p)
    if (n % p == 0) return n / p;
  return 0;  // n == 1
}

}  // namespace

FiniteGroup make_group(std::string label, int order, std::vector<int> cayley,
                       const GroupLimits& limits) {
  if (order <= 0)
    throw InvalidGroupError(label + ": order must be positive");
  if (order > limits.max_order)
    throw CapacityError(label + ": order " + std::to_string(order) +
                        " exceeds the configured bound " +
                        std::to_string(limits.max_order));
  if (static_cast<long long>(cayley.size()) != static_cast<long long>(order) * order)
    throw InvalidGroupError(label + ": Cayley table has wrong size");
  for (int v : cayley)
    if (v < 0 || v >= order)
      throw InvalidGroupError(label + ": Cayley entry out of range");

  FiniteGroup g;
  g.order = order;
  g.cayley = std::move(cayley);
  g.label = std::move(label);

  int identity = -1;
  for (int e = 0; e < order && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < order && ok; ++x)
      ok = g.mul(e, x) == x && g.mul(x, e) == x;
    if (ok) identity = e;
  }
  if (identity < 0)
    throw InvalidGroupError(g.label + ": no identity element");
  g.identity = identity;

  g.inverse.assign(order, -1);
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      if (g.mul(x, y) == identity && g.mul(y, x) == identity) {
        g.inverse[x] = y;
        break;
      }
    }
    if (g.inverse[x] < 0)
      throw InvalidGroupError(g.label + ": element " + std::to_string(x) +
                              " has no inverse");
  }

  if (order <= limits.assoc_check_bound || limits.force_assoc_check) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
            throw InvalidGroupError(g.label + ": associativity fails at (" +
                                    std::to_string(a) + "," + std::to_string(b) +
                                    "," + std::to_string(c) + ")");
  }
  return g;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw InvalidGroupError("cyclic group order must be >= 1");
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return make_group("C" + std::to_string(n), n, std::move(t));
}

FiniteGroup dihedral_group(int n) {
  if (n < 1) throw InvalidGroupError("dihedral parameter must be >= 1");
  // Element a*n + b acts on Z_n as v -> (-1)^a v + b. Composition applies the
  // right operand first, so (a1,b1)(a2,b2) = (a1^a2, (a1 ? b1-b2 : b1+b2)).
  const int order = 2 * n;
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  auto modn = [n](int v) { return ((v % n) + n) % n; };
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < n; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < n; ++b2) {
          int row = a1 * n + b1, col = a2 * n + b2;
          int b = a1 ? modn(b1 - b2) : modn(b1 + b2);
          t[static_cast<std::size_t>(row) * order + col] = (a1 ^ a2) * n + b;
        }
  return make_group("D" + std::to_string(n), order, std::move(t));
}

namespace {

FiniteGroup permutation_group(std::string label, std::vector<std::vector<int>> perms) {
  const int order = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < order; ++i) index[perms[i]] = i;
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  std::vector<int> comp(perms[0].size());
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      for (std::size_t v = 0; v < comp.size(); ++v)
        comp[v] = perms[i][perms[j][v]];  // apply j first, then i
      t[static_cast<std::size_t>(i) * order + j] = index.at(comp);
    }
  return make_group(std::move(label), order, std::move(t));
}

bool perm_is_even(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0;
}

}  // namespace

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 5)
    throw InvalidGroupError("symmetric group parameter must be in [1, 5]");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return permutation_group("S" + std::to_string(n), std::move(perms));
}

FiniteGroup alternating_group(int n) {
  if (n < 1 || n > 5)
    throw InvalidGroupError("alternating group parameter must be in [1, 5]");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    if (perm_is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return permutation_group("A" + std::to_string(n), std::move(perms));
}

FiniteGroup quaternion_group() {
  // Index 2u + s: u in {1, i, j, k}, s = 0 for +, 1 for -.
  static const int bas[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const int order = 8;
  std::vector<int> t(order * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      int u1 = x / 2, s1 = x % 2, u2 = y / 2, s2 = y % 2;
      t[static_cast<std::size_t>(x) * order + y] =
          2 * bas[u1][u2] + (s1 ^ s2 ^ sgn[u1][u2]);
    }
  return make_group("Q8", order, std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                           const GroupLimits& limits) {
  const long long order = static_cast<long long>(g.order) * h.order;
  if (order > limits.max_order)
    throw CapacityError(g.label + "x" + h.label + ": order " +
                        std::to_string(order) + " exceeds the configured bound " +
                        std::to_string(limits.max_order));
  const int n = static_cast<int>(order), hn = h.order;
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int a1 = 0; a1 < g.order; ++a1)
    for (int b1 = 0; b1 < hn; ++b1) {
      const std::size_t row = static_cast<std::size_t>(a1 * hn + b1) * n;
      for (int a2 = 0; a2 < g.order; ++a2) {
        int ga = g.mul(a1, a2) * hn;
        for (int b2 = 0; b2 < hn; ++b2)
          t[row + a2 * hn + b2] = ga + h.mul(b1, b2);
      }
    }
  // Factors are already validated; products of valid groups are valid, so the
  // associativity gate in make_group applies only up to its usual bound.
  return make_group(g.label + "x" + h.label, n, std::move(t), limits);
}

FiniteGroup load_cayley_table(std::istream& in, std::string label,
                              const GroupLimits& limits) {
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::string& dst) {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) {
        dst = line;
        return true;
      }
    }
    return false;
  };

  std::string first;
  if (!next_line(first))
    throw ParseError(label + ": empty Cayley table file");
  int n = 0;
  {
    std::istringstream ss(first);
    if (!(ss >> n) || n <= 0)
      throw ParseError(label + ": line " + std::to_string(lineno) +
                       ": expected a positive order");
    std::string rest;
    if (ss >> rest)
      throw ParseError(label + ": line " + std::to_string(lineno) +
                       ": trailing tokens after the order");
  }

  std::vector<int> t;
  t.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    std::string row;
    if (!next_line(row))
      throw ParseError(label + ": expected " + std::to_string(n) +
                       " table rows, got " + std::to_string(r));
    std::istringstream ss(row);
    for (int c = 0; c < n; ++c) {
      int v;
      if (!(ss >> v))
        throw ParseError(label + ": line " + std::to_string(lineno) + ": expected " +
                         std::to_string(n) + " entries, got " + std::to_string(c));
      if (v < 0 || v >= n)
        throw ParseError(label + ": line " + std::to_string(lineno) + ": entry " +
                         std::to_string(v) + " out of range [0, " +
                         std::to_string(n) + ")");
      t.push_back(v);
    }
    std::string rest;
    if (ss >> rest)
      throw ParseError(label + ": line " + std::to_string(lineno) +
                       ": more than " + std::to_string(n) + " entries");
  }

  FiniteGroup g = make_group(std::move(label), n, std::move(t), limits);
  if (g.identity != 0)
    throw InvalidGroupError(g.label + ": element 0 must be the identity");
  return g;
}

FiniteGroup load_cayley_table_file(const std::string& path, const GroupLimits& limits) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open Cayley table file: " + path);
  return load_cayley_table(in, path, limits);
}

SubgroupSet make_subgroup(const FiniteGroup& g, std::vector<int> members) {
  for (int m : members)
    if (m < 0 || m >= g.order)
      throw InvalidGroupError("subgroup member out of range");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  SubgroupSet h = subgroup_from_sorted(g, std::move(members));
  if (!h.contains(g.identity))
    throw InvalidGroupError("subgroup is missing the identity");
  for (int a : h.members) {
    if (!h.contains(g.inv(a)))
      throw InvalidGroupError("subgroup is not closed under inverse");
    for (int b : h.members)
      if (!h.contains(g.mul(a, b)))
        throw InvalidGroupError("subgroup is not closed under product");
  }
  if (g.order % h.size() != 0)
    throw InvalidGroupError("subgroup size does not divide the group order");
  return h;
}

SubgroupSet trivial_subgroup(const FiniteGroup& g) {
  return subgroup_from_sorted(g, {g.identity});
}

SubgroupSet full_subgroup(const FiniteGroup& g) {
  std::vector<int> all(g.order);
  std::iota(all.begin(), all.end(), 0);
  return subgroup_from_sorted(g, std::move(all));
}

SubgroupSet subgroup_generate(const FiniteGroup& g, const std::vector<int>& gens) {
  IndexMask mask(g.order);
  std::vector<int> elems;
  mask.set(g.identity);
  elems.push_back(g.identity);
  for (int x : gens) {
    if (x < 0 || x >= g.order)
      throw InvalidGroupError("generator index out of range");
    if (!mask.test(x)) {
      mask.set(x);
      elems.push_back(x);
    }
  }
  close_under_product(g, elems, mask, 0);
  std::sort(elems.begin(), elems.end());
  return subgroup_from_sorted(g, std::move(elems));
}

bool is_subgroup_of(const SubgroupSet& h, const SubgroupSet& k) {
  return h.parent_order == k.parent_order && h.mask.subset_of(k.mask);
}

SubgroupSet intersect_subgroups(const FiniteGroup& g, const SubgroupSet& a,
                                const SubgroupSet& b) {
  std::vector<int> members;
  for (int m : a.members)
    if (b.contains(m)) members.push_back(m);
  return subgroup_from_sorted(g, std::move(members));
}

std::vector<SubgroupSet> all_subgroups(const FiniteGroup& g, const GroupLimits& limits) {
  const int n = g.order;
  if (n > limits.subgroup_enum_bound)
    throw CapacityError(g.label + ": order " + std::to_string(n) +
                        " exceeds the subgroup enumeration bound " +
                        std::to_string(limits.subgroup_enum_bound));

  std::map<std::vector<int>, int> index_of;
  std::vector<std::vector<int>> subs;
  std::vector<int> todo;

  auto add = [&](std::vector<int> members) {
    auto it = index_of.find(members);
    if (it != index_of.end()) return;
    int id = static_cast<int>(subs.size());
    index_of.emplace(members, id);
    subs.push_back(std::move(members));
    todo.push_back(id);
  };

  add({g.identity});
  for (int x = 0; x < n; ++x)
    add(subgroup_generate(g, {x}).members);

  std::vector<int> full(n);
  std::iota(full.begin(), full.end(), 0);

  for (std::size_t qi = 0; qi < todo.size(); ++qi) {
    const std::vector<int> h = subs[todo[qi]];  // copy: subs may reallocate
    const int hs = static_cast<int>(h.size());
    if (hs == n) continue;
    if (2 * hs == n) {
      // Any proper extension has order a multiple of |H| exceeding |H|,
      // so index-2 subgroups only extend to the whole group.
      add(full);
      continue;
    }
    IndexMask hmask(n);
    for (int m : h) hmask.set(m);

    // It is enough to extend by the minimal representative of each left
    // coset xH: <H, xh> contains (xh)h^-1 = x, so the closure only depends
    // on the coset. This keeps the extension count at index(H) - 1.
    IndexMask visited = hmask;
    for (int x = 0; x < n; ++x) {
      if (visited.test(x)) continue;
      for (int m : h) visited.set(g.mul(x, m));
      std::vector<int> elems = h;
      IndexMask mask = hmask;
      mask.set(x);
      elems.push_back(x);
      close_under_product(g, elems, mask, h.size());
      std::sort(elems.begin(), elems.end());
      add(std::move(elems));
    }
  }

  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<SubgroupSet> out;
  out.reserve(subs.size());
  for (auto& members : subs)
    out.push_back(subgroup_from_sorted(g, std::move(members)));
  return out;
}

bool is_normal(const FiniteGroup& g, const SubgroupSet& h) {
  if (h.parent_order != g.order)
    throw InvalidGroupError("subgroup belongs to a different group");
  for (int x = 0; x < g.order; ++x) {
    const int xi = g.inv(x);
    for (int m : h.members)
      if (!h.contains(g.mul(g.mul(x, m), xi))) return false;
  }
  return true;
}

std::vector<SubgroupSet> normal_subgroups(const FiniteGroup& g, const GroupLimits& limits) {
  std::vector<SubgroupSet> out;
  for (auto& h : all_subgroups(g, limits))
    if (is_normal(g, h)) out.push_back(std::move(h));
  return out;
}

bool is_dedekind(const FiniteGroup& g, const GroupLimits& limits) {
  for (const auto& h : all_subgroups(g, limits))
    if (!is_normal(g, h)) return false;
  return true;
}

SubgroupSet diagonal_subgroup(const FiniteGroup& s) {
  const int n = s.order;
  SubgroupSet d;
  d.parent_order = n * n;
  d.mask = IndexMask(n * n);
  d.members.reserve(n);
  for (int i = 0; i < n; ++i) {
    d.members.push_back(i * n + i);
    d.mask.set(i * n + i);
  }
  return d;
}

std::pair<SubgroupSet, SubgroupSet> factor_embeddings(const FiniteGroup& s) {
  const int n = s.order, e = s.identity;
  SubgroupSet t1, t2;
  t1.parent_order = t2.parent_order = n * n;
  t1.mask = IndexMask(n * n);
  t2.mask = IndexMask(n * n);
  for (int i = 0; i < n; ++i) {
    t1.members.push_back(i * n + e);
    t2.members.push_back(e * n + i);
  }
  std::sort(t1.members.begin(), t1.members.end());
  for (int m : t1.members) t1.mask.set(m);
  for (int m : t2.members) t2.mask.set(m);
  return {std::move(t1), std::move(t2)};
}

LeftCosetSpace left_cosets(const FiniteGroup& g, const SubgroupSet& h) {
  if (h.parent_order != g.order)
    throw InvalidGroupError("coset space: subgroup belongs to a different group");
  if (!h.contains(g.identity))
    throw InvalidGroupError("coset space: not a subgroup (missing identity)");
  for (int a : h.members)
    for (int b : h.members)
      if (!h.contains(g.mul(a, b)))
        throw InvalidGroupError("coset space: not a subgroup (not closed)");

  LeftCosetSpace cs;
  cs.parent_order = g.order;
  cs.subgroup_size = h.size();
  cs.coset_of.assign(g.order, -1);
  for (int x = 0; x < g.order; ++x) {
    if (cs.coset_of[x] >= 0) continue;
    // x is the least element of a fresh coset: smaller members would have
    // started it earlier.
    const int c = cs.count();
    cs.reps.push_back(x);
    for (int m : h.members) cs.coset_of[g.mul(x, m)] = c;
  }
  if (cs.count() * h.size() != g.order)
    throw InvalidGroupError("coset space: cosets do not partition the group");
  return cs;
}

std::vector<int> small_generating_set(const FiniteGroup& g) {
  const int n = g.order;
  std::vector<int> gens;
  if (n == 1) return gens;
  const int cap = largest_proper_divisor(n);

  std::vector<int> cur = {g.identity};
  IndexMask cur_mask(n);
  cur_mask.set(g.identity);

  while (static_cast<int>(cur.size()) < n) {
    int best = -1, best_size = -1;
    for (int x = 0; x < n; ++x) {
      if (cur_mask.test(x)) continue;
      const int size = closure_size_capped(g, cur, cur_mask, x, cap);
      if (size == n) {  // nothing can extend further; first hit wins ties
        best = x;
        best_size = n;
        break;
      }
      if (size > best_size) {
        best = x;
        best_size = size;
      }
    }
    gens.push_back(best);
    cur_mask.set(best);
    cur.push_back(best);
    close_under_product(g, cur, cur_mask, cur.size() - 1);
  }
  return gens;
}

std::string subgroup_label(const SubgroupSet& h) {
  std::string out = "{";
  for (std::size_t i = 0; i < h.members.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(h.members[i]);
  }
  out += '}';
  return out;
}

}  // namespace conlat
