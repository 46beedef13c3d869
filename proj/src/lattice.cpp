#include "conlat/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace conlat {

int FiniteLattice::cover_edge_count() const {
  int c = 0;
  for (const auto& u : upper_covers) c += static_cast<int>(u.size());
  return c;
}

FiniteLattice lattice_from_poset(int size,
                                 const std::function<bool(int, int)>& leq,
                                 std::vector<std::string> labels) {
  if (size <= 0) throw NotALatticeError("empty poset");

  FiniteLattice l;
  l.size = size;
  l.leq.assign(static_cast<std::size_t>(size) * size, 0);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      l.leq[static_cast<std::size_t>(i) * size + j] = leq(i, j) ? 1 : 0;

  for (int i = 0; i < size; ++i)
    if (!l.le(i, i)) throw NotALatticeError("order is not reflexive");
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      if (l.le(i, j) && l.le(j, i))
        throw NotALatticeError("order is not antisymmetric");

  l.below.assign(size, IndexMask(size));
  l.above.assign(size, IndexMask(size));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      if (l.le(i, j)) {
        l.below[j].set(i);
        l.above[i].set(j);
      }
  // Transitivity: x <= y forces below[x] within below[y].
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y)
      if (x != y && l.le(x, y) && !l.below[x].subset_of(l.below[y]))
        throw NotALatticeError("order is not transitive");

  std::vector<int> below_count(size), above_count(size);
  for (int i = 0; i < size; ++i) {
    below_count[i] = l.below[i].count();
    above_count[i] = l.above[i].count();
  }

  l.meet.assign(static_cast<std::size_t>(size) * size, -1);
  l.join.assign(static_cast<std::size_t>(size) * size, -1);
  for (int x = 0; x < size; ++x) {
    for (int y = x; y < size; ++y) {
      IndexMask lower = mask_and(l.below[x], l.below[y]);
      int m = -1;
      lower.for_each([&](int z) {
        if (m < 0 || below_count[z] > below_count[m]) m = z;
      });
      if (m < 0 || !lower.subset_of(l.below[m]))
        throw NotALatticeError("pair (" + std::to_string(x) + ", " +
                               std::to_string(y) + ") has no meet");
      l.meet[static_cast<std::size_t>(x) * size + y] = m;
      l.meet[static_cast<std::size_t>(y) * size + x] = m;

      IndexMask upper = mask_and(l.above[x], l.above[y]);
      int j = -1;
      upper.for_each([&](int z) {
        if (j < 0 || above_count[z] > above_count[j]) j = z;
      });
      if (j < 0 || !upper.subset_of(l.above[j]))
        throw NotALatticeError("pair (" + std::to_string(x) + ", " +
                               std::to_string(y) + ") has no join");
      l.join[static_cast<std::size_t>(x) * size + y] = j;
      l.join[static_cast<std::size_t>(y) * size + x] = j;
    }
  }

  l.bottom = 0;
  l.top = 0;
  for (int i = 1; i < size; ++i) {
    l.bottom = l.meet_of(l.bottom, i);
    l.top = l.join_of(l.top, i);
  }

  // Hasse diagram: y covers x when nothing sits strictly between.
  l.upper_covers.assign(size, {});
  l.lower_covers.assign(size, {});
  for (int x = 0; x < size; ++x) {
    l.above[x].for_each([&](int y) {
      if (y == x) return;
      if (mask_and(l.above[x], l.below[y]).count() == 2) {
        l.upper_covers[x].push_back(y);
        l.lower_covers[y].push_back(x);
      }
    });
  }

  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != size)
      throw NotALatticeError("label count does not match the element count");
    l.labels = std::move(labels);
  } else {
    l.labels.reserve(size);
    for (int i = 0; i < size; ++i) l.labels.push_back(std::to_string(i));
  }
  return l;
}

int SubgroupLattice::index_of(const SubgroupSet& h) const {
  for (std::size_t i = 0; i < subgroups.size(); ++i)
    if (subgroups[i] == h) return static_cast<int>(i);
  return -1;
}

namespace {

SubgroupLattice lattice_over_subgroups(const FiniteGroup& g,
                                       std::vector<SubgroupSet> subs) {
  std::vector<std::string> labels;
  labels.reserve(subs.size());
  for (const auto& h : subs) labels.push_back(subgroup_label(h));
  const auto* s = &subs;
  FiniteLattice lat = lattice_from_poset(
      static_cast<int>(subs.size()),
      [s](int i, int j) { return is_subgroup_of((*s)[i], (*s)[j]); },
      std::move(labels));

  SubgroupLattice out{std::move(subs), std::move(lat)};

  // Meets must be plain intersections; joins must be the generated subgroup
  // of the union. The generation pass is the expensive one, so it is gated.
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < out.subgroups.size(); ++i)
    index[out.subgroups[i].members] = static_cast<int>(i);
  const int n = out.lattice.size;
  const bool verify_joins = n <= 64;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      SubgroupSet cap = intersect_subgroups(g, out.subgroups[i], out.subgroups[j]);
      if (index.at(cap.members) != out.lattice.meet_of(i, j))
        throw NotALatticeError("subgroup lattice meet is not the intersection");
      if (verify_joins) {
        std::vector<int> both = out.subgroups[i].members;
        both.insert(both.end(), out.subgroups[j].members.begin(),
                    out.subgroups[j].members.end());
        SubgroupSet gen = subgroup_generate(g, both);
        if (index.at(gen.members) != out.lattice.join_of(i, j))
          throw NotALatticeError("subgroup lattice join is not the generated subgroup");
      }
    }
  return out;
}

}  // namespace

SubgroupLattice subgroup_lattice(const FiniteGroup& g, const GroupLimits& limits) {
  return lattice_over_subgroups(g, all_subgroups(g, limits));
}

SubgroupLattice normal_subgroup_lattice(const FiniteGroup& g, const GroupLimits& limits) {
  SubgroupLattice out = lattice_over_subgroups(g, normal_subgroups(g, limits));
  // For normal subgroups the join is the product set; check it matches the
  // generated join on every pair.
  const int n = out.lattice.size;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      IndexMask prod(g.order);
      std::vector<int> members;
      for (int a : out.subgroups[i].members)
        for (int b : out.subgroups[j].members) {
          int p = g.mul(a, b);
          if (!prod.test(p)) {
            prod.set(p);
            members.push_back(p);
          }
        }
      std::sort(members.begin(), members.end());
      if (members != out.subgroups[out.lattice.join_of(i, j)].members)
        throw NotALatticeError("normal subgroup join is not the product set");
    }
  return out;
}

FiniteLattice filter_above(const FiniteLattice& l, int x, std::vector<int>* kept) {
  if (x < 0 || x >= l.size)
    throw Error("filter_above: element index out of range");
  std::vector<int> keep;
  l.above[x].for_each([&](int y) { keep.push_back(y); });
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (int y : keep) labels.push_back(l.labels[y]);
  FiniteLattice f = lattice_from_poset(
      static_cast<int>(keep.size()),
      [&](int i, int j) { return l.le(keep[i], keep[j]); }, std::move(labels));
  if (kept) *kept = std::move(keep);
  return f;
}

namespace {

// Longest-path rank from the bottom (height) or to the top (depth), walking
// the cover DAG in below-count order, which is a topological order.
void heights_and_depths(const FiniteLattice& l, std::vector<int>& height,
                        std::vector<int>& depth) {
  const int n = l.size;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> bc(n);
  for (int i = 0; i < n; ++i) bc[i] = l.below[i].count();
  std::sort(order.begin(), order.end(), [&](int a, int b) { return bc[a] < bc[b]; });

  height.assign(n, 0);
  for (int z : order)
    for (int y : l.upper_covers[z]) height[y] = std::max(height[y], height[z] + 1);
  depth.assign(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (int y : l.lower_covers[*it]) depth[y] = std::max(depth[y], depth[*it] + 1);
}

// One refinement pass + backtracking search. Colors are shared between the
// two lattices so classes can be matched by id.
struct IsoSearch {
  const FiniteLattice& a;
  const FiniteLattice& b;
  std::vector<int> color_a, color_b;

  bool refine() {
    const int n = a.size;
    std::vector<int> ha, da, hb, db;
    heights_and_depths(a, ha, da);
    heights_and_depths(b, hb, db);

    using Key = std::tuple<int, int, int, int, int, int>;
    auto initial = [&](const FiniteLattice& l, const std::vector<int>& h,
                       const std::vector<int>& d, int i) {
      return Key(l.below[i].count(), l.above[i].count(),
                 static_cast<int>(l.upper_covers[i].size()),
                 static_cast<int>(l.lower_covers[i].size()), h[i], d[i]);
    };
    std::map<Key, int> ids;
    color_a.resize(n);
    color_b.resize(n);
    for (int i = 0; i < n; ++i) {
      auto k = initial(a, ha, da, i);
      auto [it, _] = ids.emplace(k, static_cast<int>(ids.size()));
      color_a[i] = it->second;
    }
    for (int i = 0; i < n; ++i) {
      auto k = initial(b, hb, db, i);
      auto it = ids.find(k);
      if (it == ids.end()) return false;  // invariant present in b only
      color_b[i] = it->second;
    }

    // Iterate neighbor-class multisets to a fixed point.
    int classes = static_cast<int>(ids.size());
    for (int round = 0; round < n; ++round) {
      using RKey = std::tuple<int, std::vector<int>, std::vector<int>>;
      auto rekey = [](const FiniteLattice& l, const std::vector<int>& col, int i) {
        std::vector<int> up, down;
        for (int y : l.upper_covers[i]) up.push_back(col[y]);
        for (int y : l.lower_covers[i]) down.push_back(col[y]);
        std::sort(up.begin(), up.end());
        std::sort(down.begin(), down.end());
        return RKey(col[i], std::move(up), std::move(down));
      };
      std::map<RKey, int> rids;
      std::vector<int> na(n), nb(n);
      for (int i = 0; i < n; ++i) {
        auto [it, _] = rids.emplace(rekey(a, color_a, i), static_cast<int>(rids.size()));
        na[i] = it->second;
      }
      for (int i = 0; i < n; ++i) {
        auto it = rids.find(rekey(b, color_b, i));
        if (it == rids.end()) return false;
        nb[i] = it->second;
      }
      color_a.swap(na);
      color_b.swap(nb);
      int next = static_cast<int>(rids.size());
      if (next == classes) break;
      classes = next;
    }

    // Class sizes must agree.
    std::map<int, int> count;
    for (int c : color_a) ++count[c];
    for (int c : color_b) --count[c];
    for (auto& [c, v] : count)
      if (v != 0) return false;
    return true;
  }

  std::optional<std::vector<int>> search() {
    const int n = a.size;
    std::vector<std::vector<int>> cand(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (color_a[i] == color_b[j]) cand[i].push_back(j);

    std::vector<int> assign(n, -1);
    if (extend(assign, cand, 0)) return assign;
    return std::nullopt;
  }

 private:
  bool consistent(int i, int v, int j, int w) const {
    return a.le(i, j) == b.le(v, w) && a.le(j, i) == b.le(w, v);
  }

  bool extend(std::vector<int>& assign, const std::vector<std::vector<int>>& cand,
              int depth) const {
    const int n = a.size;
    if (depth == n) return true;
    // Most-constrained element first.
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (assign[i] >= 0) continue;
      if (pick < 0 || cand[i].size() < cand[pick].size()) pick = i;
    }
    for (int v : cand[pick]) {
      assign[pick] = v;
      // Forward-check the remaining candidates against the new pair.
      std::vector<std::vector<int>> next(n);
      bool dead = false;
      for (int j = 0; j < n && !dead; ++j) {
        if (assign[j] >= 0) continue;
        for (int w : cand[j])
          if (w != v && consistent(pick, v, j, w)) next[j].push_back(w);
        dead = next[j].empty();
      }
      if (!dead && extend(assign, next, depth + 1)) return true;
      assign[pick] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> lattice_isomorphism(const FiniteLattice& a,
                                                    const FiniteLattice& b,
                                                    int size_bound) {
  if (a.size != b.size) return std::nullopt;
  if (a.size > size_bound)
    throw CapacityError("lattice_isomorphism: size " + std::to_string(a.size) +
                        " exceeds the bound " + std::to_string(size_bound));

  IsoSearch s{a, b, {}, {}};
  if (!s.refine()) return std::nullopt;
  auto found = s.search();
  if (!found) return std::nullopt;

  // Verify the bijection in both directions before handing it out.
  const auto& f = *found;
  for (int i = 0; i < a.size; ++i)
    for (int j = 0; j < a.size; ++j)
      if (a.le(i, j) != b.le(f[i], f[j]))
        throw Error("lattice_isomorphism produced an unverified map");
  return found;
}

ModularityResult is_modular(const FiniteLattice& l) {
  const int n = l.size;
  // Pentagons N5 = {a^b, a, c, b, avb} with a < c. The (a, b, c) loop order
  // makes the reported witness the lexicographically smallest one.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || l.le(a, b) || l.le(b, a)) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b || !l.le(a, c)) continue;
        if (l.le(b, c) || l.le(c, b)) continue;
        if (l.meet_of(a, b) == l.meet_of(c, b) && l.join_of(a, b) == l.join_of(c, b)) {
          ModularityResult r;
          r.modular = false;
          r.witness = {a, b, c, l.meet_of(a, b), l.join_of(a, b)};
          return r;
        }
      }
    }
  }
  return ModularityResult{};
}

FiniteLattice chain_lattice(int n) {
  return lattice_from_poset(n, [](int i, int j) { return i <= j; });
}

FiniteLattice pentagon_lattice() {
  // 0 = bottom, 1 = a, 2 = c, 3 = b, 4 = top, with 1 < 2.
  static const bool o[5][5] = {{1, 1, 1, 1, 1},
                               {0, 1, 1, 0, 1},
                               {0, 0, 1, 0, 1},
                               {0, 0, 0, 1, 1},
                               {0, 0, 0, 0, 1}};
  return lattice_from_poset(5, [](int i, int j) { return o[i][j]; });
}

FiniteLattice diamond_lattice() {
  return lattice_from_poset(
      5, [](int i, int j) { return i == j || i == 0 || j == 4; });
}

std::string to_dot(const FiniteLattice& l, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  for (int i = 0; i < l.size; ++i) {
    std::string esc;
    for (char ch : l.labels[i]) {
      if (ch == '"' || ch == '\\') esc += '\\';
      esc += ch;
    }
    out << "  n" << i << " [label=\"" << esc << "\"];\n";
  }
  for (int x = 0; x < l.size; ++x)
    for (int y : l.upper_covers[x]) out << "  n" << x << " -> n" << y << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace conlat
