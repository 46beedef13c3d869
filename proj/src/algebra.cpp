#include "conlat/algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace conlat {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

Partition partition_from_roots(int m, UnionFind& uf) {
  Partition p;
  p.universe = m;
  p.block.assign(m, -1);
  std::vector<int> root_block(m, -1);
  int next = 0;
  for (int i = 0; i < m; ++i) {
    int r = uf.find(i);
    if (root_block[r] < 0) root_block[r] = next++;
    p.block[i] = root_block[r];
  }
  p.block_count = next;
  return p;
}

void check_same_signature(const UnaryAlgebra& a, const UnaryAlgebra& b,
                          const char* what) {
  if (a.signature != b.signature || a.op_count != b.op_count)
    throw SignatureMismatchError(std::string(what) + ": signatures differ (" +
                                 a.signature + " vs " + b.signature + ")");
}

void check_ops_are_permutations(const UnaryAlgebra& a) {
  std::vector<char> seen(a.universe);
  for (int op = 0; op < a.op_count; ++op) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int x = 0; x < a.universe; ++x) {
      int y = a.apply(op, x);
      if (seen[y])
        throw Error(a.signature + ": op " + std::to_string(op) +
                    " is not a bijection of the universe");
      seen[y] = 1;
    }
  }
}

}  // namespace

Partition identity_partition(int m) {
  Partition p;
  p.universe = m;
  p.block_count = m;
  p.block.resize(m);
  std::iota(p.block.begin(), p.block.end(), 0);
  return p;
}

Partition full_partition(int m) {
  Partition p;
  p.universe = m;
  p.block_count = m > 0 ? 1 : 0;
  p.block.assign(m, 0);
  return p;
}

bool refines(const Partition& p, const Partition& q) {
  std::vector<int> image(p.block_count, -1);
  for (int i = 0; i < p.universe; ++i) {
    int& img = image[p.block[i]];
    if (img < 0)
      img = q.block[i];
    else if (img != q.block[i])
      return false;
  }
  return true;
}

Partition partition_meet(const Partition& p, const Partition& q) {
  const int m = p.universe;
  Partition r;
  r.universe = m;
  r.block.assign(m, -1);
  std::map<std::pair<int, int>, int> ids;
  for (int i = 0; i < m; ++i) {
    auto [it, _] = ids.emplace(std::make_pair(p.block[i], q.block[i]),
                               static_cast<int>(ids.size()));
    r.block[i] = it->second;
  }
  r.block_count = static_cast<int>(ids.size());
  return r;
}

Partition partition_join(const Partition& p, const Partition& q) {
  const int m = p.universe;
  UnionFind uf(m);
  std::vector<int> first_p(p.block_count, -1), first_q(q.block_count, -1);
  for (int i = 0; i < m; ++i) {
    int& fp = first_p[p.block[i]];
    if (fp < 0)
      fp = i;
    else
      uf.unite(fp, i);
    int& fq = first_q[q.block[i]];
    if (fq < 0)
      fq = i;
    else
      uf.unite(fq, i);
  }
  return partition_from_roots(m, uf);
}

std::string partition_label(const Partition& p) {
  // Canonical block ids are first-occurrence ordered, so block 0's least
  // element precedes block 1's, and so on.
  std::vector<std::vector<int>> blocks(p.block_count);
  for (int i = 0; i < p.universe; ++i) blocks[p.block[i]].push_back(i);
  std::string out = "|";
  for (const auto& blk : blocks) {
    for (std::size_t i = 0; i < blk.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(blk[i]);
    }
    out += '|';
  }
  return out;
}

UnaryAlgebra coset_gset(const FiniteGroup& g, const SubgroupSet& h) {
  LeftCosetSpace cs = left_cosets(g, h);
  UnaryAlgebra a;
  a.universe = cs.count();
  a.op_count = g.order;
  a.signature = g.label + "#" + std::to_string(g.order);
  a.ops.resize(static_cast<std::size_t>(a.op_count) * a.universe);
  for (int op = 0; op < g.order; ++op)
    for (int c = 0; c < a.universe; ++c)
      a.ops[static_cast<std::size_t>(op) * a.universe + c] =
          cs.coset_of[g.mul(op, cs.reps[c])];
  check_ops_are_permutations(a);
  return a;
}

UnaryAlgebra twisted_gset(const FiniteGroup& s, const GroupLimits& limits) {
  const int n = s.order;
  FiniteGroup g = direct_product(s, s, limits);
  LeftCosetSpace cs = left_cosets(g, diagonal_subgroup(s));

  UnaryAlgebra b;
  b.universe = cs.count();
  b.op_count = g.order;
  b.signature = g.label + "#" + std::to_string(g.order);
  b.ops.resize(static_cast<std::size_t>(b.op_count) * b.universe);
  for (int op = 0; op < g.order; ++op) {
    const int g1 = op / n, g2 = op % n;
    for (int c = 0; c < b.universe; ++c) {
      const int rep = cs.reps[c];
      const int x1 = rep / n, x2 = rep % n;
      // The twist: the second component of the label acts on the first
      // coordinate and vice versa.
      b.ops[static_cast<std::size_t>(op) * b.universe + c] =
          cs.coset_of[s.mul(g2, x1) * n + s.mul(g1, x2)];
    }
  }
  check_ops_are_permutations(b);
  return b;
}

UnaryAlgebra product_algebra(const UnaryAlgebra& a, const UnaryAlgebra& c) {
  check_same_signature(a, c, "product_algebra");
  UnaryAlgebra p;
  p.universe = a.universe * c.universe;
  p.op_count = a.op_count;
  p.signature = a.signature;
  if (a.computation_labels == c.computation_labels) {
    p.computation_labels = a.computation_labels;
  } else {
    std::vector<int> merged = a.computation_labels;
    merged.insert(merged.end(), c.computation_labels.begin(),
                  c.computation_labels.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    p.computation_labels = std::move(merged);
  }
  p.ops.resize(static_cast<std::size_t>(p.op_count) * p.universe);
  for (int op = 0; op < p.op_count; ++op) {
    std::size_t base = static_cast<std::size_t>(op) * p.universe;
    for (int x = 0; x < a.universe; ++x) {
      const int ax = a.apply(op, x) * c.universe;
      const std::size_t row = base + static_cast<std::size_t>(x) * c.universe;
      for (int y = 0; y < c.universe; ++y) p.ops[row + y] = ax + c.apply(op, y);
    }
  }
  return p;
}

bool is_homomorphism(const std::vector<int>& f, const UnaryAlgebra& a,
                     const UnaryAlgebra& b) {
  check_same_signature(a, b, "is_homomorphism");
  if (static_cast<int>(f.size()) != a.universe)
    throw Error("is_homomorphism: map size does not match the domain");
  for (int v : f)
    if (v < 0 || v >= b.universe)
      throw Error("is_homomorphism: map value out of range");
  for (int op = 0; op < a.op_count; ++op)
    for (int x = 0; x < a.universe; ++x)
      if (f[a.apply(op, x)] != b.apply(op, f[x])) return false;
  return true;
}

bool is_stable(const UnaryAlgebra& a, const Partition& p) {
  std::vector<int> image(p.block_count);
  for (int op = 0; op < a.op_count; ++op) {
    std::fill(image.begin(), image.end(), -1);
    for (int x = 0; x < a.universe; ++x) {
      int& img = image[p.block[x]];
      const int y = p.block[a.apply(op, x)];
      if (img < 0)
        img = y;
      else if (img != y)
        return false;
    }
  }
  return true;
}

Partition principal_congruence(const UnaryAlgebra& a, int x, int y) {
  const int m = a.universe;
  if (x < 0 || x >= m || y < 0 || y >= m)
    throw Error("principal_congruence: element out of range");
  UnionFind uf(m);
  std::deque<std::pair<int, int>> work;
  work.emplace_back(x, y);
  const bool reduced = !a.computation_labels.empty();
  const int nlabels = reduced ? static_cast<int>(a.computation_labels.size())
                              : a.op_count;
  while (!work.empty()) {
    auto [u, v] = work.front();
    work.pop_front();
    if (!uf.unite(u, v)) continue;
    for (int li = 0; li < nlabels; ++li) {
      const int op = reduced ? a.computation_labels[li] : li;
      work.emplace_back(a.apply(op, u), a.apply(op, v));
    }
  }
  Partition p = partition_from_roots(m, uf);
  if (reduced && !is_stable(a, p))
    throw Error("principal_congruence: generator-reduced closure produced an "
                "unstable partition");
  return p;
}

std::vector<Partition> all_congruences(const UnaryAlgebra& a,
                                       const CongruenceLimits& limits) {
  const int m = a.universe;
  if (m > limits.universe_bound)
    throw CapacityError("all_congruences: universe " + std::to_string(m) +
                        " exceeds the bound " + std::to_string(limits.universe_bound));

  std::map<std::vector<int>, int> seen;
  std::vector<Partition> found;
  auto add = [&](Partition p) {
    auto it = seen.find(p.block);
    if (it != seen.end()) return;
    if (static_cast<int>(found.size()) >= limits.max_congruences)
      throw CapacityError("all_congruences: more than " +
                          std::to_string(limits.max_congruences) +
                          " congruences");
    seen.emplace(p.block, static_cast<int>(found.size()));
    found.push_back(std::move(p));
  };

  add(identity_partition(m));
  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y) add(principal_congruence(a, x, y));

  // Close under join; pairs are processed as the list grows, so this runs to
  // a fixed point.
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(partition_join(found[i], found[j]));

  // Principal congruences may have been computed with a generating subset of
  // the ops; every result must be stable under the full op set.
  for (const Partition& p : found)
    if (!is_stable(a, p))
      throw Error("all_congruences: generator-reduced closure produced an "
                  "unstable partition");

  std::sort(found.begin(), found.end(), [](const Partition& p, const Partition& q) {
    if (p.block_count != q.block_count) return p.block_count > q.block_count;
    return p.block < q.block;
  });
  return found;
}

CongruenceLattice congruence_lattice(const UnaryAlgebra& a,
                                     const CongruenceLimits& limits) {
  std::vector<Partition> cons = all_congruences(a, limits);
  std::vector<std::string> labels;
  labels.reserve(cons.size());
  for (const auto& p : cons) labels.push_back(partition_label(p));
  const auto* c = &cons;
  FiniteLattice lat = lattice_from_poset(
      static_cast<int>(cons.size()),
      [c](int i, int j) { return refines((*c)[i], (*c)[j]); }, std::move(labels));

  // The set is join-closed by construction and meet-closed because the
  // common refinement of stable partitions is stable; check that the order
  // tables agree with the partition operations on every pair.
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < cons.size(); ++i)
    index[cons[i].block] = static_cast<int>(i);
  const int n = lat.size;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      auto mit = index.find(partition_meet(cons[i], cons[j]).block);
      auto jit = index.find(partition_join(cons[i], cons[j]).block);
      if (mit == index.end() || mit->second != lat.meet_of(i, j))
        throw Error("congruence lattice meet disagrees with common refinement");
      if (jit == index.end() || jit->second != lat.join_of(i, j))
        throw Error("congruence lattice join disagrees with partition join");
    }
  return CongruenceLattice{std::move(cons), std::move(lat)};
}

}  // namespace conlat
