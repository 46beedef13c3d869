#include "conlat/oracles.hpp"

#include <algorithm>
#include <numeric>

namespace conlat {

std::vector<SubgroupSet> all_subgroups_brute(const FiniteGroup& g, int order_bound) {
  const int n = g.order;
  if (n > order_bound)
    throw CapacityError("all_subgroups_brute: order " + std::to_string(n) +
                        " exceeds the oracle bound " + std::to_string(order_bound));
  std::vector<std::vector<int>> subs;
  for (std::uint32_t set = 1; set < (1u << n); ++set) {
    if (!(set >> g.identity & 1)) continue;
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (set >> i & 1) members.push_back(i);
    bool closed = true;
    for (std::size_t i = 0; i < members.size() && closed; ++i)
      for (std::size_t j = 0; j < members.size() && closed; ++j)
        closed = (set >> g.mul(members[i], members[j])) & 1;
    if (closed) subs.push_back(std::move(members));
  }
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<SubgroupSet> out;
  out.reserve(subs.size());
  for (auto& members : subs) out.push_back(make_subgroup(g, std::move(members)));
  return out;
}

namespace {

void enumerate_rgs(int m, int pos, int max_used, std::vector<int>& rgs,
                   const std::function<void(const std::vector<int>&)>& emit) {
  if (pos == m) {
    emit(rgs);
    return;
  }
  for (int b = 0; b <= max_used + 1; ++b) {
    rgs[pos] = b;
    enumerate_rgs(m, pos + 1, std::max(max_used, b), rgs, emit);
  }
}

}  // namespace

std::vector<Partition> all_congruences_brute(const UnaryAlgebra& a, int universe_bound) {
  const int m = a.universe;
  if (m > universe_bound)
    throw CapacityError("all_congruences_brute: universe " + std::to_string(m) +
                        " exceeds the oracle bound " + std::to_string(universe_bound));
  std::vector<Partition> out;
  std::vector<int> rgs(m, 0);
  // A restricted growth string is exactly the canonical block form.
  enumerate_rgs(m, 1, 0, rgs, [&](const std::vector<int>& blocks) {
    Partition p;
    p.universe = m;
    p.block = blocks;
    p.block_count = m == 0 ? 0 : *std::max_element(blocks.begin(), blocks.end()) + 1;
    if (is_stable(a, p)) out.push_back(std::move(p));
  });
  std::sort(out.begin(), out.end(), [](const Partition& p, const Partition& q) {
    if (p.block_count != q.block_count) return p.block_count > q.block_count;
    return p.block < q.block;
  });
  return out;
}

std::optional<std::vector<int>> lattice_isomorphism_brute(const FiniteLattice& a,
                                                          const FiniteLattice& b,
                                                          int size_bound) {
  if (a.size != b.size) return std::nullopt;
  if (a.size > size_bound)
    throw CapacityError("lattice_isomorphism_brute: size exceeds the oracle bound");
  std::vector<int> perm(a.size);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < a.size && ok; ++i)
      for (int j = 0; j < a.size && ok; ++j)
        ok = a.le(i, j) == b.le(perm[i], perm[j]);
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

bool is_modular_by_definition(const FiniteLattice& l) {
  for (int a = 0; a < l.size; ++a)
    for (int c = 0; c < l.size; ++c) {
      if (!l.le(a, c)) continue;
      for (int b = 0; b < l.size; ++b)
        if (l.join_of(a, l.meet_of(b, c)) != l.meet_of(l.join_of(a, b), c))
          return false;
    }
  return true;
}

}  // namespace conlat
