#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conlat/group.hpp"
#include "conlat/util.hpp"

namespace conlat {

// A finite bounded lattice: order table, Hasse diagram and precomputed
// meet/join tables. Element payloads are erased to label strings; producers
// keep their payload vectors in the same index order.
struct FiniteLattice {
  int size = 0;
  std::vector<char> leq;               // row-major size*size
  std::vector<IndexMask> below;        // below[x] = {z : z <= x}
  std::vector<IndexMask> above;        // above[x] = {z : x <= z}
  std::vector<std::vector<int>> upper_covers;
  std::vector<std::vector<int>> lower_covers;
  std::vector<int> meet;               // row-major size*size
  std::vector<int> join;
  int bottom = 0;
  int top = 0;
  std::vector<std::string> labels;

  bool le(int a, int b) const { return leq[static_cast<std::size_t>(a) * size + b] != 0; }
  int meet_of(int a, int b) const { return meet[static_cast<std::size_t>(a) * size + b]; }
  int join_of(int a, int b) const { return join[static_cast<std::size_t>(a) * size + b]; }
  int cover_edge_count() const;
};

// Builds a lattice from an arbitrary order predicate. Validates that the
// predicate is a partial order and that every pair has a meet and a join;
// throws NotALatticeError otherwise (and for an empty poset).
FiniteLattice lattice_from_poset(int size,
                                 const std::function<bool(int, int)>& leq,
                                 std::vector<std::string> labels = {});

struct SubgroupLattice {
  std::vector<SubgroupSet> subgroups;
  FiniteLattice lattice;

  // Index of h among the payloads, -1 if absent.
  int index_of(const SubgroupSet& h) const;
};

// Sub(G) under inclusion: meet = intersection, join = generated subgroup.
SubgroupLattice subgroup_lattice(const FiniteGroup& g, const GroupLimits& limits = {});

// NSub(G); the join of two normal subgroups equals their product set, which
// is verified against the generated join.
SubgroupLattice normal_subgroup_lattice(const FiniteGroup& g, const GroupLimits& limits = {});

// The filter {y : x <= y} with the induced order; its bottom is x. If kept
// is non-null it receives the original indices of the filter elements.
FiniteLattice filter_above(const FiniteLattice& l, int x, std::vector<int>* kept = nullptr);

// Order isomorphism a -> b if one exists. Iterative refinement by structural
// invariants (height, depth, degrees, neighbor-class multisets) followed by
// backtracking over the refined classes; any returned bijection has been
// verified order-preserving in both directions.
std::optional<std::vector<int>> lattice_isomorphism(const FiniteLattice& a,
                                                    const FiniteLattice& b,
                                                    int size_bound = 256);

struct ModularityResult {
  bool modular = true;
  // On failure, a pentagon {a, b, c, a^b, avb} with a < c, a v b = c v b,
  // a ^ b = c ^ b and b incomparable to both. The (a, b, c) triple is the
  // lexicographically smallest witness.
  std::array<int, 5> witness{-1, -1, -1, -1, -1};
};

ModularityResult is_modular(const FiniteLattice& l);

// Small fixture lattices used by diagnostics and tests.
FiniteLattice chain_lattice(int n);
FiniteLattice pentagon_lattice();  // N5: bottom < a < c < top, b off to the side
FiniteLattice diamond_lattice();   // M3: bottom, three atoms, top

// Hasse diagram in DOT format, cover edges lower -> upper, rankdir=BT.
std::string to_dot(const FiniteLattice& l, std::string_view name = "lattice");

}  // namespace conlat
