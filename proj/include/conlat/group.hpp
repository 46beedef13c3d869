#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/util.hpp"

namespace conlat {

// Size limits shared by the group-level operations. The associativity check
// is O(n^3), so it is gated; groups above the gate are only accepted from
// constructions that are valid by construction (e.g. direct products of
// validated groups) unless force_assoc_check is set.
struct GroupLimits {
  int max_order = 3600;
  int assoc_check_bound = 256;
  bool force_assoc_check = false;
  int subgroup_enum_bound = 120;
};

// A finite group as an explicit Cayley table. Elements are indices in
// [0, order); cayley is row-major, cayley[a*order + b] = a*b.
struct FiniteGroup {
  int order = 0;
  std::vector<int> cayley;
  int identity = 0;
  std::vector<int> inverse;
  std::string label;

  int mul(int a, int b) const { return cayley[static_cast<std::size_t>(a) * order + b]; }
  int inv(int a) const { return inverse[a]; }
};

// Validates the table, locates the identity and fills the inverse table.
// Throws InvalidGroupError on any axiom violation, CapacityError above
// limits.max_order.
FiniteGroup make_group(std::string label, int order, std::vector<int> cayley,
                       const GroupLimits& limits = {});

FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);     // order 2n
FiniteGroup symmetric_group(int n);    // n <= 5
FiniteGroup alternating_group(int n);  // n <= 5
FiniteGroup quaternion_group();        // Q8

// Product on pairs in row-major order: (i, j) has index i*|h| + j.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                           const GroupLimits& limits = {});

// Text format: first line n, then n lines of n entries in [0, n); element 0
// must be the identity. All group axioms are validated on load.
FiniteGroup load_cayley_table(std::istream& in, std::string label,
                              const GroupLimits& limits = {});
FiniteGroup load_cayley_table_file(const std::string& path,
                                   const GroupLimits& limits = {});

// A subgroup stored as its sorted member list plus a membership mask.
// Value type: operations take the parent group explicitly.
struct SubgroupSet {
  int parent_order = 0;
  std::vector<int> members;
  IndexMask mask;

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int x) const { return mask.test(x); }

  bool operator==(const SubgroupSet& o) const {
    return parent_order == o.parent_order && members == o.members;
  }
};

// Validates closure under product and inverse, presence of the identity and
// Lagrange divisibility.
SubgroupSet make_subgroup(const FiniteGroup& g, std::vector<int> members);

SubgroupSet trivial_subgroup(const FiniteGroup& g);
SubgroupSet full_subgroup(const FiniteGroup& g);

// Smallest subgroup containing gens, by closure iteration. Empty gens give
// the trivial subgroup.
SubgroupSet subgroup_generate(const FiniteGroup& g, const std::vector<int>& gens);

bool is_subgroup_of(const SubgroupSet& h, const SubgroupSet& k);
SubgroupSet intersect_subgroups(const FiniteGroup& g, const SubgroupSet& a,
                                const SubgroupSet& b);

// Complete list of subgroups, sorted by (size, member sequence). Cyclic
// extension: seed with all cyclic subgroups, then repeatedly extend each
// known subgroup by one outside element and close.
std::vector<SubgroupSet> all_subgroups(const FiniteGroup& g,
                                       const GroupLimits& limits = {});

bool is_normal(const FiniteGroup& g, const SubgroupSet& h);
std::vector<SubgroupSet> normal_subgroups(const FiniteGroup& g,
                                          const GroupLimits& limits = {});

// True iff every subgroup is normal.
bool is_dedekind(const FiniteGroup& g, const GroupLimits& limits = {});

// The diagonal {(x,x)} and the factor copies S x {1}, {1} x S inside s x s,
// with the product indexed row-major.
SubgroupSet diagonal_subgroup(const FiniteGroup& s);
std::pair<SubgroupSet, SubgroupSet> factor_embeddings(const FiniteGroup& s);

// Left cosets xH. Each representative is the minimum element index in its
// coset, so coset spaces compare canonically.
struct LeftCosetSpace {
  int parent_order = 0;
  int subgroup_size = 0;
  std::vector<int> reps;
  std::vector<int> coset_of;

  int count() const { return static_cast<int>(reps.size()); }
};

LeftCosetSpace left_cosets(const FiniteGroup& g, const SubgroupSet& h);

// Greedy generating set: repeatedly add the element whose closure with the
// current set is largest (ties to the smallest index). At most log2|g|
// elements since each step at least doubles the generated subgroup.
std::vector<int> small_generating_set(const FiniteGroup& g);

// "{0 3 5}" -- used as lattice payload summaries.
std::string subgroup_label(const SubgroupSet& h);

}  // namespace conlat
