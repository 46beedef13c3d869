#pragma once

#include <string>
#include <vector>

#include "conlat/group.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

struct CongruenceLimits {
  int universe_bound = 128;   // all_congruences refuses larger universes
  int max_congruences = 4096; // join closure fails loudly beyond this
};

// A unary algebra whose operations are indexed by the elements of an acting
// group. Ops are stored for every group element; computation_labels tags the
// subset actually used for congruence generation (empty means all).
struct UnaryAlgebra {
  int universe = 0;
  int op_count = 0;
  std::vector<int> ops;  // row-major op_count * universe
  std::vector<int> computation_labels;
  std::string signature;

  int apply(int op, int x) const { return ops[static_cast<std::size_t>(op) * universe + x]; }
};

// A partition in canonical form: block ids appear in order of first
// occurrence, starting at 0.
struct Partition {
  int universe = 0;
  int block_count = 0;
  std::vector<int> block;

  bool operator==(const Partition& o) const { return block == o.block; }
};

Partition identity_partition(int m);  // all singletons
Partition full_partition(int m);      // one block

// p <= q in the refinement order (p is finer).
bool refines(const Partition& p, const Partition& q);

Partition partition_meet(const Partition& p, const Partition& q);
Partition partition_join(const Partition& p, const Partition& q);

// "|0 3|1 4|2 5|", blocks sorted by least element.
std::string partition_label(const Partition& p);

// The coset G-set <G/H, G>: one op per group element, op_g(xH) = (gx)H.
UnaryAlgebra coset_gset(const FiniteGroup& g, const SubgroupSet& h);

// The twisted action of s x s on the diagonal cosets:
// op_(g1,g2)((x1,x2)D) = (g2*x1, g1*x2)D.
UnaryAlgebra twisted_gset(const FiniteGroup& s, const GroupLimits& limits = {});

// Componentwise product on pairs in row-major order. Throws
// SignatureMismatchError if the operation signatures differ.
UnaryAlgebra product_algebra(const UnaryAlgebra& a, const UnaryAlgebra& c);

// f(op_g(x)) = op_g(f(x)) for every op label and element, over the full op
// set of both algebras.
bool is_homomorphism(const std::vector<int>& f, const UnaryAlgebra& a,
                     const UnaryAlgebra& b);

// Stability of p under every op of a.
bool is_stable(const UnaryAlgebra& a, const Partition& p);

// Cg(x, y): worklist closure with union-find; merged pairs propagate through
// the computation ops (stability under a generating set implies stability
// under the whole group). When computed from a generating subset, the result
// is re-verified stable under the full op set before being returned.
Partition principal_congruence(const UnaryAlgebra& a, int x, int y);

// All congruences: every distinct principal congruence plus the identity
// partition, closed under join, deduplicated by canonical form and finally
// re-verified stable under the full op set. Sorted finest-first.
std::vector<Partition> all_congruences(const UnaryAlgebra& a,
                                       const CongruenceLimits& limits = {});

struct CongruenceLattice {
  std::vector<Partition> congruences;
  FiniteLattice lattice;
};

// Con(a) ordered by refinement. The lattice meet/join tables are verified to
// agree with common refinement and partition join on every pair.
CongruenceLattice congruence_lattice(const UnaryAlgebra& a,
                                     const CongruenceLimits& limits = {});

}  // namespace conlat
