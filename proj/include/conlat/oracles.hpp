#pragma once

#include <optional>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/group.hpp"
#include "conlat/lattice.hpp"

// Brute-force reference implementations, deliberately independent of the
// fast paths they are compared against (all-subsets vs cyclic extension,
// all-partitions vs principal closure, all-permutations vs refinement
// search). Used by the oracle CLI command and by the test suites.
namespace conlat {

// Tests every subset of [0, |g|) for closure; |g| <= order_bound.
std::vector<SubgroupSet> all_subgroups_brute(const FiniteGroup& g,
                                             int order_bound = 12);

// Filters every set partition of the universe (restricted growth strings)
// by stability under the full op set; universe <= universe_bound.
std::vector<Partition> all_congruences_brute(const UnaryAlgebra& a,
                                             int universe_bound = 7);

// Tries all size! bijections; size <= size_bound.
std::optional<std::vector<int>> lattice_isomorphism_brute(const FiniteLattice& a,
                                                          const FiniteLattice& b,
                                                          int size_bound = 7);

// a <= c implies a v (b ^ c) = (a v b) ^ c, over all triples.
bool is_modular_by_definition(const FiniteLattice& l);

}  // namespace conlat
