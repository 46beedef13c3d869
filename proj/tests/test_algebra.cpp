#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "conlat/algebra.hpp"
#include "conlat/group.hpp"
#include "conlat/lattice.hpp"
#include "conlat/oracles.hpp"

using namespace conlat;

namespace {

// op_{g*h} = op_g o op_h and op_identity = id, over every label pair.
void check_action_law(const UnaryAlgebra& a, const FiniteGroup& g) {
  REQUIRE(a.op_count == g.order);
  for (int x = 0; x < a.universe; ++x) REQUIRE(a.apply(g.identity, x) == x);
  for (int p = 0; p < g.order; ++p)
    for (int q = 0; q < g.order; ++q) {
      const int pq = g.mul(p, q);
      for (int x = 0; x < a.universe; ++x)
        REQUIRE(a.apply(pq, x) == a.apply(p, a.apply(q, x)));
    }
}

struct S3Example {
  FiniteGroup s = symmetric_group(3);
  FiniteGroup g = direct_product(s, s);
  SubgroupSet t1, t2, d;
  S3Example() {
    auto [a, b] = factor_embeddings(s);
    t1 = make_subgroup(g, a.members);
    t2 = make_subgroup(g, b.members);
    d = make_subgroup(g, diagonal_subgroup(s).members);
  }
};

}  // namespace

TEST_CASE("partition canonical form, notation, meet and join") {
  Partition p;
  p.universe = 6;
  p.block = {0, 1, 2, 0, 1, 2};
  p.block_count = 3;
  CHECK(partition_label(p) == "|0 3|1 4|2 5|");

  CHECK(identity_partition(4).block == std::vector<int>{0, 1, 2, 3});
  CHECK(full_partition(4).block == std::vector<int>{0, 0, 0, 0});
  CHECK(partition_label(identity_partition(2)) == "|0|1|");

  Partition q;
  q.universe = 6;
  q.block = {0, 0, 1, 1, 2, 2};
  q.block_count = 3;
  CHECK(refines(identity_partition(6), p));
  CHECK(refines(p, full_partition(6)));
  CHECK_FALSE(refines(p, q));
  CHECK_FALSE(refines(q, p));

  Partition meet = partition_meet(p, q);
  CHECK(meet.block_count == 6);  // p and q share no nontrivial blocks
  CHECK(meet == identity_partition(6));
  Partition join = partition_join(p, q);
  CHECK(join == full_partition(6));  // 0~3~2~5~4~1 chains everything together

  CHECK(partition_meet(p, p) == p);
  CHECK(partition_join(p, p) == p);
}

TEST_CASE("coset_gset: trivial quotient and the S3 example") {
  FiniteGroup s3 = symmetric_group(3);
  UnaryAlgebra one = coset_gset(s3, full_subgroup(s3));
  CHECK(one.universe == 1);
  for (int op = 0; op < one.op_count; ++op) CHECK(one.apply(op, 0) == 0);

  S3Example ex;
  UnaryAlgebra a = coset_gset(ex.g, ex.t1);
  CHECK(a.universe == 6);
  CHECK(a.op_count == 36);
  check_action_law(a, ex.g);

  // The action is transitive: the orbit of any point is the whole universe.
  for (int start = 0; start < a.universe; ++start) {
    IndexMask orbit(a.universe);
    orbit.set(start);
    std::vector<int> work = {start};
    for (std::size_t i = 0; i < work.size(); ++i)
      for (int op = 0; op < a.op_count; ++op) {
        int y = a.apply(op, work[i]);
        if (!orbit.test(y)) {
          orbit.set(y);
          work.push_back(y);
        }
      }
    CHECK(orbit.count() == a.universe);
  }
}

TEST_CASE("twisted_gset: degenerate seed, diagonal labels, action law") {
  UnaryAlgebra tiny = twisted_gset(cyclic_group(1));
  CHECK(tiny.universe == 1);

  FiniteGroup s3 = symmetric_group(3);
  UnaryAlgebra b = twisted_gset(s3);
  CHECK(b.universe == 6);
  CHECK(b.op_count == 36);

  S3Example ex;
  // On diagonal labels (g, g) the twist is invisible: it acts exactly like
  // untwisted left multiplication on G/D.
  UnaryAlgebra plain = coset_gset(ex.g, ex.d);
  const int n = s3.order;
  for (int gi = 0; gi < n; ++gi) {
    const int label = gi * n + gi;
    for (int x = 0; x < 6; ++x) CHECK(b.apply(label, x) == plain.apply(label, x));
  }

  // The twist is a genuine action: op composition follows the group product.
  check_action_law(b, ex.g);
}

TEST_CASE("product_algebra: unit factor, sizes, signature mismatch") {
  S3Example ex;
  UnaryAlgebra a = coset_gset(ex.g, ex.t1);
  UnaryAlgebra c = coset_gset(ex.g, ex.t2);
  UnaryAlgebra unit = coset_gset(ex.g, full_subgroup(ex.g));

  UnaryAlgebra a1 = product_algebra(a, unit);
  CHECK(a1.universe == a.universe);
  CHECK(a1.ops == a.ops);  // (x, 0) has index x, so the tables coincide

  UnaryAlgebra axc = product_algebra(a, c);
  CHECK(axc.universe == 36);
  check_action_law(axc, ex.g);
  for (int op = 0; op < axc.op_count; ++op) {
    std::vector<char> seen(axc.universe, 0);
    for (int x = 0; x < axc.universe; ++x) seen[axc.apply(op, x)] = 1;
    CHECK(std::count(seen.begin(), seen.end(), 1) == axc.universe);
  }

  UnaryAlgebra other = coset_gset(symmetric_group(3), trivial_subgroup(symmetric_group(3)));
  CHECK_THROWS_AS(product_algebra(a, other), SignatureMismatchError);
}

TEST_CASE("is_homomorphism: identity, constant and random maps") {
  S3Example ex;
  UnaryAlgebra a = coset_gset(ex.g, ex.t1);

  std::vector<int> id(a.universe);
  for (int i = 0; i < a.universe; ++i) id[i] = i;
  CHECK(is_homomorphism(id, a, a));

  // A constant map cannot commute with a transitive action.
  std::vector<int> constant(a.universe, 0);
  CHECK_FALSE(is_homomorphism(constant, a, a));

  std::mt19937 rng(42);
  std::vector<int> random_map(a.universe);
  for (int& v : random_map) v = static_cast<int>(rng() % a.universe);
  if (random_map != id) CHECK_FALSE(is_homomorphism(random_map, a, a));
}

TEST_CASE("principal congruence: diagonal pair and stability") {
  S3Example ex;
  UnaryAlgebra a = coset_gset(ex.g, ex.t1);

  CHECK(principal_congruence(a, 2, 2) == identity_partition(6));

  for (int x = 0; x < 6; ++x)
    for (int y = x + 1; y < 6; ++y) {
      Partition p = principal_congruence(a, x, y);
      CHECK(p.block[x] == p.block[y]);
      CHECK(is_stable(a, p));
      // Blocks of a congruence of a transitive G-set all have the same size.
      std::vector<int> sizes(p.block_count, 0);
      for (int i = 0; i < 6; ++i) ++sizes[p.block[i]];
      for (int s : sizes) CHECK(s == sizes[0]);
    }
}

TEST_CASE("all_congruences: frozen counts via the all-partitions oracle") {
  UnaryAlgebra one = coset_gset(cyclic_group(1), trivial_subgroup(cyclic_group(1)));
  CHECK(all_congruences(one).size() == 1);

  S3Example ex;
  UnaryAlgebra a = coset_gset(ex.g, ex.t1);
  auto fast_a = all_congruences(a);
  auto brute_a = all_congruences_brute(a);  // filters all 203 partitions of a 6-set
  CHECK(fast_a == brute_a);
  CHECK(fast_a.size() == 6);

  UnaryAlgebra b = twisted_gset(symmetric_group(3));
  auto fast_b = all_congruences(b);
  CHECK(fast_b == all_congruences_brute(b));
  CHECK(fast_b.size() == 3);

  for (const auto& p : fast_a) CHECK(is_stable(a, p));
  // Join- and meet-closure.
  for (const auto& p : fast_a)
    for (const auto& q : fast_a) {
      CHECK(std::count(fast_a.begin(), fast_a.end(), partition_join(p, q)) == 1);
      CHECK(std::count(fast_a.begin(), fast_a.end(), partition_meet(p, q)) == 1);
    }
}

TEST_CASE("all_congruences agrees with the oracle on small coset algebras") {
  for (const auto& g : {symmetric_group(3), cyclic_group(6), dihedral_group(4),
                        alternating_group(4)}) {
    CAPTURE(g.label);
    for (const auto& h : all_subgroups(g)) {
      if (g.order / h.size() > 7) continue;
      UnaryAlgebra alg = coset_gset(g, h);
      CHECK(all_congruences(alg) == all_congruences_brute(alg));
    }
  }
}

TEST_CASE("generator-reduced congruence computation matches the full op set") {
  S3Example ex;
  UnaryAlgebra full_ops = coset_gset(ex.g, ex.t1);
  UnaryAlgebra reduced = full_ops;
  const int n = ex.s.order, e = ex.s.identity;
  for (int x : small_generating_set(ex.s)) {
    reduced.computation_labels.push_back(x * n + e);
    reduced.computation_labels.push_back(e * n + x);
  }
  std::sort(reduced.computation_labels.begin(), reduced.computation_labels.end());
  CHECK(all_congruences(reduced) == all_congruences(full_ops));
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      CHECK(principal_congruence(reduced, x, y) ==
            principal_congruence(full_ops, x, y));
}

TEST_CASE("all_congruences enforces its bounds") {
  S3Example ex;
  UnaryAlgebra a = coset_gset(ex.g, ex.t1);
  CongruenceLimits tight;
  tight.universe_bound = 3;
  CHECK_THROWS_AS(all_congruences(a, tight), CapacityError);
  CongruenceLimits few;
  few.max_congruences = 2;
  CHECK_THROWS_AS(all_congruences(a, few), CapacityError);
}

TEST_CASE("congruence lattice of a one-element algebra") {
  FiniteGroup c1 = cyclic_group(1);
  CongruenceLattice con = congruence_lattice(coset_gset(c1, trivial_subgroup(c1)));
  CHECK(con.lattice.size == 1);
  CHECK(con.lattice.bottom == con.lattice.top);
}

TEST_CASE("congruence lattices of the S3 example") {
  S3Example ex;
  CongruenceLattice con_a = congruence_lattice(coset_gset(ex.g, ex.t1));
  CongruenceLattice con_b = congruence_lattice(twisted_gset(ex.s));
  CHECK(con_a.lattice.size == 6);
  CHECK(con_b.lattice.size == 3);

  // Con A = Sub(S3) and Con B = NSub(S3), abstractly.
  CHECK(lattice_isomorphism(con_a.lattice,
                            subgroup_lattice(ex.s).lattice)
            .has_value());
  CHECK(lattice_isomorphism(con_b.lattice,
                            normal_subgroup_lattice(ex.s).lattice)
            .has_value());
  CHECK_FALSE(lattice_isomorphism(con_a.lattice, con_b.lattice).has_value());

  // The bottom is the identity partition, the top the one-block partition.
  CHECK(con_a.congruences[con_a.lattice.bottom] == identity_partition(6));
  CHECK(con_a.congruences[con_a.lattice.top] == full_partition(6));
}

TEST_CASE("Con(A x C) for S3 is non-modular with a pentagon witness") {
  S3Example ex;
  UnaryAlgebra axc = product_algebra(coset_gset(ex.g, ex.t1), coset_gset(ex.g, ex.t2));
  CongruenceLattice con = congruence_lattice(axc);
  ModularityResult r = is_modular(con.lattice);
  REQUIRE_FALSE(r.modular);
  const auto [a, b, c, bot, top] = r.witness;
  CHECK(con.lattice.le(a, c));
  CHECK(con.lattice.meet_of(a, b) == bot);
  CHECK(con.lattice.meet_of(c, b) == bot);
  CHECK(con.lattice.join_of(a, b) == top);
  CHECK(con.lattice.join_of(c, b) == top);
}

TEST_CASE("action law holds for every algebra of the small bundles") {
  for (const auto& s : {cyclic_group(2), cyclic_group(6), symmetric_group(3)}) {
    CAPTURE(s.label);
    FiniteGroup g = direct_product(s, s);
    auto [t1, t2] = factor_embeddings(s);
    check_action_law(coset_gset(g, make_subgroup(g, t1.members)), g);
    check_action_law(coset_gset(g, make_subgroup(g, t2.members)), g);
    check_action_law(twisted_gset(s), g);
  }
}
