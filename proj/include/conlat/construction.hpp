#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/group.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

struct BuildOptions {
  bool allow_dedekind = false;
  GroupLimits limits;
};

// The whole construction for a seed group S: G = S x S, the three subgroups
// T1 = S x {1}, T2 = {1} x S, D = {(x,x)}, and the algebras
//   A = <G/T1, left mult>,  C = <G/T2, left mult>,  B = <G/D, twisted>.
struct ExampleBundle {
  FiniteGroup s;
  FiniteGroup g;
  SubgroupSet t1, t2, d;
  LeftCosetSpace cosets_t1, cosets_t2, cosets_d;
  UnaryAlgebra alg_a, alg_b, alg_c;
  std::vector<int> action_generators;  // op labels used for congruence work
  bool dedekind = false;
  std::string notes;
};

// Rejects Dedekind seeds unless opts.allow_dedekind (the construction then
// yields isomorphic congruence lattices). Verifies on the way out that
// T1, T2, D intersect pairwise in the identity and pairwise generate G.
ExampleBundle build_example(const FiniteGroup& s, const BuildOptions& opts = {});

// phi((x1,x2)T1, (y1,y2)T2) = ((x2,y1)D, (y1,y2)T2), computed from the
// canonical minimum-index representatives. Returns (coset in G/D, y_coset).
std::pair<int, int> phi(const ExampleBundle& b, int x_coset, int y_coset);

struct IsotopyWitness {
  std::vector<int> map;  // universe(A x C) -> universe(B x C), pairs row-major
  bool well_defined = false;
  bool homomorphism = false;
  bool bijective = false;
  bool second_coordinate_fixed = false;
  std::string counterexample;  // empty when all checks pass

  bool holds() const {
    return well_defined && homomorphism && bijective && second_coordinate_fixed;
  }
};

// Builds the full map table of phi and checks, exhaustively:
//  - independence from the choice of representatives (over all |G|^2 pairs),
//  - the homomorphism law against product_algebra(B, C),
//  - injectivity (with |AxC| = |BxC| this gives bijectivity),
//  - preservation of the second coordinate.
IsotopyWitness verify_isotopy(const ExampleBundle& b);

// The last three checks for an arbitrary candidate table from
// universe(from_left x shared) to universe(to_left x shared); well_defined is
// set true since a table is a function. Used for mutation tests and for the
// inverse witness.
IsotopyWitness check_isotopy_table(const UnaryAlgebra& from_left,
                                   const UnaryAlgebra& shared,
                                   const UnaryAlgebra& to_left,
                                   std::vector<int> table);

struct Lemma1Result {
  bool isomorphic = false;
  FiniteLattice filter;  // [D, SxS] inside Sub(SxS)
  FiniteLattice nsub;    // NSub(S)
  std::optional<std::vector<int>> bijection;
};

// Filter above the diagonal in Sub(SxS) vs NSub(S), compared abstractly by
// lattice_isomorphism.
Lemma1Result check_lemma1(const FiniteGroup& s, const GroupLimits& limits = {});

struct CorrespondenceResult {
  bool isomorphic = false;
  int congruence_count = 0;
  int filter_size = 0;
};

// Con(<G/H, G>) vs the interval [H, G] in Sub(G).
CorrespondenceResult check_con_correspondence(const FiniteGroup& g,
                                              const SubgroupSet& h,
                                              const GroupLimits& glimits = {},
                                              const CongruenceLimits& climits = {});

struct ReportOptions {
  bool allow_dedekind = false;
  bool skip_product = false;
  GroupLimits limits;
  CongruenceLimits congruence_limits;
  int lattice_iso_bound = 256;
  int product_seed_bound = 12;  // skip Con(A x C) for larger seeds
};

struct VerificationReport {
  std::string group_label;
  int group_order = 0;
  bool dedekind = false;

  int g_order = 0;
  int universe_a = 0, universe_b = 0, universe_c = 0;
  int op_count = 0;
  int generator_count = 0;

  int subgroup_count = 0;
  int normal_subgroup_count = 0;

  IsotopyWitness isotopy;

  int con_a = 0;
  int con_b = 0;
  std::optional<int> con_axc;

  bool con_a_iso_con_b = false;
  bool con_a_iso_sub_s = false;
  bool con_b_iso_nsub_s = false;
  std::optional<bool> lemma1;
  std::optional<bool> correspondence;
  std::optional<ModularityResult> product_modularity;

  std::vector<std::pair<std::string, std::string>> skipped;  // stage, reason
  std::vector<std::pair<std::string, double>> timings_ms;

  // The expected verdicts for the seed's Dedekind class all hold.
  bool verdict_ok = false;
};

// Runs the full pipeline: build, isotopy verification, Con A / Con B and
// their comparison, Con A vs Sub(S), Con B vs NSub(S), the filter lemma, the
// coset correspondence and modularity of Con(A x C). Stages that exceed a
// bound are recorded in skipped rather than aborting the report.
VerificationReport main_report(const FiniteGroup& s, const ReportOptions& opts = {});

// Versioned JSON document (schema_version 1). Deterministic: byte-identical
// for identical inputs when include_timings is false.
std::string report_json(const VerificationReport& r, bool include_timings);

}  // namespace conlat
