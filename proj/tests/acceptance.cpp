// Acceptance suite: one check per claim the artifact must reproduce, each
// with a pinned runtime budget. Prints one PASS/FAIL line per criterion and
// exits with the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "conlat/cli.hpp"
#include "conlat/construction.hpp"
#include "conlat/oracles.hpp"

using namespace conlat;
using nlohmann::json;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json cli_report(const std::vector<std::string>& args, int expected_exit) {
  CliResult r = cli(args);
  expect(r.exit_code == expected_exit,
         "exit code " + std::to_string(r.exit_code) + " != " +
             std::to_string(expected_exit) + "; stderr: " + r.err);
  return json::parse(r.out);
}

// --- criterion bodies -------------------------------------------------------

void headline_counterexample_s3() {
  json j = cli_report({"verify", "sym:3", "--json", "--no-timings"}, kExitOk);
  expect(j["claims"]["well_defined"] == true, "phi must be well defined");
  expect(j["claims"]["homomorphism"] == true, "phi must be a homomorphism");
  expect(j["claims"]["bijective"] == true, "phi must be bijective");
  expect(j["claims"]["second_coordinate_fixed"] == true,
         "phi must fix second coordinates");
  expect(j["congruences"]["con_a"] == 6, "|Con A| must be 6");
  expect(j["congruences"]["con_b"] == 3, "|Con B| must be 3");
  expect(j["lattices"]["con_a_iso_con_b"] == false,
         "Con A and Con B must not be isomorphic");
  expect(j["verdict_ok"] == true, "verdict must hold");
}

void negative_control_q8() {
  CliResult rejected = cli({"verify", "quat:8"});
  expect(rejected.exit_code == kExitDedekindRejected,
         "default run must reject the Dedekind seed");
  expect(rejected.err.find("DedekindGroupRejected") != std::string::npos,
         "rejection must name DedekindGroupRejected");

  json j = cli_report({"verify", "quat:8", "--allow-dedekind", "--json",
                       "--no-timings"},
                      kExitOk);
  expect(j["lattices"]["con_a_iso_con_b"] == true,
         "forced Q8 run must yield isomorphic lattices");
  expect(j["claims"]["isotopic"] == true, "phi must still be an isotopy witness");
}

void lemma1_filter_vs_nsub() {
  GroupLimits wide;
  wide.subgroup_enum_bound = 150;  // |A4 x A4| = 144
  for (const auto& s : {symmetric_group(3), dihedral_group(4), alternating_group(4)}) {
    Lemma1Result r = check_lemma1(s, wide);
    expect(r.isomorphic, s.label + ": [D, SxS] must be isomorphic to NSub(S)");
    expect(r.filter.size == r.nsub.size, s.label + ": sizes must agree");
  }
}

void coset_congruence_correspondence() {
  for (const auto& g : {symmetric_group(3), dihedral_group(4), quaternion_group(),
                        alternating_group(4), cyclic_group(12)}) {
    for (const auto& h : all_subgroups(g)) {
      CorrespondenceResult r = check_con_correspondence(g, h);
      expect(r.isomorphic, g.label + "/" + subgroup_label(h) +
                               ": Con(G/H) must match the filter [H, G]");
    }
  }
}

void simple_group_corollary_a5() {
  json j = cli_report({"verify", "alt:5", "--skip-product", "--json",
                       "--no-timings"},
                      kExitOk);
  expect(j["congruences"]["con_b"] == 2, "|Con B| must be exactly 2 for A5");
  expect(j["congruences"]["con_a"] == 59, "|Con A| must be 59 for A5");
  expect(j["claims"]["isotopic"] == true, "A ~_C B must hold for A5");
  expect(j["lattices"]["con_a_iso_con_b"] == false,
         "Con A and Con B must differ for A5");
}

void product_lattice_non_modularity_s3() {
  ExampleBundle b = build_example(symmetric_group(3));
  CongruenceLattice con =
      congruence_lattice(product_algebra(b.alg_a, b.alg_c));
  ModularityResult r = is_modular(con.lattice);
  expect(!r.modular, "Con(A x C) must be non-modular for S3");
  expect(!is_modular_by_definition(con.lattice),
         "the definitional check must agree");

  // Verify the witness is a genuine pentagon.
  const auto [a, bb, c, bot, top] = r.witness;
  const FiniteLattice& l = con.lattice;
  expect(l.le(a, c) && a != c, "witness: a < c");
  expect(!l.le(a, bb) && !l.le(bb, a), "witness: b incomparable to a");
  expect(!l.le(c, bb) && !l.le(bb, c), "witness: b incomparable to c");
  expect(l.meet_of(a, bb) == bot && l.meet_of(c, bb) == bot,
         "witness: meets collapse");
  expect(l.join_of(a, bb) == top && l.join_of(c, bb) == top,
         "witness: joins collapse");
}

void oracle_equivalence_suite() {
  // Fast subgroup enumeration vs the all-subsets oracle, order <= 12.
  std::vector<FiniteGroup> small;
  for (int n = 1; n <= 12; ++n) small.push_back(cyclic_group(n));
  for (int n = 1; n <= 6; ++n) small.push_back(dihedral_group(n));
  small.push_back(symmetric_group(3));
  small.push_back(alternating_group(4));
  small.push_back(quaternion_group());
  for (const auto& g : small)
    expect(all_subgroups(g) == all_subgroups_brute(g),
           g.label + ": subgroup enumeration must match the subset oracle");

  // Fast congruences vs the all-partitions oracle, universe <= 7.
  int algebras = 0;
  for (const auto& g : {symmetric_group(3), cyclic_group(6), dihedral_group(4),
                        quaternion_group(), alternating_group(4), cyclic_group(12)}) {
    for (const auto& h : all_subgroups(g)) {
      if (g.order / h.size() > 7) continue;
      UnaryAlgebra alg = coset_gset(g, h);
      expect(all_congruences(alg) == all_congruences_brute(alg),
             g.label + "/" + subgroup_label(h) +
                 ": congruences must match the partition oracle");
      ++algebras;
    }
  }
  for (const auto& s : {cyclic_group(2), cyclic_group(3), symmetric_group(3)}) {
    UnaryAlgebra tw = twisted_gset(s);
    expect(all_congruences(tw) == all_congruences_brute(tw),
           "twisted " + s.label + ": congruences must match the partition oracle");
    ++algebras;
  }
  expect(algebras >= 20, "the congruence oracle suite must cover many algebras");

  // Isomorphism search vs the all-permutations oracle, size <= 7.
  std::vector<FiniteLattice> lattices;
  lattices.push_back(chain_lattice(1));
  lattices.push_back(chain_lattice(2));
  lattices.push_back(chain_lattice(4));
  lattices.push_back(pentagon_lattice());
  lattices.push_back(diamond_lattice());
  lattices.push_back(subgroup_lattice(symmetric_group(3)).lattice);
  lattices.push_back(normal_subgroup_lattice(symmetric_group(3)).lattice);
  lattices.push_back(subgroup_lattice(cyclic_group(12)).lattice);
  lattices.push_back(subgroup_lattice(quaternion_group()).lattice);
  lattices.push_back(normal_subgroup_lattice(cyclic_group(8)).lattice);
  for (const auto& a : lattices)
    for (const auto& b : lattices)
      expect(lattice_isomorphism(a, b).has_value() ==
                 lattice_isomorphism_brute(a, b).has_value(),
             "isomorphism search must match the permutation oracle");
}

void action_law_suite() {
  // op_{g*h} = op_g o op_h and op_e = id, exhaustively for |G| <= 64. This is
  // the certificate that the twisted construction really is an action.
  auto check_action = [](const UnaryAlgebra& alg, const FiniteGroup& g) {
    expect(alg.op_count == g.order, "one op per group element");
    for (int x = 0; x < alg.universe; ++x)
      expect(alg.apply(g.identity, x) == x, "identity op must be the identity");
    for (int p = 0; p < g.order; ++p)
      for (int q = 0; q < g.order; ++q) {
        const int pq = g.mul(p, q);
        for (int x = 0; x < alg.universe; ++x)
          expect(alg.apply(pq, x) == alg.apply(p, alg.apply(q, x)),
                 "op composition must follow the group product");
      }
  };

  BuildOptions force;
  force.allow_dedekind = true;
  for (const auto& s : {cyclic_group(2), cyclic_group(4), cyclic_group(6),
                        symmetric_group(3), dihedral_group(4)}) {
    ExampleBundle b = build_example(s, force);  // |G| = |S|^2 <= 64
    check_action(b.alg_a, b.g);
    check_action(b.alg_b, b.g);
    check_action(b.alg_c, b.g);
  }
  for (const auto& g : {symmetric_group(3), dihedral_group(4), quaternion_group(),
                        alternating_group(4), cyclic_group(12)})
    for (const auto& h : all_subgroups(g)) check_action(coset_gset(g, h), g);

  // Above the exhaustive bound, sample label pairs (A4 x A4 has order 144).
  {
    ExampleBundle b = build_example(alternating_group(4), force);
    std::mt19937 rng(2024);
    for (const UnaryAlgebra* alg : {&b.alg_a, &b.alg_b, &b.alg_c}) {
      for (int x = 0; x < alg->universe; ++x)
        expect(alg->apply(b.g.identity, x) == x, "identity op must be the identity");
      for (int trial = 0; trial < 500; ++trial) {
        const int p = static_cast<int>(rng() % b.g.order);
        const int q = static_cast<int>(rng() % b.g.order);
        const int pq = b.g.mul(p, q);
        for (int x = 0; x < alg->universe; ++x)
          expect(alg->apply(pq, x) == alg->apply(p, alg->apply(q, x)),
                 "sampled op composition must follow the group product");
      }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void()> body;
  };
  const std::vector<Criterion> criteria = {
      {"1 headline counterexample (S3): phi verified, 6 vs 3, not isomorphic", 1.0,
       headline_counterexample_s3},
      {"2 negative control (Q8): rejected by default, isomorphic when forced", 1.0,
       negative_control_q8},
      {"3 filter [D, SxS] = NSub(S) for S3, D4, A4", 30.0, lemma1_filter_vs_nsub},
      {"4 Con(G/H) = [H, G] for every subgroup of S3, D4, Q8, A4, C12", 10.0,
       coset_congruence_correspondence},
      {"5 simple group corollary (A5): |Con B| = 2, |Con A| = 59", 60.0,
       simple_group_corollary_a5},
      {"6 Con(A x C) non-modular for S3, with a verified N5 witness", 30.0,
       product_lattice_non_modularity_s3},
      {"7 oracle equivalence: subgroups, congruences, lattice isomorphism", 0.0,
       oracle_equivalence_suite},
      {"8 action laws hold exhaustively for |G| <= 64", 0.0, action_law_suite},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (error.empty() && c.budget_seconds > 0 && seconds > c.budget_seconds) {
      error = "exceeded the " + std::to_string(c.budget_seconds) + " s budget";
    }
    if (error.empty()) {
      std::printf("PASS  criterion %s  (%.2f s)\n", c.name.c_str(), seconds);
    } else {
      std::printf("FAIL  criterion %s  (%.2f s): %s\n", c.name.c_str(), seconds,
                  error.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
