#include "conlat/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "conlat/construction.hpp"
#include "conlat/oracles.hpp"

namespace conlat {

GroupSpec parse_group_spec(const std::string& text) {
  if (text.empty()) throw ParseError("group spec '': empty");
  GroupSpec s;
  if (text[0] == '@') {
    if (text.size() == 1)
      throw ParseError("group spec '" + text + "': missing path after '@' (at position 1)");
    s.family = GroupSpec::Family::file;
    s.path = text.substr(1);
    return s;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("group spec '" + text +
                     "': expected family:parameter or @path (no ':' found)");
  const std::string family = text.substr(0, colon);
  const std::string param = text.substr(colon + 1);

  if (family == "cyc")
    s.family = GroupSpec::Family::cyclic;
  else if (family == "dih")
    s.family = GroupSpec::Family::dihedral;
  else if (family == "sym")
    s.family = GroupSpec::Family::symmetric;
  else if (family == "alt")
    s.family = GroupSpec::Family::alternating;
  else if (family == "quat")
    s.family = GroupSpec::Family::quaternion;
  else
    throw ParseError("group spec '" + text + "': unknown family '" + family +
                     "' (at position 0); expected cyc, dih, sym, alt or quat");

  if (param.empty() || !std::all_of(param.begin(), param.end(),
                                    [](unsigned char c) { return std::isdigit(c); }))
    throw ParseError("group spec '" + text + "': expected a number (at position " +
                     std::to_string(colon + 1) + ")");
  try {
    s.parameter = std::stoi(param);
  } catch (const std::exception&) {
    throw ParseError("group spec '" + text + "': parameter out of range (at position " +
                     std::to_string(colon + 1) + ")");
  }

  auto check = [&](bool ok, const std::string& what) {
    if (!ok)
      throw ParseError("group spec '" + text + "': unsupported parameter " +
                       std::to_string(s.parameter) + " (" + what + ")");
  };
  switch (s.family) {
    case GroupSpec::Family::cyclic: check(s.parameter >= 1 && s.parameter <= 64, "cyc supports 1..64"); break;
    case GroupSpec::Family::dihedral: check(s.parameter >= 1 && s.parameter <= 12, "dih supports 1..12"); break;
    case GroupSpec::Family::symmetric: check(s.parameter >= 1 && s.parameter <= 5, "sym supports 1..5"); break;
    case GroupSpec::Family::alternating: check(s.parameter >= 1 && s.parameter <= 5, "alt supports 1..5"); break;
    case GroupSpec::Family::quaternion: check(s.parameter == 8, "quat supports exactly 8"); break;
    case GroupSpec::Family::file: break;
  }
  return s;
}

FiniteGroup realize_group(const GroupSpec& spec, const GroupLimits& limits) {
  switch (spec.family) {
    case GroupSpec::Family::cyclic: return cyclic_group(spec.parameter);
    case GroupSpec::Family::dihedral: return dihedral_group(spec.parameter);
    case GroupSpec::Family::symmetric: return symmetric_group(spec.parameter);
    case GroupSpec::Family::alternating: return alternating_group(spec.parameter);
    case GroupSpec::Family::quaternion: return quaternion_group();
    case GroupSpec::Family::file: return load_cayley_table_file(spec.path, limits);
  }
  throw Error("unreachable group family");
}

namespace {

struct CmdOptions {
  std::string spec;
  bool allow_dedekind = false;
  bool skip_product = false;
  bool no_timings = false;
  bool json = false;
  std::string out_dir;
  int max_order = 3600;
  int max_enum = 120;
  int assoc_bound = 256;
  int max_universe = 128;
  int max_congruences = 4096;
  int max_lattice = 256;

  GroupLimits limits() const { return GroupLimits{max_order, assoc_bound, false, max_enum}; }
  CongruenceLimits climits() const { return CongruenceLimits{max_universe, max_congruences}; }
  ReportOptions report_options() const {
    ReportOptions r;
    r.allow_dedekind = allow_dedekind;
    r.skip_product = skip_product;
    r.limits = limits();
    r.congruence_limits = climits();
    r.lattice_iso_bound = max_lattice;
    return r;
  }
};

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << contents;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

void print_human_report(const VerificationReport& r, std::ostream& out) {
  out << "group " << r.group_label << " (order " << r.group_order << "), "
      << (r.dedekind ? "Dedekind" : "non-Dedekind") << "\n";
  out << "G = SxS has order " << r.g_order << "; |A| = " << r.universe_a
      << ", |B| = " << r.universe_b << ", |C| = " << r.universe_c << " ("
      << r.generator_count << " of " << r.op_count << " ops drive congruence generation)\n";
  out << "phi: well-defined " << yesno(r.isotopy.well_defined) << ", homomorphism "
      << yesno(r.isotopy.homomorphism) << ", bijective " << yesno(r.isotopy.bijective)
      << ", second coordinates fixed " << yesno(r.isotopy.second_coordinate_fixed)
      << " -> A ~_C B " << yesno(r.isotopy.holds()) << "\n";
  if (!r.isotopy.counterexample.empty())
    out << "  counterexample: " << r.isotopy.counterexample << "\n";
  out << "|Sub(S)| = " << r.subgroup_count << ", |NSub(S)| = " << r.normal_subgroup_count
      << "\n";
  out << "|Con A| = " << r.con_a << ", |Con B| = " << r.con_b
      << "; Con A isomorphic to Con B: " << yesno(r.con_a_iso_con_b) << "\n";
  out << "Con A = Sub(S): " << yesno(r.con_a_iso_sub_s)
      << "; Con B = NSub(S): " << yesno(r.con_b_iso_nsub_s) << "\n";
  if (r.lemma1)
    out << "filter [D, SxS] = NSub(S): " << yesno(*r.lemma1) << "\n";
  if (r.correspondence)
    out << "Con A = filter above T1 in Sub(G): " << yesno(*r.correspondence) << "\n";
  if (r.product_modularity) {
    out << "Con(AxC): " << *r.con_axc << " congruences, modular: "
        << yesno(r.product_modularity->modular);
    if (!r.product_modularity->modular) {
      out << " (N5 witness:";
      for (int w : r.product_modularity->witness) out << ' ' << w;
      out << ")";
    }
    out << "\n";
  }
  for (const auto& [stage, reason] : r.skipped)
    out << "skipped " << stage << ": " << reason << "\n";
  out << "verdict: " << (r.verdict_ok ? "OK" : "FAILED") << "\n";
}

int cmd_verify(const CmdOptions& o, std::ostream& out, std::ostream& err) {
  FiniteGroup s = realize_group(parse_group_spec(o.spec), o.limits());
  VerificationReport r = main_report(s, o.report_options());
  const std::string js = report_json(r, !o.no_timings);
  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    write_file(std::filesystem::path(o.out_dir) / "report.json", js + "\n");
  }
  if (o.json)
    out << js << "\n";
  else
    print_human_report(r, out);
  if (!r.verdict_ok) {
    err << "verification failed for " << s.label << "\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_lattices(const CmdOptions& o, std::ostream& out, std::ostream&) {
  FiniteGroup s = realize_group(parse_group_spec(o.spec), o.limits());
  BuildOptions bo{o.allow_dedekind, o.limits()};
  ExampleBundle bundle = build_example(s, bo);

  const std::filesystem::path dir = o.out_dir.empty() ? "." : o.out_dir;
  std::filesystem::create_directories(dir);

  auto emit = [&](const std::string& stem, const FiniteLattice& l) {
    const auto path = dir / (stem + ".dot");
    write_file(path, to_dot(l));
    out << "wrote " << path.string() << " (" << l.size << " nodes, "
        << l.cover_edge_count() << " cover edges)\n";
  };

  emit("sub_s", subgroup_lattice(s, o.limits()).lattice);
  emit("nsub_s", normal_subgroup_lattice(s, o.limits()).lattice);
  emit("con_a", congruence_lattice(bundle.alg_a, o.climits()).lattice);
  emit("con_b", congruence_lattice(bundle.alg_b, o.climits()).lattice);
  if (!o.skip_product && s.order <= ReportOptions{}.product_seed_bound) {
    try {
      emit("con_axc",
           congruence_lattice(product_algebra(bundle.alg_a, bundle.alg_c),
                              o.climits())
               .lattice);
    } catch (const CapacityError&) {
      out << "skipped con_axc (capacity)\n";
    }
  }
  return kExitOk;
}

// Deterministically relabeled copy, for exercising the isomorphism search.
FiniteLattice shuffled_copy(const FiniteLattice& l, unsigned seed) {
  std::vector<int> to_old(l.size);
  std::iota(to_old.begin(), to_old.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(to_old.begin(), to_old.end(), rng);
  std::vector<std::string> labels(l.size);
  for (int i = 0; i < l.size; ++i) labels[i] = l.labels[to_old[i]];
  return lattice_from_poset(
      l.size, [&](int i, int j) { return l.le(to_old[i], to_old[j]); },
      std::move(labels));
}

int cmd_oracle(const CmdOptions& o, std::ostream& out, std::ostream&) {
  FiniteGroup g = realize_group(parse_group_spec(o.spec), o.limits());
  int disagreements = 0;
  auto report = [&](const std::string& name, bool agree, const std::string& detail) {
    out << (agree ? "agree    " : "DISAGREE ") << name;
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
    if (!agree) ++disagreements;
  };

  // Subgroup enumeration vs the all-subsets oracle.
  if (g.order <= 12) {
    auto fast = all_subgroups(g, o.limits());
    auto brute = all_subgroups_brute(g);
    report("subgroups " + g.label, fast == brute,
           std::to_string(fast.size()) + " fast vs " + std::to_string(brute.size()) +
               " brute");
  } else {
    out << "skipped  subgroups " << g.label << " (order > 12)\n";
  }

  // Congruence computation vs the all-partitions oracle, on every coset
  // algebra with a small enough universe.
  std::vector<SubgroupSet> subs = all_subgroups(g, o.limits());
  for (const auto& h : subs) {
    if (g.order / h.size() > 7) continue;
    UnaryAlgebra alg = coset_gset(g, h);
    auto fast = all_congruences(alg, o.climits());
    auto brute = all_congruences_brute(alg);
    report("congruences " + g.label + "/" + subgroup_label(h), fast == brute,
           std::to_string(fast.size()) + " congruences");
  }
  if (g.order <= 7) {
    UnaryAlgebra tw = twisted_gset(g, o.limits());
    auto fast = all_congruences(tw, o.climits());
    auto brute = all_congruences_brute(tw);
    report("congruences twisted " + g.label + "x" + g.label + "/D", fast == brute,
           std::to_string(fast.size()) + " congruences");
  } else {
    out << "skipped  congruences twisted (order > 7)\n";
  }

  // Isomorphism search vs the all-permutations oracle over the small
  // lattices this group gives rise to, plus fixed shapes.
  std::vector<FiniteLattice> small;
  SubgroupLattice sl = subgroup_lattice(g, o.limits());
  if (sl.lattice.size <= 7) small.push_back(sl.lattice);
  SubgroupLattice nl = normal_subgroup_lattice(g, o.limits());
  if (nl.lattice.size <= 7) small.push_back(nl.lattice);
  for (int i = 0; i < sl.lattice.size; ++i) {
    FiniteLattice f = filter_above(sl.lattice, i);
    if (f.size <= 7) small.push_back(std::move(f));
  }
  small.push_back(chain_lattice(2));
  small.push_back(chain_lattice(3));
  small.push_back(pentagon_lattice());
  small.push_back(diamond_lattice());
  {
    const std::size_t fixed = small.size();
    for (std::size_t i = 0; i < fixed; ++i)
      small.push_back(shuffled_copy(small[i], 1234 + static_cast<unsigned>(i)));
  }
  bool all_iso_agree = true;
  int pairs = 0;
  for (const auto& a : small)
    for (const auto& b : small) {
      ++pairs;
      const bool fast = lattice_isomorphism(a, b, o.max_lattice).has_value();
      const bool brute = lattice_isomorphism_brute(a, b).has_value();
      if (fast != brute) all_iso_agree = false;
    }
  report("lattice isomorphism", all_iso_agree,
         std::to_string(pairs) + " lattice pairs");

  return disagreements == 0 ? kExitOk : kExitVerificationFailed;
}

int cmd_subgroups(const CmdOptions& o, std::ostream& out, std::ostream&) {
  FiniteGroup g = realize_group(parse_group_spec(o.spec), o.limits());
  std::vector<SubgroupSet> subs = all_subgroups(g, o.limits());
  int normal_count = 0;
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const bool normal = is_normal(g, subs[i]);
    if (normal) ++normal_count;
    if (o.json) {
      list.push_back({{"members", subs[i].members},
                      {"order", subs[i].size()},
                      {"normal", normal}});
    } else {
      out << i << ": order " << subs[i].size() << (normal ? " normal   " : "          ")
          << subgroup_label(subs[i]) << "\n";
    }
  }
  if (o.json) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["group"] = {{"label", g.label}, {"order", g.order}};
    j["subgroups"] = list;
    j["count"] = subs.size();
    j["normal_count"] = normal_count;
    out << j.dump(2) << "\n";
  } else {
    out << subs.size() << " subgroups, " << normal_count << " normal\n";
  }
  return kExitOk;
}

int cmd_congruences(const CmdOptions& o, std::ostream& out, std::ostream&) {
  FiniteGroup s = realize_group(parse_group_spec(o.spec), o.limits());
  ExampleBundle bundle = build_example(s, BuildOptions{o.allow_dedekind, o.limits()});
  CongruenceLattice con_a = congruence_lattice(bundle.alg_a, o.climits());
  CongruenceLattice con_b = congruence_lattice(bundle.alg_b, o.climits());

  if (o.json) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["group"] = {{"label", s.label}, {"order", s.order}};
    auto dump = [](const CongruenceLattice& c) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& p : c.congruences) arr.push_back(partition_label(p));
      return arr;
    };
    j["con_a"] = dump(con_a);
    j["con_b"] = dump(con_b);
    out << j.dump(2) << "\n";
  } else {
    out << "Con A (" << con_a.lattice.size << " congruences on G/T1):\n";
    for (const auto& p : con_a.congruences) out << "  " << partition_label(p) << "\n";
    out << "Con B (" << con_b.lattice.size << " congruences on G/D, twisted):\n";
    for (const auto& p : con_b.congruences) out << "  " << partition_label(p) << "\n";
  }
  return kExitOk;
}

void add_common_options(CLI::App* sub, CmdOptions& o, bool with_spec = true) {
  if (with_spec)
    sub->add_option("spec", o.spec,
                    "group spec: family:parameter (cyc:6, dih:4, sym:3, alt:5, "
                    "quat:8) or @path/to/table.cayley")
        ->required();
  sub->add_flag("--allow-dedekind", o.allow_dedekind,
                "build the example even for a Dedekind seed group");
  sub->add_flag("--skip-product", o.skip_product, "skip the Con(AxC) stage");
  sub->add_flag("--no-timings", o.no_timings, "omit timings from JSON output");
  sub->add_flag("--json", o.json, "emit JSON instead of text");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_option("--max-order", o.max_order, "largest ambient group order");
  sub->add_option("--max-enum", o.max_enum, "subgroup enumeration bound");
  sub->add_option("--assoc-bound", o.assoc_bound,
                  "exhaustive associativity check bound");
  sub->add_option("--max-universe", o.max_universe,
                  "congruence computation universe bound");
  sub->add_option("--max-congruences", o.max_congruences,
                  "congruence count bound");
  sub->add_option("--max-lattice", o.max_lattice,
                  "lattice isomorphism size bound");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"coset G-set congruence lattice workbench"};
  app.name("conlat");
  app.require_subcommand(1);

  CmdOptions o;
  CLI::App* verify = app.add_subcommand(
      "verify", "build the example for a seed group and verify every claim");
  CLI::App* lattices = app.add_subcommand(
      "lattices", "emit Hasse diagrams (DOT) of Sub, NSub, Con A, Con B, Con(AxC)");
  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare the fast paths against brute-force oracles");
  CLI::App* subgroups =
      app.add_subcommand("subgroups", "enumerate the subgroups of a group");
  CLI::App* congruences = app.add_subcommand(
      "congruences", "list the congruences of the example algebras A and B");
  for (CLI::App* sub : {verify, lattices, oracle, subgroups, congruences})
    add_common_options(sub, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (lattices->parsed()) return cmd_lattices(o, out, err);
    if (oracle->parsed()) return cmd_oracle(o, out, err);
    if (subgroups->parsed()) return cmd_subgroups(o, out, err);
    if (congruences->parsed()) return cmd_congruences(o, out, err);
  } catch (const DedekindGroupError& e) {
    err << "error: DedekindGroupRejected: " << e.what()
        << " (use --allow-dedekind)\n";
    return kExitDedekindRejected;
  } catch (const CapacityError& e) {
    err << "error: capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidGroupError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace conlat
