#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "conlat/group.hpp"

namespace conlat {

// Grammar: family:parameter (cyc:6, dih:4, sym:3, alt:5, quat:8) or
// @path/to/table.cayley.
struct GroupSpec {
  enum class Family { cyclic, dihedral, symmetric, alternating, quaternion, file };
  Family family = Family::cyclic;
  int parameter = 1;
  std::string path;
};

GroupSpec parse_group_spec(const std::string& text);
FiniteGroup realize_group(const GroupSpec& spec, const GroupLimits& limits = {});

// Stable, documented exit codes. Verification failure never exits 0.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,            // bad flags, bad group spec, bad input file
  kExitCapacity = 3,         // a configured size bound was exceeded
  kExitVerificationFailed = 4,
  kExitDedekindRejected = 5, // Dedekind seed without --allow-dedekind
};

// Full CLI: verify, lattices, oracle, subgroups, congruences. args excludes
// the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace conlat
