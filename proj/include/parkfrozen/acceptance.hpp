#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace parkfrozen {

struct CriterionOutcome {
  int id = 0;
  std::string label;
  bool pass = false;
  std::string measured;
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionOutcome> criteria;
  std::vector<std::string> notes;
  bool all_pass() const {
    for (const auto& c : criteria)
      if (!c.pass) return false;
    return true;
  }
};

// Run the acceptance suite; one line per criterion goes to `log` as it
// completes. quick = true shrinks the statistical lattice sizes.
AcceptanceReport run_acceptance(bool quick, std::ostream& log);

} // namespace parkfrozen
