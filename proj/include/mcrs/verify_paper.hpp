#ifndef MCRS_VERIFY_PAPER_HPP
#define MCRS_VERIFY_PAPER_HPP

#include <string>
#include <vector>

#include "mcrs/rational.hpp"

namespace mcrs {

// One regression check of a published reference value against this
// implementation. Verdicts:
//   "confirmed"                       computed value equals the published one
//   "refuted"                         computed value contradicts it
//   "diverges-from-paper (documented)" known documented divergence: the
//                                     computed value differs from the printed
//                                     one but matches the printed definition
//   "undecided-at-precision"          could not be decided within budget
struct PaperCheckResult {
  std::string id;
  std::string published;  // the reference value as printed in the source text
  std::string computed;   // what this implementation finds
  std::string verdict;

  bool ok() const {
    return verdict == "confirmed" || verdict == "diverges-from-paper (documented)";
  }
};

// All check ids, in run order.
std::vector<std::string> paper_check_ids();

// Run one check. N_override > 0 replaces the default size bound of checks
// that take one (search/table checks); others ignore it. Unknown id -> parse
// error.
PaperCheckResult run_paper_check(const std::string& id, const Int& N_override = Int(0));

std::vector<PaperCheckResult> run_all_paper_checks(const Int& N_override = Int(0));

}  // namespace mcrs

#endif
