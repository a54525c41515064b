#pragma once

#include <string>
#include <vector>

#include "ncg/alg.hpp"

namespace ncg {

struct CriticalPair {
  Word overlap;
  std::string left_nf;
  std::string right_nf;
  bool joinable = false;
};

struct ConfluenceReport {
  std::vector<CriticalPair> pairs;
  bool all_joinable() const {
    for (const auto& p : pairs)
      if (!p.joinable) return false;
    return true;
  }
  size_t failures() const {
    size_t n = 0;
    for (const auto& p : pairs)
      if (!p.joinable) ++n;
    return n;
  }
};

// Enumerates overlap and containment ambiguities between rule left sides up to
// the given overlap word length and reduces both one-step resolutions to
// normal form. Requires max_overlap_len >= the longest rule left side.
ConfluenceReport check_local_confluence(const Presentation& p, int max_overlap_len);

// Star consistency of the rule set: NF(star(lhs)) == NF(star(rhs)) per rule.
// Returns descriptions of failing rules.
std::vector<std::string> check_rule_star_consistency(const Presentation& p);

}  // namespace ncg
