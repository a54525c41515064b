#include "ncg/confluence.hpp"

#include <set>

#include "ncg/error.hpp"

namespace ncg {

namespace {

// One-step rewrite of w with rule r at position pos, then full normal form.
AlgElem step_then_reduce(const Presentation& p, const Word& w, const Rule& r, size_t pos) {
  Word prefix = w.substr(0, pos);
  Word suffix = w.substr(pos + r.lhs.size());
  TermMap t;
  for (const auto& [rw, rc] : r.rhs) {
    Word nw = prefix + rw + suffix;
    auto it = t.find(nw);
    if (it == t.end())
      t.emplace(nw, rc);
    else
      it->second += rc;
  }
  return AlgElem(&p, p.normal_form(std::move(t)));
}

}  // namespace

ConfluenceReport check_local_confluence(const Presentation& p, int max_overlap_len) {
  size_t max_lhs = 0;
  for (const Rule& r : p.rules) max_lhs = std::max(max_lhs, r.lhs.size());
  if (max_overlap_len < static_cast<int>(max_lhs))
    fail(errc::internal, "max_overlap_len below the longest rule left side");

  ConfluenceReport report;
  std::set<std::tuple<Word, size_t, size_t, const Rule*, const Rule*>> seen;

  auto consider = [&](const Word& w, const Rule& r1, size_t pos1, const Rule& r2, size_t pos2) {
    if (static_cast<int>(w.size()) > max_overlap_len) return;
    if (pos1 == pos2 && &r1 == &r2) return;
    auto key = std::make_tuple(w, std::min(pos1, pos2), std::max(pos1, pos2),
                               pos1 <= pos2 ? &r1 : &r2, pos1 <= pos2 ? &r2 : &r1);
    if (!seen.insert(key).second) return;
    AlgElem left = step_then_reduce(p, w, r1, pos1);
    AlgElem right = step_then_reduce(p, w, r2, pos2);
    CriticalPair cp;
    cp.overlap = w;
    cp.left_nf = left.str();
    cp.right_nf = right.str();
    cp.joinable = left == right;
    report.pairs.push_back(std::move(cp));
  };

  for (const Rule& r1 : p.rules) {
    for (const Rule& r2 : p.rules) {
      // proper overlap: nonempty suffix of r1.lhs equals prefix of r2.lhs
      for (size_t k = 1; k < r1.lhs.size() && k <= r2.lhs.size(); ++k) {
        if (r1.lhs.compare(r1.lhs.size() - k, k, r2.lhs, 0, k) == 0) {
          Word w = r1.lhs + r2.lhs.substr(k);
          if (w.size() == r1.lhs.size()) continue;  // containment handled below
          consider(w, r1, 0, r2, r1.lhs.size() - k);
        }
      }
      // containment: r2.lhs occurs inside r1.lhs
      if (&r1 != &r2 || r1.lhs != r2.lhs) {
        for (size_t pos = 0; pos + r2.lhs.size() <= r1.lhs.size(); ++pos) {
          if (r1.lhs.compare(pos, r2.lhs.size(), r2.lhs) == 0 &&
              !(pos == 0 && r2.lhs.size() == r1.lhs.size() && &r1 == &r2)) {
            consider(r1.lhs, r1, 0, r2, pos);
          }
        }
      }
    }
  }
  return report;
}

std::vector<std::string> check_rule_star_consistency(const Presentation& p) {
  std::vector<std::string> failures;
  for (const Rule& r : p.rules) {
    TermMap l;
    l.emplace(r.lhs, Scalar::one());
    AlgElem lhs_star = AlgElem(&p, l).star();
    AlgElem rhs_star = AlgElem(&p, p.normal_form(r.rhs)).star();
    if (lhs_star != rhs_star)
      failures.push_back("rule '" + p.word_str(r.lhs) + "': star(lhs) = " + lhs_star.str() +
                         " but star(rhs) = " + rhs_star.str());
  }
  return failures;
}

}  // namespace ncg
