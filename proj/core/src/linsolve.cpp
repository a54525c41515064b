#include "ncg/linsolve.hpp"

#include <algorithm>

#include "ncg/error.hpp"

namespace ncg {

void LinearSystem::add_equation(std::map<int, Scalar> coeffs, Scalar rhs) {
  for (auto it = coeffs.begin(); it != coeffs.end();)
    it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
  if (coeffs.empty() && rhs.is_zero()) return;
  rows_.push_back(Row{std::move(coeffs), std::move(rhs)});
}

std::vector<LinearSystem::Row> LinearSystem::reduce(bool with_rhs, bool* consistent) const {
  std::vector<Row> rows = rows_;
  if (!with_rhs)
    for (auto& r : rows) r.rhs = Scalar::zero();
  std::vector<Row> pivots;
  *consistent = true;
  for (Row row : rows) {
    for (const Row& p : pivots) {
      int pc = p.coeffs.begin()->first;
      auto it = row.coeffs.find(pc);
      if (it == row.coeffs.end()) continue;
      Scalar f = it->second / p.coeffs.begin()->second;
      for (const auto& [c, v] : p.coeffs) {
        auto jt = row.coeffs.find(c);
        Scalar nv = (jt == row.coeffs.end() ? Scalar::zero() : jt->second) - f * v;
        if (nv.is_zero()) {
          if (jt != row.coeffs.end()) row.coeffs.erase(jt);
        } else {
          row.coeffs[c] = nv;
        }
      }
      row.rhs = row.rhs - f * p.rhs;
    }
    if (row.coeffs.empty()) {
      if (!row.rhs.is_zero()) *consistent = false;
      continue;
    }
    pivots.push_back(std::move(row));
    std::sort(pivots.begin(), pivots.end(),
              [](const Row& a, const Row& b) {
                return a.coeffs.begin()->first < b.coeffs.begin()->first;
              });
  }
  // back substitution
  for (size_t i = pivots.size(); i-- > 0;) {
    const int pc = pivots[i].coeffs.begin()->first;
    const Scalar pv = pivots[i].coeffs.begin()->second;
    for (size_t j = 0; j < i; ++j) {
      auto it = pivots[j].coeffs.find(pc);
      if (it == pivots[j].coeffs.end()) continue;
      Scalar f = it->second / pv;
      for (const auto& [c, v] : pivots[i].coeffs) {
        auto jt = pivots[j].coeffs.find(c);
        Scalar nv = (jt == pivots[j].coeffs.end() ? Scalar::zero() : jt->second) - f * v;
        if (nv.is_zero()) {
          if (jt != pivots[j].coeffs.end()) pivots[j].coeffs.erase(jt);
        } else {
          pivots[j].coeffs[c] = nv;
        }
      }
      pivots[j].rhs = pivots[j].rhs - f * pivots[i].rhs;
    }
  }
  return pivots;
}

std::optional<std::vector<Scalar>> LinearSystem::solve() const {
  bool consistent = true;
  auto pivots = reduce(true, &consistent);
  if (!consistent || static_cast<int>(pivots.size()) != n_) return std::nullopt;
  std::vector<Scalar> x(n_, Scalar::zero());
  for (const Row& p : pivots) {
    if (p.coeffs.size() != 1) return std::nullopt;
    x[p.coeffs.begin()->first] = p.rhs / p.coeffs.begin()->second;
  }
  return x;
}

std::vector<std::vector<Scalar>> LinearSystem::nullspace() const {
  bool consistent = true;
  auto pivots = reduce(false, &consistent);
  std::vector<bool> is_pivot(n_, false);
  for (const Row& p : pivots) is_pivot[p.coeffs.begin()->first] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < n_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(n_, Scalar::zero());
    v[free] = Scalar::one();
    for (const Row& p : pivots) {
      auto it = p.coeffs.find(free);
      if (it != p.coeffs.end())
        v[p.coeffs.begin()->first] = -(it->second / p.coeffs.begin()->second);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ncg
