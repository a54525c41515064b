#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ncg/scalar.hpp"

namespace ncg {

// Sparse exact linear system over Q(i)(s), used for the small solves that pin
// model data (state values, derivative tables).
class LinearSystem {
 public:
  explicit LinearSystem(int unknowns) : n_(unknowns) {}

  void add_equation(std::map<int, Scalar> coeffs, Scalar rhs);

  // Unique solution, or nullopt when the system is inconsistent or leaves
  // free unknowns.
  std::optional<std::vector<Scalar>> solve() const;

  // Basis of the homogeneous solution space (rhs ignored).
  std::vector<std::vector<Scalar>> nullspace() const;

  int unknowns() const { return n_; }
  size_t equations() const { return rows_.size(); }

 private:
  struct Row {
    std::map<int, Scalar> coeffs;
    Scalar rhs;
  };
  std::vector<Row> reduce(bool with_rhs, bool* consistent) const;
  int n_;
  std::vector<Row> rows_;
};

}  // namespace ncg
