#pragma once

#include <memory>

#include "ncg/module.hpp"
#include "ncg/report.hpp"

namespace ncg {

// First order differential calculus with its degree two part: exterior
// derivative, wedge, star, bidegree projections and (when a vertical
// direction exists) the horizontal projection.
class Calculus {
 public:
  const Presentation* alg = nullptr;
  QContext qctx;
  BasisFamily form1;
  BasisFamily form2;

  std::vector<ModElem> d_gen;    // per algebra generator
  std::vector<ModElem> d_form1;  // per 1-form symbol, values in 2-forms

  struct WedgeEntry {
    Scalar coeff;  // zero when the product vanishes
    int sym = -1;
  };
  std::vector<std::vector<WedgeEntry>> wedge_table;           // [i][j] on 1-forms
  std::vector<std::pair<Scalar, int>> star1;                  // star of 1-form symbols
  std::vector<std::pair<Scalar, int>> star2;                  // star of 2-form symbols
  std::vector<bool> horizontal;                               // per 1-form symbol
  std::vector<bool> horizontal2;                              // per 2-form symbol
  bool model_d_is_horizontal = false;

  ModuleSpace form1_space() const { return ModuleSpace::single(alg, &form1); }
  ModuleSpace form2_space() const { return ModuleSpace::single(alg, &form2); }

  // Full exterior derivative on the ambient algebra.
  ModElem d(const AlgElem& x) const;
  // Derivative of the geometric calculus (horizontal part where applicable).
  ModElem d_model(const AlgElem& x) const;
  ModElem horizontal_part(const ModElem& xi) const;
  // d on 1-forms into 2-forms; uses the model projection when configured.
  ModElem d1(const ModElem& xi) const;
  ModElem d1_full(const ModElem& xi) const;

  ModElem wedge11(const ModElem& u, const ModElem& v) const;
  ModElem star_form(const ModElem& xi) const;   // 1- or 2-forms
  ModElem bar_star(const ModElem& xi) const { return to_bar(star_form(xi)); }
  ModElem pq_project(const ModElem& xi, int p, int q) const;

  // Coefficient of a named basis symbol.
  AlgElem component(const ModElem& xi, const std::string& sym) const;

  ModElem zero1() const { return ModElem::zero(form1_space()); }
  ModElem basis1(const std::string& sym) const;
};

// Builders for the three builtin calculi; the presentation must match.
// Heap allocated: elements stored in the tables point at the basis families
// inside the object, so its address must be stable.
std::shared_ptr<Calculus> make_su2_calculus(const Presentation* alg);
std::shared_ptr<Calculus> make_disk_calculus(const Presentation* alg);  // plain or localized
std::shared_ptr<Calculus> make_m2_calculus(const Presentation* alg);

struct DConsistencyOptions {
  int word_len = 3;
  int pair_count = 10;  // target count for the mixed-grade derivative identity
};

// d^2 = 0, Leibniz, star compatibility, unit relations, and for the su2
// calculus the mixed derivative identity used by the hermiticity argument.
Report check_d_consistency(const Calculus& calc, const DConsistencyOptions& opt = {});

}  // namespace ncg
