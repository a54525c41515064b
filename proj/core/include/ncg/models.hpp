#pragma once

#include <array>

#include "ncg/chern.hpp"
#include "ncg/spectral.hpp"

namespace ncg {

// A fully wired geometry: algebra, calculus, spinor bundle, connection,
// Clifford action, real structure, grading, state and resolved parameters.
struct Model {
  std::string name;
  std::shared_ptr<const Presentation> alg;
  std::shared_ptr<BasisFamily> spinor_family;
  std::shared_ptr<Calculus> calculus;
  std::shared_ptr<Connection> nabla;
  std::shared_ptr<Connection> nabla_bar;
  std::shared_ptr<StateFunctional> state;
  bool has_spectral = false;
  SpectralData spectral;  // pointers reference the members above
  Scalar alpha, beta, delta, mu;

  // admissible coefficient grade per spinor / model 1-form symbol
  std::vector<std::optional<int>> spinor_coeff_grade;
  std::vector<std::optional<int>> form_coeff_grade;

  std::vector<ModElem> test_spinors(int cutoff) const;
  std::vector<ModElem> test_forms(int max_len) const;
  std::vector<ModElem> fluctuation_forms() const;  // includes an antihermitian one
  SuiteOptions suite_options(int cutoff) const;
};

std::shared_ptr<Model> build_model(const std::string& name,
                                   const std::map<std::string, std::string>& params,
                                   const QContext& ctx);
std::vector<std::string> model_names();

// A holomorphic bundle with a hermitian metric over one of the models.
struct ChernBundle {
  std::string name;
  std::shared_ptr<const Presentation> alg;
  std::shared_ptr<Calculus> calculus;
  std::shared_ptr<BasisFamily> family;
  ModuleSpace E;
  HermMetric metric;
  DbarConnection dbar;
  std::vector<AlgElem> algebra_generators;
  // the expected connection table where a closed form is recorded
  std::map<SymTuple, ModElem> expected_nabla;
};

std::shared_ptr<ChernBundle> build_chern_bundle(const std::string& name, const QContext& ctx);
std::vector<std::string> chern_bundle_names();

// Exact 2x2 matrices over Q(i): the independent arithmetic used to cross
// check the matrix model.
struct Mat2 {
  std::array<std::array<GaussQ, 2>, 2> a{};

  static Mat2 zero() { return {}; }
  static Mat2 unit(int i, int j) {
    Mat2 m;
    m.a[i][j] = GaussQ(1);
    return m;
  }
  static Mat2 identity() {
    Mat2 m;
    m.a[0][0] = m.a[1][1] = GaussQ(1);
    return m;
  }
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 operator*(const Mat2& o) const;
  Mat2 scaled(const GaussQ& c) const;
  Mat2 star() const;  // conjugate transpose
  GaussQ trace() const { return a[0][0] + a[1][1]; }
  bool operator==(const Mat2& o) const { return a == o.a; }
};

Mat2 to_matrix(const AlgElem& x);                       // over the m2 presentation
AlgElem from_matrix(const Presentation* alg, const Mat2& m);

// Verifies the Clifford algebra form of the matrix Dirac operator, the
// grading as a Pauli matrix, and the charge conjugation operator, all with
// exact matrix arithmetic independent of the rewriting engine.
Report m2_clifford_form(const Model& m);

}  // namespace ncg
