#pragma once

#include "ncg/connection.hpp"
#include "ncg/state.hpp"

namespace ncg {

// Everything a spectral triple check needs: the Clifford action, the real
// structure as a module map into the conjugate, the grading, the inner
// product data and the resolved parameters.
struct SpectralData {
  const Presentation* alg = nullptr;
  const Calculus* calc = nullptr;
  ModuleSpace S;
  const Connection* nabla = nullptr;      // with braiding tables
  const Connection* nabla_bar = nullptr;  // canonical connection on conj(S)

  std::vector<std::vector<ModElem>> clifford;  // [form sym][spinor sym] -> S
  std::vector<ModElem> j_table;                // per spinor sym -> conj(S)
  std::vector<int> gamma_sign;                 // per spinor sym
  std::vector<std::vector<AlgElem>> pairing;   // <bar s_i, s_j> in A
  const StateFunctional* state = nullptr;

  Scalar alpha, beta, delta, mu;
  int dim_n = 2;
  int eps = -1, eps_prime = 1, eps_dprime = -1;

  std::vector<AlgElem> algebra_generators;              // quantifier for a, b
  std::vector<int> twisted_isometry_exponent;           // per spinor symbol
  bool strict_isometry = false;                         // holds exactly (trace case)
  bool check_sufficient_conditions = false;             // tensor-product route

  // operators
  ModElem clifford_apply(const ModElem& omega_s) const;      // Omega1 (x) S -> S
  ModElem clifford_on(const ModElem& xi, const ModElem& phi) const;
  ModElem dirac(const ModElem& phi) const;
  ModElem J(const ModElem& phi) const;
  ModElem J_inv(const ModElem& phi) const;
  ModElem j_map(const ModElem& phi) const;  // linear map into conj(S)
  ModElem gamma(const ModElem& phi) const;
  ModElem right_action(const ModElem& phi, const AlgElem& a) const;  // J a* J^{-1}

  AlgElem pair(const ModElem& phi_bar, const ModElem& psi) const;  // conj(S) (x) S -> A
  Scalar inner(const ModElem& phi, const ModElem& psi) const;      // state of pair
  bool inner_defined(const ModElem& phi, const ModElem& psi) const;
  Scalar bilinear(const ModElem& phi, const ModElem& psi) const;   // state((j phi, psi))

  // inner fluctuation by a 1-form, both of its algebraic forms
  ModElem fluctuation(const ModElem& kappa, const ModElem& phi) const;
  ModElem fluctuation_via_j(const ModElem& kappa, const ModElem& phi) const;
};

struct SuiteOptions {
  int cutoff = 4;
  std::vector<ModElem> test_spinors;
  std::vector<ModElem> test_forms;  // elements of the model's 1-forms
  // hermiticity quantifier; when empty every spinor pair is used
  std::vector<std::pair<ModElem, ModElem>> hermiticity_pairs;
  std::vector<std::pair<ModElem, ModElem>> hermiticity_boundary;  // expected failures
};

// All algebraic spectral triple conditions plus hermiticity, isometry or its
// twisted replacement, the twisted trace property and the sufficient
// conditions for hermiticity where declared.
Report axiom_suite(const SpectralData& data, const SuiteOptions& opt);

// Agreement of the two fluctuation formulas plus the antihermitian special
// form, over the given connection 1-forms.
Report fluctuation_report(const SpectralData& data, const std::vector<ModElem>& kappas,
                          const std::vector<ModElem>& spinors);

}  // namespace ncg
