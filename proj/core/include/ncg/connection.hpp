#pragma once

#include <map>

#include "ncg/calculus.hpp"

namespace ncg {

// Left bimodule connection on a free module given by tables on the basis:
// nabla values live in Omega1 (x) E, the braiding sigma exchanges E and
// Omega1. Application extends by the Leibniz rule with the model derivative.
struct Connection {
  ModuleSpace E;  // legs of the underlying module (usually one)
  const Calculus* calc = nullptr;
  std::map<SymTuple, ModElem> nabla;            // per basis tuple
  std::vector<std::vector<ModElem>> sigma;      // [E sym][form sym] -> Omega1 (x) E
  std::vector<std::vector<ModElem>> sigma_inv;  // [form sym][E sym] -> E (x) Omega1

  bool has_sigma() const { return !sigma.empty(); }
  bool has_sigma_inv() const { return !sigma_inv.empty(); }

  ModuleSpace omega_E() const { return ModuleSpace::tensor(calc->form1_space(), E); }
  ModuleSpace E_omega() const { return ModuleSpace::tensor(E, calc->form1_space()); }

  ModElem apply(const ModElem& m) const;

  // sigma on the two legs starting at `leg` (E then Omega1).
  ModElem sigma_apply(const ModElem& m, int leg = 0) const;
  // sigma^{-1} on the two legs starting at `leg` (Omega1 then E).
  ModElem sigma_inv_apply(const ModElem& m, int leg = 0) const;

  // Braiding law, sigma inverses, and right linearity of the tables against
  // the given algebra generators.
  Report validate(const std::vector<AlgElem>& generators) const;
};

// Canonical left connection on the conjugate module.
Connection conjugate_connection(const Connection& c);

// Right connection on conj(E) built from nabla: bar(e) -> bar(f) (x) kappa*
// for nabla e = kappa (x) f; values live in conj(E) (x) Omega1.
ModElem right_conjugate_connection_value(const Connection& c, int symbol);

// nabla_{E (x) F} = nabla_E (x) id + (sigma_E (x) id)(id (x) nabla_F)
Connection tensor_connection(const Connection& ce, const Connection& cf);

// Christoffel matrix of a table connection: nabla e^i = -Gamma^i_k (x) e^k.
std::vector<std::vector<ModElem>> christoffel(const Connection& c);

// R(e^i) = -(d Gamma + Gamma ^ Gamma)_{ik} (x) e^k for a free module.
std::map<SymTuple, ModElem> curvature(const Connection& c);

}  // namespace ncg
