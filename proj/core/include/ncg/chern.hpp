#pragma once

#include "ncg/connection.hpp"

namespace ncg {

// Hermitian inner product E (x) conj(E) -> A on a free module, stored as the
// matrix g^{ij} = <e^i, bar e^j> together with its inverse.
struct HermMetric {
  ModuleSpace E;
  const Calculus* calc = nullptr;
  std::vector<std::vector<AlgElem>> g_up;
  std::vector<std::vector<AlgElem>> g_dn;

  int rank() const { return static_cast<int>(g_up.size()); }

  // <,> extended to elements; ebar carries stored (converted) coefficients.
  AlgElem pair(const ModElem& e, const ModElem& ebar) const;
  // <,>^{-1} in conj(E) (x) E
  ModElem inverse_pairing() const;
  // hermitian symmetry, inverse identities, and both snake identities
  Report validate() const;
};

// Builds the metric from the upper matrix, inverting monomial entries through
// the presentation's [inverse] pairs. Throws singular_metric.
HermMetric make_metric(const ModuleSpace& E, const Calculus* calc,
                       std::vector<std::vector<AlgElem>> g_up);

// The (0,1) half of a connection: the del-bar operator given on the basis
// plus its braiding with (0,1) forms.
struct DbarConnection {
  ModuleSpace E;
  const Calculus* calc = nullptr;
  std::vector<ModElem> dbar;                    // per symbol, in Omega^{0,1} (x) E
  std::vector<std::vector<ModElem>> sigma01;    // [E sym][form sym] -> Omega1 (x) E

  ModElem apply(const ModElem& m) const;  // Leibniz with the (0,1) part of d
  // holomorphic curvature (dbar (x) id - id ^ dbar) dbar on the basis
  ModElem holomorphic_curvature(int symbol) const;
};

// The unique metric-preserving connection whose (0,1) part is the given
// del-bar operator, via the Christoffel matrix identity
//   -Gamma_+ = del g . g^{-1} + g (Gamma_-)^* g^{-1}.
Connection chern_connection_matrix(const DbarConnection& dbar, const HermMetric& g);

// The same connection assembled from the inverse pairing, termwise
//   del_E e = del <e, bar c> (x) g - <e, bar f> kappa^* (x) g
// over <,>^{-1} = bar c (x) g with dbar c = kappa (x) f.
Connection chern_connection_pairing(const DbarConnection& dbar, const HermMetric& g);

// (1,0) braiding of the Chern connection: sigma_E(e (x) eta) = <e, bar k> xi* (x) g
// where xi (x) k = sigma01(c (x) eta*).
std::vector<std::vector<ModElem>> chern_sigma(const DbarConnection& dbar, const HermMetric& g);

// d<e^i, bar e^j> = (id (x) <,>)(nabla e^i (x) bar e^j) + (<,> (x) id)(e^i (x) tilde-nabla bar e^j)
Report check_metric_preservation(const Connection& c, const HermMetric& g);

}  // namespace ncg
