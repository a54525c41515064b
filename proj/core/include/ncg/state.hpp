#pragma once

#include <map>

#include "ncg/alg.hpp"

namespace ncg {

// Linear functional on a presented algebra together with the automorphism
// that makes it a twisted trace.
class StateFunctional {
 public:
  enum class Kind { matrix_trace, haar, partial_integral };

  Kind kind() const { return kind_; }
  const Presentation* alg() const { return alg_; }

  // Throws integral_undefined outside the domain (partial integrals).
  Scalar apply(const AlgElem& x) const;
  bool defined_on(const AlgElem& x) const;

  AlgElem twist(const AlgElem& x) const;      // the automorphism
  AlgElem twist_inv(const AlgElem& x) const;

  // Trace on the matrix algebra presentation {1, E12, E21, E12 E21}.
  static StateFunctional matrix_trace(const Presentation* alg);

  // Invariant state on the quantized SU(2) algebra: vanishes off degree zero,
  // normalized at 1, remaining values solved from the twisted trace property
  // with the degree automorphism m -> q^{2(#d - #a)} m, then cached up to the
  // given word length.
  static StateFunctional haar(const Presentation* alg, int max_len);

  // Partial integral on the disk: nonzero-degree monomials integrate to zero,
  // powers of the radial element from w^2 upwards have the inverse q-integer
  // values, 1 and w are outside the domain.
  static StateFunctional disk_integral(const Presentation* alg);

 private:
  Kind kind_;
  const Presentation* alg_ = nullptr;
  std::map<Word, Scalar> values_;  // haar cache
  int haar_len_ = 0;
  int gen_a_ = -1, gen_d_ = -1, gen_w_ = -1, gen_z_ = -1, gen_zb_ = -1;
  int gen_e12_ = -1, gen_e21_ = -1;
};

}  // namespace ncg
