#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncg/alg.hpp"

namespace ncg {

// Basis symbol of a twisted free bimodule. The right action is the graded
// twist  e . x = q^{twist |x|} x . e  for homogeneous x.
struct BasisSymbol {
  std::string name;
  int grade = 0;
  int twist = 0;
  // bidegree for form symbols; unset for vertical or non-form symbols
  std::optional<std::pair<int, int>> bidegree;
};

struct BasisFamily {
  std::string name;
  std::vector<BasisSymbol> symbols;
  int index_of(const std::string& sym) const;
};

struct Leg {
  const BasisFamily* fam;
  bool bar = false;
  bool operator==(const Leg& o) const { return fam == o.fam && bar == o.bar; }
};

// Tensor word of basis families over a fixed algebra; elements carry all
// coefficients on the left, collected through the twists.
struct ModuleSpace {
  const Presentation* alg = nullptr;
  std::vector<Leg> legs;
  bool whole_bar = false;  // conjugate of the whole tensor word

  bool operator==(const ModuleSpace& o) const {
    return alg == o.alg && legs == o.legs && whole_bar == o.whole_bar;
  }
  int leg_count() const { return static_cast<int>(legs.size()); }
  const BasisSymbol& symbol(int leg, int idx) const { return legs[leg].fam->symbols[idx]; }

  int tuple_twist(const std::string& tuple) const;
  int tuple_grade(const std::string& tuple) const;  // bar flips the sign
  std::string tuple_str(const std::string& tuple) const;

  static ModuleSpace single(const Presentation* alg, const BasisFamily* fam, bool bar = false);
  static ModuleSpace tensor(const ModuleSpace& a, const ModuleSpace& b);
};

// Tuple of per-leg symbol indices, stored as bytes.
using SymTuple = std::string;
using ModTermMap = std::map<SymTuple, AlgElem>;

class ModElem {
 public:
  ModElem() = default;
  ModElem(ModuleSpace space, ModTermMap terms) : space_(std::move(space)), terms_(std::move(terms)) {
    prune();
  }
  static ModElem zero(ModuleSpace space) { return ModElem(std::move(space), {}); }
  static ModElem basis(const ModuleSpace& space, const SymTuple& t);
  static ModElem basis(const ModuleSpace& space, std::initializer_list<int> idx);

  const ModuleSpace& space() const { return space_; }
  const ModTermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ModElem operator-() const;
  ModElem operator+(const ModElem& o) const;
  ModElem operator-(const ModElem& o) const;
  ModElem& operator+=(const ModElem& o) { return *this = *this + o; }
  ModElem& operator-=(const ModElem& o) { return *this = *this - o; }
  bool operator==(const ModElem& o) const { return terms_ == o.terms_; }
  bool operator!=(const ModElem& o) const { return !(*this == o); }

  ModElem scaled(const Scalar& c) const;
  AlgElem coefficient(const SymTuple& t) const;

  // module actions
  ModElem left_mul(const AlgElem& a) const;
  ModElem right_mul(const AlgElem& a) const;

  // Is every term's total grade equal to g?
  bool is_homogeneous_of_grade(int g) const;

  std::string str() const;

 private:
  void prune();
  ModuleSpace space_;
  ModTermMap terms_;
};

// coefficients of n move left through m's twists
ModElem tensor(const ModElem& m, const ModElem& n);

// Antilinear identification E -> conj(E). Single-leg spaces toggle the leg
// bar; multi-leg spaces get the whole-word bar resolved later by upsilon.
ModElem to_bar(const ModElem& m);
ModElem from_bar(const ModElem& m);

// conj(E (x) F) -> conj(F) (x) conj(E), order reversing, identity coefficients
ModElem upsilon(const ModElem& m);
ModElem upsilon_inv(const ModElem& m);

// A left-module map given on basis symbols of one leg; values live in a
// replacement space whose legs substitute that leg.
struct LegMap {
  const BasisFamily* source = nullptr;
  bool source_bar = false;
  ModuleSpace target;                  // legs that replace the source leg
  std::vector<ModElem> values;         // per source symbol
};

ModElem apply_leg_map(const LegMap& map, const ModElem& m, int leg);

// A left-module map given on pairs of adjacent basis symbols; table[i][j] is
// the value on (symbol i, symbol j) and value_space replaces the two legs.
ModElem apply_pair_map(const std::vector<std::vector<ModElem>>& table, const ModElem& m,
                       int leg, const ModuleSpace& value_space);

// Verifies T(b . g) == T(b) . g for every basis symbol and generator.
// Throws not_right_linear when the declared bimodule map fails.
void check_right_linear(const LegMap& map, const std::vector<AlgElem>& generators);

}  // namespace ncg
