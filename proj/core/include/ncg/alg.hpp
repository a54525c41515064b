#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ncg/scalar.hpp"

namespace ncg {

using Gen = uint8_t;
// A monomial word over generator indices; empty word is the unit.
using Word = std::string;

struct Generator {
  std::string name;
  int grade = 0;
};

// Degree-lexicographic order on words: shorter first, then by generator index.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using TermMap = std::map<Word, Scalar, WordOrder>;

struct Rule {
  Word lhs;
  TermMap rhs;
};

class AlgElem;

// A finitely presented Z-graded *-algebra over Scalar with a rewriting system
// assumed (and separately checked) to be terminating and locally confluent.
class Presentation {
 public:
  std::string name;
  QContext qctx;  // symbolic q or a fixed rational point, shared by all ops
  std::vector<Generator> generators;
  std::vector<Rule> rules;
  std::vector<TermMap> star_table;     // per generator
  std::vector<int> inverse_partner;    // generator index or -1
  long rewrite_budget = 1000000;

  int gen_index(const std::string& name) const;  // -1 if absent
  int word_grade(const Word& w) const;

  // Rewrites every term to its unique irreducible form.
  // Throws non_terminating when the budget is exceeded.
  TermMap normal_form(TermMap terms) const;
  bool is_normal_word(const Word& w) const;

  // Grade homogeneity of every rule plus star-table involutivity.
  // Throws grade_mismatch / star_inconsistent.
  void validate() const;

  AlgElem unit() const;
  AlgElem gen(int idx) const;
  AlgElem gen(const std::string& name) const;
  AlgElem elem(const TermMap& t) const;

  // All irreducible words of length <= n, in word order.
  std::vector<Word> normal_words(int max_len) const;

  std::string word_str(const Word& w) const;
};

// Normal-form element: map from irreducible monomial to coefficient.
class AlgElem {
 public:
  AlgElem() : p_(nullptr) {}
  AlgElem(const Presentation* p, TermMap t) : p_(p), terms_(std::move(t)) {}

  const Presentation* pres() const { return p_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  AlgElem operator-() const;
  AlgElem operator+(const AlgElem& o) const;
  AlgElem operator-(const AlgElem& o) const;
  AlgElem operator*(const AlgElem& o) const;
  AlgElem operator*(const Scalar& c) const;
  AlgElem& operator+=(const AlgElem& o) { return *this = *this + o; }
  AlgElem& operator-=(const AlgElem& o) { return *this = *this - o; }

  bool operator==(const AlgElem& o) const { return terms_ == o.terms_; }
  bool operator!=(const AlgElem& o) const { return !(*this == o); }

  AlgElem star() const;
  AlgElem pow(int n) const;

  // Decomposition by total generator grade; keys are the occurring grades.
  std::map<int, AlgElem> grade_components() const;
  bool is_homogeneous() const;
  int grade() const;  // grade of a homogeneous element (0 for zero)

  // Monomial-wise rescaling m -> q^{2k|m|} m used by twisted traces.
  AlgElem grade_scaled(const Scalar& base) const;  // m -> base^{|m|} m

  Scalar coefficient(const Word& w) const;
  std::string str() const;

 private:
  const Presentation* p_;
  TermMap terms_;
};

inline AlgElem operator*(const Scalar& c, const AlgElem& x) { return x * c; }

}  // namespace ncg
