#include "ncg/state.hpp"

#include <algorithm>

#include "ncg/error.hpp"
#include "ncg/linsolve.hpp"

namespace ncg {

namespace {

int count_letter(const Word& w, int gen) {
  return static_cast<int>(std::count(w.begin(), w.end(), static_cast<char>(gen)));
}

}  // namespace

StateFunctional StateFunctional::matrix_trace(const Presentation* alg) {
  StateFunctional s;
  s.kind_ = Kind::matrix_trace;
  s.alg_ = alg;
  s.gen_e12_ = alg->gen_index("E12");
  s.gen_e21_ = alg->gen_index("E21");
  return s;
}

StateFunctional StateFunctional::disk_integral(const Presentation* alg) {
  StateFunctional s;
  s.kind_ = Kind::partial_integral;
  s.alg_ = alg;
  s.gen_w_ = alg->gen_index("w");
  s.gen_z_ = alg->gen_index("z");
  s.gen_zb_ = alg->gen_index("zb");
  return s;
}

StateFunctional StateFunctional::haar(const Presentation* alg, int max_len) {
  StateFunctional s;
  s.kind_ = Kind::haar;
  s.alg_ = alg;
  s.haar_len_ = max_len;
  s.gen_a_ = alg->gen_index("a");
  s.gen_d_ = alg->gen_index("d");

  // unknowns: degree zero normal words up to max_len
  std::vector<Word> unknowns;
  std::map<Word, int> index;
  for (const Word& w : alg->normal_words(max_len)) {
    if (alg->word_grade(w) != 0) continue;
    index.emplace(w, static_cast<int>(unknowns.size()));
    unknowns.push_back(w);
  }

  auto row_of = [&](const TermMap& t, bool* in_range) -> std::map<int, Scalar> {
    std::map<int, Scalar> row;
    *in_range = true;
    for (const auto& [w, c] : t) {
      if (alg->word_grade(w) != 0) continue;  // those values are zero
      auto it = index.find(w);
      if (it == index.end()) {
        *in_range = false;
        return {};
      }
      row[it->second] = row.count(it->second) ? row[it->second] + c : c;
    }
    return row;
  };

  auto twist_of = [&](const Word& w) {
    int e = 2 * (count_letter(w, s.gen_d_) - count_letter(w, s.gen_a_));
    return alg->qctx.s_pow(2 * e);
  };

  LinearSystem sys(static_cast<int>(unknowns.size()));
  // normalization at the unit
  sys.add_equation({{index.at(Word()), Scalar::one()}}, Scalar::one());
  // twisted trace rows h(x y) = h(twist(y) x) over normal words with
  // balancing degrees; y ranges over short words
  std::vector<Word> ys;
  for (const Word& w : alg->normal_words(2))
    if (!w.empty()) ys.push_back(w);
  for (const Word& x : alg->normal_words(max_len - 1)) {
    for (const Word& y : ys) {
      if (x.size() + y.size() > static_cast<size_t>(max_len)) continue;
      if (alg->word_grade(x) + alg->word_grade(y) != 0) continue;
      TermMap xy = alg->normal_form({{x + y, Scalar::one()}});
      TermMap yx = alg->normal_form({{y + x, twist_of(y)}});
      bool ok1 = true, ok2 = true;
      auto r1 = row_of(xy, &ok1), r2 = row_of(yx, &ok2);
      if (!ok1 || !ok2) continue;
      for (const auto& [k, v] : r2)
        r1[k] = r1.count(k) ? r1[k] - v : -v;
      sys.add_equation(std::move(r1), Scalar::zero());
    }
  }
  auto solution = sys.solve();
  if (!solution)
    fail(errc::internal, "state solve: twisted trace system does not pin the values");
  for (size_t i = 0; i < unknowns.size(); ++i)
    if (!(*solution)[i].is_zero()) s.values_.emplace(unknowns[i], (*solution)[i]);
  return s;
}

bool StateFunctional::defined_on(const AlgElem& x) const {
  if (kind_ != Kind::partial_integral) return true;
  for (const auto& [w, c] : x.terms()) {
    if (alg_->word_grade(w) != 0) continue;
    if (w.size() < 2) return false;  // 1 and w lie outside the domain
    for (char ch : w)
      if (static_cast<unsigned char>(ch) != gen_w_) return false;  // inverse powers
  }
  return true;
}

Scalar StateFunctional::apply(const AlgElem& x) const {
  Scalar out = Scalar::zero();
  switch (kind_) {
    case Kind::matrix_trace:
      for (const auto& [w, c] : x.terms()) {
        if (w.empty())
          out += c * Scalar::rational(2);
        else if (w.size() == 2)
          out += c;  // E12 E21 = E11 has unit trace
      }
      return out;
    case Kind::haar:
      for (const auto& [w, c] : x.terms()) {
        if (alg_->word_grade(w) != 0) continue;
        auto it = values_.find(w);
        if (it == values_.end()) {
          if (static_cast<int>(w.size()) > haar_len_)
            fail(errc::internal, "state cache bound exceeded at word length " +
                                     std::to_string(w.size()));
          continue;  // solved to zero
        }
        out += c * it->second;
      }
      return out;
    case Kind::partial_integral:
      for (const auto& [w, c] : x.terms()) {
        if (alg_->word_grade(w) != 0) continue;
        int n = static_cast<int>(w.size());
        bool pure_w = true;
        for (char ch : w)
          if (static_cast<unsigned char>(ch) != gen_w_) pure_w = false;
        if (n < 2 || !pure_w)
          fail(errc::integral_undefined,
               "monomial " + alg_->word_str(w) + " lies outside the integral's domain");
        // integral of w^{m+1} is 1/[m]_{q^{-2}}
        out += c * alg_->qctx.qint(n - 1, -2).inv();
      }
      return out;
  }
  return out;
}

AlgElem StateFunctional::twist(const AlgElem& x) const {
  switch (kind_) {
    case Kind::matrix_trace:
      return x;
    case Kind::haar: {
      TermMap t;
      for (const auto& [w, c] : x.terms()) {
        int e = 2 * (count_letter(w, gen_d_) - count_letter(w, gen_a_));
        t.emplace(w, c * alg_->qctx.s_pow(2 * e));
      }
      return AlgElem(alg_, std::move(t));
    }
    case Kind::partial_integral:
      return x.grade_scaled(alg_->qctx.q(2));
  }
  return x;
}

AlgElem StateFunctional::twist_inv(const AlgElem& x) const {
  switch (kind_) {
    case Kind::matrix_trace:
      return x;
    case Kind::haar: {
      TermMap t;
      for (const auto& [w, c] : x.terms()) {
        int e = 2 * (count_letter(w, gen_a_) - count_letter(w, gen_d_));
        t.emplace(w, c * alg_->qctx.s_pow(2 * e));
      }
      return AlgElem(alg_, std::move(t));
    }
    case Kind::partial_integral:
      return x.grade_scaled(alg_->qctx.q(-2));
  }
  return x;
}

}  // namespace ncg
