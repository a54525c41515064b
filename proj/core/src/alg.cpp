#include "ncg/alg.hpp"

#include <algorithm>

#include "ncg/error.hpp"

namespace ncg {

int Presentation::gen_index(const std::string& n) const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == n) return static_cast<int>(i);
  return -1;
}

int Presentation::word_grade(const Word& w) const {
  int g = 0;
  for (unsigned char c : w) g += generators[c].grade;
  return g;
}

static void add_term(TermMap& m, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = m.find(w);
  if (it == m.end()) {
    m.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

TermMap Presentation::normal_form(TermMap terms) const {
  TermMap out;
  std::vector<std::pair<Word, Scalar>> work(terms.begin(), terms.end());
  long budget = rewrite_budget;
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    if (c.is_zero()) continue;
    size_t pos = Word::npos;
    const Rule* hit = nullptr;
    for (size_t i = 0; i < w.size() && !hit; ++i) {
      for (const Rule& r : rules) {
        if (r.lhs.size() <= w.size() - i && w.compare(i, r.lhs.size(), r.lhs) == 0) {
          pos = i;
          hit = &r;
          break;
        }
      }
    }
    if (!hit) {
      add_term(out, w, c);
      continue;
    }
    if (--budget < 0)
      fail(errc::non_terminating, "rewrite budget exceeded in presentation '" + name + "'");
    Word prefix = w.substr(0, pos);
    Word suffix = w.substr(pos + hit->lhs.size());
    for (const auto& [rw, rc] : hit->rhs) work.emplace_back(prefix + rw + suffix, c * rc);
  }
  return out;
}

bool Presentation::is_normal_word(const Word& w) const {
  for (size_t i = 0; i < w.size(); ++i)
    for (const Rule& r : rules)
      if (r.lhs.size() <= w.size() - i && w.compare(i, r.lhs.size(), r.lhs) == 0) return false;
  return true;
}

void Presentation::validate() const {
  for (const Rule& r : rules) {
    int g = word_grade(r.lhs);
    for (const auto& [w, c] : r.rhs)
      if (word_grade(w) != g)
        fail(errc::grade_mismatch, "rule '" + word_str(r.lhs) + "' mixes grades " +
                                       std::to_string(g) + " and " +
                                       std::to_string(word_grade(w)));
  }
  if (star_table.size() != generators.size())
    fail(errc::star_inconsistent, "star table incomplete");
  for (size_t g = 0; g < generators.size(); ++g) {
    // star grade: must negate
    for (const auto& [w, c] : star_table[g])
      if (word_grade(w) != -generators[g].grade)
        fail(errc::star_inconsistent, "star of " + generators[g].name + " has wrong grade");
    // involution on generators
    AlgElem twice = gen(static_cast<int>(g)).star().star();
    if (twice != gen(static_cast<int>(g)))
      fail(errc::star_inconsistent, "star not involutive on " + generators[g].name);
  }
}

AlgElem Presentation::unit() const {
  TermMap t;
  t.emplace(Word(), Scalar::one());
  return AlgElem(this, std::move(t));
}

AlgElem Presentation::gen(int idx) const {
  TermMap t;
  t.emplace(Word(1, static_cast<char>(idx)), Scalar::one());
  return AlgElem(this, std::move(t));
}

AlgElem Presentation::gen(const std::string& n) const {
  int idx = gen_index(n);
  if (idx < 0) fail(errc::unknown_generator, "no generator named '" + n + "'");
  return gen(idx);
}

AlgElem Presentation::elem(const TermMap& t) const { return AlgElem(this, normal_form(t)); }

std::vector<Word> Presentation::normal_words(int max_len) const {
  std::vector<Word> out{Word()};
  std::vector<Word> frontier{Word()};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (size_t g = 0; g < generators.size(); ++g) {
        Word ext = w + static_cast<char>(g);
        if (is_normal_word(ext)) next.push_back(ext);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), WordOrder{});
  return out;
}

std::string Presentation::word_str(const Word& w) const {
  std::string out;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += ' ';
    out += generators[static_cast<unsigned char>(w[i])].name;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

AlgElem AlgElem::operator-() const {
  TermMap t = terms_;
  for (auto& [w, c] : t) c = -c;
  return AlgElem(p_, std::move(t));
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
  const Presentation* p = p_ ? p_ : o.p_;
  TermMap t = terms_;
  for (const auto& [w, c] : o.terms_) add_term(t, w, c);
  return AlgElem(p, std::move(t));
}

AlgElem AlgElem::operator-(const AlgElem& o) const { return *this + (-o); }

AlgElem AlgElem::operator*(const AlgElem& o) const {
  const Presentation* p = p_ ? p_ : o.p_;
  TermMap prod;
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) add_term(prod, w1 + w2, c1 * c2);
  return AlgElem(p, p ? p->normal_form(std::move(prod)) : std::move(prod));
}

AlgElem AlgElem::operator*(const Scalar& c) const {
  if (c.is_zero()) return AlgElem(p_, {});
  TermMap t = terms_;
  for (auto& [w, v] : t) v *= c;
  return AlgElem(p_, std::move(t));
}

AlgElem AlgElem::star() const {
  if (!p_) {
    TermMap t = terms_;
    for (auto& [w, c] : t) c = c.star();
    return AlgElem(nullptr, std::move(t));
  }
  AlgElem out(p_, {});
  for (const auto& [w, c] : terms_) {
    AlgElem factor = p_->unit() * c.star();
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      factor = factor * AlgElem(p_, p_->star_table[static_cast<unsigned char>(*it)]);
    out += factor;
  }
  return out;
}

AlgElem AlgElem::pow(int n) const {
  if (!p_) fail(errc::internal, "pow on detached element");
  if (n < 0) fail(errc::internal, "negative algebra power");
  AlgElem r = p_->unit();
  for (int k = 0; k < n; ++k) r = r * (*this);
  return r;
}

std::map<int, AlgElem> AlgElem::grade_components() const {
  std::map<int, AlgElem> out;
  for (const auto& [w, c] : terms_) {
    int g = p_->word_grade(w);
    auto it = out.find(g);
    if (it == out.end()) it = out.emplace(g, AlgElem(p_, {})).first;
    TermMap t = it->second.terms();
    add_term(t, w, c);
    it->second = AlgElem(p_, std::move(t));
  }
  return out;
}

bool AlgElem::is_homogeneous() const {
  if (terms_.empty()) return true;
  int g = p_->word_grade(terms_.begin()->first);
  for (const auto& [w, c] : terms_)
    if (p_->word_grade(w) != g) return false;
  return true;
}

int AlgElem::grade() const {
  if (terms_.empty()) return 0;
  if (!is_homogeneous()) fail(errc::internal, "grade of inhomogeneous element");
  return p_->word_grade(terms_.begin()->first);
}

AlgElem AlgElem::grade_scaled(const Scalar& base) const {
  TermMap t;
  for (const auto& [w, c] : terms_) t.emplace(w, c * base.pow(p_->word_grade(w)));
  return AlgElem(p_, std::move(t));
}

Scalar AlgElem::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar::zero() : it->second;
}

std::string AlgElem::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = c.str();
    bool sum = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    bool neg = !sum && !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (sum || cs.find('/') != std::string::npos) cs = "(" + cs + ")";
    std::string ws = p_ ? p_->word_str(w) : std::string("?");
    std::string term;
    if (w.empty())
      term = cs;
    else if (cs == "1")
      term = ws;
    else
      term = cs + " " + ws;
    if (first) {
      out = (neg ? "-" : "") + term;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

}  // namespace ncg
