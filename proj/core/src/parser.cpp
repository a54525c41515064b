#include "ncg/parser.hpp"

#include <cctype>
#include <sstream>

#include "ncg/error.hpp"

namespace ncg {

namespace {

enum class Tok { num, ident, plus, minus, times, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  mpq_class num;
  std::string text;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= s_.size()) {
      tok_.kind = Tok::end;
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      std::string digits = s_.substr(i_, j - i_);
      // rational literal p/r when a digit immediately follows the slash
      if (j < s_.size() && s_[j] == '/' && j + 1 < s_.size() &&
          std::isdigit(static_cast<unsigned char>(s_[j + 1]))) {
        size_t k = j + 1;
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        std::string den = s_.substr(j + 1, k - j - 1);
        tok_.kind = Tok::num;
        tok_.num = mpq_class(digits + "/" + den);
        tok_.num.canonicalize();
        i_ = k;
        return;
      }
      tok_.kind = Tok::num;
      tok_.num = mpq_class(digits);
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      tok_.kind = Tok::ident;
      tok_.text = s_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_.kind = Tok::plus; return;
      case '-': tok_.kind = Tok::minus; return;
      case '*': tok_.kind = Tok::times; return;
      case '/': tok_.kind = Tok::slash; return;
      case '^': tok_.kind = Tok::caret; return;
      case '(': tok_.kind = Tok::lparen; return;
      case ')': tok_.kind = Tok::rparen; return;
      default:
        fail(errc::syntax_error,
             "unexpected character '" + std::string(1, c) + "' at position " +
                 std::to_string(tok_.pos));
    }
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_;
};

[[noreturn]] void expected(const std::string& what, const Token& got) {
  fail(errc::syntax_error, "expected " + what + " at position " + std::to_string(got.pos));
}

// Parses algebra expressions; with p == nullptr only scalars are accepted.
class ExprParser {
 public:
  ExprParser(const std::string& text, const Presentation* p, const ParseOptions& opt)
      : lex_(text), p_(p), opt_(opt) {}

  AlgElem parse() {
    AlgElem v = expr();
    if (lex_.peek().kind != Tok::end) expected("end of expression", lex_.peek());
    return v;
  }

 private:
  AlgElem unit_scaled(const Scalar& c) {
    TermMap t;
    if (!c.is_zero()) t.emplace(Word(), c);
    return AlgElem(p_, std::move(t));
  }

  bool scalar_only(const AlgElem& x) {
    return x.terms().empty() || (x.terms().size() == 1 && x.terms().begin()->first.empty());
  }

  Scalar as_scalar(const AlgElem& x, const Token& at) {
    if (x.terms().empty()) return Scalar::zero();
    if (!scalar_only(x)) expected("scalar value", at);
    return x.terms().begin()->second;
  }

  AlgElem expr() {
    bool neg = false;
    if (lex_.peek().kind == Tok::minus) {
      lex_.take();
      neg = true;
    }
    AlgElem v = term();
    if (neg) v = -v;
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      bool minus = lex_.take().kind == Tok::minus;
      AlgElem t = term();
      v = minus ? v - t : v + t;
    }
    return v;
  }

  static bool starts_factor(const Token& t) {
    return t.kind == Tok::num || t.kind == Tok::ident || t.kind == Tok::lparen;
  }

  AlgElem term() {
    AlgElem v = factor();
    for (;;) {
      if (lex_.peek().kind == Tok::times) {
        lex_.take();
        v = v * factor();
      } else if (lex_.peek().kind == Tok::slash) {
        Token at = lex_.take();
        AlgElem d = factor();
        Scalar ds = as_scalar(d, at);
        if (ds.is_zero()) fail(errc::division_by_zero, "division by zero in expression");
        v = v * ds.inv();
      } else if (starts_factor(lex_.peek())) {
        v = v * factor();
      } else {
        return v;
      }
    }
  }

  // exponent after '^': integer, or (p/2) for q-powers; returns doubled value
  // (exponent in s) plus whether it was fractional.
  std::pair<long, bool> exponent() {
    bool neg = false;
    bool parens = false;
    if (lex_.peek().kind == Tok::lparen) {
      lex_.take();
      parens = true;
    }
    if (lex_.peek().kind == Tok::minus) {
      lex_.take();
      neg = true;
    }
    Token t = lex_.take();
    if (t.kind != Tok::num) expected("exponent", t);
    mpq_class v = t.num;
    if (parens) {
      Token r = lex_.take();
      if (r.kind != Tok::rparen) expected("')'", r);
    }
    if (neg) v = -v;
    mpq_class doubled = v * 2;
    if (doubled.get_den() != 1)
      fail(errc::syntax_error, "exponent must be an integer or half integer");
    long d = static_cast<long>(doubled.get_num().get_si());
    bool fractional = v.get_den() != 1;
    return {d, fractional};
  }

  AlgElem factor() {
    AlgElem base = primary_q_aware();
    return base;
  }

  Scalar q_value(long s_exp) {
    if (opt_.s0) {
      mpq_class p(1);
      mpq_class b = s_exp >= 0 ? *opt_.s0 : mpq_class(1) / *opt_.s0;
      for (long j = 0; j < (s_exp >= 0 ? s_exp : -s_exp); ++j) p *= b;
      return Scalar::rational(p);
    }
    return Scalar::s_pow(static_cast<int>(s_exp));
  }

  AlgElem primary_q_aware() {
    Token t = lex_.peek();
    if (t.kind == Tok::num) {
      lex_.take();
      Scalar c = Scalar::rational(t.num);
      if (lex_.peek().kind == Tok::caret) {
        lex_.take();
        auto [d, frac] = exponent();
        if (frac) fail(errc::syntax_error, "fractional exponent on a rational literal");
        return unit_scaled(c.pow(static_cast<int>(d / 2)));
      }
      return unit_scaled(c);
    }
    if (t.kind == Tok::ident) {
      lex_.take();
      if (t.text == "q") {
        if (lex_.peek().kind == Tok::caret) {
          lex_.take();
          auto [d, frac] = exponent();
          (void)frac;
          return unit_scaled(q_value(d));
        }
        return unit_scaled(q_value(2));
      }
      if (t.text == "i") {
        Scalar c = Scalar::i();
        if (lex_.peek().kind == Tok::caret) {
          lex_.take();
          auto [d, frac] = exponent();
          if (frac) fail(errc::syntax_error, "fractional exponent on i");
          return unit_scaled(c.pow(static_cast<int>(d / 2)));
        }
        return unit_scaled(c);
      }
      if (!p_) expected("scalar (no algebra in scope)", t);
      int g = p_->gen_index(t.text);
      if (g < 0) fail(errc::unknown_generator, "unknown generator '" + t.text + "'");
      AlgElem v = p_->gen(g);
      if (lex_.peek().kind == Tok::caret) {
        lex_.take();
        auto [d, frac] = exponent();
        if (frac || d < 0) fail(errc::syntax_error, "generator powers must be nonnegative integers");
        return v.pow(static_cast<int>(d / 2));
      }
      return v;
    }
    if (t.kind == Tok::lparen) {
      lex_.take();
      AlgElem v = expr();
      Token r = lex_.take();
      if (r.kind != Tok::rparen) expected("')'", r);
      if (lex_.peek().kind == Tok::caret) {
        lex_.take();
        auto [d, frac] = exponent();
        if (frac || d < 0) fail(errc::syntax_error, "parenthesized powers must be nonnegative integers");
        return v.pow(static_cast<int>(d / 2));
      }
      return v;
    }
    expected("expression", t);
  }

  Lexer lex_;
  const Presentation* p_;
  ParseOptions opt_;
};

}  // namespace

Scalar parse_scalar(const std::string& text, const ParseOptions& opt) {
  ExprParser p(text, nullptr, opt);
  AlgElem v = p.parse();
  if (v.terms().empty()) return Scalar::zero();
  if (v.terms().size() != 1 || !v.terms().begin()->first.empty())
    fail(errc::syntax_error, "expected a scalar expression");
  return v.terms().begin()->second;
}

AlgElem parse_expr(const std::string& text, const Presentation& p, const ParseOptions& opt) {
  ExprParser parser(text, &p, opt);
  AlgElem raw = parser.parse();
  return AlgElem(&p, p.normal_form(raw.terms()));
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

Word parse_lhs_word(const std::string& text, const Presentation& p, int line_no) {
  Word w;
  for (const std::string& name : split_ws(text)) {
    std::string base = name;
    int power = 1;
    auto caret = name.find('^');
    if (caret != std::string::npos) {
      base = name.substr(0, caret);
      power = std::stoi(name.substr(caret + 1));
    }
    int g = p.gen_index(base);
    if (g < 0)
      fail(errc::unknown_generator,
           "line " + std::to_string(line_no) + ": unknown generator '" + base + "'");
    for (int k = 0; k < power; ++k) w.push_back(static_cast<char>(g));
  }
  if (w.empty())
    fail(errc::syntax_error, "line " + std::to_string(line_no) + ": empty rule left side");
  return w;
}

}  // namespace

std::shared_ptr<Presentation> parse_presentation(const std::string& text,
                                                 const ParseOptions& opt) {
  auto p = std::make_shared<Presentation>();
  p->qctx.s0 = opt.s0;
  if (const char* env = std::getenv("NCG_REWRITE_BUDGET")) p->rewrite_budget = std::atol(env);

  enum class Section { none, generators, rules, star, inverse };
  Section sec = Section::none;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  std::vector<std::pair<std::string, std::string>> pending_rules;   // lhs, rhs
  std::vector<std::pair<std::string, std::string>> pending_star;    // gen, expr
  std::vector<std::pair<std::string, std::string>> pending_inverse;
  std::vector<std::pair<std::string, int>> raw_rule_lines;  // with line numbers
  std::vector<int> star_lines, rule_lines;

  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string trimmed;
    {
      size_t b = line.find_first_not_of(" \t\r");
      size_t e = line.find_last_not_of(" \t\r");
      if (b != std::string::npos) trimmed = line.substr(b, e - b + 1);
    }
    if (trimmed.empty()) continue;
    if (trimmed.front() == '[') {
      if (trimmed == "[generators]")
        sec = Section::generators;
      else if (trimmed == "[rules]")
        sec = Section::rules;
      else if (trimmed == "[star]")
        sec = Section::star;
      else if (trimmed == "[inverse]")
        sec = Section::inverse;
      else
        fail(errc::syntax_error, "line " + std::to_string(line_no) + ": unknown section " + trimmed);
      continue;
    }
    switch (sec) {
      case Section::none:
        if (trimmed.rfind("name:", 0) == 0) {
          size_t b = trimmed.find_first_not_of(" \t", 5);
          p->name = b == std::string::npos ? "" : trimmed.substr(b);
          break;
        }
        fail(errc::syntax_error, "line " + std::to_string(line_no) + ": content before a section");
      case Section::generators: {
        auto parts = split_ws(trimmed);
        if (parts.size() != 2)
          fail(errc::syntax_error,
               "line " + std::to_string(line_no) + ": expected 'name grade'");
        if (parts[0] == "q" || parts[0] == "i")
          fail(errc::syntax_error,
               "line " + std::to_string(line_no) + ": generator name '" + parts[0] + "' is reserved");
        if (p->gen_index(parts[0]) >= 0)
          fail(errc::syntax_error,
               "line " + std::to_string(line_no) + ": duplicate generator '" + parts[0] + "'");
        if (p->generators.size() >= 250)
          fail(errc::syntax_error, "too many generators");
        p->generators.push_back(Generator{parts[0], std::stoi(parts[1])});
        break;
      }
      case Section::rules: {
        auto arrow = trimmed.find("->");
        if (arrow == std::string::npos)
          fail(errc::syntax_error, "line " + std::to_string(line_no) + ": rule needs '->'");
        pending_rules.emplace_back(trimmed.substr(0, arrow), trimmed.substr(arrow + 2));
        rule_lines.push_back(line_no);
        break;
      }
      case Section::star: {
        auto arrow = trimmed.find("->");
        if (arrow == std::string::npos)
          fail(errc::syntax_error, "line " + std::to_string(line_no) + ": star entry needs '->'");
        pending_star.emplace_back(trimmed.substr(0, arrow), trimmed.substr(arrow + 2));
        star_lines.push_back(line_no);
        break;
      }
      case Section::inverse: {
        auto parts = split_ws(trimmed);
        if (parts.size() != 2)
          fail(errc::syntax_error,
               "line " + std::to_string(line_no) + ": expected two generator names");
        pending_inverse.emplace_back(parts[0], parts[1]);
        break;
      }
    }
  }

  if (p->generators.empty()) fail(errc::syntax_error, "presentation declares no generators");
  p->inverse_partner.assign(p->generators.size(), -1);
  p->star_table.assign(p->generators.size(), TermMap{});

  for (size_t k = 0; k < pending_rules.size(); ++k) {
    Word lhs = parse_lhs_word(pending_rules[k].first, *p, rule_lines[k]);
    AlgElem rhs = [&] {
      ExprParser ep(pending_rules[k].second, p.get(), opt);
      return ep.parse();
    }();
    p->rules.push_back(Rule{lhs, rhs.terms()});
  }

  bool star_seen = !pending_star.empty();
  std::vector<bool> star_set(p->generators.size(), false);
  for (size_t k = 0; k < pending_star.size(); ++k) {
    auto names = split_ws(pending_star[k].first);
    if (names.size() != 1)
      fail(errc::syntax_error,
           "line " + std::to_string(star_lines[k]) + ": star left side must be one generator");
    int g = p->gen_index(names[0]);
    if (g < 0)
      fail(errc::unknown_generator,
           "line " + std::to_string(star_lines[k]) + ": unknown generator '" + names[0] + "'");
    ExprParser ep(pending_star[k].second, p.get(), opt);
    p->star_table[g] = ep.parse().terms();
    star_set[g] = true;
  }
  if (star_seen)
    for (size_t g = 0; g < p->generators.size(); ++g)
      if (!star_set[g])
        fail(errc::star_inconsistent, "no star entry for generator " + p->generators[g].name);

  for (const auto& [a, b] : pending_inverse) {
    int ga = p->gen_index(a), gb = p->gen_index(b);
    if (ga < 0 || gb < 0) fail(errc::unknown_generator, "unknown generator in [inverse]");
    p->inverse_partner[ga] = gb;
    p->inverse_partner[gb] = ga;
  }

  p->validate();
  return p;
}

}  // namespace ncg
