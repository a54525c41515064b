#include "ncg/module.hpp"

#include "ncg/error.hpp"

namespace ncg {

int BasisFamily::index_of(const std::string& sym) const {
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == sym) return static_cast<int>(i);
  return -1;
}

int ModuleSpace::tuple_twist(const std::string& tuple) const {
  int t = 0;
  for (int k = 0; k < leg_count(); ++k) t += symbol(k, static_cast<unsigned char>(tuple[k])).twist;
  return t;
}

int ModuleSpace::tuple_grade(const std::string& tuple) const {
  int g = 0;
  for (int k = 0; k < leg_count(); ++k) {
    int sg = symbol(k, static_cast<unsigned char>(tuple[k])).grade;
    g += legs[k].bar ? -sg : sg;
  }
  return whole_bar ? -g : g;
}

std::string ModuleSpace::tuple_str(const std::string& tuple) const {
  std::string out;
  for (int k = 0; k < leg_count(); ++k) {
    if (k) out += " (x) ";
    const auto& sym = symbol(k, static_cast<unsigned char>(tuple[k]));
    out += legs[k].bar ? "bar(" + sym.name + ")" : sym.name;
  }
  if (whole_bar) out = "bar(" + out + ")";
  return out;
}

ModuleSpace ModuleSpace::single(const Presentation* alg, const BasisFamily* fam, bool bar) {
  ModuleSpace s;
  s.alg = alg;
  s.legs.push_back(Leg{fam, bar});
  return s;
}

ModuleSpace ModuleSpace::tensor(const ModuleSpace& a, const ModuleSpace& b) {
  if (a.alg != b.alg) fail(errc::internal, "tensor over different algebras");
  if (a.whole_bar || b.whole_bar) fail(errc::internal, "tensor with unresolved conjugate");
  ModuleSpace s;
  s.alg = a.alg;
  s.legs = a.legs;
  s.legs.insert(s.legs.end(), b.legs.begin(), b.legs.end());
  return s;
}

void ModElem::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

ModElem ModElem::basis(const ModuleSpace& space, const SymTuple& t) {
  ModTermMap m;
  m.emplace(t, space.alg->unit());
  return ModElem(space, std::move(m));
}

ModElem ModElem::basis(const ModuleSpace& space, std::initializer_list<int> idx) {
  SymTuple t;
  for (int i : idx) t.push_back(static_cast<char>(i));
  return basis(space, t);
}

ModElem ModElem::operator-() const {
  ModTermMap t = terms_;
  for (auto& [k, v] : t) v = -v;
  return ModElem(space_, std::move(t));
}

ModElem ModElem::operator+(const ModElem& o) const {
  if (terms_.empty()) return o;
  if (o.terms_.empty()) return *this;
  if (!(space_ == o.space_)) fail(errc::internal, "module element space mismatch in +");
  ModTermMap t = terms_;
  for (const auto& [k, v] : o.terms_) {
    auto it = t.find(k);
    if (it == t.end())
      t.emplace(k, v);
    else
      it->second += v;
  }
  return ModElem(space_, std::move(t));
}

ModElem ModElem::operator-(const ModElem& o) const { return *this + (-o); }

ModElem ModElem::scaled(const Scalar& c) const {
  ModTermMap t = terms_;
  for (auto& [k, v] : t) v = v * c;
  return ModElem(space_, std::move(t));
}

AlgElem ModElem::coefficient(const SymTuple& t) const {
  auto it = terms_.find(t);
  if (it == terms_.end()) return AlgElem(space_.alg, {});
  return it->second;
}

ModElem ModElem::left_mul(const AlgElem& a) const {
  ModTermMap t;
  for (const auto& [k, v] : terms_) t.emplace(k, a * v);
  return ModElem(space_, std::move(t));
}

ModElem ModElem::right_mul(const AlgElem& a) const {
  ModTermMap t;
  for (const auto& [k, v] : terms_) {
    int tw = space_.tuple_twist(k);
    for (const auto& [g, comp] : a.grade_components()) {
      AlgElem moved = (v * comp) * space_.alg->qctx.s_pow(2 * tw * g);
      auto it = t.find(k);
      if (it == t.end())
        t.emplace(k, moved);
      else
        it->second += moved;
    }
  }
  return ModElem(space_, std::move(t));
}

bool ModElem::is_homogeneous_of_grade(int g) const {
  for (const auto& [k, v] : terms_) {
    int base = space_.tuple_grade(k);
    for (const auto& [w, c] : v.terms())
      if (space_.alg->word_grade(w) + base != g) return false;
  }
  return true;
}

std::string ModElem::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    std::string cs = v.str();
    bool neg = !cs.empty() && cs[0] == '-';
    std::string body = cs;
    if (neg && cs.find(" + ") == std::string::npos && cs.find(" - ") == std::string::npos)
      body = cs.substr(1);
    else
      neg = false;
    bool sum = body.find(" + ") != std::string::npos || body.find(" - ") != std::string::npos;
    if (sum) body = "(" + body + ")";
    std::string term = (body == "1") ? space_.tuple_str(k) : body + " " + space_.tuple_str(k);
    if (first) {
      out = (neg ? "-" : "") + term;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

ModElem tensor(const ModElem& m, const ModElem& n) {
  ModuleSpace space = ModuleSpace::tensor(m.space(), n.space());
  ModTermMap t;
  for (const auto& [k1, v1] : m.terms()) {
    int tw = m.space().tuple_twist(k1);
    for (const auto& [k2, v2] : n.terms()) {
      SymTuple k = k1 + k2;
      for (const auto& [g, comp] : v2.grade_components()) {
        AlgElem coeff = v1 * (comp * space.alg->qctx.s_pow(2 * tw * g));
        auto it = t.find(k);
        if (it == t.end())
          t.emplace(k, coeff);
        else
          it->second += coeff;
      }
    }
  }
  return ModElem(space, std::move(t));
}

// bar(x . t) = q^{-T |x|} x^* . bar(t), per homogeneous component of x
static AlgElem bar_coefficient(const Presentation* alg, const AlgElem& c, int twist) {
  AlgElem out(alg, {});
  for (const auto& [g, comp] : c.grade_components())
    out += comp.star() * alg->qctx.s_pow(-2 * twist * g);
  return out;
}

ModElem to_bar(const ModElem& m) {
  ModuleSpace space = m.space();
  if (space.leg_count() == 1 && !space.whole_bar) {
    space.legs[0].bar = !space.legs[0].bar;
  } else if (space.whole_bar) {
    fail(errc::internal, "conjugate of an already conjugated tensor word");
  } else {
    space.whole_bar = true;
  }
  ModTermMap t;
  for (const auto& [k, v] : m.terms())
    t.emplace(k, bar_coefficient(space.alg, v, m.space().tuple_twist(k)));
  return ModElem(space, std::move(t));
}

ModElem from_bar(const ModElem& m) {
  ModuleSpace space = m.space();
  if (space.whole_bar) {
    space.whole_bar = false;
  } else if (space.leg_count() == 1) {
    space.legs[0].bar = !space.legs[0].bar;
  } else {
    fail(errc::internal, "from_bar needs a conjugated space");
  }
  ModTermMap t;
  for (const auto& [k, v] : m.terms())
    t.emplace(k, bar_coefficient(space.alg, v, m.space().tuple_twist(k)));
  return ModElem(space, std::move(t));
}

ModElem upsilon(const ModElem& m) {
  if (!m.space().whole_bar) fail(errc::internal, "upsilon needs a conjugated tensor word");
  ModuleSpace space;
  space.alg = m.space().alg;
  for (auto it = m.space().legs.rbegin(); it != m.space().legs.rend(); ++it)
    space.legs.push_back(Leg{it->fam, !it->bar});
  ModTermMap t;
  for (const auto& [k, v] : m.terms()) t.emplace(SymTuple(k.rbegin(), k.rend()), v);
  return ModElem(space, std::move(t));
}

ModElem upsilon_inv(const ModElem& m) {
  if (m.space().whole_bar) fail(errc::internal, "upsilon_inv input already conjugated");
  ModuleSpace space;
  space.alg = m.space().alg;
  for (auto it = m.space().legs.rbegin(); it != m.space().legs.rend(); ++it)
    space.legs.push_back(Leg{it->fam, !it->bar});
  space.whole_bar = true;
  ModTermMap t;
  for (const auto& [k, v] : m.terms()) t.emplace(SymTuple(k.rbegin(), k.rend()), v);
  return ModElem(space, std::move(t));
}

ModElem apply_leg_map(const LegMap& map, const ModElem& m, int leg) {
  const ModuleSpace& src = m.space();
  if (src.whole_bar) fail(errc::internal, "apply_leg_map on conjugated tensor word");
  if (leg < 0 || leg >= src.leg_count()) fail(errc::internal, "leg out of range");
  if (src.legs[leg].fam != map.source || src.legs[leg].bar != map.source_bar)
    fail(errc::internal, "leg map source mismatch");

  ModuleSpace out_space;
  out_space.alg = src.alg;
  for (int k = 0; k < src.leg_count(); ++k) {
    if (k == leg)
      out_space.legs.insert(out_space.legs.end(), map.target.legs.begin(),
                            map.target.legs.end());
    else
      out_space.legs.push_back(src.legs[k]);
  }

  ModElem out = ModElem::zero(out_space);
  for (const auto& [k, v] : m.terms()) {
    SymTuple prefix = k.substr(0, leg);
    SymTuple suffix = k.substr(leg + 1);
    int prefix_twist = 0;
    for (int j = 0; j < leg; ++j)
      prefix_twist += src.symbol(j, static_cast<unsigned char>(k[j])).twist;
    const ModElem& value = map.values[static_cast<unsigned char>(k[leg])];
    ModTermMap t;
    for (const auto& [vk, vc] : value.terms()) {
      for (const auto& [g, comp] : vc.grade_components()) {
        AlgElem coeff = v * (comp * src.alg->qctx.s_pow(2 * prefix_twist * g));
        SymTuple key = prefix + vk + suffix;
        auto it = t.find(key);
        if (it == t.end())
          t.emplace(key, coeff);
        else
          it->second += coeff;
      }
    }
    out += ModElem(out_space, std::move(t));
  }
  return out;
}

ModElem apply_pair_map(const std::vector<std::vector<ModElem>>& table, const ModElem& m,
                       int leg, const ModuleSpace& value_space) {
  const ModuleSpace& src = m.space();
  if (leg + 1 >= src.leg_count()) fail(errc::internal, "pair map needs two legs");
  ModuleSpace out_space;
  out_space.alg = src.alg;
  for (int k = 0; k < src.leg_count(); ++k) {
    if (k == leg) {
      out_space.legs.insert(out_space.legs.end(), value_space.legs.begin(),
                            value_space.legs.end());
      ++k;  // skip the second source leg
    } else {
      out_space.legs.push_back(src.legs[k]);
    }
  }
  ModElem out = ModElem::zero(out_space);
  for (const auto& [k, v] : m.terms()) {
    int prefix_twist = 0;
    for (int j = 0; j < leg; ++j)
      prefix_twist += src.symbol(j, static_cast<unsigned char>(k[j])).twist;
    const ModElem& value =
        table[static_cast<unsigned char>(k[leg])][static_cast<unsigned char>(k[leg + 1])];
    SymTuple prefix = k.substr(0, leg);
    SymTuple suffix = k.substr(leg + 2);
    ModTermMap t;
    for (const auto& [vk, vc] : value.terms()) {
      for (const auto& [g, comp] : vc.grade_components()) {
        AlgElem coeff = v * (comp * src.alg->qctx.s_pow(2 * prefix_twist * g));
        SymTuple key = prefix + vk + suffix;
        auto it = t.find(key);
        if (it == t.end())
          t.emplace(key, coeff);
        else
          it->second += coeff;
      }
    }
    out += ModElem(out_space, std::move(t));
  }
  return out;
}

void check_right_linear(const LegMap& map, const std::vector<AlgElem>& generators) {
  const Presentation* alg = map.target.alg;
  ModuleSpace src = ModuleSpace::single(alg, map.source, map.source_bar);
  for (size_t b = 0; b < map.source->symbols.size(); ++b) {
    ModElem eb = ModElem::basis(src, {static_cast<int>(b)});
    for (const AlgElem& g : generators) {
      ModElem lhs = apply_leg_map(map, eb.right_mul(g), 0);
      ModElem rhs = map.values[b].right_mul(g);
      if (lhs != rhs)
        fail(errc::not_right_linear,
             "basis map is not right linear at " + map.source->symbols[b].name + " with " +
                 g.str());
    }
  }
}

}  // namespace ncg
