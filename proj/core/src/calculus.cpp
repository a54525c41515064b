#include "ncg/calculus.hpp"

#include "ncg/error.hpp"

namespace ncg {

namespace {

ModElem d_word(const Calculus& c, const Word& w);

ModElem form_from_pairs(const Calculus& c,
                        std::initializer_list<std::pair<const char*, AlgElem>> parts) {
  ModElem out = ModElem::zero(c.form1_space());
  for (const auto& [sym, coeff] : parts) {
    int idx = c.form1.index_of(sym);
    if (idx < 0) fail(errc::internal, std::string("no 1-form symbol ") + sym);
    out += ModElem::basis(c.form1_space(), {idx}).left_mul(coeff);
  }
  return out;
}

}  // namespace

ModElem Calculus::basis1(const std::string& sym) const {
  int idx = form1.index_of(sym);
  if (idx < 0) fail(errc::internal, "no 1-form symbol " + sym);
  return ModElem::basis(form1_space(), {idx});
}

namespace {
ModElem d_word(const Calculus& c, const Word& w) {
  if (w.empty()) return ModElem::zero(c.form1_space());
  unsigned char g = w[0];
  Word rest = w.substr(1);
  AlgElem rest_el(c.alg, c.alg->normal_form({{rest, Scalar::one()}}));
  ModElem out = c.d_gen[g].right_mul(rest_el);
  if (!rest.empty()) out += d_word(c, rest).left_mul(c.alg->gen(g));
  return out;
}
}  // namespace

ModElem Calculus::d(const AlgElem& x) const {
  ModElem out = ModElem::zero(form1_space());
  for (const auto& [w, coeff] : x.terms()) out += d_word(*this, w).scaled(coeff);
  return out;
}

ModElem Calculus::horizontal_part(const ModElem& xi) const {
  const bool is2 = !xi.space().legs.empty() && xi.space().legs[0].fam == &form2;
  const std::vector<bool>& keep = is2 ? horizontal2 : horizontal;
  ModTermMap t;
  for (const auto& [k, v] : xi.terms())
    if (keep[static_cast<unsigned char>(k[0])]) t.emplace(k, v);
  return ModElem(xi.space(), std::move(t));
}

ModElem Calculus::d_model(const AlgElem& x) const {
  ModElem out = d(x);
  return model_d_is_horizontal ? horizontal_part(out) : out;
}

ModElem Calculus::d1_full(const ModElem& xi) const {
  ModElem out = ModElem::zero(form2_space());
  for (const auto& [k, v] : xi.terms()) {
    unsigned char i = k[0];
    out += wedge11(d(v), ModElem::basis(form1_space(), {i}));
    out += d_form1[i].left_mul(v);
  }
  return out;
}

ModElem Calculus::d1(const ModElem& xi) const {
  ModElem out = d1_full(xi);
  return model_d_is_horizontal ? horizontal_part(out) : out;
}

ModElem Calculus::wedge11(const ModElem& u, const ModElem& v) const {
  ModElem out = ModElem::zero(form2_space());
  for (const auto& [ku, cu] : u.terms()) {
    unsigned char i = ku[0];
    int twist = form1.symbols[i].twist;
    for (const auto& [kv, cv] : v.terms()) {
      unsigned char j = kv[0];
      const WedgeEntry& e = wedge_table[i][j];
      if (e.coeff.is_zero()) continue;
      for (const auto& [g, comp] : cv.grade_components()) {
        AlgElem coeff = cu * (comp * qctx.s_pow(2 * twist * g)) * e.coeff;
        out += ModElem::basis(form2_space(), {e.sym}).left_mul(coeff);
      }
    }
  }
  return out;
}

ModElem Calculus::star_form(const ModElem& xi) const {
  if (xi.space().legs.empty()) return xi;
  const bool is2 = xi.space().legs[0].fam == &form2;
  const auto& table = is2 ? star2 : star1;
  const BasisFamily& fam = is2 ? form2 : form1;
  ModuleSpace space = is2 ? form2_space() : form1_space();
  ModElem out = ModElem::zero(space);
  for (const auto& [k, v] : xi.terms()) {
    unsigned char i = k[0];
    const auto& [coeff, j] = table[i];
    int twist = fam.symbols[j].twist;
    AlgElem vs = v.star();
    for (const auto& [g, comp] : vs.grade_components())
      out += ModElem::basis(space, {j}).left_mul(comp * qctx.s_pow(2 * twist * g) * coeff);
  }
  return out;
}

ModElem Calculus::pq_project(const ModElem& xi, int p, int q) const {
  const bool is2 = !xi.space().legs.empty() && xi.space().legs[0].fam == &form2;
  const BasisFamily& fam = is2 ? form2 : form1;
  ModTermMap t;
  for (const auto& [k, v] : xi.terms()) {
    const auto& bid = fam.symbols[static_cast<unsigned char>(k[0])].bidegree;
    if (bid && bid->first == p && bid->second == q) t.emplace(k, v);
  }
  return ModElem(xi.space(), std::move(t));
}

AlgElem Calculus::component(const ModElem& xi, const std::string& sym) const {
  const bool is2 = !xi.space().legs.empty() && xi.space().legs[0].fam == &form2;
  const BasisFamily& fam = is2 ? form2 : form1;
  int idx = fam.index_of(sym);
  if (idx < 0) fail(errc::internal, "no form symbol " + sym);
  return xi.coefficient(SymTuple(1, static_cast<char>(idx)));
}

std::shared_ptr<Calculus> make_su2_calculus(const Presentation* alg) {
  auto cp = std::make_shared<Calculus>();
  Calculus& c = *cp;
  c.alg = alg;
  c.qctx = alg->qctx;
  const QContext& ctx = c.qctx;
  c.form1.name = "su2_forms1";
  c.form1.symbols = {
      {"e0", 0, 2, std::nullopt},
      {"e+", 2, 1, std::make_pair(1, 0)},
      {"e-", -2, 1, std::make_pair(0, 1)},
  };
  c.form2.name = "su2_forms2";
  c.form2.symbols = {
      {"e+^e-", 0, 2, std::make_pair(1, 1)},
      {"e+^e0", 2, 3, std::nullopt},
      {"e-^e0", -2, 3, std::nullopt},
  };
  c.horizontal = {false, true, true};
  c.horizontal2 = {true, false, false};
  c.model_d_is_horizontal = true;

  auto g = [&](const char* n) { return alg->gen(n); };
  const Scalar q = ctx.q();
  c.d_gen.resize(4);
  c.d_gen[alg->gen_index("a")] =
      form_from_pairs(c, {{"e0", g("a")}, {"e+", g("b") * q}});
  c.d_gen[alg->gen_index("b")] =
      form_from_pairs(c, {{"e-", g("a")}, {"e0", g("b") * (-ctx.q(-2))}});
  c.d_gen[alg->gen_index("c")] =
      form_from_pairs(c, {{"e0", g("c")}, {"e+", g("d") * q}});
  c.d_gen[alg->gen_index("d")] =
      form_from_pairs(c, {{"e-", g("c")}, {"e0", g("d") * (-ctx.q(-2))}});

  int E_pm = 0, E_p0 = 1, E_m0 = 2;
  auto unit2 = [&](int sym, const Scalar& coeff) {
    return ModElem::basis(c.form2_space(), {sym}).left_mul(alg->unit() * coeff);
  };
  c.d_form1.resize(3);
  c.d_form1[c.form1.index_of("e0")] = unit2(E_pm, ctx.s_pow(6));
  c.d_form1[c.form1.index_of("e+")] = unit2(E_p0, -(Scalar::one() + ctx.q(2)));
  c.d_form1[c.form1.index_of("e-")] = unit2(E_m0, ctx.q(-2) + ctx.q(-4));

  Scalar z = Scalar::zero();
  c.wedge_table.assign(3, std::vector<Calculus::WedgeEntry>(3, {z, -1}));
  auto setw = [&](const char* a, const char* b, Scalar coeff, int sym) {
    c.wedge_table[c.form1.index_of(a)][c.form1.index_of(b)] = {coeff, sym};
  };
  setw("e+", "e-", Scalar::one(), E_pm);
  setw("e-", "e+", -ctx.q(2), E_pm);
  setw("e+", "e0", Scalar::one(), E_p0);
  setw("e0", "e+", -ctx.q(4), E_p0);
  setw("e-", "e0", Scalar::one(), E_m0);
  setw("e0", "e-", -ctx.q(-4), E_m0);

  c.star1.resize(3);
  c.star1[c.form1.index_of("e+")] = {-ctx.q(-1), c.form1.index_of("e-")};
  c.star1[c.form1.index_of("e-")] = {-ctx.q(1), c.form1.index_of("e+")};
  c.star1[c.form1.index_of("e0")] = {-Scalar::one(), c.form1.index_of("e0")};
  c.star2.resize(3);
  c.star2[E_pm] = {-Scalar::one(), E_pm};
  c.star2[E_p0] = {ctx.s_pow(-10), E_m0};
  c.star2[E_m0] = {ctx.s_pow(10), E_p0};
  return cp;
}

std::shared_ptr<Calculus> make_disk_calculus(const Presentation* alg) {
  auto cp = std::make_shared<Calculus>();
  Calculus& c = *cp;
  c.alg = alg;
  c.qctx = alg->qctx;
  const QContext& ctx = c.qctx;
  c.form1.name = "disk_forms1";
  c.form1.symbols = {
      {"dz", 1, 2, std::make_pair(1, 0)},
      {"dzb", -1, 2, std::make_pair(0, 1)},
  };
  c.form2.name = "disk_forms2";
  c.form2.symbols = {{"dz^dzb", 0, 4, std::make_pair(1, 1)}};
  c.horizontal = {true, true};
  c.horizontal2 = {true};

  auto g = [&](const char* n) { return alg->gen(n); };
  c.d_gen.resize(alg->generators.size());
  c.d_gen[alg->gen_index("z")] = c.basis1("dz");
  c.d_gen[alg->gen_index("zb")] = c.basis1("dzb");
  // w = 1 - zb z
  c.d_gen[alg->gen_index("w")] =
      form_from_pairs(c, {{"dz", -g("zb")}, {"dzb", g("z") * (-ctx.q(2))}});
  if (alg->gen_index("wi") >= 0) {
    AlgElem wi = g("wi");
    AlgElem wi2 = wi * wi;
    c.d_gen[alg->gen_index("wi")] = form_from_pairs(
        c, {{"dz", g("zb") * wi2 * ctx.q(2)}, {"dzb", g("z") * wi2}});
  }

  c.d_form1.assign(2, ModElem::zero(c.form2_space()));

  Scalar z = Scalar::zero();
  c.wedge_table.assign(2, std::vector<Calculus::WedgeEntry>(2, {z, -1}));
  c.wedge_table[0][1] = {Scalar::one(), 0};
  c.wedge_table[1][0] = {-ctx.q(2), 0};

  c.star1.resize(2);
  c.star1[0] = {Scalar::one(), 1};
  c.star1[1] = {Scalar::one(), 0};
  c.star2 = {{-Scalar::one(), 0}};
  return cp;
}

std::shared_ptr<Calculus> make_m2_calculus(const Presentation* alg) {
  auto cp = std::make_shared<Calculus>();
  Calculus& c = *cp;
  c.alg = alg;
  c.form1.name = "m2_forms1";
  c.form1.symbols = {
      {"s", 0, 0, std::make_pair(1, 0)},
      {"t", 0, 0, std::make_pair(0, 1)},
  };
  c.form2.name = "m2_forms2";
  c.form2.symbols = {{"s^t", 0, 0, std::make_pair(1, 1)}};
  c.horizontal = {true, true};
  c.horizontal2 = {true};

  AlgElem e12 = alg->gen("E12"), e21 = alg->gen("E21"), one = alg->unit();
  auto comm = [&](const AlgElem& x, const AlgElem& y) { return x * y - y * x; };
  c.d_gen.resize(2);
  c.d_gen[alg->gen_index("E12")] =
      form_from_pairs(c, {{"s", comm(e12, e12)}, {"t", comm(e21, e12)}});
  c.d_gen[alg->gen_index("E21")] =
      form_from_pairs(c, {{"s", comm(e12, e21)}, {"t", comm(e21, e21)}});

  auto unit2 = [&](const AlgElem& coeff) {
    return ModElem::basis(c.form2_space(), {0}).left_mul(coeff);
  };
  c.d_form1.resize(2);
  c.d_form1[0] = unit2(e21 * Scalar::rational(2));  // anticommutator of the inner form with s
  c.d_form1[1] = unit2(e12 * Scalar::rational(2));

  Scalar z = Scalar::zero();
  c.wedge_table.assign(2, std::vector<Calculus::WedgeEntry>(2, {z, -1}));
  c.wedge_table[0][1] = {Scalar::one(), 0};
  c.wedge_table[1][0] = {Scalar::one(), 0};  // s and t are central with s t = t s

  c.star1.resize(2);
  c.star1[0] = {-Scalar::one(), 1};
  c.star1[1] = {-Scalar::one(), 0};
  c.star2 = {{-Scalar::one(), 0}};
  return cp;
}

Report check_d_consistency(const Calculus& calc, const DConsistencyOptions& opt) {
  Report report;
  CheckRunner checks(report);
  const Presentation& p = *calc.alg;
  auto words = p.normal_words(opt.word_len);
  auto elem_of = [&](const Word& w) {
    return AlgElem(&p, p.normal_form({{w, Scalar::one()}}));
  };

  checks.run("calculus.d_squared", "d(d x) = 0", [&]() -> std::optional<std::string> {
    for (const Word& w : words) {
      AlgElem x = elem_of(w);
      if (!calc.d1_full(calc.d(x)).is_zero())
        return "x = " + x.str() + " gives d(d x) = " + calc.d1_full(calc.d(x)).str();
    }
    return std::nullopt;
  });

  checks.run("calculus.leibniz", "d(x y) = d(x) y + x d(y)",
             [&]() -> std::optional<std::string> {
               for (const Word& w1 : words) {
                 for (const Word& w2 : words) {
                   if (w1.size() + w2.size() > static_cast<size_t>(opt.word_len + 1)) continue;
                   AlgElem x = elem_of(w1), y = elem_of(w2);
                   ModElem lhs = calc.d(x * y);
                   ModElem rhs = calc.d(x).right_mul(y) + calc.d(y).left_mul(x);
                   if (lhs != rhs)
                     return "x = " + x.str() + ", y = " + y.str() + ": d(x y) = " + lhs.str() +
                            " but d(x) y + x d(y) = " + rhs.str();
                 }
               }
               return std::nullopt;
             });

  checks.run("calculus.unit_relations", "derivative of every defining relation vanishes",
             [&]() -> std::optional<std::string> {
               for (const Rule& r : p.rules) {
                 // Leibniz chain over the unnormalized left word
                 ModElem dl = ModElem::zero(calc.form1_space());
                 for (size_t k = 0; k < r.lhs.size(); ++k) {
                   AlgElem pre = elem_of(r.lhs.substr(0, k));
                   AlgElem post = elem_of(r.lhs.substr(k + 1));
                   dl += calc.d_gen[static_cast<unsigned char>(r.lhs[k])]
                             .right_mul(post)
                             .left_mul(pre);
                 }
                 ModElem dr = calc.d(AlgElem(&p, p.normal_form(r.rhs)));
                 if (dl != dr)
                   return "relation at '" + p.word_str(r.lhs) + "': d(lhs) = " + dl.str() +
                          " but d(rhs) = " + dr.str();
               }
               return std::nullopt;
             });

  checks.run("calculus.star_compatible", "d(x*) = (d x)*",
             [&]() -> std::optional<std::string> {
               for (const Word& w : words) {
                 AlgElem x = elem_of(w);
                 ModElem lhs = calc.d(x.star());
                 ModElem rhs = calc.star_form(calc.d(x));
                 if (lhs != rhs)
                   return "x = " + x.str() + ": d(x*) = " + lhs.str() + " but (d x)* = " +
                          rhs.str();
               }
               return std::nullopt;
             });

  if (calc.model_d_is_horizontal) {
    checks.run("calculus.model_d_squared", "geometric d squared vanishes on degree zero",
               [&]() -> std::optional<std::string> {
                 for (const Word& w : p.normal_words(opt.word_len + 1)) {
                   if (p.word_grade(w) != 0) continue;
                   AlgElem x = elem_of(w);
                   ModElem dd = calc.d1(calc.d_model(x));
                   if (!dd.is_zero())
                     return "x = " + x.str() + " gives d(d x) = " + dd.str();
                 }
                 return std::nullopt;
               });

    checks.run(
        "calculus.mixed_derivative_identity",
        "horizontal d(x* y) matches the component expansion for |x| = -1, |y| = 1",
        [&]() -> std::optional<std::string> {
          const Scalar q1 = calc.qctx.q();
          const Scalar q3 = calc.qctx.q(3);
          int done = 0;
          for (const Word& wx : words) {
            if (p.word_grade(wx) != -1) continue;
            for (const Word& wy : words) {
              if (p.word_grade(wy) != 1) continue;
              AlgElem x = elem_of(wx), y = elem_of(wy);
              auto dpl = [&](const AlgElem& u) { return calc.component(calc.d(u), "e+"); };
              auto dmi = [&](const AlgElem& u) { return calc.component(calc.d(u), "e-"); };
              ModElem lhs = calc.d_model(x.star() * y);
              AlgElem cp = x.star() * dpl(y) - dmi(x).star() * y * q1;
              AlgElem cm = x.star() * dmi(y) - dpl(x).star() * y * q3;
              ModElem rhs = calc.basis1("e+").left_mul(cp) + calc.basis1("e-").left_mul(cm);
              if (lhs != rhs)
                return "x = " + x.str() + ", y = " + y.str() + ": horizontal d(x* y) = " +
                       lhs.str() + " but expansion = " + rhs.str();
              if (++done >= opt.pair_count * 4) return std::nullopt;
            }
          }
          if (done < opt.pair_count)
            return "only " + std::to_string(done) + " admissible pairs available";
          return std::nullopt;
        });
  }

  return report;
}

}  // namespace ncg
