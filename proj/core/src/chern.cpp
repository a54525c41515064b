#include "ncg/chern.hpp"

#include "ncg/error.hpp"

namespace ncg {

namespace {

// Inverse of c * (single normal word) using declared inverse partners.
AlgElem invert_monomial(const Presentation& p, const AlgElem& x) {
  if (x.terms().size() != 1)
    fail(errc::singular_metric, "cannot invert " + x.str() + " (not a monomial)");
  const auto& [w, c] = *x.terms().begin();
  Word inv;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    int partner = p.inverse_partner[static_cast<unsigned char>(*it)];
    if (partner < 0)
      fail(errc::singular_metric,
           "generator " + p.generators[static_cast<unsigned char>(*it)].name +
               " has no declared inverse");
    inv.push_back(static_cast<char>(partner));
  }
  AlgElem candidate(&p, p.normal_form({{inv, c.inv()}}));
  AlgElem left = x * candidate, right = candidate * x;
  if (left != p.unit() || right != p.unit())
    fail(errc::singular_metric, "no two sided inverse for " + x.str());
  return candidate;
}

}  // namespace

AlgElem HermMetric::pair(const ModElem& e, const ModElem& ebar) const {
  const Presentation* alg = E.alg;
  AlgElem out(alg, {});
  for (const auto& [ke, ce] : e.terms()) {
    unsigned char i = ke[0];
    int tw = E.legs[0].fam->symbols[i].twist;
    for (const auto& [kb, cb] : ebar.terms()) {
      unsigned char j = kb[0];
      for (const auto& [g, comp] : cb.grade_components())
        out += ce * (comp * alg->qctx.s_pow(2 * tw * g)) * g_up[i][j];
    }
  }
  return out;
}

ModElem HermMetric::inverse_pairing() const {
  ModuleSpace Ebar = E;
  Ebar.legs[0].bar = !Ebar.legs[0].bar;
  ModuleSpace space = ModuleSpace::tensor(Ebar, E);
  ModElem out = ModElem::zero(space);
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    ModElem ci = ModElem::zero(E);
    for (int j = 0; j < n; ++j) ci += ModElem::basis(E, {j}).left_mul(g_dn[i][j]);
    out += tensor(to_bar(ci), ModElem::basis(E, {i}));
  }
  return out;
}

Report HermMetric::validate() const {
  Report report;
  CheckRunner checks(report);
  const int n = rank();
  const Presentation* alg = E.alg;

  checks.run("metric.hermitian", "<e^i, bar e^j>* = <e^j, bar e^i>",
             [&]() -> std::optional<std::string> {
               for (int i = 0; i < n; ++i)
                 for (int j = 0; j < n; ++j)
                   if (g_up[i][j].star() != g_up[j][i])
                     return "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
               return std::nullopt;
             });

  checks.run("metric.matrix_identities",
             "g* = g (both matrices) and g g^{-1} = g^{-1} g = P = 1",
             [&]() -> std::optional<std::string> {
               for (int i = 0; i < n; ++i) {
                 for (int j = 0; j < n; ++j) {
                   if (g_dn[i][j].star() != g_dn[j][i]) return "lower matrix not hermitian";
                   AlgElem up_dn(alg, {}), dn_up(alg, {});
                   for (int k = 0; k < n; ++k) {
                     up_dn += g_up[i][k] * g_dn[k][j];
                     dn_up += g_dn[i][k] * g_up[k][j];
                   }
                   AlgElem expect = i == j ? alg->unit() : AlgElem(alg, {});
                   if (up_dn != expect) return "g g^{-1} != P";
                   if (dn_up != expect) return "g^{-1} g != P";
                 }
               }
               return std::nullopt;
             });

  checks.run("metric.snake", "both snake identities for <,> and <,>^{-1}",
             [&]() -> std::optional<std::string> {
               ModElem inv = inverse_pairing();
               for (int k = 0; k < n; ++k) {
                 // (<,> (x) id)(e^k (x) <,>^{-1}) = e^k
                 ModElem acc = ModElem::zero(E);
                 ModElem ek = ModElem::basis(E, {k});
                 for (const auto& [tk, tv] : inv.terms()) {
                   ModElem barpart = ModElem(
                       [&] {
                         ModuleSpace sp = E;
                         sp.legs[0].bar = !sp.legs[0].bar;
                         return sp;
                       }(),
                       {{SymTuple(1, tk[0]), tv}});
                   AlgElem val = pair(ek, barpart);
                   acc += ModElem::basis(E, {static_cast<unsigned char>(tk[1])}).left_mul(val);
                 }
                 if (acc != ek) return "right snake at basis " + std::to_string(k);

                 // (id (x) <,>)(<,>^{-1} (x) bar e^k) = bar e^k
                 ModuleSpace Ebar = E;
                 Ebar.legs[0].bar = !Ebar.legs[0].bar;
                 ModElem bar_ek = ModElem::basis(Ebar, {k});
                 ModElem acc2 = ModElem::zero(Ebar);
                 for (const auto& [tk, tv] : inv.terms()) {
                   ModElem epart = ModElem(E, {{SymTuple(1, tk[1]), E.alg->unit()}});
                   AlgElem val = pair(epart, bar_ek);
                   acc2 += ModElem(Ebar, {{SymTuple(1, tk[0]), tv}}).right_mul(val);
                 }
                 if (acc2 != bar_ek) return "left snake at basis " + std::to_string(k);
               }
               return std::nullopt;
             });

  return report;
}

HermMetric make_metric(const ModuleSpace& E, const Calculus* calc,
                       std::vector<std::vector<AlgElem>> g_up) {
  HermMetric m;
  m.E = E;
  m.calc = calc;
  m.g_up = std::move(g_up);
  const int n = static_cast<int>(m.g_up.size());
  const Presentation& p = *E.alg;
  if (n == 1) {
    m.g_dn = {{m.g_up[0][0] == p.unit() ? p.unit() : invert_monomial(p, m.g_up[0][0])}};
  } else {
    // diagonal matrices are all the examples need beyond rank one
    m.g_dn.assign(n, std::vector<AlgElem>(n, AlgElem(&p, {})));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (i != j && !m.g_up[i][j].is_zero())
          fail(errc::singular_metric, "only diagonal metrics are supported");
      m.g_dn[i][i] = invert_monomial(p, m.g_up[i][i]);
    }
  }
  return m;
}

ModElem DbarConnection::apply(const ModElem& m) const {
  ModuleSpace out_space = ModuleSpace::tensor(calc->form1_space(), E);
  ModElem out = ModElem::zero(out_space);
  for (const auto& [k, v] : m.terms()) {
    out += tensor(calc->pq_project(calc->d_model(v), 0, 1), ModElem::basis(E, k));
    const ModElem& tab = dbar[static_cast<unsigned char>(k[0])];
    if (!tab.is_zero()) out += tab.left_mul(v);
  }
  return out;
}

ModElem DbarConnection::holomorphic_curvature(int symbol) const {
  // (dbar (x) id - id ^ dbar) dbar(e)
  ModuleSpace out_space = ModuleSpace::tensor(calc->form2_space(), E);
  ModElem out = ModElem::zero(out_space);
  const ModElem& first = dbar[symbol];
  for (const auto& [k, v] : first.terms()) {
    unsigned char fsym = k[0], esym = k[1];
    ModElem form = ModElem::basis(calc->form1_space(), {fsym}).left_mul(v);
    // dbar of the form factor
    out += tensor(calc->pq_project(calc->d1(form), 0, 2), ModElem::basis(E, {esym}));
    // minus wedge with dbar of the module factor
    const ModElem& second = dbar[esym];
    for (const auto& [k2, v2] : second.terms()) {
      ModElem form2 = ModElem::basis(calc->form1_space(), {static_cast<unsigned char>(k2[0])})
                          .left_mul(v2);
      out -= tensor(calc->wedge11(form, form2),
                    ModElem::basis(E, {static_cast<unsigned char>(k2[1])}));
    }
  }
  return out;
}

namespace {

std::vector<std::vector<ModElem>> gamma_minus(const DbarConnection& dbar) {
  const int n = static_cast<int>(dbar.dbar.size());
  std::vector<std::vector<ModElem>> gm(
      n, std::vector<ModElem>(n, ModElem::zero(dbar.calc->form1_space())));
  for (int i = 0; i < n; ++i)
    for (const auto& [k, v] : dbar.dbar[i].terms())
      gm[i][static_cast<unsigned char>(k[1])] -=
          ModElem::basis(dbar.calc->form1_space(), {static_cast<unsigned char>(k[0])})
              .left_mul(v);
  return gm;
}

}  // namespace

Connection chern_connection_matrix(const DbarConnection& dbar, const HermMetric& g) {
  const Calculus& calc = *dbar.calc;
  const int n = g.rank();
  auto gm = gamma_minus(dbar);

  Connection out;
  out.E = dbar.E;
  out.calc = &calc;
  for (int i = 0; i < n; ++i) {
    ModElem value = ModElem::zero(out.omega_E());
    for (int k = 0; k < n; ++k) {
      // Gamma_+^i_k = - del g^{ij} . g_{jk} - g^{ia} (Gamma_-^j_a)* g_{jk}
      ModElem gp = ModElem::zero(calc.form1_space());
      for (int j = 0; j < n; ++j) {
        ModElem del_g = calc.pq_project(calc.d_model(g.g_up[i][j]), 1, 0);
        gp -= del_g.right_mul(g.g_dn[j][k]);
        for (int a = 0; a < n; ++a)
          gp -= calc.star_form(gm[j][a]).left_mul(g.g_up[i][a]).right_mul(g.g_dn[j][k]);
      }
      ModElem total = gp + gm[i][k];
      value -= tensor(total, ModElem::basis(dbar.E, {k}));
    }
    out.nabla.emplace(SymTuple(1, static_cast<char>(i)), value);
  }
  return out;
}

Connection chern_connection_pairing(const DbarConnection& dbar, const HermMetric& g) {
  const Calculus& calc = *dbar.calc;
  const int n = g.rank();
  ModElem inv = g.inverse_pairing();

  ModuleSpace Ebar = g.E;
  Ebar.legs[0].bar = !Ebar.legs[0].bar;

  Connection out;
  out.E = dbar.E;
  out.calc = &calc;
  for (int s = 0; s < n; ++s) {
    ModElem es = ModElem::basis(g.E, {s});
    ModElem value = dbar.dbar[s];
    for (const auto& [tk, tv] : inv.terms()) {
      ModElem cbar = ModElem(Ebar, {{SymTuple(1, tk[0]), tv}});
      ModElem gpart = ModElem::basis(g.E, {static_cast<unsigned char>(tk[1])});
      // del <e_s, bar c> (x) g
      AlgElem paired = g.pair(es, cbar);
      value += tensor(calc.pq_project(calc.d_model(paired), 1, 0), gpart);
      // - <e_s, bar f> kappa* (x) g over dbar c = kappa (x) f
      ModElem c = from_bar(cbar);
      ModElem dbar_c = dbar.apply(c);
      for (const auto& [dk, dv] : dbar_c.terms()) {
        unsigned char fsym = dk[0], esym = dk[1];
        ModElem kappa_star = calc.star_form(
            ModElem::basis(calc.form1_space(), {fsym}).left_mul(dv));
        AlgElem factor = g.g_up[s][esym];
        value -= tensor(kappa_star.left_mul(factor), gpart);
      }
    }
    out.nabla.emplace(SymTuple(1, static_cast<char>(s)), value);
  }
  return out;
}

std::vector<std::vector<ModElem>> chern_sigma(const DbarConnection& dbar, const HermMetric& g) {
  const Calculus& calc = *dbar.calc;
  const int n = g.rank();
  const int nform = static_cast<int>(calc.form1.symbols.size());
  ModElem inv = g.inverse_pairing();
  ModuleSpace Ebar = g.E;
  Ebar.legs[0].bar = !Ebar.legs[0].bar;
  ModuleSpace out_space = ModuleSpace::tensor(calc.form1_space(), g.E);

  std::vector<std::vector<ModElem>> sig(
      n, std::vector<ModElem>(nform, ModElem::zero(out_space)));
  for (int s = 0; s < n; ++s) {
    for (int h = 0; h < nform; ++h) {
      const auto& bid = calc.form1.symbols[h].bidegree;
      if (!bid || bid->first != 1 || bid->second != 0) continue;  // (1,0) input only
      ModElem eta = ModElem::basis(calc.form1_space(), {h});
      ModElem eta_star = calc.star_form(eta);
      ModElem acc = ModElem::zero(out_space);
      for (const auto& [tk, tv] : inv.terms()) {
        ModElem cbar = ModElem(Ebar, {{SymTuple(1, tk[0]), tv}});
        ModElem gpart = ModElem::basis(g.E, {static_cast<unsigned char>(tk[1])});
        ModElem c = from_bar(cbar);
        // sigma01(c (x) eta*)
        ModElem flipped = ModElem::zero(out_space);
        ModElem c_eta = tensor(c, eta_star);
        for (const auto& [ck, cv] : c_eta.terms()) {
          const ModElem& val =
              dbar.sigma01[static_cast<unsigned char>(ck[0])][static_cast<unsigned char>(ck[1])];
          flipped += val.left_mul(cv);
        }
        // <e_s, bar k> xi* (x) g per term xi (x) k
        for (const auto& [fk, fv] : flipped.terms()) {
          unsigned char xi = fk[0], ks = fk[1];
          ModElem xi_star =
              calc.star_form(ModElem::basis(calc.form1_space(), {xi}).left_mul(fv));
          acc += tensor(xi_star.left_mul(g.g_up[s][ks]), gpart);
        }
      }
      sig[s][h] = acc;
    }
  }
  return sig;
}

Report check_metric_preservation(const Connection& c, const HermMetric& g) {
  Report report;
  CheckRunner checks(report);
  const Calculus& calc = *c.calc;
  const int n = g.rank();
  checks.run(
      "chern.metric_preserved",
      "d<e^i, bar e^j> = (id (x) <,>)(nabla e^i (x) bar e^j) + (<,> (x) id)(e^i (x) nabla~ bar e^j)",
      [&]() -> std::optional<std::string> {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            ModElem lhs = calc.d_model(g.g_up[i][j]);
            ModElem rhs = ModElem::zero(calc.form1_space());
            auto it = c.nabla.find(SymTuple(1, static_cast<char>(i)));
            if (it != c.nabla.end())
              for (const auto& [k, v] : it->second.terms())
                rhs += ModElem::basis(calc.form1_space(), {static_cast<unsigned char>(k[0])})
                           .left_mul(v)
                           .right_mul(g.g_up[static_cast<unsigned char>(k[1])][j]);
            ModElem tilde = right_conjugate_connection_value(c, j);
            for (const auto& [k, v] : tilde.terms()) {
              // term bar(e_a) (x) (1-form); v sits on the bar leg
              unsigned char a = k[0], fsym = k[1];
              ModuleSpace Ebar = g.E;
              Ebar.legs[0].bar = !Ebar.legs[0].bar;
              ModElem barpart = ModElem(Ebar, {{SymTuple(1, static_cast<char>(a)), v}});
              AlgElem factor = g.pair(ModElem::basis(g.E, {i}), barpart);
              rhs += ModElem::basis(calc.form1_space(), {fsym}).left_mul(factor);
            }
            if (lhs != rhs)
              return "entry (" + std::to_string(i) + "," + std::to_string(j) +
                     "): d g = " + lhs.str() + " but the connection side gives " + rhs.str();
          }
        }
        return std::nullopt;
      });
  return report;
}

}  // namespace ncg
