#include "ncg/spectral.hpp"

#include "ncg/error.hpp"

namespace ncg {

ModElem SpectralData::clifford_apply(const ModElem& omega_s) const {
  return apply_pair_map(clifford, omega_s, 0, S);
}

ModElem SpectralData::clifford_on(const ModElem& xi, const ModElem& phi) const {
  return clifford_apply(tensor(xi, phi));
}

ModElem SpectralData::dirac(const ModElem& phi) const { return clifford_apply(nabla->apply(phi)); }

ModElem SpectralData::j_map(const ModElem& phi) const {
  LegMap j;
  j.source = S.legs[0].fam;
  ModuleSpace Sbar = S;
  Sbar.legs[0].bar = true;
  j.target = Sbar;
  j.values = j_table;
  return apply_leg_map(j, phi, 0);
}

ModElem SpectralData::J(const ModElem& phi) const { return from_bar(j_map(phi)); }

ModElem SpectralData::J_inv(const ModElem& phi) const {
  ModElem out = J(phi);
  return eps == 1 ? out : -out;
}

ModElem SpectralData::gamma(const ModElem& phi) const {
  ModTermMap t;
  for (const auto& [k, v] : phi.terms()) {
    int sign = gamma_sign[static_cast<unsigned char>(k[0])];
    t.emplace(k, sign > 0 ? v : -v);
  }
  return ModElem(phi.space(), std::move(t));
}

ModElem SpectralData::right_action(const ModElem& phi, const AlgElem& a) const {
  return J(J_inv(phi).left_mul(a.star()));
}

AlgElem SpectralData::pair(const ModElem& phi_bar, const ModElem& psi) const {
  AlgElem out(alg, {});
  for (const auto& [kb, cb] : phi_bar.terms()) {
    unsigned char i = kb[0];
    int tw = S.legs[0].fam->symbols[i].twist;
    for (const auto& [ks, cs] : psi.terms()) {
      unsigned char j = ks[0];
      if (pairing[i][j].is_zero()) continue;
      for (const auto& [g, comp] : cs.grade_components())
        out += cb * (comp * alg->qctx.s_pow(2 * tw * g)) * pairing[i][j];
    }
  }
  return out;
}

Scalar SpectralData::inner(const ModElem& phi, const ModElem& psi) const {
  return state->apply(pair(to_bar(phi), psi));
}

bool SpectralData::inner_defined(const ModElem& phi, const ModElem& psi) const {
  return state->defined_on(pair(to_bar(phi), psi));
}

Scalar SpectralData::bilinear(const ModElem& phi, const ModElem& psi) const {
  return state->apply(pair(j_map(phi), psi));
}

ModElem SpectralData::fluctuation(const ModElem& kappa, const ModElem& phi) const {
  ModElem braided = nabla->sigma_apply(tensor(phi, kappa));
  return clifford_apply(braided) - clifford_on(kappa, phi);
}

ModElem SpectralData::fluctuation_via_j(const ModElem& kappa, const ModElem& phi) const {
  ModElem inner_part = clifford_on(calc->star_form(kappa), J_inv(phi));
  ModElem jpart = J(inner_part);
  if (eps_prime < 0) jpart = -jpart;
  return jpart - clifford_on(kappa, phi);
}

namespace {

std::string show(const ModElem& m) { return m.is_zero() ? "0" : m.str(); }

// sign table for real spectral triples by dimension mod 8
struct SignRow {
  int eps, eps_prime, eps_dprime;
  bool has_dprime;
};
SignRow sign_table(int n) {
  switch (((n % 8) + 8) % 8) {
    case 0: return {1, 1, 1, true};
    case 1: return {1, -1, 0, false};
    case 2: return {-1, 1, -1, true};
    case 3: return {-1, 1, 0, false};
    case 4: return {-1, 1, 1, true};
    case 5: return {-1, -1, 0, false};
    case 6: return {1, 1, -1, true};
    case 7: return {1, 1, 0, false};
  }
  return {0, 0, 0, false};
}

}  // namespace

Report axiom_suite(const SpectralData& data, const SuiteOptions& opt) {
  Report report;
  report.cutoff = opt.cutoff;
  CheckRunner checks(report);
  const auto& spinors = opt.test_spinors;
  const auto& gens = data.algebra_generators;
  const Scalar sp = Scalar::rational(data.eps_prime);
  const Scalar se = Scalar::rational(data.eps);

  checks.run("signs.table", "declared signs match the dimension table",
             [&]() -> std::optional<std::string> {
               SignRow row = sign_table(data.dim_n);
               if (row.eps != data.eps || row.eps_prime != data.eps_prime ||
                   (row.has_dprime && row.eps_dprime != data.eps_dprime))
                 return "declared (" + std::to_string(data.eps) + "," +
                        std::to_string(data.eps_prime) + "," + std::to_string(data.eps_dprime) +
                        ") vs table for n = " + std::to_string(data.dim_n);
               return std::nullopt;
             });

  checks.run("axiom.J_squared", "J^2 = eps", [&]() -> std::optional<std::string> {
    for (const ModElem& phi : spinors) {
      ModElem lhs = data.J(data.J(phi));
      ModElem rhs = data.eps == 1 ? phi : -phi;
      if (lhs != rhs) return "phi = " + show(phi) + ": J^2 phi = " + show(lhs);
    }
    return std::nullopt;
  });

  checks.run("axiom.gamma_squared", "gamma^2 = 1", [&]() -> std::optional<std::string> {
    for (const ModElem& phi : spinors)
      if (data.gamma(data.gamma(phi)) != phi) return "phi = " + show(phi);
    return std::nullopt;
  });

  checks.run("axiom.gamma_commutes", "[gamma, a] = 0", [&]() -> std::optional<std::string> {
    for (const ModElem& phi : spinors)
      for (const AlgElem& a : gens)
        if (data.gamma(phi.left_mul(a)) != data.gamma(phi).left_mul(a))
          return "phi = " + show(phi) + ", a = " + a.str();
    return std::nullopt;
  });

  checks.run("axiom.J_gamma", "J gamma = eps'' gamma J", [&]() -> std::optional<std::string> {
    for (const ModElem& phi : spinors) {
      ModElem lhs = data.J(data.gamma(phi));
      ModElem rhs = data.gamma(data.J(phi));
      if (data.eps_dprime < 0) rhs = -rhs;
      if (lhs != rhs) return "phi = " + show(phi);
    }
    return std::nullopt;
  });

  checks.run("axiom.D_gamma", "D gamma = (-1)^{n-1} gamma D",
             [&]() -> std::optional<std::string> {
               int sign = (data.dim_n - 1) % 2 == 0 ? 1 : -1;
               for (const ModElem& phi : spinors) {
                 ModElem lhs = data.dirac(data.gamma(phi));
                 ModElem rhs = data.gamma(data.dirac(phi));
                 if (sign < 0) rhs = -rhs;
                 if (lhs != rhs) return "phi = " + show(phi);
               }
               return std::nullopt;
             });

  checks.run("axiom.order_zero", "[a, J b J^{-1}] = 0", [&]() -> std::optional<std::string> {
    for (const ModElem& phi : spinors)
      for (const AlgElem& a : gens)
        for (const AlgElem& b : gens) {
          ModElem opp = data.right_action(phi, b.star());
          ModElem lhs = opp.left_mul(a);
          ModElem rhs = data.right_action(phi.left_mul(a), b.star());
          if (lhs != rhs)
            return "a = " + a.str() + ", b = " + b.str() + ", phi = " + show(phi);
        }
    return std::nullopt;
  });

  checks.run("axiom.right_action", "phi . a = J a* J^{-1} phi",
             [&]() -> std::optional<std::string> {
               for (const ModElem& phi : spinors)
                 for (const AlgElem& a : gens)
                   if (phi.right_mul(a) != data.right_action(phi, a))
                     return "phi = " + show(phi) + ", a = " + a.str();
               return std::nullopt;
             });

  checks.run("axiom.commutator_clifford", "[D, a] phi = d a |> phi",
             [&]() -> std::optional<std::string> {
               for (const ModElem& phi : spinors)
                 for (const AlgElem& a : gens) {
                   ModElem lhs = data.dirac(phi.left_mul(a)) - data.dirac(phi).left_mul(a);
                   ModElem rhs = data.clifford_on(data.calc->d_model(a), phi);
                   if (lhs != rhs)
                     return "a = " + a.str() + ", phi = " + show(phi) + ": [D,a] phi = " +
                            show(lhs) + " but d a |> phi = " + show(rhs);
                 }
               return std::nullopt;
             });

  checks.run("axiom.first_order", "[[D, a], J b J^{-1}] = 0",
             [&]() -> std::optional<std::string> {
               for (const ModElem& phi : spinors)
                 for (const AlgElem& a : gens)
                   for (const AlgElem& b : gens) {
                     AlgElem bs = b.star();
                     ModElem opp = data.right_action(phi, bs);
                     ModElem lhs = data.dirac(opp.left_mul(a)) - data.dirac(opp).left_mul(a);
                     ModElem inner_comm =
                         data.dirac(phi.left_mul(a)) - data.dirac(phi).left_mul(a);
                     ModElem rhs = data.right_action(inner_comm, bs);
                     if (lhs != rhs)
                       return "a = " + a.str() + ", b = " + b.str() + ", phi = " + show(phi);
                   }
               return std::nullopt;
             });

  checks.run("axiom.JD", "J D = eps' D J", [&]() -> std::optional<std::string> {
    for (const ModElem& phi : spinors) {
      ModElem lhs = data.J(data.dirac(phi));
      ModElem rhs = data.dirac(data.J(phi));
      if (data.eps_prime < 0) rhs = -rhs;
      if (lhs != rhs)
        return "phi = " + show(phi) + ": J D phi = " + show(lhs) + " but eps' D J phi = " +
               show(rhs);
    }
    return std::nullopt;
  });

  checks.run("axiom.clifford_conjugation", "J(xi |> phi) = eps' |> sigma(J phi (x) xi*)",
             [&]() -> std::optional<std::string> {
               for (const ModElem& xi : opt.test_forms)
                 for (const ModElem& phi : spinors) {
                   ModElem lhs = data.J(data.clifford_on(xi, phi));
                   ModElem braided = data.nabla->sigma_apply(
                       tensor(data.J(phi), data.calc->star_form(xi)));
                   ModElem rhs = data.clifford_apply(braided);
                   if (data.eps_prime < 0) rhs = -rhs;
                   if (lhs != rhs)
                     return "xi = " + show(xi) + ", phi = " + show(phi) + ": J(xi |> phi) = " +
                            show(lhs) + " but the braided side = " + show(rhs);
                 }
               return std::nullopt;
             });

  checks.run("axiom.connection_j", "(id (x) j) nabla = nabla_bar j",
             [&]() -> std::optional<std::string> {
               LegMap j;
               j.source = data.S.legs[0].fam;
               ModuleSpace Sbar = data.S;
               Sbar.legs[0].bar = true;
               j.target = Sbar;
               j.values = data.j_table;
               for (const ModElem& phi : spinors) {
                 ModElem lhs = apply_leg_map(j, data.nabla->apply(phi), 1);
                 ModElem rhs = data.nabla_bar->apply(data.j_map(phi));
                 if (lhs != rhs)
                   return "phi = " + show(phi) + ": (id (x) j) nabla phi = " + show(lhs) +
                          " but nabla_bar j phi = " + show(rhs);
               }
               return std::nullopt;
             });

  checks.run("axiom.clifford_bimodule", "the Clifford action is a bimodule map",
             [&]() -> std::optional<std::string> {
               const int nform = static_cast<int>(data.calc->form1.symbols.size());
               const int nsym = static_cast<int>(data.S.legs[0].fam->symbols.size());
               for (int f = 0; f < nform; ++f)
                 for (int s = 0; s < nsym; ++s) {
                   ModElem base = tensor(ModElem::basis(data.calc->form1_space(), {f}),
                                         ModElem::basis(data.S, {s}));
                   for (const AlgElem& a : gens) {
                     if (data.clifford_apply(base.right_mul(a)) !=
                         data.clifford_apply(base).right_mul(a))
                       return data.calc->form1.symbols[f].name + " (x) " +
                              data.S.legs[0].fam->symbols[s].name + " with " + a.str();
                   }
                 }
               return std::nullopt;
             });

  // hermiticity of D through the state
  {
    std::vector<std::pair<ModElem, ModElem>> pairs = opt.hermiticity_pairs;
    if (pairs.empty())
      for (const ModElem& a : spinors)
        for (const ModElem& b : spinors) pairs.emplace_back(a, b);

    checks.run("spectral.hermitian", "<<bar(D psi), phi>> = <<bar psi, D phi>>",
               [&]() -> std::optional<std::string> {
                 int used = 0;
                 for (const auto& [psi, phi] : pairs) {
                   ModElem dpsi = data.dirac(psi), dphi = data.dirac(phi);
                   if (!data.inner_defined(dpsi, phi) || !data.inner_defined(psi, dphi))
                     continue;
                   ++used;
                   if (data.inner(dpsi, phi) != data.inner(psi, dphi))
                     return "psi = " + show(psi) + ", phi = " + show(phi) + ": " +
                            data.inner(dpsi, phi).str() + " vs " +
                            data.inner(psi, dphi).str();
                 }
                 if (used == 0) return "no pair lies in the state domain";
                 return std::nullopt;
               });

    checks.run("spectral.hermitian_bilinear", "eps' ((D psi, phi)) = ((psi, D phi))",
               [&]() -> std::optional<std::string> {
                 int used = 0;
                 for (const auto& [psi, phi] : pairs) {
                   ModElem dpsi = data.dirac(psi), dphi = data.dirac(phi);
                   if (!data.state->defined_on(data.pair(data.j_map(dpsi), phi)) ||
                       !data.state->defined_on(data.pair(data.j_map(psi), dphi)))
                     continue;
                   ++used;
                   if (sp * data.bilinear(dpsi, phi) != data.bilinear(psi, dphi))
                     return "psi = " + show(psi) + ", phi = " + show(phi);
                 }
                 if (used == 0) return "no pair lies in the state domain";
                 return std::nullopt;
               });

    if (!opt.hermiticity_boundary.empty()) {
      checks.expect_fail("spectral.hermitian_boundary",
                         "hermiticity at the domain boundary",
                         [&]() -> std::optional<std::string> {
                           for (const auto& [psi, phi] : opt.hermiticity_boundary) {
                             ModElem dpsi = data.dirac(psi), dphi = data.dirac(phi);
                             Scalar l = data.inner(dpsi, phi), r = data.inner(psi, dphi);
                             if (l != r)
                               return "psi = " + show(psi) + ", phi = " + show(phi) + ": " +
                                      l.str() + " vs " + r.str();
                           }
                           return std::nullopt;
                         });
    }
  }

  // isometry of J, strict or twisted
  {
    auto strict_counterexample = [&]() -> std::optional<std::string> {
      for (const ModElem& phi : spinors)
        for (const ModElem& psi : spinors) {
          if (!data.inner_defined(data.J(phi), data.J(psi)) || !data.inner_defined(psi, phi))
            continue;
          Scalar lhs = data.inner(data.J(phi), data.J(psi));
          Scalar rhs = data.inner(psi, phi);
          if (lhs != rhs)
            return "phi = " + show(phi) + ", psi = " + show(psi) + ": <<J phi, J psi>> = " +
                   lhs.str() + " but <<psi, phi>> = " + rhs.str();
        }
      return std::nullopt;
    };
    if (data.strict_isometry) {
      checks.run("spectral.isometry_strict", "<<bar(J phi), J psi>> = <<bar psi, phi>>",
                 strict_counterexample);
    } else {
      checks.expect_fail("spectral.isometry_strict",
                         "strict isometry fails away from the classical point",
                         strict_counterexample);
      checks.run(
          "spectral.isometry_twisted",
          "<<bar(J phi), J psi>> matches the twist-corrected pairing per chirality",
          [&]() -> std::optional<std::string> {
            int used = 0;
            for (const ModElem& phi : spinors)
              for (const ModElem& psi : spinors) {
                if (phi.terms().size() != 1 || psi.terms().size() != 1) continue;
                unsigned char sphi = phi.terms().begin()->first[0];
                if (sphi != static_cast<unsigned char>(psi.terms().begin()->first[0]))
                  continue;
                // psi = y b, phi = x b: compare <<J phi, J psi>> with
                // q^{sign} << twist_inv(y) b, phi >>
                AlgElem y = psi.terms().begin()->second;
                ModElem twisted =
                    ModElem(data.S, {{SymTuple(1, static_cast<char>(sphi)),
                                      data.state->twist_inv(y)}});
                if (!data.inner_defined(data.J(phi), data.J(psi)) ||
                    !data.inner_defined(twisted, phi))
                  continue;
                ++used;
                Scalar lhs = data.inner(data.J(phi), data.J(psi));
                Scalar rhs = data.alg->qctx.q(data.twisted_isometry_exponent[sphi]) *
                             data.inner(twisted, phi);
                if (lhs != rhs)
                  return "phi = " + show(phi) + ", psi = " + show(psi) + ": " + lhs.str() +
                         " vs " + rhs.str();
              }
            if (used == 0) return "no pair lies in the state domain";
            return std::nullopt;
          });
    }
  }

  checks.run("state.twisted_trace", "state(x y) = state(twist(y) x)",
             [&]() -> std::optional<std::string> {
               auto words = data.alg->normal_words(opt.cutoff);
               for (const Word& wx : words) {
                 AlgElem x(data.alg, data.alg->normal_form({{wx, Scalar::one()}}));
                 for (const Word& wy : words) {
                   if (wx.size() + wy.size() > static_cast<size_t>(opt.cutoff)) continue;
                   AlgElem y(data.alg, data.alg->normal_form({{wy, Scalar::one()}}));
                   AlgElem xy = x * y;
                   AlgElem tyx = data.state->twist(y) * x;
                   if (!data.state->defined_on(xy) || !data.state->defined_on(tyx)) continue;
                   if (data.state->apply(xy) != data.state->apply(tyx))
                     return "x = " + x.str() + ", y = " + y.str();
                 }
               }
               return std::nullopt;
             });

  if (data.check_sufficient_conditions) {
    Connection tensor_nabla = tensor_connection(*data.nabla, *data.nabla);
    checks.run("spectral.herm_sufficient_tensor",
               "the bilinear form annihilates (|> (x) id) nabla on S (x) S",
               [&]() -> std::optional<std::string> {
                 for (const ModElem& phi : spinors)
                   for (const ModElem& psi : spinors) {
                     ModElem t = tensor_nabla.apply(tensor(phi, psi));
                     // contract: bilinear of (|> on first two legs, last leg)
                     ModElem acted = data.clifford_apply(t);
                     Scalar total = Scalar::zero();
                     for (const auto& [k, v] : acted.terms()) {
                       ModElem left =
                           ModElem(data.S, {{SymTuple(1, k[0]), v}});
                       ModElem right = ModElem::basis(data.S, {k[1]});
                       total += data.bilinear(left, right);
                     }
                     if (!total.is_zero())
                       return "phi = " + show(phi) + ", psi = " + show(psi) + ": " +
                              total.str();
                   }
                 return std::nullopt;
               });

    checks.run("spectral.herm_sufficient_braid",
               "(( |> sigma (x) id )) = -eps' (( id (x) |> ))",
               [&]() -> std::optional<std::string> {
                 for (const ModElem& phi : spinors)
                   for (const ModElem& xi : opt.test_forms)
                     for (const ModElem& psi : spinors) {
                       ModElem lhs3 = data.nabla->sigma_apply(tensor(phi, xi));
                       ModElem lhs_s = data.clifford_apply(lhs3);
                       Scalar lhs = Scalar::zero();
                       for (const auto& [k, v] : lhs_s.terms())
                         lhs += data.bilinear(ModElem(data.S, {{k, v}}), psi);
                       Scalar rhs = -sp * data.bilinear(phi, data.clifford_on(xi, psi));
                       if (lhs != rhs)
                         return "phi = " + show(phi) + ", xi = " + show(xi) +
                                ", psi = " + show(psi);
                     }
                 return std::nullopt;
               });
  }

  (void)se;
  return report;
}

Report fluctuation_report(const SpectralData& data, const std::vector<ModElem>& kappas,
                          const std::vector<ModElem>& spinors) {
  Report report;
  CheckRunner checks(report);

  checks.run("fluctuation.zero", "the zero 1-form does not fluctuate",
             [&]() -> std::optional<std::string> {
               ModElem zero_form = ModElem::zero(data.calc->form1_space());
               for (const ModElem& phi : spinors)
                 if (!data.fluctuation(zero_form, phi).is_zero()) return "phi = " + show(phi);
               return std::nullopt;
             });

  checks.run("fluctuation.two_forms_agree",
             "|> sigma(phi (x) kappa) - kappa |> phi = eps' J(kappa* |> J^{-1} phi) - kappa |> phi",
             [&]() -> std::optional<std::string> {
               for (const ModElem& kappa : kappas)
                 for (const ModElem& phi : spinors) {
                   ModElem lhs = data.fluctuation(kappa, phi);
                   ModElem rhs = data.fluctuation_via_j(kappa, phi);
                   if (lhs != rhs)
                     return "kappa = " + show(kappa) + ", phi = " + show(phi) + ": " +
                            show(lhs) + " vs " + show(rhs);
                 }
               return std::nullopt;
             });

  checks.run("fluctuation.antihermitian",
             "kappa* = -kappa gives -eps' J(kappa |> J^{-1} phi) - kappa |> phi",
             [&]() -> std::optional<std::string> {
               int used = 0;
               for (const ModElem& kappa : kappas) {
                 if (data.calc->star_form(kappa) != -kappa) continue;
                 ++used;
                 for (const ModElem& phi : spinors) {
                   ModElem jpart = data.J(data.clifford_on(kappa, data.J_inv(phi)));
                   if (data.eps_prime > 0) jpart = -jpart;
                   ModElem rhs = jpart - data.clifford_on(kappa, phi);
                   if (data.fluctuation(kappa, phi) != rhs)
                     return "kappa = " + show(kappa) + ", phi = " + show(phi);
                 }
               }
               if (used == 0) return "no antihermitian 1-form in the sample";
               return std::nullopt;
             });

  return report;
}

}  // namespace ncg
