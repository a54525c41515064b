#include "ncg/connection.hpp"

#include "ncg/error.hpp"

namespace ncg {

ModElem Connection::apply(const ModElem& m) const {
  ModElem out = ModElem::zero(omega_E());
  for (const auto& [k, v] : m.terms()) {
    out += tensor(calc->d_model(v), ModElem::basis(m.space(), k));
    auto it = nabla.find(k);
    if (it != nabla.end() && !it->second.is_zero()) out += it->second.left_mul(v);
  }
  return out;
}

ModElem Connection::sigma_apply(const ModElem& m, int leg) const {
  if (!has_sigma()) fail(errc::not_invertible, "connection has no braiding table");
  return apply_pair_map(sigma, m, leg, omega_E());
}

ModElem Connection::sigma_inv_apply(const ModElem& m, int leg) const {
  if (!has_sigma_inv()) fail(errc::not_invertible, "connection has no inverse braiding table");
  return apply_pair_map(sigma_inv, m, leg, E_omega());
}

Report Connection::validate(const std::vector<AlgElem>& generators) const {
  Report report;
  CheckRunner checks(report);
  const int nsym = static_cast<int>(E.legs[0].fam->symbols.size());
  const int nform = static_cast<int>(calc->form1.symbols.size());

  if (!has_sigma()) {
    checks.skip("connection.braiding_law", "sigma(e (x) d a) = nabla(e a) - nabla(e) a",
                "no braiding table");
    return report;
  }

  checks.run("connection.braiding_law", "sigma(e (x) d a) = nabla(e a) - nabla(e) a",
             [&]() -> std::optional<std::string> {
               for (int s = 0; s < nsym; ++s) {
                 ModElem e = ModElem::basis(E, {s});
                 for (const AlgElem& a : generators) {
                   ModElem lhs = sigma_apply(tensor(e, calc->d_model(a)));
                   ModElem rhs = apply(e.right_mul(a)) - apply(e).right_mul(a);
                   if (lhs != rhs)
                     return E.legs[0].fam->symbols[s].name + " with a = " + a.str() +
                            ": sigma gives " + lhs.str() + " but the law needs " + rhs.str();
                 }
               }
               return std::nullopt;
             });

  if (!has_sigma_inv())
    checks.skip("connection.sigma_inverse", "sigma and its inverse compose to the identity",
                "no inverse table");
  else
  checks.run("connection.sigma_inverse", "sigma and its inverse compose to the identity",
             [&]() -> std::optional<std::string> {
               for (int s = 0; s < nsym; ++s) {
                 for (int fsym = 0; fsym < nform; ++fsym) {
                   ModElem ef = tensor(ModElem::basis(E, {s}),
                                       ModElem::basis(calc->form1_space(), {fsym}));
                   if (sigma_inv_apply(sigma_apply(ef)) != ef)
                     return "sigma^{-1} sigma != id at " +
                            E.legs[0].fam->symbols[s].name + " (x) " +
                            calc->form1.symbols[fsym].name;
                   ModElem fe = tensor(ModElem::basis(calc->form1_space(), {fsym}),
                                       ModElem::basis(E, {s}));
                   if (sigma_apply(sigma_inv_apply(fe)) != fe)
                     return "sigma sigma^{-1} != id at " + calc->form1.symbols[fsym].name +
                            " (x) " + E.legs[0].fam->symbols[s].name;
                 }
               }
               return std::nullopt;
             });

  checks.run("connection.sigma_bimodule", "sigma is right linear over the algebra",
             [&]() -> std::optional<std::string> {
               for (int s = 0; s < nsym; ++s) {
                 for (int fsym = 0; fsym < nform; ++fsym) {
                   ModElem ef = tensor(ModElem::basis(E, {s}),
                                       ModElem::basis(calc->form1_space(), {fsym}));
                   for (const AlgElem& a : generators) {
                     if (sigma_apply(ef.right_mul(a)) != sigma_apply(ef).right_mul(a))
                       return "not right linear at " + E.legs[0].fam->symbols[s].name +
                              " (x) " + calc->form1.symbols[fsym].name + " with " + a.str();
                   }
                 }
               }
               return std::nullopt;
             });

  return report;
}

ModElem right_conjugate_connection_value(const Connection& c, int symbol) {
  ModuleSpace Ebar = c.E;
  Ebar.legs[0].bar = !Ebar.legs[0].bar;
  ModuleSpace out_space = ModuleSpace::tensor(Ebar, c.calc->form1_space());
  ModElem out = ModElem::zero(out_space);
  auto it = c.nabla.find(SymTuple(1, static_cast<char>(symbol)));
  if (it == c.nabla.end()) return out;
  // nabla e = kappa (x) f termwise; emit bar(f) (x) kappa*
  for (const auto& [k, v] : it->second.terms()) {
    unsigned char fi = k[0], ei = k[1];
    ModElem kappa_star =
        c.calc->star_form(ModElem::basis(c.calc->form1_space(), {fi}).left_mul(v));
    out += tensor(ModElem::basis(Ebar, {ei}), kappa_star);
  }
  return out;
}

Connection conjugate_connection(const Connection& c) {
  if (!c.has_sigma_inv())
    fail(errc::not_invertible, "conjugate connection needs an invertible braiding");
  Connection out;
  out.E = c.E;
  out.E.legs[0].bar = !out.E.legs[0].bar;
  out.calc = c.calc;

  // star^{-1} as a leg map bar(Omega1) -> Omega1
  LegMap star_inv;
  star_inv.source = &c.calc->form1;
  star_inv.source_bar = true;
  star_inv.target = c.calc->form1_space();
  for (size_t i = 0; i < c.calc->form1.symbols.size(); ++i) {
    const auto& [coeff, j] = c.calc->star1[i];
    star_inv.values.push_back(
        ModElem::basis(c.calc->form1_space(), {j}).scaled(coeff));
  }

  const int nsym = static_cast<int>(c.E.legs[0].fam->symbols.size());
  for (int s = 0; s < nsym; ++s) {
    auto it = c.nabla.find(SymTuple(1, static_cast<char>(s)));
    ModElem value = it == c.nabla.end() ? ModElem::zero(c.omega_E()) : it->second;
    ModElem flipped = c.sigma_inv_apply(value);
    ModElem result = apply_leg_map(star_inv, upsilon(to_bar(flipped)), 0);
    out.nabla.emplace(SymTuple(1, static_cast<char>(s)), result);
  }
  return out;
}

Connection tensor_connection(const Connection& ce, const Connection& cf) {
  if (ce.calc != cf.calc) fail(errc::internal, "tensor connection across calculi");
  if (ce.E.leg_count() != 1 || cf.E.leg_count() != 1)
    fail(errc::internal, "tensor connection expects single leg factors");
  Connection out;
  out.E = ModuleSpace::tensor(ce.E, cf.E);
  out.calc = ce.calc;
  const int ne = static_cast<int>(ce.E.legs[0].fam->symbols.size());
  const int nf = static_cast<int>(cf.E.legs[0].fam->symbols.size());
  for (int s = 0; s < ne; ++s) {
    ModElem es = ModElem::basis(ce.E, {s});
    for (int t = 0; t < nf; ++t) {
      ModElem ft = ModElem::basis(cf.E, {t});
      ModElem first = tensor(ce.apply(es), ft);
      ModElem second = ce.sigma_apply(tensor(es, cf.apply(ft)), 0);
      SymTuple key;
      key.push_back(static_cast<char>(s));
      key.push_back(static_cast<char>(t));
      out.nabla.emplace(key, first + second);
    }
  }
  return out;
}

std::vector<std::vector<ModElem>> christoffel(const Connection& c) {
  const int nsym = static_cast<int>(c.E.legs[0].fam->symbols.size());
  std::vector<std::vector<ModElem>> gamma(
      nsym, std::vector<ModElem>(nsym, ModElem::zero(c.calc->form1_space())));
  for (int i = 0; i < nsym; ++i) {
    auto it = c.nabla.find(SymTuple(1, static_cast<char>(i)));
    if (it == c.nabla.end()) continue;
    for (const auto& [k, v] : it->second.terms()) {
      unsigned char fsym = k[0], esym = k[1];
      gamma[i][esym] =
          gamma[i][esym] - ModElem::basis(c.calc->form1_space(), {fsym}).left_mul(v);
    }
  }
  return gamma;
}

std::map<SymTuple, ModElem> curvature(const Connection& c) {
  const Calculus& calc = *c.calc;
  auto gamma = christoffel(c);
  const int nsym = static_cast<int>(gamma.size());
  ModuleSpace out_space = ModuleSpace::tensor(calc.form2_space(), c.E);
  std::map<SymTuple, ModElem> out;
  for (int i = 0; i < nsym; ++i) {
    ModElem ri = ModElem::zero(out_space);
    for (int k = 0; k < nsym; ++k) {
      ModElem two_form = calc.d1(gamma[i][k]);
      for (int j = 0; j < nsym; ++j) two_form += calc.wedge11(gamma[i][j], gamma[j][k]);
      ri += tensor(-two_form, ModElem::basis(c.E, {k}));
    }
    out.emplace(SymTuple(1, static_cast<char>(i)), ri);
  }
  return out;
}

}  // namespace ncg
