#include "doctest.h"
#include "ncg/models.hpp"
#include "ncg/parser.hpp"

using namespace ncg;

namespace {

std::shared_ptr<Model> model(const char* name) {
  static std::map<std::string, std::shared_ptr<Model>> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto m = build_model(name, {}, QContext{});
  cache.emplace(name, m);
  return m;
}

}  // namespace

TEST_CASE("connection tables satisfy their laws") {
  for (const char* name : {"m2", "qsphere", "qdisk"}) {
    auto m = model(name);
    Report rep = m->nabla->validate(m->spectral.algebra_generators);
    CAPTURE(name);
    CAPTURE(rep.text());
    CHECK(rep.ok());
  }
}

TEST_CASE("charge one connection acts by the projected derivative") {
  auto m = model("qsphere");
  auto E = [&](const char* t) { return parse_expr(t, *m->alg); };
  ModuleSpace S = m->spectral.S;
  ModElem phi = ModElem::basis(S, {0}).left_mul(E("b"));
  ModElem expect = tensor(m->calculus->basis1("e-").left_mul(E("a")), ModElem::basis(S, {0}));
  CHECK(m->nabla->apply(phi) == expect);
  // the vertical part of the derivative never reaches the spinor bundle
  ModElem phi2 = ModElem::basis(S, {1}).left_mul(E("a"));
  ModElem nabla2 = m->nabla->apply(phi2);
  for (const auto& [k, v] : nabla2.terms())
    CHECK(m->calculus->form1.symbols[static_cast<unsigned char>(k[0])].name != "e0");
}

TEST_CASE("disk spinor connection and braiding") {
  auto m = model("qdisk");
  auto E = [&](const char* t) { return parse_expr(t, *m->alg); };
  ModuleSpace S = m->spectral.S;
  ModElem zs = ModElem::basis(S, {0}).left_mul(E("z"));
  CHECK(m->nabla->apply(zs) ==
        tensor(m->calculus->basis1("dz"), ModElem::basis(S, {0})));

  ModElem s_dz = tensor(ModElem::basis(S, {0}), m->calculus->basis1("dz"));
  ModElem q_dz_s =
      tensor(m->calculus->basis1("dz"), ModElem::basis(S, {0})).scaled(Scalar::q());
  CHECK(m->nabla->sigma_apply(s_dz) == q_dz_s);
  ModElem s_dzb = tensor(ModElem::basis(S, {0}), m->calculus->basis1("dzb"));
  CHECK(m->nabla->sigma_apply(s_dzb) ==
        tensor(m->calculus->basis1("dzb"), ModElem::basis(S, {0})).scaled(Scalar::q_pow(-1)));
}

TEST_CASE("matrix model connection") {
  auto m = model("m2");
  auto E = [&](const char* t) { return parse_expr(t, *m->alg); };
  ModuleSpace S = m->spectral.S;
  ModElem phi = ModElem::basis(S, {0}).left_mul(E("E12*E21"));
  ModElem dx = m->calculus->d(E("E12*E21"));
  CHECK(m->nabla->apply(phi) == tensor(dx, ModElem::basis(S, {0})));

  // sigma((x u1 + u u2) (x) xi) = x xi (x) u1 + u xi (x) u2
  ModElem xi = m->calculus->basis1("s").left_mul(E("E21"));
  ModElem lhs = m->nabla->sigma_apply(tensor(phi, xi));
  ModElem rhs = tensor(xi.left_mul(E("E12*E21")), ModElem::basis(S, {0}));
  CHECK(lhs == rhs);
}

TEST_CASE("conjugate connection vanishes on flat generators") {
  for (const char* name : {"qsphere", "qdisk", "m2"}) {
    auto m = model(name);
    for (const auto& [k, v] : m->nabla_bar->nabla) CHECK(v.is_zero());
  }
}

TEST_CASE("tensor connection") {
  auto m = model("qdisk");
  Connection both = tensor_connection(*m->nabla, *m->nabla);
  // flat on the generator pair
  SymTuple key;
  key.push_back(0);
  key.push_back(1);
  CHECK(both.nabla.at(key).is_zero());

  // tensoring with the trivial line returns the same table
  BasisFamily line{"line", {{"one", 0, 0, std::nullopt}}};
  Connection trivial;
  trivial.E = ModuleSpace::single(m->alg.get(), &line);
  trivial.calc = m->calculus.get();
  std::vector<std::vector<Scalar>> w(1, std::vector<Scalar>(2, Scalar::one()));
  trivial.nabla.emplace(SymTuple(1, 0), ModElem::zero(trivial.omega_E()));
  Connection prod = tensor_connection(*m->nabla, trivial);
  auto E = [&](const char* t) { return parse_expr(t, *m->alg); };
  ModElem phi_line = ModElem::basis(prod.E, {0, 0}).left_mul(E("z*w"));
  ModElem plain = ModElem::basis(m->spectral.S, {0}).left_mul(E("z*w"));
  ModElem expect = m->nabla->apply(plain);
  ModElem got = prod.apply(phi_line);
  // strip the trailing trivial leg and compare
  ModTermMap stripped;
  for (const auto& [k, v] : got.terms()) stripped.emplace(k.substr(0, 2), v);
  CHECK(ModElem(expect.space(), std::move(stripped)) == expect);
}

TEST_CASE("curvature of the flat spinor connections vanishes") {
  for (const char* name : {"qsphere", "qdisk", "m2"}) {
    auto m = model(name);
    for (const auto& [k, v] : curvature(*m->nabla)) {
      CAPTURE(name);
      CHECK(v.is_zero());
    }
  }
}
