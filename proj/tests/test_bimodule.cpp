#include <random>

#include "doctest.h"
#include "ncg/builtins.hpp"
#include "ncg/calculus.hpp"
#include "ncg/parser.hpp"

using namespace ncg;

namespace {

struct SphereFixture {
  std::shared_ptr<Presentation> p = parse_presentation(builtins::su2_presentation);
  std::shared_ptr<Calculus> calc_p = make_su2_calculus(p.get());
  Calculus& calc = *calc_p;
  BasisFamily spinors{"su2_spinors",
                      {{"f+", 1, 0, std::nullopt}, {"f-", -1, 0, std::nullopt}}};
  ModuleSpace S = ModuleSpace::single(p.get(), &spinors);
  AlgElem E(const std::string& t) const { return parse_expr(t, *p); }
};

struct DiskFixture {
  std::shared_ptr<Presentation> p = parse_presentation(builtins::disk_presentation);
  std::shared_ptr<Calculus> calc_p = make_disk_calculus(p.get());
  Calculus& calc = *calc_p;
  BasisFamily spinors{"disk_spinors",
                      {{"s", 0, 1, std::nullopt}, {"sb", 0, 1, std::nullopt}}};
  ModuleSpace S = ModuleSpace::single(p.get(), &spinors);
  AlgElem E(const std::string& t) const { return parse_expr(t, *p); }
};

}  // namespace

TEST_CASE("twisted right action") {
  SphereFixture sph;
  ModElem fp = ModElem::basis(sph.S, {0});
  // spinor generators commute with everything (twist zero)
  CHECK(fp.right_mul(sph.E("a*b")) == fp.left_mul(sph.E("a*b")));
  CHECK(fp.right_mul(sph.E("c")) == fp.left_mul(sph.E("c")));

  ModElem ep = sph.calc.basis1("e+");
  CHECK(ep.right_mul(sph.E("a")) == ep.left_mul(sph.E("q a")));
  ModElem e0 = sph.calc.basis1("e0");
  CHECK(e0.right_mul(sph.E("a")) == e0.left_mul(sph.E("q^2 a")));
  CHECK(e0.right_mul(sph.E("b")) == e0.left_mul(sph.E("q^-2 b")));

  DiskFixture dsk;
  ModElem s = ModElem::basis(dsk.S, {0});
  CHECK(s.right_mul(dsk.E("z")) == s.left_mul(dsk.E("q z")));
  CHECK(s.right_mul(dsk.E("zb")) == s.left_mul(dsk.E("q^-1 zb")));
  ModElem dz = dsk.calc.basis1("dz");
  CHECK(dz.right_mul(dsk.E("z")) == dz.left_mul(dsk.E("q^2 z")));

  // associativity and commuting of the two actions on sample elements
  for (const char* xs : {"a", "b", "a*b", "d*c"}) {
    for (const char* ys : {"c", "d", "b*c"}) {
      AlgElem x = sph.E(xs), y = sph.E(ys);
      CHECK(ep.right_mul(x).right_mul(y) == ep.right_mul(x * y));
      CHECK(ep.left_mul(x).right_mul(y) == ep.right_mul(y).left_mul(x));
    }
  }
}

TEST_CASE("tensor product collects coefficients through twists") {
  SphereFixture sph;
  ModElem ep = sph.calc.basis1("e+");
  ModElem fp = ModElem::basis(sph.S, {0});

  // (x e+) (x) (y f+) carries q^{|y|} from moving y through e+
  AlgElem x = sph.E("b"), y = sph.E("a");
  ModElem lhs = tensor(ep.left_mul(x), fp.left_mul(y));
  ModuleSpace ES = ModuleSpace::tensor(sph.calc.form1_space(), sph.S);
  int ip = sph.calc.form1.index_of("e+");
  ModElem expected = ModElem::basis(ES, {ip, 0}).left_mul(x * sph.E("q a"));
  CHECK(lhs == expected);

  // balance over the algebra: (e+ . a) (x) f+ = e+ (x) (a . f+)
  CHECK(tensor(ep.right_mul(sph.E("a*b")), fp) == tensor(ep, fp.left_mul(sph.E("a*b"))));
  CHECK(tensor(ep.right_mul(sph.E("c")), fp) == tensor(ep, fp.left_mul(sph.E("c"))));

  DiskFixture dsk;
  ModElem s = ModElem::basis(dsk.S, {0});
  ModElem dzb = dsk.calc.basis1("dzb");
  CHECK(tensor(s, dzb).coefficient(SymTuple({0, 1})) == dsk.p->unit());
}

TEST_CASE("conjugation") {
  SphereFixture sph;
  ModElem fp = ModElem::basis(sph.S, {0});
  ModElem m = fp.left_mul(sph.E("a*b"));
  ModElem mb = to_bar(m);
  CHECK(mb.space().legs[0].bar);
  CHECK(mb.coefficient(SymTuple(1, 0)) == sph.E("a*b").star());
  CHECK(from_bar(mb) == m);

  // antilinear in scalars
  ModElem im = m.scaled(Scalar::i());
  CHECK(to_bar(im) == mb.scaled(-Scalar::i()));

  DiskFixture dsk;
  ModElem s = ModElem::basis(dsk.S, {0});
  CHECK(to_bar(s.scaled(Scalar::i())) == to_bar(s).scaled(-Scalar::i()));
  // twist enters the conversion: bar(z s) = q^{-1} z* bar(s)
  ModElem zs = s.left_mul(dsk.E("z"));
  CHECK(to_bar(zs) == to_bar(s).left_mul(dsk.E("q^-1 zb")));
  // double conjugate returns the element
  CHECK(from_bar(to_bar(zs)) == zs);

  // bimodule law a . bar(e) = bar(e . a*) on the barred space
  ModElem sb = to_bar(s);
  for (const char* as : {"z", "zb", "w", "z*w"}) {
    AlgElem a = dsk.E(as);
    CHECK(sb.left_mul(a) == to_bar(s.right_mul(a.star())));
    CHECK(sb.right_mul(a) == to_bar(s.left_mul(a.star())));
  }
}

TEST_CASE("upsilon reverses conjugated tensor words") {
  SphereFixture sph;
  ModElem ep = sph.calc.basis1("e+");
  ModElem fp = ModElem::basis(sph.S, {0});
  ModElem m = tensor(ep, fp);
  ModElem u = upsilon(to_bar(m));
  REQUIRE(u.space().leg_count() == 2);
  CHECK(u.space().legs[0].fam == &sph.spinors);
  CHECK(u.space().legs[0].bar);
  CHECK(u.space().legs[1].fam == &sph.calc.form1);
  CHECK(u.space().legs[1].bar);
  CHECK(u.coefficient(SymTuple({0, 1})) == sph.p->unit());

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(0, 3);
  const char* coeffs[] = {"a", "b + q c", "i d", "1 - q^-1 b*c"};
  for (int t = 0; t < 20; ++t) {
    ModElem x = tensor(ep.left_mul(sph.E(coeffs[pick(rng)])),
                       fp.left_mul(sph.E(coeffs[pick(rng)])));
    ModElem bar_x = to_bar(x);
    CHECK(upsilon_inv(upsilon(bar_x)) == bar_x);
  }

  // bimodule map: a . upsilon(m) = upsilon(m . a*) via the conjugate action
  ModElem bar_m = to_bar(m);
  for (const char* as : {"a*b", "b*c"}) {
    AlgElem a = sph.E(as);
    CHECK(upsilon(bar_m.left_mul(a)) == upsilon(bar_m).left_mul(a));
    CHECK(upsilon(bar_m.right_mul(a)) == upsilon(bar_m).right_mul(a));
  }
}

TEST_CASE("basis maps extend left linearly and can be checked for right linearity") {
  SphereFixture sph;
  // gamma: f+ -> f+, f- -> -f-
  LegMap gamma;
  gamma.source = &sph.spinors;
  gamma.target = sph.S;
  gamma.values = {ModElem::basis(sph.S, {0}), -ModElem::basis(sph.S, {1})};
  ModElem phi =
      ModElem::basis(sph.S, {0}).left_mul(sph.E("b")) + ModElem::basis(sph.S, {1}).left_mul(sph.E("a"));
  ModElem out = apply_leg_map(gamma, phi, 0);
  CHECK(out == ModElem::basis(sph.S, {0}).left_mul(sph.E("b")) -
                   ModElem::basis(sph.S, {1}).left_mul(sph.E("a")));

  std::vector<AlgElem> gens;
  for (size_t g = 0; g < sph.p->generators.size(); ++g) gens.push_back(sph.p->gen(g));
  CHECK_NOTHROW(check_right_linear(gamma, gens));

  // a deliberately non right linear table: f+ -> a f+, f- -> f-
  LegMap broken;
  broken.source = &sph.spinors;
  broken.target = sph.S;
  broken.values = {ModElem::basis(sph.S, {0}).left_mul(sph.E("a")), ModElem::basis(sph.S, {1})};
  CHECK_THROWS_AS(check_right_linear(broken, gens), Error);
}
