#include "doctest.h"
#include "ncg/builtins.hpp"
#include "ncg/parser.hpp"
#include "ncg/state.hpp"

using namespace ncg;

TEST_CASE("haar state values") {
  auto p = parse_presentation(builtins::su2_presentation);
  auto E = [&](const char* t) { return parse_expr(t, *p); };
  StateFunctional h = StateFunctional::haar(p.get(), 12);

  CHECK(h.apply(p->unit()) == Scalar::one());
  CHECK(h.apply(E("a")).is_zero());
  CHECK(h.apply(E("a*b")).is_zero());
  CHECK(h.apply(E("d*c")).is_zero());
  CHECK(h.apply(E("a^2*b^2")).is_zero());

  // closed form (-q)^k / (1 + q^2 + ... + q^{2k}) derived from the same
  // twisted trace recursion, checked independently of the linear solve
  Scalar q = Scalar::q();
  for (int k = 1; k <= 5; ++k) {
    Scalar expect = (-q).pow(k) / Scalar::qint(k + 1, 2);
    CHECK(h.apply(E("b*c").pow(k)) == expect);
  }
  CHECK(h.apply(E("b*c")) == -q / (Scalar::one() + q * q));

  // the inner product weight on the charge one sector
  AlgElem b = E("b");
  CHECK(h.apply(b.star() * b) == Scalar::one() / (Scalar::one() + q * q));

  // twist skew-commutes with star
  for (const char* t : {"a*b", "b*c", "a^2*b^2", "d*c", "b"}) {
    AlgElem x = E(t);
    CHECK(h.twist(x.star()) == h.twist_inv(x).star());
    CHECK(h.twist_inv(h.twist(x)) == x);
  }
}

TEST_CASE("haar state at rational q") {
  QContext ctx{mpq_class(2)};
  auto p = parse_presentation(builtins::su2_presentation, ParseOptions{ctx.s0});
  StateFunctional h = StateFunctional::haar(p.get(), 8);
  auto E = [&](const char* t) { return parse_expr(t, *p, ParseOptions{ctx.s0}); };
  // q = 4: h(b c) = -4/17
  CHECK(h.apply(E("b*c")) == Scalar::rational(mpq_class(-4, 17)));
  CHECK(h.apply(E("a*b")).is_zero());
}

TEST_CASE("disk integral") {
  auto p = parse_presentation(builtins::disk_presentation);
  auto E = [&](const char* t) { return parse_expr(t, *p); };
  StateFunctional integral = StateFunctional::disk_integral(p.get());

  CHECK(integral.apply(E("w^2")) == Scalar::one());
  CHECK(integral.apply(E("w^3")) == Scalar::one() / (Scalar::one() + Scalar::q_pow(-2)));
  for (int m = 1; m <= 5; ++m)
    CHECK(integral.apply(E("w").pow(m + 1)) == Scalar::qint(m, -2).inv());
  CHECK(integral.apply(E("z*w^2")).is_zero());
  CHECK(integral.apply(E("zb*w^4")).is_zero());
  CHECK_THROWS_AS(integral.apply(E("w")), Error);
  CHECK_THROWS_AS(integral.apply(p->unit()), Error);
  CHECK(!integral.defined_on(E("w + w^2")));
  CHECK(integral.defined_on(E("z + w^2")));

  // twisted trace on the domain: integral(a b) = integral(twist(b) a)
  for (const char* as : {"z*w", "zb*w", "w^2", "z*w^2"}) {
    for (const char* bs : {"zb*w", "z*w", "w^2", "zb"}) {
      AlgElem a = E(as), b = E(bs);
      AlgElem ab = a * b, tba = integral.twist(b) * a;
      if (!integral.defined_on(ab) || !integral.defined_on(tba)) continue;
      CHECK(integral.apply(ab) == integral.apply(tba));
    }
  }
}

TEST_CASE("matrix trace") {
  auto p = parse_presentation(builtins::m2_presentation);
  auto E = [&](const char* t) { return parse_expr(t, *p); };
  StateFunctional tr = StateFunctional::matrix_trace(p.get());
  CHECK(tr.apply(p->unit()) == Scalar::rational(2));
  CHECK(tr.apply(E("E12*E21")) == Scalar::one());
  CHECK(tr.apply(E("E12")).is_zero());
  for (const char* as : {"E12", "E21", "E12*E21", "1 + E12"})
    for (const char* bs : {"E21", "E12*E21 - E21*E12"}) {
      AlgElem a = E(as), b = E(bs);
      CHECK(tr.apply(a * b) == tr.apply(b * a));
    }
}
