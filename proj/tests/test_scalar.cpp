#include <random>

#include "doctest.h"
#include "ncg/parser.hpp"
#include "ncg/scalar.hpp"

using namespace ncg;

namespace {

Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), ex(-3, 3), len(0, 2);
  Scalar v = Scalar::zero();
  int terms = len(rng) + 1;
  for (int t = 0; t < terms; ++t) {
    Scalar c = Scalar::rational(coef(rng));
    if (coef(rng) > 2) c += Scalar::i() * Scalar::rational(coef(rng));
    v += c * Scalar::s_pow(ex(rng));
  }
  return v;
}

}  // namespace

TEST_CASE("scalar arithmetic basics") {
  Scalar q = Scalar::q();
  CHECK(q * q == Scalar::q_pow(2));
  CHECK(Scalar::one() - Scalar::q_pow(-2) ==
        (Scalar::q_pow(2) - Scalar::one()) / Scalar::q_pow(2));
  Scalar iq = Scalar::i() * q;
  CHECK(iq * iq == -Scalar::q_pow(2));
  CHECK_THROWS_AS(Scalar::one() / Scalar::zero(), Error);
}

TEST_CASE("q-integers") {
  CHECK(Scalar::qint(2, 2) == Scalar::one() + Scalar::q_pow(2));
  CHECK(Scalar::qint(1, -2) == Scalar::one());
  CHECK(Scalar::qint(3, -2) == Scalar::one() + Scalar::q_pow(-2) + Scalar::q_pow(-4));
  CHECK(Scalar::qint(0, 2).is_zero());
  for (int k : {-2, -1, 1, 2})
    for (int n = 0; n <= 12; ++n)
      CHECK(Scalar::qint(n, k) * (Scalar::one() - Scalar::q_pow(k)) ==
            Scalar::one() - Scalar::q_pow(k * n));
}

TEST_CASE("star involution") {
  CHECK(Scalar::i().star() == -Scalar::i());
  Scalar x = Scalar::q() + Scalar::i() * Scalar::q_pow(3);
  CHECK(x.star() == Scalar::q() - Scalar::i() * Scalar::q_pow(3));
  CHECK(Scalar::s_pow(1).star() == Scalar::s_pow(1));
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    Scalar a = random_scalar(rng), b = random_scalar(rng);
    CHECK(a.star().star() == a);
    CHECK((a * b).star() == a.star() * b.star());
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * a.inv() == Scalar::one());
  }
}

TEST_CASE("specialization") {
  CHECK(Scalar::q_pow(2).specialize(2) == GaussQ(mpq_class(16)));
  Scalar half = Scalar::one() / (Scalar::one() + Scalar::q());
  CHECK(half.specialize(1) == GaussQ(mpq_class(1, 2)));
  Scalar pole = Scalar::one() / (Scalar::q() - Scalar::one());
  CHECK_THROWS_AS(pole.specialize(1), Error);
  CHECK(Scalar::s_pow(3).specialize(mpq_class(3, 2)) == GaussQ(mpq_class(27, 8)));
}

TEST_CASE("square roots") {
  auto r = Scalar::q_pow(3).sqrt();
  REQUIRE(r.has_value());
  CHECK(*r == Scalar::s_pow(3));
  CHECK(!(Scalar::rational(2) * Scalar::q_pow(2)).sqrt().has_value());
  auto r2 = (Scalar::rational(mpq_class(9, 4)) * Scalar::q_pow(2)).sqrt();
  REQUIRE(r2.has_value());
  CHECK(*r2 == Scalar::rational(mpq_class(3, 2)) * Scalar::q());
}

TEST_CASE("scalar printing and parsing round trip") {
  std::mt19937 rng(23);
  for (int t = 0; t < 80; ++t) {
    Scalar a = random_scalar(rng);
    if (t % 3 == 0) a = a / (Scalar::one() + Scalar::q_pow(2));
    CAPTURE(a.str());
    CHECK(parse_scalar(a.str()) == a);
  }
  CHECK(parse_scalar("q^(1/2)") == Scalar::s_pow(1));
  CHECK(parse_scalar("q^(-3/2)") == Scalar::s_pow(-3));
  CHECK(parse_scalar("3/2") == Scalar::rational(mpq_class(3, 2)));
  CHECK(parse_scalar("-q") == -Scalar::q());
  CHECK(parse_scalar("1/(1+q^2)") == Scalar::one() / (Scalar::one() + Scalar::q_pow(2)));
}

TEST_CASE("rational q mode substitutes at parse time") {
  ParseOptions opt;
  opt.s0 = mpq_class(2);
  CHECK(parse_scalar("q", opt) == Scalar::rational(4));
  CHECK(parse_scalar("q^-2", opt) == Scalar::rational(mpq_class(1, 16)));
  CHECK(parse_scalar("q^(1/2)", opt) == Scalar::rational(2));
}
