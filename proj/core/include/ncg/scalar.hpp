#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "ncg/error.hpp"

namespace ncg {

// Element of Q(i): re + i*im with exact rational parts.
struct GaussQ {
  mpq_class re, im;

  GaussQ() : re(0), im(0) {}
  GaussQ(long n) : re(n), im(0) {}
  GaussQ(const mpq_class& r) : re(r), im(0) {}
  GaussQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static GaussQ i() { return GaussQ(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussQ conj() const { return GaussQ(re, -im); }

  GaussQ operator-() const { return GaussQ(-re, -im); }
  GaussQ operator+(const GaussQ& o) const { return GaussQ(re + o.re, im + o.im); }
  GaussQ operator-(const GaussQ& o) const { return GaussQ(re - o.re, im - o.im); }
  GaussQ operator*(const GaussQ& o) const {
    return GaussQ(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GaussQ operator/(const GaussQ& o) const;

  bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussQ& o) const { return !(*this == o); }

  std::string str() const;
};

// Dense polynomial in one variable over Q(i); coeff(k) is the coefficient of s^k.
class Poly {
 public:
  Poly() = default;
  explicit Poly(GaussQ c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  static Poly monomial(GaussQ c, int k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const GaussQ& coeff(int k) const;
  GaussQ leading() const { return c_.empty() ? GaussQ() : c_.back(); }
  bool is_constant() const { return c_.size() <= 1; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Euclidean division: *this = q*d + r with deg r < deg d.
  static void divmod(const Poly& a, const Poly& d, Poly& q, Poly& r);
  static Poly gcd(Poly a, Poly b);  // monic gcd

  Poly conj() const;  // conjugate coefficients
  GaussQ eval(const mpq_class& x) const;
  std::optional<Poly> sqrt() const;  // exact square root if it exists

  int low_degree() const;  // smallest k with nonzero coeff (0 for zero poly)
  Poly shifted(int k) const;  // multiply by s^k (k >= -low_degree)

  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<GaussQ>& raw() { return c_; }
  const std::vector<GaussQ>& raw() const { return c_; }

 private:
  std::vector<GaussQ> c_;
};

// Element of the field Q(i)(s), s = q^{1/2}, stored as s^e * num/den with
// num, den coprime, both with nonzero constant term, den monic.
// Equality of representations is equality of values.
class Scalar {
 public:
  Scalar() : e_(0), num_(), den_(GaussQ(1)) {}
  Scalar(long n) : Scalar(GaussQ(n)) {}
  explicit Scalar(GaussQ c);
  Scalar(int e, Poly num, Poly den);  // normalizes

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar i() { return Scalar(GaussQ::i()); }
  static Scalar rational(const mpq_class& r) { return Scalar(GaussQ(r)); }
  // s^k, i.e. q^{k/2}
  static Scalar s_pow(int k) { return Scalar(k, Poly(GaussQ(1)), Poly(GaussQ(1))); }
  // q^k
  static Scalar q_pow(int k) { return s_pow(2 * k); }
  static Scalar q() { return q_pow(1); }
  // [n]_{q^k} = 1 + q^k + ... + q^{k(n-1)}
  static Scalar qint(int n, int k);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return *this == one(); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws division_by_zero
  Scalar inv() const { return one() / *this; }
  Scalar pow(int k) const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const {
    return e_ == o.e_ && num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // *-involution: conjugates Q(i) coefficients, fixes s.
  Scalar star() const;

  // Exact evaluation at s = s0; throws pole_at_evaluation_point.
  GaussQ specialize(const mpq_class& s0) const;

  // Exact square root within Q(i)(s) if representable, preferring the
  // canonical root with positive leading rational coefficient.
  std::optional<Scalar> sqrt() const;

  bool is_constant() const { return e_ == 0 && num_.is_constant() && den_.is_constant(); }
  // True if the value is invariant under star (real for q real).
  bool is_star_fixed() const { return *this == star(); }

  // Canonical text form using q-powers (s^(2m) as q^m, s^odd as q^(odd/2)).
  std::string str() const;
  // str() wrapped in parentheses when it is a sum or quotient.
  std::string str_factor() const;

  int s_exponent() const { return e_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

 private:
  void normalize();
  int e_;
  Poly num_, den_;
};

std::string poly_str_in_q(const Poly& p, int shift);  // sum of coeff * q-power terms

// Chooses between symbolic q and a fixed rational point s0 (q = s0^2); model
// builders route every q-dependent constant through this so that a whole
// model can be instantiated at a rational q.
struct QContext {
  std::optional<mpq_class> s0;

  Scalar s_pow(int k) const {
    if (!s0) return Scalar::s_pow(k);
    mpq_class p(1);
    mpq_class b = k >= 0 ? *s0 : mpq_class(1) / *s0;
    for (int j = 0; j < (k >= 0 ? k : -k); ++j) p *= b;
    return Scalar::rational(p);
  }
  Scalar q(int k = 1) const { return s_pow(2 * k); }
  Scalar qint(int n, int k) const {
    Scalar r = Scalar::zero();
    for (int m = 0; m < n; ++m) r += s_pow(2 * k * m);
    return r;
  }
};

}  // namespace ncg
