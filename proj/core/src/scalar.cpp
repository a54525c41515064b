#include "ncg/scalar.hpp"

#include <sstream>

namespace ncg {

const char* errc_name(errc c) {
  switch (c) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::pole_at_evaluation_point: return "PoleAtEvaluationPoint";
    case errc::syntax_error: return "SyntaxError";
    case errc::grade_mismatch: return "GradeMismatch";
    case errc::star_inconsistent: return "StarInconsistent";
    case errc::unknown_generator: return "UnknownGenerator";
    case errc::non_terminating: return "NonTerminating";
    case errc::not_right_linear: return "NotRightLinear";
    case errc::not_invertible: return "NotInvertible";
    case errc::singular_metric: return "SingularMetric";
    case errc::integral_undefined: return "IntegralUndefined";
    case errc::unresolved_parameters: return "UnresolvedParameters";
    case errc::parameter_not_representable: return "ParameterNotRepresentable";
    case errc::constraint_violated: return "ConstraintViolated";
    case errc::internal: return "InternalError";
  }
  return "Error";
}

GaussQ GaussQ::operator/(const GaussQ& o) const {
  if (o.is_zero()) fail(errc::division_by_zero, "division by zero in Q(i)");
  mpq_class n = o.re * o.re + o.im * o.im;
  return GaussQ((re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n);
}

static std::string rat_str(const mpq_class& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string GaussQ::str() const {
  if (is_zero()) return "0";
  if (im == 0) return rat_str(re);
  std::string imabs = rat_str(abs(im));
  std::string ipart = (imabs == "1") ? "i" : imabs + " i";
  if (re == 0) return (im > 0 ? "" : "-") + ipart;
  return rat_str(re) + (im > 0 ? " + " : " - ") + ipart;
}

Poly Poly::monomial(GaussQ c, int k) {
  Poly p;
  if (c.is_zero()) return p;
  p.c_.assign(k + 1, GaussQ());
  p.c_[k] = std::move(c);
  return p;
}

const GaussQ& Poly::coeff(int k) const {
  static const GaussQ zero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = coeff(k) + o.coeff(k);
  r.normalize();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, GaussQ());
  for (size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (size_t b = 0; b < o.c_.size(); ++b)
      if (!o.c_[b].is_zero()) r.c_[a + b] = r.c_[a + b] + c_[a] * o.c_[b];
  }
  r.normalize();
  return r;
}

void Poly::divmod(const Poly& a, const Poly& d, Poly& q, Poly& r) {
  if (d.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
  q = Poly();
  r = a;
  int dd = d.degree();
  GaussQ lead = d.leading();
  while (!r.is_zero() && r.degree() >= dd) {
    int k = r.degree() - dd;
    GaussQ f = r.leading() / lead;
    Poly t = Poly::monomial(f, k);
    q = q + t;
    r = r - t * d;
  }
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  GaussQ lead = a.leading();
  for (auto& c : a.c_) c = c / lead;
  return a;
}

Poly Poly::conj() const {
  Poly r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

GaussQ Poly::eval(const mpq_class& x) const {
  GaussQ v;
  for (int k = degree(); k >= 0; --k) v = v * GaussQ(x) + c_[k];
  return v;
}

std::optional<Poly> Poly::sqrt() const {
  if (is_zero()) return Poly();
  if (degree() % 2 != 0) return std::nullopt;
  // Coefficient matching from the top; leading coefficient must be a square
  // of a Gaussian rational with rational parts (we only need rational cases).
  auto rat_sqrt = [](const mpq_class& x) -> std::optional<mpq_class> {
    if (x < 0) return std::nullopt;
    mpz_class n = x.get_num(), d = x.get_den(), sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return mpq_class(sn) / mpq_class(sd);
  };
  if (!leading().is_real()) return std::nullopt;
  auto lr = rat_sqrt(leading().re);
  if (!lr) return std::nullopt;
  int hd = degree() / 2;
  Poly h = Poly::monomial(GaussQ(*lr), hd);
  // Solve (h + lower)^2 = *this degree by degree.
  for (int k = hd - 1; k >= 0; --k) {
    Poly sq = h * h;
    GaussQ want = coeff(k + hd) - sq.coeff(k + hd);
    GaussQ c = want / (GaussQ(2) * h.coeff(hd));
    if (!c.is_zero()) h = h + Poly::monomial(c, k);
  }
  if (h * h == *this) return h;
  return std::nullopt;
}

int Poly::low_degree() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return static_cast<int>(k);
  return 0;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly r;
  if (k > 0) {
    r.c_.assign(c_.size() + k, GaussQ());
    for (size_t j = 0; j < c_.size(); ++j) r.c_[j + k] = c_[j];
  } else {
    r.c_.assign(c_.begin() - k, c_.end());
  }
  return r;
}

Scalar::Scalar(GaussQ c) : e_(0), num_(std::move(c)), den_(GaussQ(1)) {}

Scalar::Scalar(int e, Poly num, Poly den) : e_(e), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Scalar::normalize() {
  if (den_.is_zero()) fail(errc::division_by_zero, "zero denominator");
  if (num_.is_zero()) {
    e_ = 0;
    den_ = Poly(GaussQ(1));
    return;
  }
  int ln = num_.low_degree(), ld = den_.low_degree();
  if (ln) num_ = num_.shifted(-ln);
  if (ld) den_ = den_.shifted(-ld);
  e_ += ln - ld;
  if (!den_.is_constant() && !num_.is_constant()) {
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      Poly q, r;
      Poly::divmod(num_, g, q, r);
      num_ = q;
      Poly::divmod(den_, g, q, r);
      den_ = q;
    }
  }
  GaussQ lead = den_.leading();
  if (!(lead == GaussQ(1))) {
    Poly scaled;
    scaled.raw() = den_.raw();
    for (auto& c : scaled.raw()) c = c / lead;
    scaled.normalize();
    den_ = scaled;
    Poly n2;
    n2.raw() = num_.raw();
    for (auto& c : n2.raw()) c = c / lead;
    n2.normalize();
    num_ = n2;
  }
}

Scalar Scalar::qint(int n, int k) {
  if (n < 0) fail(errc::internal, "qint needs n >= 0");
  Scalar r = zero();
  for (int m = 0; m < n; ++m) r += s_pow(2 * k * m);
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  int e = std::min(e_, o.e_);
  Poly a = num_ * o.den_;
  a = a.shifted(e_ - e);
  Poly b = o.num_ * den_;
  b = b.shifted(o.e_ - e);
  return Scalar(e, a + b, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return zero();
  return Scalar(e_ + o.e_, num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) fail(errc::division_by_zero, "scalar division by zero");
  if (is_zero()) return zero();
  return Scalar(e_ - o.e_, num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::pow(int k) const {
  if (k == 0) return one();
  Scalar base = k > 0 ? *this : inv();
  int n = k > 0 ? k : -k;
  Scalar r = one();
  for (int j = 0; j < n; ++j) r *= base;
  return r;
}

Scalar Scalar::star() const {
  Scalar r = *this;
  r.num_ = r.num_.conj();
  r.den_ = r.den_.conj();
  r.normalize();
  return r;
}

GaussQ Scalar::specialize(const mpq_class& s0) const {
  if (s0 == 0) fail(errc::pole_at_evaluation_point, "s0 must be nonzero");
  GaussQ d = den_.eval(s0);
  if (d.is_zero()) fail(errc::pole_at_evaluation_point, "denominator vanishes at s0");
  GaussQ n = num_.eval(s0);
  mpq_class p(1);
  int e = e_;
  mpq_class base = e >= 0 ? s0 : mpq_class(1) / s0;
  for (int j = 0; j < (e >= 0 ? e : -e); ++j) p *= base;
  return n / d * GaussQ(p);
}

std::optional<Scalar> Scalar::sqrt() const {
  if (is_zero()) return zero();
  if (e_ % 2 != 0) return std::nullopt;
  auto ns = num_.sqrt();
  auto ds = den_.sqrt();
  if (!ns || !ds) return std::nullopt;
  Scalar r(e_ / 2, *ns, *ds);
  // canonical root: positive leading rational coefficient
  GaussQ lead = r.num_.leading();
  if (lead.is_real() && lead.re < 0) r = -r;
  return r;
}

static std::string q_power_str(int s_exp) {
  if (s_exp == 0) return "";
  if (s_exp % 2 == 0) {
    int k = s_exp / 2;
    if (k == 1) return "q";
    return "q^" + std::to_string(k);
  }
  std::string sign = s_exp < 0 ? "-" : "";
  return "q^(" + sign + std::to_string(std::abs(s_exp)) + "/2)";
}

// Renders p * s^shift as a sum of coefficient * q-power terms.
std::string poly_str_in_q(const Poly& p, int shift) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const GaussQ& c = p.coeff(k);
    if (c.is_zero()) continue;
    GaussQ cc = c;
    bool neg = false;
    if (cc.is_real() ? cc.re < 0 : (cc.re == 0 && cc.im < 0)) {
      neg = true;
      cc = -cc;
    }
    std::string cs = cc.str();
    bool cs_sum = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    if (cs_sum) cs = "(" + cs + ")";
    std::string qs = q_power_str(k + shift);
    std::string term;
    if (qs.empty())
      term = cs;
    else if (cs == "1")
      term = qs;
    else
      term = cs + " " + qs;
    if (first) {
      out = (neg ? "-" : "") + term;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  if (den_.is_constant()) {
    GaussQ d = den_.coeff(0);
    Poly n = num_;
    if (!(d == GaussQ(1))) {
      for (auto& c : n.raw()) c = c / d;
      n.normalize();
    }
    return poly_str_in_q(n, e_);
  }
  std::string ns = poly_str_in_q(num_, e_);
  std::string ds = poly_str_in_q(den_, 0);
  auto wrap = [](const std::string& x) {
    if (x.find(' ') != std::string::npos) return "(" + x + ")";
    return x;
  };
  return wrap(ns) + "/" + wrap(ds);
}

std::string Scalar::str_factor() const {
  std::string t = str();
  if (t.find(" + ") != std::string::npos || t.find(" - ") != std::string::npos ||
      (!t.empty() && t[0] == '-') || t.find('/') != std::string::npos)
    return "(" + t + ")";
  return t;
}

}  // namespace ncg
