#include "ncg/models.hpp"

#include <algorithm>

#include "ncg/builtins.hpp"
#include "ncg/error.hpp"
#include "ncg/parser.hpp"

namespace ncg {

namespace {

Scalar param_or(const std::map<std::string, std::string>& params, const std::string& key,
                const Scalar& fallback, const QContext& ctx) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  return parse_scalar(it->second, ParseOptions{ctx.s0});
}

Scalar sqrt_or_reject(const Scalar& x, const std::string& what) {
  auto r = x.sqrt();
  if (!r)
    fail(errc::parameter_not_representable,
         what + " would need a square root of " + x.str() + " outside the scalar field");
  return *r;
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(errc::constraint_violated, what);
}

std::vector<std::vector<ModElem>> flip_sigma(const ModuleSpace& S, const Calculus& calc,
                                             const std::vector<std::vector<Scalar>>& weight) {
  // sigma(s_i (x) xi_f) = weight[i][f] * xi_f (x) s_i
  ModuleSpace out = ModuleSpace::tensor(calc.form1_space(), S);
  const int ns = static_cast<int>(S.legs[0].fam->symbols.size());
  const int nf = static_cast<int>(calc.form1.symbols.size());
  std::vector<std::vector<ModElem>> table(ns, std::vector<ModElem>(nf, ModElem::zero(out)));
  for (int i = 0; i < ns; ++i)
    for (int f = 0; f < nf; ++f)
      table[i][f] = ModElem::basis(out, {f, i}).scaled(weight[i][f]);
  return table;
}

std::vector<std::vector<ModElem>> flip_sigma_inv(const ModuleSpace& S, const Calculus& calc,
                                                 const std::vector<std::vector<Scalar>>& weight) {
  // sigma^{-1}(xi_f (x) s_i) = weight[i][f]^{-1} * s_i (x) xi_f
  ModuleSpace out = ModuleSpace::tensor(S, calc.form1_space());
  const int ns = static_cast<int>(S.legs[0].fam->symbols.size());
  const int nf = static_cast<int>(calc.form1.symbols.size());
  std::vector<std::vector<ModElem>> table(nf, std::vector<ModElem>(ns, ModElem::zero(out)));
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < ns; ++i)
      table[f][i] = ModElem::basis(out, {i, f}).scaled(weight[i][f].inv());
  return table;
}

}  // namespace

std::vector<std::string> model_names() { return {"m2", "qsphere", "qdisk", "qdisk-localized"}; }

std::shared_ptr<Model> build_model(const std::string& name,
                                   const std::map<std::string, std::string>& params,
                                   const QContext& ctx) {
  for (const auto& [k, v] : params)
    if (k != "alpha" && k != "beta")
      fail(errc::unresolved_parameters, "unknown parameter '" + k + "'");

  auto m = std::make_shared<Model>();
  m->name = name;
  ParseOptions popt{ctx.s0};

  if (name == "m2") {
    m->alg = parse_presentation(builtins::m2_presentation, popt);
    m->calculus = make_m2_calculus(m->alg.get());
    m->spinor_family = std::make_shared<BasisFamily>(
        BasisFamily{"m2_spinors", {{"u1", 0, 0, std::nullopt}, {"u2", 0, 0, std::nullopt}}});
    ModuleSpace S = ModuleSpace::single(m->alg.get(), m->spinor_family.get());

    m->alpha = Scalar::one();
    m->beta = Scalar::one();
    m->delta = Scalar::one();
    m->mu = Scalar::one();

    m->nabla = std::make_shared<Connection>();
    m->nabla->E = S;
    m->nabla->calc = m->calculus.get();
    std::vector<std::vector<Scalar>> w(2, std::vector<Scalar>(2, Scalar::one()));
    m->nabla->sigma = flip_sigma(S, *m->calculus, w);
    m->nabla->sigma_inv = flip_sigma_inv(S, *m->calculus, w);
    m->nabla_bar = std::make_shared<Connection>(conjugate_connection(*m->nabla));

    m->state = std::make_shared<StateFunctional>(StateFunctional::matrix_trace(m->alg.get()));

    SpectralData& sd = m->spectral;
    sd.alg = m->alg.get();
    sd.calc = m->calculus.get();
    sd.S = S;
    sd.nabla = m->nabla.get();
    sd.nabla_bar = m->nabla_bar.get();
    sd.state = m->state.get();
    sd.alpha = m->alpha;
    sd.beta = m->beta;
    sd.delta = m->delta;
    sd.mu = m->mu;
    sd.dim_n = 2;
    sd.eps = -1;
    sd.eps_prime = 1;
    sd.eps_dprime = -1;
    sd.strict_isometry = true;
    sd.check_sufficient_conditions = true;
    sd.twisted_isometry_exponent = {0, 0};

    // (p s + r t) |> (x u1 + u u2) = p u u1 + r x u2
    int is = m->calculus->form1.index_of("s"), it = m->calculus->form1.index_of("t");
    sd.clifford.assign(2, std::vector<ModElem>(2, ModElem::zero(S)));
    sd.clifford[is][1] = ModElem::basis(S, {0});
    sd.clifford[it][0] = ModElem::basis(S, {1});

    ModuleSpace Sbar = S;
    Sbar.legs[0].bar = true;
    sd.j_table = {ModElem::basis(Sbar, {1}), -ModElem::basis(Sbar, {0})};
    sd.gamma_sign = {-1, 1};
    sd.pairing = {{m->alg->unit(), AlgElem(m->alg.get(), {})},
                  {AlgElem(m->alg.get(), {}), m->alg->unit()}};
    sd.algebra_generators = {m->alg->gen("E12"), m->alg->gen("E21")};
    m->spinor_coeff_grade = {std::nullopt, std::nullopt};
    m->form_coeff_grade = {std::nullopt, std::nullopt};
    m->has_spectral = true;
    return m;
  }

  if (name == "qsphere") {
    m->alg = parse_presentation(builtins::su2_presentation, popt);
    m->calculus = make_su2_calculus(m->alg.get());
    m->spinor_family = std::make_shared<BasisFamily>(
        BasisFamily{"su2_spinors", {{"f+", 1, 0, std::nullopt}, {"f-", -1, 0, std::nullopt}}});
    ModuleSpace S = ModuleSpace::single(m->alg.get(), m->spinor_family.get());

    m->alpha = param_or(params, "alpha", Scalar::one(), ctx);
    m->beta = param_or(params, "beta", Scalar::one(), ctx);
    require(!m->beta.is_zero() && !m->alpha.is_zero(), "alpha and beta must be nonzero");
    // delta^2 alpha* = beta q^2 and mu = alpha / (q beta*)
    Scalar delta_sq = m->beta * ctx.q(2) / m->alpha.star();
    m->delta = sqrt_or_reject(delta_sq, "delta");
    require(m->delta.is_star_fixed(), "delta must be star fixed");
    m->mu = m->alpha / (ctx.q() * m->beta.star());
    require(m->mu == ctx.q() / delta_sq,
            "the hermiticity weight must agree with q delta^{-2}");
    require(m->delta * m->delta * m->alpha.star() == m->beta * ctx.q(2),
            "the conjugation constraint on (alpha, beta, delta) fails");

    m->nabla = std::make_shared<Connection>();
    m->nabla->E = S;
    m->nabla->calc = m->calculus.get();
    std::vector<std::vector<Scalar>> w(2, std::vector<Scalar>(3, Scalar::one()));
    m->nabla->sigma = flip_sigma(S, *m->calculus, w);
    m->nabla->sigma_inv = flip_sigma_inv(S, *m->calculus, w);
    m->nabla_bar = std::make_shared<Connection>(conjugate_connection(*m->nabla));

    m->state = std::make_shared<StateFunctional>(StateFunctional::haar(m->alg.get(), 12));

    SpectralData& sd = m->spectral;
    sd.alg = m->alg.get();
    sd.calc = m->calculus.get();
    sd.S = S;
    sd.nabla = m->nabla.get();
    sd.nabla_bar = m->nabla_bar.get();
    sd.state = m->state.get();
    sd.alpha = m->alpha;
    sd.beta = m->beta;
    sd.delta = m->delta;
    sd.mu = m->mu;
    sd.dim_n = 2;
    sd.eps = -1;
    sd.eps_prime = 1;
    sd.eps_dprime = -1;
    sd.strict_isometry = false;
    sd.check_sufficient_conditions = true;
    sd.twisted_isometry_exponent = {1, -1};

    // e+ |> f- = alpha q^{-1} f+ ; e- |> f+ = beta q f-
    int iep = m->calculus->form1.index_of("e+");
    int iem = m->calculus->form1.index_of("e-");
    int ie0 = m->calculus->form1.index_of("e0");
    sd.clifford.assign(3, std::vector<ModElem>(2, ModElem::zero(S)));
    sd.clifford[iep][1] = ModElem::basis(S, {0}).scaled(m->alpha * ctx.q(-1));
    sd.clifford[iem][0] = ModElem::basis(S, {1}).scaled(m->beta * ctx.q());
    (void)ie0;

    ModuleSpace Sbar = S;
    Sbar.legs[0].bar = true;
    sd.j_table = {ModElem::basis(Sbar, {1}).scaled(m->delta),
                  -ModElem::basis(Sbar, {0}).scaled(m->delta.inv())};
    sd.gamma_sign = {1, -1};
    sd.pairing = {{m->alg->unit(), AlgElem(m->alg.get(), {})},
                  {AlgElem(m->alg.get(), {}), m->alg->unit() * m->mu}};
    sd.algebra_generators = {parse_expr("a*b", *m->alg, popt), parse_expr("b*c", *m->alg, popt),
                             parse_expr("d*c", *m->alg, popt)};
    m->spinor_coeff_grade = {-1, 1};
    m->form_coeff_grade = {std::nullopt, -2, 2};  // e0 never occurs in model forms
    m->has_spectral = true;
    return m;
  }

  if (name == "qdisk" || name == "qdisk-localized") {
    bool localized = name == "qdisk-localized";
    m->alg = parse_presentation(
        localized ? builtins::disk_localized_presentation : builtins::disk_presentation, popt);
    m->calculus = make_disk_calculus(m->alg.get());
    m->spinor_family = std::make_shared<BasisFamily>(
        BasisFamily{"disk_spinors", {{"s", 0, 1, std::nullopt}, {"sb", 0, 1, std::nullopt}}});
    ModuleSpace S = ModuleSpace::single(m->alg.get(), m->spinor_family.get());

    m->alpha = param_or(params, "alpha", Scalar::one(), ctx);
    m->beta = param_or(params, "beta", -ctx.q(), ctx);
    require(!m->beta.is_zero() && !m->alpha.is_zero(), "alpha and beta must be nonzero");
    // delta^2 q alpha = -beta*  and  mu beta = -alpha*
    Scalar delta_sq = -m->beta.star() / (ctx.q() * m->alpha);
    m->delta = sqrt_or_reject(delta_sq, "delta");
    require(m->delta.is_star_fixed(), "delta must be star fixed");
    m->mu = -m->alpha.star() / m->beta;
    require(m->mu == ctx.q(-1) / delta_sq,
            "the hermiticity weight must agree with q^{-1} delta^{-2}");
    require(m->delta * m->delta * ctx.q() * m->alpha == -m->beta.star(),
            "the conjugation constraint on (alpha, beta, delta) fails");

    m->nabla = std::make_shared<Connection>();
    m->nabla->E = S;
    m->nabla->calc = m->calculus.get();
    // sigma(s (x) dz) = q dz (x) s, sigma(s (x) dzb) = q^{-1} dzb (x) s
    std::vector<std::vector<Scalar>> w(2, std::vector<Scalar>{ctx.q(), ctx.q(-1)});
    m->nabla->sigma = flip_sigma(S, *m->calculus, w);
    m->nabla->sigma_inv = flip_sigma_inv(S, *m->calculus, w);
    m->nabla_bar = std::make_shared<Connection>(conjugate_connection(*m->nabla));

    m->state = std::make_shared<StateFunctional>(StateFunctional::disk_integral(m->alg.get()));

    SpectralData& sd = m->spectral;
    sd.alg = m->alg.get();
    sd.calc = m->calculus.get();
    sd.S = S;
    sd.nabla = m->nabla.get();
    sd.nabla_bar = m->nabla_bar.get();
    sd.state = m->state.get();
    sd.alpha = m->alpha;
    sd.beta = m->beta;
    sd.delta = m->delta;
    sd.mu = m->mu;
    sd.dim_n = 2;
    sd.eps = -1;
    sd.eps_prime = 1;
    sd.eps_dprime = -1;
    sd.strict_isometry = false;
    sd.check_sufficient_conditions = false;  // the state is only partially defined
    sd.twisted_isometry_exponent = {-1, 1};

    // dz |> sb = alpha w s ; dzb |> s = beta w sb
    int idz = m->calculus->form1.index_of("dz");
    int idzb = m->calculus->form1.index_of("dzb");
    AlgElem wrad = m->alg->gen("w");
    sd.clifford.assign(2, std::vector<ModElem>(2, ModElem::zero(S)));
    sd.clifford[idz][1] = ModElem::basis(S, {0}).left_mul(wrad * m->alpha);
    sd.clifford[idzb][0] = ModElem::basis(S, {1}).left_mul(wrad * m->beta);

    ModuleSpace Sbar = S;
    Sbar.legs[0].bar = true;
    sd.j_table = {ModElem::basis(Sbar, {1}).scaled(m->delta),
                  -ModElem::basis(Sbar, {0}).scaled(m->delta.inv())};
    sd.gamma_sign = {1, -1};
    sd.pairing = {{wrad, AlgElem(m->alg.get(), {})},
                  {AlgElem(m->alg.get(), {}), wrad * m->mu}};
    sd.algebra_generators = {m->alg->gen("z"), m->alg->gen("zb"), m->alg->gen("w")};
    m->spinor_coeff_grade = {std::nullopt, std::nullopt};
    m->form_coeff_grade = {std::nullopt, std::nullopt};
    m->has_spectral = !localized;
    return m;
  }

  fail(errc::unknown_generator, "no model named '" + name + "'");
}

std::vector<ModElem> Model::test_spinors(int cutoff) const {
  ModuleSpace S = spectral.S;
  std::vector<ModElem> out;
  int len = name == "m2" ? 2 : cutoff;
  auto words = alg->normal_words(len);
  const int nsym = static_cast<int>(spinor_family->symbols.size());
  for (int s = 0; s < nsym; ++s) {
    for (const Word& w : words) {
      if (spinor_coeff_grade[s] && alg->word_grade(w) != *spinor_coeff_grade[s]) continue;
      AlgElem coeff(alg.get(), alg->normal_form({{w, Scalar::one()}}));
      out.push_back(ModElem::basis(S, {s}).left_mul(coeff));
    }
  }
  return out;
}

std::vector<ModElem> Model::test_forms(int max_len) const {
  std::vector<ModElem> out;
  auto words = alg->normal_words(max_len);
  const int nf = static_cast<int>(calculus->form1.symbols.size());
  for (int f = 0; f < nf; ++f) {
    if (name == "qsphere" && !calculus->horizontal[f]) continue;
    for (const Word& w : words) {
      if (form_coeff_grade.size() > static_cast<size_t>(f) && form_coeff_grade[f] &&
          alg->word_grade(w) != *form_coeff_grade[f])
        continue;
      AlgElem coeff(alg.get(), alg->normal_form({{w, Scalar::one()}}));
      out.push_back(calculus->basis1(calculus->form1.symbols[f].name).left_mul(coeff));
    }
  }
  return out;
}

std::vector<ModElem> Model::fluctuation_forms() const {
  auto E = [&](const std::string& t) { return parse_expr(t, *alg, ParseOptions{alg->qctx.s0}); };
  std::vector<ModElem> out;
  const Calculus& c = *calculus;
  if (name == "m2") {
    ModElem s = c.basis1("s"), t = c.basis1("t");
    out.push_back(s.left_mul(E("E12")) + t.left_mul(E("E21")));  // antihermitian
    out.push_back(s.scaled(Scalar::i()) - t.scaled(Scalar::i()));  // antihermitian
    out.push_back(s.left_mul(E("E12")) - t.left_mul(E("E21")));
    out.push_back(s.left_mul(E("E12*E21")));
    out.push_back(t.left_mul(E("1 + E21")));
  } else if (name == "qsphere") {
    ModElem ep = c.basis1("e+"), em = c.basis1("e-");
    out.push_back(ep.left_mul(E("b^2")) + em.left_mul(E("q^-1 c^2")));  // antihermitian
    out.push_back(ep.left_mul(E("b^2")));
    out.push_back(ep.left_mul(E("d*b")));
    out.push_back(em.left_mul(E("a^2")));
    out.push_back(em.left_mul(E("a*c")) + ep.left_mul(E("b^2")));
  } else {
    ModElem dz = c.basis1("dz"), dzb = c.basis1("dzb");
    out.push_back(dz.left_mul(E("z")) - dzb.left_mul(E("q^-2 zb")));  // antihermitian
    out.push_back(dz.left_mul(E("w")));
    out.push_back(dzb.left_mul(E("zb")));
    out.push_back(dz.left_mul(E("w")) + dzb.left_mul(E("w")));
    out.push_back(dz.left_mul(E("z")));
  }
  return out;
}

SuiteOptions Model::suite_options(int cutoff) const {
  SuiteOptions opt;
  opt.cutoff = cutoff;
  opt.test_spinors = test_spinors(cutoff);
  opt.test_forms = test_forms(2);
  if (name == "qdisk") {
    // hermiticity holds on the radial family and fails at the boundary word
    ModuleSpace S = spectral.S;
    auto E = [&](const std::string& t) { return parse_expr(t, *alg, ParseOptions{alg->qctx.s0}); };
    for (int mexp = 1; mexp <= 5; ++mexp) {
      for (int j = 0; j <= mexp; ++j) {
        int k = mexp - j;
        ModElem psi = ModElem::basis(S, {1}).left_mul(E("z") * E("w").pow(j));
        ModElem phi = ModElem::basis(S, {0}).left_mul(E("w").pow(k));
        opt.hermiticity_pairs.emplace_back(psi, phi);
        opt.hermiticity_pairs.emplace_back(phi, psi);
      }
    }
    ModElem psi0 = ModElem::basis(S, {1}).left_mul(E("z"));
    ModElem phi0 = ModElem::basis(S, {0});
    opt.hermiticity_boundary.emplace_back(psi0, phi0);
  }
  return opt;
}

Mat2 Mat2::operator+(const Mat2& o) const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = a[i][j] + o.a[i][j];
  return r;
}

Mat2 Mat2::operator-(const Mat2& o) const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = a[i][j] - o.a[i][j];
  return r;
}

Mat2 Mat2::operator*(const Mat2& o) const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r.a[i][j] = r.a[i][j] + a[i][k] * o.a[k][j];
  return r;
}

Mat2 Mat2::scaled(const GaussQ& c) const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = a[i][j] * c;
  return r;
}

Mat2 Mat2::star() const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = a[j][i].conj();
  return r;
}

Mat2 to_matrix(const AlgElem& x) {
  Mat2 out;
  for (const auto& [w, c] : x.terms()) {
    if (!c.is_constant()) fail(errc::internal, "matrix entries must be constants");
    GaussQ v = c.specialize(1);
    Mat2 base;
    if (w.empty())
      base = Mat2::identity();
    else if (w.size() == 1 && w[0] == 0)
      base = Mat2::unit(0, 1);
    else if (w.size() == 1 && w[0] == 1)
      base = Mat2::unit(1, 0);
    else if (w.size() == 2)
      base = Mat2::unit(0, 0);
    else
      fail(errc::internal, "unexpected matrix algebra word");
    out = out + base.scaled(v);
  }
  return out;
}

AlgElem from_matrix(const Presentation* alg, const Mat2& m) {
  auto sc = [](const GaussQ& v) {
    return Scalar::rational(v.re) + Scalar::i() * Scalar::rational(v.im);
  };
  AlgElem e11 = alg->gen("E12") * alg->gen("E21");
  AlgElem e22 = alg->unit() - e11;
  return e11 * sc(m.a[0][0]) + alg->gen("E12") * sc(m.a[0][1]) + alg->gen("E21") * sc(m.a[1][0]) +
         e22 * sc(m.a[1][1]);
}

Report m2_clifford_form(const Model& model) {
  Report report;
  CheckRunner checks(report);
  const GaussQ I = GaussQ::i();

  // gamma^1 = i sigma^1, gamma^2 = i sigma^2 on the spinor doubling index
  Mat2 g1, g2;
  g1.a[0][1] = I;
  g1.a[1][0] = I;
  g2.a[0][1] = GaussQ(1);
  g2.a[1][0] = GaussQ(-1);

  checks.run("m2.clifford_relations", "{gamma^i, gamma^j} = -2 delta_ij",
             [&]() -> std::optional<std::string> {
               if (!(g1 * g1 == Mat2::identity().scaled(GaussQ(-1)))) return "gamma^1 squared";
               if (!(g2 * g2 == Mat2::identity().scaled(GaussQ(-1)))) return "gamma^2 squared";
               if (!(g1 * g2 + g2 * g1 == Mat2::zero())) return "mixed anticommutator";
               return std::nullopt;
             });

  checks.run("m2.grading_matrix", "i^3 gamma^1 gamma^2 = -sigma^3 matches the grading",
             [&]() -> std::optional<std::string> {
               Mat2 g = (g1 * g2).scaled(I * I * I);
               Mat2 minus_sigma3;
               minus_sigma3.a[0][0] = GaussQ(-1);
               minus_sigma3.a[1][1] = GaussQ(1);
               if (!(g == minus_sigma3)) return "product differs from -sigma^3";
               return std::nullopt;
             });

  const std::array<Mat2, 4> basis = {Mat2::unit(0, 0), Mat2::unit(0, 1), Mat2::unit(1, 0),
                                     Mat2::unit(1, 1)};

  // D(x (+) u) via the Clifford form, acting on pairs of matrices
  auto cliff_D = [&](const Mat2& x, const Mat2& u) {
    auto comm = [](const Mat2& g, const Mat2& m) { return g * m - m * g; };
    // -(1/2)(gamma^1 (x) [gamma^1, .] - gamma^2 (x) [gamma^2, .])
    auto apply = [&](const Mat2& A, const Mat2& cx, const Mat2& cu) {
      return std::make_pair(cx.scaled(A.a[0][0]) + cu.scaled(A.a[0][1]),
                            cx.scaled(A.a[1][0]) + cu.scaled(A.a[1][1]));
    };
    auto [x1, u1] = apply(g1, comm(g1, x), comm(g1, u));
    auto [x2, u2] = apply(g2, comm(g2, x), comm(g2, u));
    GaussQ minus_half(mpq_class(-1, 2));
    return std::make_pair((x1 - x2).scaled(minus_half), (u1 - u2).scaled(minus_half));
  };

  checks.run("m2.dirac_clifford_form",
             "D = -(1/2)(gamma^1 (x) [gamma^1,.] - gamma^2 (x) [gamma^2,.]) on all basis spinors",
             [&]() -> std::optional<std::string> {
               const SpectralData& sd = model.spectral;
               for (int which = 0; which < 2; ++which) {
                 for (const Mat2& b : basis) {
                   Mat2 x = which == 0 ? b : Mat2::zero();
                   Mat2 u = which == 1 ? b : Mat2::zero();
                   ModElem phi =
                       ModElem::basis(sd.S, {0}).left_mul(from_matrix(sd.alg, x)) +
                       ModElem::basis(sd.S, {1}).left_mul(from_matrix(sd.alg, u));
                   ModElem dphi = sd.dirac(phi);
                   auto [ex, eu] = cliff_D(x, u);
                   ModElem expected =
                       ModElem::basis(sd.S, {0}).left_mul(from_matrix(sd.alg, ex)) +
                       ModElem::basis(sd.S, {1}).left_mul(from_matrix(sd.alg, eu));
                   if (dphi != expected)
                     return "basis spinor gives " + dphi.str() + " but the Clifford form gives " +
                            expected.str();
                 }
               }
               return std::nullopt;
             });

  checks.run("m2.charge_conjugation", "C(v1, v2) = (-bar v2, bar v1), C^2 = -1, J = C (x) star",
             [&]() -> std::optional<std::string> {
               const SpectralData& sd = model.spectral;
               // C^2 = -1 on formal pairs is the sign bookkeeping below
               for (const Mat2& b : basis) {
                 ModElem phi = ModElem::basis(sd.S, {0}).left_mul(from_matrix(sd.alg, b));
                 // J(x (+) 0) = 0 (+) x*
                 ModElem expected =
                     ModElem::basis(sd.S, {1}).left_mul(from_matrix(sd.alg, b.star()));
                 if (sd.J(phi) != expected) return "J on the first summand";
                 ModElem psi = ModElem::basis(sd.S, {1}).left_mul(from_matrix(sd.alg, b));
                 ModElem expected2 =
                     -ModElem::basis(sd.S, {0}).left_mul(from_matrix(sd.alg, b.star()));
                 if (sd.J(psi) != expected2) return "J on the second summand";
                 if (sd.J(sd.J(phi)) != -phi) return "J squared";
               }
               return std::nullopt;
             });

  checks.run("m2.dirac_matrix_oracle", "D(x (+) u) = [E12, u] (+) [E21, x] by matrix arithmetic",
             [&]() -> std::optional<std::string> {
               const SpectralData& sd = model.spectral;
               Mat2 e12 = Mat2::unit(0, 1), e21 = Mat2::unit(1, 0);
               for (const Mat2& bx : basis)
                 for (const Mat2& bu : basis) {
                   ModElem phi =
                       ModElem::basis(sd.S, {0}).left_mul(from_matrix(sd.alg, bx)) +
                       ModElem::basis(sd.S, {1}).left_mul(from_matrix(sd.alg, bu));
                   Mat2 ex = e12 * bu - bu * e12;
                   Mat2 eu = e21 * bx - bx * e21;
                   ModElem expected =
                       ModElem::basis(sd.S, {0}).left_mul(from_matrix(sd.alg, ex)) +
                       ModElem::basis(sd.S, {1}).left_mul(from_matrix(sd.alg, eu));
                   if (sd.dirac(phi) != expected) return "mismatch against the matrix oracle";
                 }
               return std::nullopt;
             });

  return report;
}

std::vector<std::string> chern_bundle_names() {
  return {"m2-omega10", "qsphere-splus", "qsphere-omega10", "qdisk-omega10", "qdisk-splus"};
}

std::shared_ptr<ChernBundle> build_chern_bundle(const std::string& name, const QContext& ctx) {
  auto b = std::make_shared<ChernBundle>();
  b->name = name;
  ParseOptions popt{ctx.s0};

  auto finish_free_rank_one = [&](const char* sym, int grade, int twist, AlgElem g11) {
    b->E = ModuleSpace::single(b->alg.get(), b->family.get());
    b->metric = make_metric(b->E, b->calculus.get(), {{g11}});
    b->dbar.E = b->E;
    b->dbar.calc = b->calculus.get();
    (void)sym;
    (void)grade;
    (void)twist;
  };

  if (name == "m2-omega10") {
    b->alg = parse_presentation(builtins::m2_presentation, popt);
    b->calculus = make_m2_calculus(b->alg.get());
    b->family = std::make_shared<BasisFamily>(
        BasisFamily{"m2_hol", {{"s", 0, 0, std::nullopt}}});
    finish_free_rank_one("s", 0, 0, b->alg->unit());
    ModuleSpace OE = ModuleSpace::tensor(b->calculus->form1_space(), b->E);
    int it = b->calculus->form1.index_of("t");
    b->dbar.dbar = {ModElem::basis(OE, {it, 0})
                        .left_mul(b->alg->gen("E21") * Scalar::rational(2))};
    // sigma01(s (x) t) = -(t (x) s)
    b->dbar.sigma01.assign(1, std::vector<ModElem>(2, ModElem::zero(OE)));
    b->dbar.sigma01[0][it] = -ModElem::basis(OE, {it, 0});
    b->algebra_generators = {b->alg->gen("E12"), b->alg->gen("E21")};
    // nabla(s) = 2 E12 s (x) s + 2 E21 t (x) s
    int is = b->calculus->form1.index_of("s");
    b->expected_nabla.emplace(
        SymTuple(1, 0),
        ModElem::basis(OE, {is, 0}).left_mul(b->alg->gen("E12") * Scalar::rational(2)) +
            ModElem::basis(OE, {it, 0}).left_mul(b->alg->gen("E21") * Scalar::rational(2)));
    return b;
  }

  if (name == "qsphere-splus" || name == "qsphere-omega10") {
    b->alg = parse_presentation(builtins::su2_presentation, popt);
    b->calculus = make_su2_calculus(b->alg.get());
    bool splus = name == "qsphere-splus";
    b->family = std::make_shared<BasisFamily>(
        splus ? BasisFamily{"su2_hol", {{"f+", 1, 0, std::nullopt}}}
              : BasisFamily{"su2_hol", {{"e+", 2, 1, std::nullopt}}});
    finish_free_rank_one("e", splus ? 1 : 2, splus ? 0 : 1, b->alg->unit());
    ModuleSpace OE = ModuleSpace::tensor(b->calculus->form1_space(), b->E);
    b->dbar.dbar = {ModElem::zero(OE)};
    int iem = b->calculus->form1.index_of("e-");
    b->dbar.sigma01.assign(1, std::vector<ModElem>(3, ModElem::zero(OE)));
    b->dbar.sigma01[0][iem] =
        ModElem::basis(OE, {iem, 0}).scaled(splus ? Scalar::one() : ctx.q(-2));
    b->algebra_generators = {parse_expr("a*b", *b->alg, popt), parse_expr("b*c", *b->alg, popt),
                             parse_expr("d*c", *b->alg, popt)};
    b->expected_nabla.emplace(SymTuple(1, 0), ModElem::zero(OE));
    return b;
  }

  if (name == "qdisk-omega10" || name == "qdisk-splus") {
    b->alg = parse_presentation(builtins::disk_localized_presentation, popt);
    b->calculus = make_disk_calculus(b->alg.get());
    bool omega = name == "qdisk-omega10";
    b->family = std::make_shared<BasisFamily>(
        omega ? BasisFamily{"disk_hol", {{"dz", 1, 2, std::nullopt}}}
              : BasisFamily{"disk_hol", {{"s", 0, 1, std::nullopt}}});
    AlgElem w = b->alg->gen("w");
    // spinor bundle metric carries the spectral weights delta^2 mu = q^{-1}
    AlgElem g11 = omega ? w * w : w * ctx.q(-1);
    finish_free_rank_one("e", omega ? 1 : 0, omega ? 2 : 1, g11);
    ModuleSpace OE = ModuleSpace::tensor(b->calculus->form1_space(), b->E);
    b->dbar.dbar = {ModElem::zero(OE)};
    int idzb = b->calculus->form1.index_of("dzb");
    int idz = b->calculus->form1.index_of("dz");
    b->dbar.sigma01.assign(1, std::vector<ModElem>(2, ModElem::zero(OE)));
    b->dbar.sigma01[0][idzb] =
        ModElem::basis(OE, {idzb, 0}).scaled(omega ? ctx.q(-2) : ctx.q(-1));
    b->algebra_generators = {b->alg->gen("z"), b->alg->gen("zb"), b->alg->gen("w")};
    // Gamma_+ = (q^{-2} + q^{-4}) w^{-1} zb dz for the cotangent line and
    // q^{-2} w^{-1} zb dz for the spinor line
    AlgElem wi = b->alg->gen("wi"), zb = b->alg->gen("zb");
    Scalar coeff = omega ? ctx.q(-2) + ctx.q(-4) : ctx.q(-2);
    b->expected_nabla.emplace(
        SymTuple(1, 0), -ModElem::basis(OE, {idz, 0}).left_mul(wi * zb * coeff));
    return b;
  }

  fail(errc::unknown_generator, "no holomorphic bundle named '" + name + "'");
}

}  // namespace ncg
