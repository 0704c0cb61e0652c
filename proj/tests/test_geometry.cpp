#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace nilkaehler;
using namespace fixtures;

namespace {

Matrix<Scalar> g21_canonical(const Scalar& a) {
  std::map<std::string, Scalar> b{{"psi11", Scalar(0L)}, {"psi12", -a}};
  return g21_family().map([&](const Scalar& x) { return x.substitute(b); });
}

Matrix<Scalar> symmetric(std::initializer_list<std::tuple<int, int, const char*>> entries) {
  Matrix<Scalar> g(6, 6);
  for (auto [i, j, v] : entries) {
    g(i - 1, j - 1) = S(v);
    g(j - 1, i - 1) = S(v);
  }
  return g;
}

// 2 g(nabla_{e_i} e_j, e_k) = g([e_i,e_j],e_k) + g([e_k,e_i],e_j) + g(e_i,[e_k,e_j]).
Scalar koszul(const LieAlgebra<Scalar>& alg, const Matrix<Scalar>& g, std::size_t i, std::size_t j, std::size_t k) {
  auto e = [&](std::size_t m) { return alg.basis_vector(m); };
  auto gv = [&](const Vector<Scalar>& x, const Vector<Scalar>& y) {
    Scalar s(0L);
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b) s += x[a] * g(a, b) * y[b];
    return s;
  };
  return gv(alg.bracket(e(i), e(j)), e(k)) + gv(alg.bracket(e(k), e(i)), e(j)) + gv(e(i), alg.bracket(e(k), e(j)));
}

struct Computed {
  Metric<Scalar> metric;
  Tensor3<Scalar> gamma;
  Tensor4<Scalar> up, down;
};

Computed compute(const LieAlgebra<Scalar>& alg, const TwoForm<Scalar>& w, const Matrix<Scalar>& J) {
  Computed c;
  c.metric = associated_metric(w, J);
  c.gamma = christoffel(alg, c.metric);
  c.up = curvature(alg, c.gamma);
  c.down = lower_curvature(c.up, c.metric);
  return c;
}

}  // namespace

TEST(Geometry, G21MetricMatchesDisplayedMatrix) {
  auto m = associated_metric(g21_w2(), g21_family());
  auto expected = symmetric({{1, 5, "(psi11^2+1)/psi12"},
                             {2, 5, "psi11"},
                             {3, 3, "-(psi11^2+1)/psi12"},
                             {3, 4, "psi11"},
                             {4, 4, "-psi12"},
                             {1, 6, "-psi11"},
                             {2, 6, "-psi12"}});
  EXPECT_TRUE(m.g == expected);
  EXPECT_TRUE((m.g * m.g_inv) == Matrix<Scalar>::identity(6));
  auto conds = m.conditions.strings();
  EXPECT_NE(std::find(conds.begin(), conds.end(), "psi12 != 0"), conds.end());
}

TEST(Geometry, G16BiinvariantMetric) {
  auto w2 = form({{1, 6, "1"}, {2, 5, "1"}, {3, 4, "-1"}});
  auto m = associated_metric(w2, g16_J0());
  EXPECT_TRUE(m.g == symmetric({{1, 5, "1"}, {2, 6, "-1"}, {3, 3, "-1"}, {4, 4, "-1"}}));
}

TEST(Geometry, AbelianStandardMetric) {
  // g_ij = w_is J_j^s: g_11 = w_12 J_1^2 = 1, g_22 = w_21 J_2^1 = 1, ...
  auto m = associated_metric(standard_form(), standard_J());
  EXPECT_TRUE(m.g == Matrix<Scalar>::identity(6));
}

TEST(Geometry, MetricErrors) {
  EXPECT_THROW(associated_metric(form({{1, 6, "1"}, {3, 4, "1"}, {2, 5, "-1"}}), g16_J0()), GeometryError);
  EXPECT_THROW(associated_metric(g21_w2(), Matrix<Scalar>(6, 6)), GeometryError);
}

TEST(Geometry, ChristoffelAgainstKoszulFormula) {
  auto J = g21_canonical(Scalar(1L));
  auto c = compute(g21(), g21_w2(), J);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k) {
        Scalar lowered(0L);
        for (std::size_t l = 0; l < 6; ++l) lowered += c.gamma(i, j, l) * c.metric.g(l, k);
        EXPECT_EQ(lowered * Scalar(2L), koszul(g21(), c.metric.g, i, j, k));
      }
  for (std::size_t i : {4, 5})
    for (std::size_t j : {4, 5})
      for (std::size_t k = 0; k < 6; ++k) EXPECT_TRUE(is_zero(c.gamma(i, j, k)));
  auto flat = compute(abelian(), standard_form(), standard_J());
  EXPECT_TRUE(flat.gamma.is_zero());
  EXPECT_TRUE(flat.up.is_zero());
  EXPECT_TRUE(ricci(flat.up).is_zero());
  EXPECT_TRUE(is_zero(curvature_norm(flat.down, flat.metric)));
}

TEST(Geometry, G21Curvature) {
  auto c = compute(g21(), g21_w2(), g21_family());
  std::map<std::array<std::size_t, 4>, Scalar> expected{{{0, 1, 0, 5}, S("1+psi11^2")},
                                                        {{0, 1, 1, 5}, S("psi12*psi11")},
                                                        {{0, 1, 0, 4}, S("psi12*psi11")},
                                                        {{0, 1, 1, 4}, S("psi12^2")}};
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t s = 0; s < 6; ++s) {
          auto it = expected.find({i, j, k, s});
          Scalar want = it == expected.end() ? Scalar(0L) : it->second;
          EXPECT_EQ(c.up(i, j, k, s), want);
          EXPECT_EQ(c.up(j, i, k, s), -want);
        }
  // Slot convention: R_1212 = R_121^s g_s2.
  EXPECT_EQ(c.down(0, 1, 0, 1), S("-psi12"));
  Scalar by_hand = c.up(0, 1, 0, 4) * c.metric.g(4, 1) + c.up(0, 1, 0, 5) * c.metric.g(5, 1);
  EXPECT_EQ(by_hand, S("-psi12"));
  EXPECT_TRUE(ricci(c.up).is_zero());
  EXPECT_TRUE(is_zero(curvature_norm(c.down, c.metric)));
  EXPECT_TRUE(torsion_violations(g21(), c.gamma).empty());
  EXPECT_TRUE(metric_compatibility_violations(c.gamma, c.metric).empty());
  EXPECT_TRUE(bianchi_violations(c.up).empty());
  EXPECT_TRUE(pair_symmetry_violations(c.down).empty());
}

TEST(Geometry, G14FamilyIsFlat) {
  auto w3 = form({{1, 6, "-1"}, {2, 5, "1"}, {3, 4, "1"}});
  const char* x = "(psi42*(psi11^2+1)-2*psi41*psi12*psi11)/psi12^2";
  const char* t = "-(psi11^2+1)/psi12";
  const char* j52 =
      "(-2*psi11*psi12*(psi42*psi41-psi12*psi51)+psi42^2*(psi11^2+1)+psi12^2*(psi41^2+psi12*psi61))/"
      "((psi11^2+1)*psi12)";
  // Columns of the displayed matrix are the images J e_i.
  auto J = matrix({{"psi11", "psi12", "0", "0", "0", "0"},
                   {t, "-psi11", "0", "0", "0", "0"},
                   {x, "-psi41", "-psi11", t, "0", "0"},
                   {"psi41", "psi42", "psi12", "psi11", "0", "0"},
                   {"psi51", j52, "psi42", "psi41", "psi11", "psi12"},
                   {"psi61", "-psi51", "-psi41", x, t, "-psi11"}})
               .transpose();
  auto rep = verify_family(g14(), w3, J);
  EXPECT_TRUE(rep.passed()) << (rep.failures.empty() ? "" : rep.failures[0]);
  auto c = compute(g14(), w3, J);
  EXPECT_TRUE(c.up.is_zero());
}

TEST(Geometry, G18ThirdCase) {
  auto w3 = form({{1, 6, "-1"}, {2, 5, "1"}, {3, 4, "2"}, {3, 5, "1"}});
  auto J = matrix({{"0", "-3*psi46", "-psi46", "0", "0", "0"},
                   {"0", "0", "0", "3*psi25", "psi25", "0"},
                   {"1/psi46", "0", "0", "-9*psi25", "-3*psi25", "0"},
                   {"0", "-1/psi25", "0", "0", "0", "psi46"},
                   {"0", "2/psi25", "0", "0", "0", "-3*psi46"},
                   {"0", "0", "0", "2/psi46", "1/psi46", "0"}})
               .transpose();
  ASSERT_TRUE(verify_family(g18(), w3, J).passed());
  auto c = compute(g18(), w3, J);
  EXPECT_EQ(c.down(0, 1, 0, 1), S("18*psi25"));
  EXPECT_EQ(c.down(0, 1, 0, 2), S("6*psi25"));
  EXPECT_EQ(c.down(0, 2, 0, 2), S("2*psi25"));
  EXPECT_EQ(c.up(0, 1, 0, 5), S("-6*psi25/psi46"));
  EXPECT_TRUE(ricci(c.up).is_zero());
  EXPECT_TRUE(is_zero(curvature_norm(c.down, c.metric)));
  EXPECT_TRUE(bianchi_violations(c.up).empty());
  EXPECT_TRUE(pair_symmetry_violations(c.down).empty());
}

TEST(Geometry, PerturbedMetricHasNonzeroRicci) {
  auto c = compute(g21(), g21_w2(), g21_canonical(Scalar(1L)));
  Metric<Scalar> m;
  m.g = c.metric.g;
  m.g(5, 5) += Scalar(1L);
  m.g_inv = inverse(m.g);
  auto up = curvature(g21(), christoffel(g21(), m));
  EXPECT_FALSE(ricci(up).is_zero());
}

TEST(Geometry, Signature) {
  auto m = associated_metric(g21_w2(), g21_family());
  // Two hyperbolic planes (e1,e5), (e2,e6) and the block on (e3,e4) with determinant 1 and g33 = 1.
  EXPECT_EQ(signature(m.g, {{"psi11", Rational(0)}, {"psi12", Rational(-1)}}), std::make_pair(4, 2));
  EXPECT_EQ(signature(m.g, {{"psi11", Rational(0)}, {"psi12", Rational(1)}}), std::make_pair(2, 4));
  EXPECT_EQ(signature(Matrix<Scalar>::identity(6)), std::make_pair(6, 0));
  auto g0 = symmetric({{1, 5, "1"}, {2, 6, "-1"}, {3, 3, "-1"}, {4, 4, "-1"}});
  auto [p, q] = signature(g0);
  EXPECT_GT(p, 0);
  EXPECT_GT(q, 0);
  EXPECT_EQ(p + q, 6);
  EXPECT_THROW(signature(m.g), UnboundParameterError);
  EXPECT_THROW(signature(Matrix<Scalar>(6, 6)), GeometryError);
}

TEST(Geometry, SignatureAgreesWithEigenvalues) {
  // Random symmetric rational matrices; compare with floating-point eigenvalue signs.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 25; ++t) {
    Matrix<Scalar> g(5, 5);
    Eigen::MatrixXd e(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i; j < 5; ++j) {
        int v = (i == j && t % 2) ? 0 : d(rng);
        g(i, j) = g(j, i) = Scalar(v);
        e(i, j) = e(j, i) = v;
      }
    if (is_zero(determinant(g))) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
    int p = 0, q = 0;
    for (int k = 0; k < 5; ++k) (es.eigenvalues()[k] > 0 ? p : q)++;
    EXPECT_EQ(signature(g), std::make_pair(p, q));
  }
}

TEST(Geometry, Type246Checks) {
  auto unit = [](std::size_t i) { return Subspace<Scalar>::basis_vector(6, i); };
  std::vector<Vector<Scalar>> A{unit(0), unit(1)}, B{unit(2), unit(3)}, Z{unit(4), unit(5)};
  auto rep = type246_structure_check(g21(), g21_w2(), g21_canonical(S("a")), A, B, Z);
  for (const auto& [name, ok] : rep.hypotheses) EXPECT_TRUE(ok) << name;
  for (const auto& [name, ok] : rep.conclusions) EXPECT_TRUE(ok) << name;
  auto num = type246_structure_check(g21(), g21_w2(), g21_canonical(Scalar(2L)), A, B, Z);
  EXPECT_TRUE(num.passed());

  auto flat = type246_structure_check(abelian(), standard_form(), standard_J(), A, B, Z);
  EXPECT_TRUE(flat.conclusions_hold());
  EXPECT_FALSE(flat.hypotheses_hold());

  auto g13 = algebra({{1, 2, 4, 1}, {1, 3, 5, 1}, {1, 4, 6, 1}, {2, 3, 6, -1}});
  auto w1 = form({{1, 6, "1"}, {2, 5, "-lambda"}, {3, 4, "-(lambda-1)"}});
  auto J1 = matrix({{"0", "-1/((1+lambda)*a)", "0", "0", "0", "0"},
                    {"(1+lambda)*a", "0", "0", "0", "0", "0"},
                    {"0", "0", "0", "-1/a", "0", "0"},
                    {"0", "0", "a", "0", "0", "0"},
                    {"0", "0", "0", "0", "0", "-lambda/((1+lambda)*a)"},
                    {"0", "0", "0", "0", "(1+lambda)*a/lambda", "0"}});
  auto r13 = type246_structure_check(g13, w1, J1, A, B, Z);
  for (const auto& [name, ok] : r13.hypotheses) EXPECT_TRUE(ok) << name;
  for (const auto& [name, ok] : r13.conclusions) EXPECT_TRUE(ok) << name;
}
