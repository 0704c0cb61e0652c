#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace nilkaehler;
using namespace fixtures;

namespace {

// g21 canonical structure with a symbolic: J e2 = -a e1, J e4 = a e3, J e6 = a e5.
Matrix<Scalar> g21_canonical(const std::string& a = "a") {
  Matrix<Scalar> J = g21_family().substitute({});
  std::map<std::string, Scalar> b{{"psi11", Scalar(0L)}, {"psi12", -S(a)}};
  return J.map([&](const Scalar& x) { return x.substitute(b); });
}

// dw(e_i,e_j,e_k) from the formula, all ordered triples.
Scalar d_by_hand(const LieAlgebra<Scalar>& alg, const TwoForm<Scalar>& w, std::size_t i, std::size_t j, std::size_t k) {
  Scalar s(0L);
  for (std::size_t p = 0; p < alg.dim(); ++p)
    s += alg.C(i, j, p) * w(p, k) - alg.C(i, k, p) * w(p, j) + alg.C(j, k, p) * w(p, i);
  return s;
}

}  // namespace

TEST(Tensors, ExteriorDerivative) {
  EXPECT_TRUE(is_closed(g21(), g21_w2()));
  auto e36 = form({{3, 6, "1"}});
  EXPECT_FALSE(is_closed(g21(), e36));
  // dw(e3, e1, e4) = w([e1,e4], e3) up to sign; nonzero.
  EXPECT_FALSE(is_zero(d_by_hand(g21(), e36, 2, 0, 3)));
  auto d = exterior_d(g21(), e36);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(d(i, j, k), d_by_hand(g21(), e36, i, j, k));
  auto random_form = form({{1, 2, "3"}, {2, 5, "-1/2"}, {4, 6, "lambda"}});
  EXPECT_TRUE(is_closed(abelian(), random_form));
}

TEST(Tensors, Nondegenerate) {
  EXPECT_TRUE(nondegenerate(g21_w2()));
  EXPECT_FALSE(nondegenerate(form({{1, 2, "1"}})));
  EXPECT_TRUE(nondegenerate(standard_form()));
  EXPECT_THROW(TwoForm<Scalar>(matrix({{"0", "1"}, {"1", "0"}})), std::invalid_argument);
}

TEST(Tensors, Nijenhuis) {
  auto J = matrix({{"1", "2", "0", "0", "0", "0"},
                   {"-1", "-1", "0", "0", "0", "0"},
                   {"0", "0", "0", "1", "0", "0"},
                   {"0", "0", "-1", "0", "0", "0"},
                   {"0", "0", "0", "0", "0", "x"},
                   {"0", "0", "0", "0", "-1/x", "0"}});
  EXPECT_TRUE(nijenhuis(abelian(), J).is_zero());
  EXPECT_TRUE(is_integrable(g21(), g21_canonical()));
  EXPECT_TRUE(is_integrable(g21(), g21_family()));
}

TEST(Tensors, NaivePairingOnG24IsNotIntegrable) {
  // J e1 = e2, J e3 = e4, J e5 = e6. Expanding N(e1, e3):
  // [Je1, Je3] = [e2, e4] = 0, J[Je1, e3] = J[e2, e3] = J e5 = e6,
  // J[e1, Je3] = J[e1, e4] = J e6 = -e5, [e1, e3] = 0, so N(e1, e3) = -e6 + e5.
  auto N = nijenhuis(g24(), standard_J());
  EXPECT_EQ(N(0, 2, 4), Scalar(1L));
  EXPECT_EQ(N(0, 2, 5), Scalar(-1L));
  EXPECT_FALSE(is_integrable(g24(), standard_J()));
}

TEST(Tensors, Compatibility) {
  auto w2 = form({{1, 6, "1"}, {2, 5, "1"}, {3, 4, "-1"}});
  auto w1 = form({{1, 6, "1"}, {3, 4, "1"}, {2, 5, "-1"}});
  EXPECT_TRUE(is_compatible(w2, g16_J0()));
  EXPECT_FALSE(is_compatible(w1, g16_J0()));
  EXPECT_TRUE(is_compatible(w1, Matrix<Scalar>(6, 6)));
  EXPECT_TRUE(compat_residual(g21_w2(), g21_family()).is_zero());
}

TEST(Tensors, CompatResidualIsLinear) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-4, 4);
  auto rnd = [&] {
    Matrix<Scalar> m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = Scalar(d(rng));
    return m;
  };
  for (int t = 0; t < 10; ++t) {
    auto J1 = rnd(), J2 = rnd();
    Scalar a(d(rng)), b(d(rng));
    auto lhs = compat_residual(g21_w2(), J1.scaled(a) + J2.scaled(b));
    auto rhs = compat_residual(g21_w2(), J1).scaled(a) + compat_residual(g21_w2(), J2).scaled(b);
    EXPECT_TRUE(lhs == rhs);
  }
}

TEST(Tensors, AlmostComplexResidual) {
  EXPECT_TRUE(almost_complex_residual(g21_canonical()).is_zero());
  EXPECT_TRUE(almost_complex_residual(Matrix<Scalar>::identity(6)) == Matrix<Scalar>::identity(6).scaled(Scalar(2L)));
  auto J2 = matrix({{"0", "1", "psi31", "psi41", "psi51", "-lambda*psi52"},
                    {"-1", "0", "psi41", "-psi31", "psi52", "lambda*psi51-(psi41^2+psi31^2)*(lambda+1)"},
                    {"0", "0", "0", "1", "psi41*(lambda+1)/lambda", "psi31*(lambda+1)"},
                    {"0", "0", "-1", "0", "-psi31*(lambda+1)/lambda", "psi41*(lambda+1)"},
                    {"0", "0", "0", "0", "0", "-lambda"},
                    {"0", "0", "0", "0", "1/lambda", "0"}});
  EXPECT_TRUE(almost_complex_residual(J2).is_zero());
}

TEST(Tensors, JAscendingSeries) {
  auto J = g21_canonical("1");
  EXPECT_EQ(dims(j_ascending_series(g21(), J)), (std::vector<std::size_t>{0, 2, 4, 6}));
  EXPECT_TRUE(is_nilpotent_J(g21(), J));
  EXPECT_EQ(dims(j_ascending_series(abelian(), standard_J())), (std::vector<std::size_t>{0, 6}));
  EXPECT_THROW(j_ascending_series(g21(), g21_family()), UnboundParameterError);

  auto J24 = matrix({{"1", "-2", "0", "0", "0", "0"},
                     {"1", "-1", "0", "0", "0", "0"},
                     {"0", "0", "0", "-2", "0", "0"},
                     {"0", "0", "1/2", "0", "0", "0"},
                     {"0", "0", "0", "0", "1", "2"},
                     {"0", "0", "0", "0", "-1", "-1"}});
  ASSERT_TRUE(almost_complex_residual(J24).is_zero());
  ASSERT_TRUE(is_integrable(g24(), J24));
  EXPECT_TRUE(is_nilpotent_J(g24(), J24));
}

TEST(Tensors, JSeriesInsideAscendingSeries) {
  auto J = g21_family().substitute({{"psi11", Rational(1, 2)}, {"psi12", Rational(3)}});
  auto a = j_ascending_series(g21(), J);
  auto g = ascending_series(g21());
  for (std::size_t l = 1; l < a.size() && l < g.size(); ++l) EXPECT_TRUE(g[l].contains(a[l]));
}

TEST(Tensors, AbelianJ) {
  EXPECT_TRUE(is_abelian_J(g21(), g21_canonical()));
  // J0 is bi-invariant: [J0 X, J0 Y] = -[X, Y], so it is not abelian.
  EXPECT_FALSE(is_abelian_J(g16(), g16_J0()));
  auto b = g16().bracket(g16_J0().row(0), g16_J0().row(2));
  EXPECT_EQ(b[4], Scalar(-1L));
  // The case-2 family is abelian exactly at psi34 = 1.
  auto J2 = matrix({{"0", "-1", "0", "0", "0", "0"},
                    {"1", "0", "0", "0", "0", "0"},
                    {"0", "0", "0", "-1/psi34", "0", "0"},
                    {"0", "0", "psi34", "0", "0", "0"},
                    {"0", "0", "0", "0", "0", "1"},
                    {"0", "0", "0", "0", "-1", "0"}});
  ASSERT_TRUE(is_integrable(g16(), J2));
  EXPECT_TRUE(is_abelian_J(g16(), J2.substitute({{"psi34", Rational(1)}})));
  EXPECT_FALSE(is_abelian_J(g16(), J2.substitute({{"psi34", Rational(-1)}})));
  auto J24 = matrix({{"0", "-2", "0", "0", "0", "0"},
                     {"1/2", "0", "0", "0", "0", "0"},
                     {"0", "0", "0", "-2", "0", "0"},
                     {"0", "0", "1/2", "0", "0", "0"},
                     {"0", "0", "0", "0", "0", "2"},
                     {"0", "0", "0", "0", "-1/2", "0"}});
  EXPECT_FALSE(is_abelian_J(g24(), J24));
}

TEST(Tensors, DerivedCenterPairing) {
  // g21: C^1 = <e4, e6>, center = <e5, e6>.
  auto alg = fixtures::g21();
  EXPECT_TRUE(derived_center_pairing_violations(alg, fixtures::g21_w2()).empty());
  auto bad = fixtures::form({{1, 6, "1"}, {2, 3, "1"}, {4, 5, "1"}});
  auto v = derived_center_pairing_violations(alg, bad);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "w(C^1, Z) = 1");
  EXPECT_TRUE(derived_center_pairing_violations(fixtures::abelian(), fixtures::standard_form(3)).empty());
}
