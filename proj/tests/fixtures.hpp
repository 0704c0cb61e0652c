#pragma once

#include <initializer_list>
#include <string>
#include <tuple>

#include "nilkaehler/parse.hpp"
#include "nilkaehler/solver.hpp"

namespace fixtures {

using namespace nilkaehler;

inline Scalar S(const std::string& s) { return parse_expr(s); }

// 1-based (i, j, k, c) meaning [e_i, e_j] = c e_k.
inline LieAlgebra<Scalar> algebra(std::initializer_list<std::tuple<int, int, int, long>> brackets, std::size_t n = 6) {
  LieAlgebra<Scalar> alg(n);
  for (auto [i, j, k, c] : brackets) alg.add_bracket(i - 1, j - 1, k - 1, Scalar(c));
  return alg;
}

inline TwoForm<Scalar> form(std::initializer_list<std::tuple<int, int, std::string>> terms, std::size_t n = 6) {
  TwoForm<Scalar> w(n);
  for (const auto& [i, j, c] : terms) w.add_term(i - 1, j - 1, S(c));
  return w;
}

inline Matrix<Scalar> matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<Vector<Scalar>> out;
  for (auto r : rows) {
    Vector<Scalar> row;
    for (const char* s : r) row.push_back(S(s));
    out.push_back(std::move(row));
  }
  return Matrix<Scalar>::from_rows(out);
}

inline LieAlgebra<Scalar> g21() { return algebra({{1, 2, 4, 1}, {1, 4, 6, 1}, {2, 3, 6, 1}}); }
inline TwoForm<Scalar> g21_w2() { return form({{1, 6, "1"}, {2, 5, "1"}, {3, 4, "-1"}}); }

inline Matrix<Scalar> g21_family() {
  return matrix({{"psi11", "-(psi11^2+1)/psi12", "0", "0", "0", "0"},
                 {"psi12", "-psi11", "0", "0", "0", "0"},
                 {"0", "0", "psi11", "(psi11^2+1)/psi12", "0", "0"},
                 {"0", "0", "-psi12", "-psi11", "0", "0"},
                 {"0", "0", "0", "0", "psi11", "(psi11^2+1)/psi12"},
                 {"0", "0", "0", "0", "-psi12", "-psi11"}});
}

inline LieAlgebra<Scalar> g24() { return algebra({{1, 4, 6, 1}, {2, 3, 5, 1}}); }
inline LieAlgebra<Scalar> g25() { return algebra({{1, 2, 3, 1}}); }
inline LieAlgebra<Scalar> g18() { return algebra({{1, 2, 4, 1}, {1, 3, 5, 1}, {2, 3, 6, 1}}); }
inline LieAlgebra<Scalar> g14() { return algebra({{1, 2, 4, 1}, {2, 3, 6, 1}, {2, 4, 5, 1}}); }
inline LieAlgebra<Scalar> g16() { return algebra({{1, 3, 5, 1}, {1, 4, 6, 1}, {2, 3, 6, -1}, {2, 4, 5, 1}}); }
inline LieAlgebra<Scalar> abelian(std::size_t n = 6) { return LieAlgebra<Scalar>(n); }

inline TwoForm<Scalar> standard_form(std::size_t n = 6) {
  TwoForm<Scalar> w(n);
  for (std::size_t i = 0; i + 1 < n; i += 2) w.add_term(i, i + 1, Scalar(1L));
  return w;
}

// J e_{2k+1} = e_{2k+2}, J e_{2k+2} = -e_{2k+1}.
inline Matrix<Scalar> standard_J(std::size_t n = 6) {
  Matrix<Scalar> J(n, n);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    J(i, i + 1) = Scalar(1L);
    J(i + 1, i) = Scalar(-1L);
  }
  return J;
}

inline Matrix<Scalar> g16_J0() {
  return matrix({{"0", "-1", "0", "0", "0", "0"},
                 {"1", "0", "0", "0", "0", "0"},
                 {"0", "0", "0", "1", "0", "0"},
                 {"0", "0", "-1", "0", "0", "0"},
                 {"0", "0", "0", "0", "0", "1"},
                 {"0", "0", "0", "0", "-1", "0"}});
}

inline std::vector<std::size_t> dims(const std::vector<Subspace<Scalar>>& series) {
  std::vector<std::size_t> out;
  for (const auto& s : series) out.push_back(s.dim());
  return out;
}

}  // namespace fixtures
