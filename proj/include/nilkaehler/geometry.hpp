#pragma once

// Associated metric, Levi-Civita connection and curvature of left-invariant structures.

#include <string>
#include <utility>
#include <vector>

#include "nilkaehler/tensors.hpp"

namespace nilkaehler {

template <class F>
struct Metric {
  Matrix<F> g;
  Matrix<F> g_inv;
  SideConditions conditions;
};

class GeometryError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// g_ij = w_is J_j^s.
template <class F>
Metric<F> associated_metric(const TwoForm<F>& w, const Endomorphism<F>& J) {
  Metric<F> m;
  m.g = w.matrix() * J.transpose();
  if (!(m.g == m.g.transpose())) throw GeometryError("w(X, JY) is not symmetric: (w, J) incompatible");
  try {
    m.g_inv = inverse(m.g, &m.conditions);
  } catch (const std::domain_error&) {
    throw GeometryError("associated metric is singular");
  }
  return m;
}

/// Gamma_ij^n = 1/2 g^{kn} (g_pk C_ij^p + g_pj C_ki^p + g_ip C_kj^p); nabla_{e_i} e_j = Gamma_ij^n e_n.
template <class F>
Tensor3<F> christoffel(const LieAlgebra<F>& alg, const Metric<F>& metric) {
  const std::size_t n = alg.dim();
  const Matrix<F>& g = metric.g;
  Tensor3<F> gC(n);  // gC(i, j, k) = sum_p C_ij^p g_pk
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p) {
        if (is_zero(alg.C(i, j, p))) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (!is_zero(g(p, k))) gC(i, j, k) += alg.C(i, j, p) * g(p, k);
      }
  Tensor3<F> lowered(n);  // 2 g(nabla_i e_j, e_k)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        F v = gC(i, j, k) + gC(k, i, j) + gC(k, j, i);
        if (!is_zero(v)) lowered(i, j, k) = v;
      }
  Tensor3<F> gamma(n);
  const F half = F(1L) / F(2L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (is_zero(lowered(i, j, k))) continue;
        for (std::size_t m = 0; m < n; ++m)
          if (!is_zero(metric.g_inv(k, m))) gamma(i, j, m) += lowered(i, j, k) * metric.g_inv(k, m);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m)
        if (!is_zero(gamma(i, j, m))) gamma(i, j, m) *= half;
  return gamma;
}

/// R_ijk^s = Gamma_ip^s Gamma_jk^p - Gamma_jp^s Gamma_ik^p - C_ij^p Gamma_pk^s.
template <class F>
Tensor4<F> curvature(const LieAlgebra<F>& alg, const Tensor3<F>& gamma) {
  const std::size_t n = alg.dim();
  Tensor4<F> R(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t s = 0; s < n; ++s) {
          F v(0L);
          for (std::size_t p = 0; p < n; ++p) {
            if (!is_zero(gamma(i, p, s)) && !is_zero(gamma(j, k, p))) v += gamma(i, p, s) * gamma(j, k, p);
            if (!is_zero(gamma(j, p, s)) && !is_zero(gamma(i, k, p))) v -= gamma(j, p, s) * gamma(i, k, p);
            if (!is_zero(alg.C(i, j, p)) && !is_zero(gamma(p, k, s))) v -= alg.C(i, j, p) * gamma(p, k, s);
          }
          if (!is_zero(v)) {
            R(i, j, k, s) = v;
            R(j, i, k, s) = -v;
          }
        }
  return R;
}

/// R_ijkl = R_ijk^s g_sl.
template <class F>
Tensor4<F> lower_curvature(const Tensor4<F>& up, const Metric<F>& metric) {
  const std::size_t n = up.dim();
  Tensor4<F> down(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t s = 0; s < n; ++s) {
          if (is_zero(up(i, j, k, s))) continue;
          for (std::size_t l = 0; l < n; ++l)
            if (!is_zero(metric.g(s, l))) down(i, j, k, l) += up(i, j, k, s) * metric.g(s, l);
        }
  return down;
}

/// Ric_jk = sum_i R_ijk^i.
template <class F>
Matrix<F> ricci(const Tensor4<F>& up) {
  const std::size_t n = up.dim();
  Matrix<F> ric(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(up(i, j, k, i))) ric(j, k) += up(i, j, k, i);
  return ric;
}

/// g(R, R) = R_ijkl R_pqrs g^{ip} g^{jq} g^{kr} g^{ls}.
template <class F>
F curvature_norm(const Tensor4<F>& down, const Metric<F>& metric) {
  const std::size_t n = down.dim();
  const Matrix<F>& h = metric.g_inv;
  // Raise one slot at a time.
  Tensor4<F> cur = down;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor4<F> next(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t d = 0; d < n; ++d) {
            const F& v = cur(a, b, c, d);
            if (is_zero(v)) continue;
            std::array<std::size_t, 4> idx{a, b, c, d};
            std::size_t old = idx[slot];
            for (std::size_t m = 0; m < n; ++m) {
              if (is_zero(h(old, m))) continue;
              idx[slot] = m;
              next(idx[0], idx[1], idx[2], idx[3]) += v * h(old, m);
            }
          }
    cur = std::move(next);
  }
  F total(0L);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          if (!is_zero(down(a, b, c, d)) && !is_zero(cur(a, b, c, d))) total += down(a, b, c, d) * cur(a, b, c, d);
  return total;
}

/// Sylvester signature (positives, negatives) of a numeric symmetric matrix.
template <class F>
std::pair<int, int> signature(Matrix<F> g) {
  if (!g.is_numeric()) throw UnboundParameterError("signature needs a numeric metric; bind all parameters first");
  const std::size_t n = g.rows();
  int pos = 0, neg = 0;
  std::size_t r = 0;
  while (r < n) {
    // Diagonal pivot if available.
    std::optional<std::size_t> d;
    for (std::size_t i = r; i < n; ++i)
      if (!is_zero(g(i, i))) {
        d = i;
        break;
      }
    if (!d) {
      // All remaining diagonal entries vanish: combine rows/cols r and some j with g(r, j) != 0.
      std::optional<std::size_t> pair_i, pair_j;
      for (std::size_t i = r; i < n && !pair_i; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!is_zero(g(i, j))) {
            pair_i = i;
            pair_j = j;
            break;
          }
      if (!pair_i) throw GeometryError("singular metric");
      // e_i <- e_i + e_j makes the diagonal entry 2 g_ij.
      for (std::size_t k = 0; k < n; ++k) g(*pair_i, k) += g(*pair_j, k);
      for (std::size_t k = 0; k < n; ++k) g(k, *pair_i) += g(k, *pair_j);
      d = pair_i;
    }
    for (std::size_t k = 0; k < n; ++k) std::swap(g(r, k), g(*d, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(g(k, r), g(k, *d));
    F p = g(r, r);
    (FieldTraits<F>::sign(p) > 0 ? pos : neg)++;
    for (std::size_t i = r + 1; i < n; ++i) {
      if (is_zero(g(i, r))) continue;
      F f = g(i, r) / p;
      for (std::size_t k = r; k < n; ++k) g(i, k) -= f * g(r, k);
    }
    ++r;
  }
  return {pos, neg};
}

template <class F>
std::pair<int, int> signature(const Matrix<F>& g, const ParamBinding& binding) {
  return signature(g.substitute(binding));
}

// ---------------------------------------------------------------------------
// Invariant checks. Each returns a list of human-readable violations.

template <class F>
std::vector<std::string> torsion_violations(const LieAlgebra<F>& alg, const Tensor3<F>& gamma) {
  std::vector<std::string> out;
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(gamma(i, j, k) - gamma(j, i, k) - alg.C(i, j, k)))
          out.push_back("torsion at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                        std::to_string(k + 1) + ")");
  return out;
}

/// sum_s Gamma_ij^s g_sk + Gamma_ik^s g_js = 0.
template <class F>
std::vector<std::string> metric_compatibility_violations(const Tensor3<F>& gamma, const Metric<F>& metric) {
  std::vector<std::string> out;
  const std::size_t n = gamma.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        F v(0L);
        for (std::size_t s = 0; s < n; ++s) {
          if (!is_zero(gamma(i, j, s)) && !is_zero(metric.g(s, k))) v += gamma(i, j, s) * metric.g(s, k);
          if (!is_zero(gamma(i, k, s)) && !is_zero(metric.g(j, s))) v += gamma(i, k, s) * metric.g(j, s);
        }
        if (!is_zero(v))
          out.push_back("nabla g at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                        std::to_string(k + 1) + ")");
      }
  return out;
}

template <class F>
std::vector<std::string> bianchi_violations(const Tensor4<F>& up) {
  std::vector<std::string> out;
  const std::size_t n = up.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t s = 0; s < n; ++s)
          if (!is_zero(up(i, j, k, s) + up(j, k, i, s) + up(k, i, j, s)))
            out.push_back("Bianchi at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                          std::to_string(k + 1) + "," + std::to_string(s + 1) + ")");
  return out;
}

template <class F>
std::vector<std::string> pair_symmetry_violations(const Tensor4<F>& down) {
  std::vector<std::string> out;
  const std::size_t n = down.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (!is_zero(down(i, j, k, l) - down(k, l, i, j)))
            out.push_back("R_ijkl != R_klij at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                          std::to_string(k + 1) + "," + std::to_string(l + 1) + ")");
  return out;
}

/// R(X, Y)Z applied on basis components of X, Y, Z.
template <class F>
Vector<F> curvature_apply(const Tensor4<F>& up, const Vector<F>& x, const Vector<F>& y, const Vector<F>& z) {
  const std::size_t n = up.dim();
  Vector<F> out(n, F(0L));
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero(y[j])) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (is_zero(z[k])) continue;
        F c = x[i] * y[j] * z[k];
        for (std::size_t s = 0; s < n; ++s)
          if (!is_zero(up(i, j, k, s))) out[s] += c * up(i, j, k, s);
      }
    }
  }
  return out;
}

/// For X in a_1(J): R(X, Y)Z = R(Z, Y)X = 0 for all basis Y, Z. Needs numeric J.
template <class F>
std::vector<std::string> a1_curvature_violations(const LieAlgebra<F>& alg, const Endomorphism<F>& J,
                                                 const Tensor4<F>& up) {
  std::vector<std::string> out;
  auto series = j_ascending_series(alg, J);
  if (series.size() < 2) return out;
  const std::size_t n = alg.dim();
  for (const auto& x : series[1].basis())
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto y = alg.basis_vector(j), z = alg.basis_vector(k);
        auto a = curvature_apply(up, x, y, z);
        auto b = curvature_apply(up, z, y, x);
        for (std::size_t s = 0; s < n; ++s)
          if (!is_zero(a[s]) || !is_zero(b[s])) {
            out.push_back("R(X,Y)Z != 0 for X in a_1(J), Y=e" + std::to_string(j + 1) + ", Z=e" +
                          std::to_string(k + 1));
            break;
          }
      }
  return out;
}

/// Checks for a type (2,4,6) algebra with the split g = A + B + Z.
struct Type246Report {
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::vector<std::pair<std::string, bool>> conclusions;
  bool hypotheses_hold() const {
    for (const auto& [name, ok] : hypotheses)
      if (!ok) return false;
    return true;
  }
  bool conclusions_hold() const {
    for (const auto& [name, ok] : conclusions)
      if (!ok) return false;
    return true;
  }
  bool passed() const { return hypotheses_hold() && conclusions_hold(); }
};

template <class F>
Type246Report type246_structure_check(const LieAlgebra<F>& alg, const TwoForm<F>& w, const Endomorphism<F>& J,
                                      const std::vector<Vector<F>>& A, const std::vector<Vector<F>>& B,
                                      const std::vector<Vector<F>>& Z) {
  Type246Report rep;
  const std::size_t n = alg.dim();
  auto all_zero = [](const Vector<F>& v) {
    for (const auto& x : v)
      if (!is_zero(x)) return false;
    return true;
  };
  // Membership test of a symbolic vector in a span of unit-coordinate blocks.
  auto in_span = [&](const Vector<F>& v, const std::vector<const std::vector<Vector<F>>*>& blocks) {
    std::vector<Vector<F>> rows;
    for (const auto* b : blocks) rows.insert(rows.end(), b->begin(), b->end());
    if (rows.empty()) return all_zero(v);
    Matrix<F> m = Matrix<F>::from_rows(rows);
    std::size_t r = rank(m);
    rows.push_back(v);
    return rank(Matrix<F>::from_rows(rows)) == r;
  };
  auto pairing = [&](const std::vector<Vector<F>>& X, const std::vector<Vector<F>>& Y) {
    Matrix<F> m(X.size(), Y.size());
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = 0; j < Y.size(); ++j) m(i, j) = w.eval(X[i], Y[j]);
    return m;
  };

  auto type = algebra_type(alg);
  rep.hypotheses.push_back({"algebra type (2,4,6)", type == std::vector<std::size_t>{2, 4, 6}});
  std::vector<Vector<F>> all = A;
  all.insert(all.end(), B.begin(), B.end());
  all.insert(all.end(), Z.begin(), Z.end());
  rep.hypotheses.push_back({"A + B + Z spans g", all.size() == n && rank(Matrix<F>::from_rows(all)) == n});
  auto zc = center(alg);
  bool z_is_center = Z.size() == zc.dim();
  for (const auto& z : Z) z_is_center = z_is_center && zc.contains(z);
  rep.hypotheses.push_back({"Z is the center", z_is_center});
  rep.hypotheses.push_back({"A is w-isotropic", pairing(A, A).is_zero()});
  rep.hypotheses.push_back({"Z is w-isotropic", pairing(Z, Z).is_zero()});
  rep.hypotheses.push_back({"A and Z are w-dual", A.size() == Z.size() && !is_zero(determinant(pairing(A, Z)))});
  rep.hypotheses.push_back({"w nondegenerate on B", !is_zero(determinant(pairing(B, B)))});
  std::vector<Vector<F>> BZ = B;
  BZ.insert(BZ.end(), Z.begin(), Z.end());
  bool bz_abelian = true;
  for (const auto& x : BZ)
    for (const auto& y : BZ) bz_abelian = bz_abelian && all_zero(alg.bracket(x, y));
  rep.hypotheses.push_back({"B + Z abelian", bz_abelian});
  auto asc = ascending_series(alg);
  bool bz_is_g2 = asc.size() > 2 && BZ.size() == asc[2].dim();
  for (const auto& v : BZ) bz_is_g2 = bz_is_g2 && asc.size() > 2 && asc[2].contains(v);
  rep.hypotheses.push_back({"B + Z = g_2", bz_is_g2});
  if (J.is_numeric()) rep.hypotheses.push_back({"J nilpotent", is_nilpotent_J(alg, J)});

  Metric<F> metric = associated_metric(w, J);
  Tensor3<F> gamma = christoffel(alg, metric);
  auto nabla = [&](const Vector<F>& x, const Vector<F>& y) {
    Vector<F> out(n, F(0L));
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (is_zero(y[j])) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (!is_zero(gamma(i, j, k))) out[k] += x[i] * y[j] * gamma(i, j, k);
      }
    }
    return out;
  };
  auto containment = [&](const std::vector<Vector<F>>& X, const std::vector<Vector<F>>& Y,
                         const std::vector<const std::vector<Vector<F>>*>& target) {
    for (const auto& x : X)
      for (const auto& y : Y)
        if (!in_span(nabla(x, y), target)) return false;
    return true;
  };
  const std::vector<Vector<F>> none;
  rep.conclusions.push_back({"nabla_A A in B + Z", containment(A, A, {&B, &Z})});
  rep.conclusions.push_back({"nabla_A B in Z", containment(A, B, {&Z})});
  rep.conclusions.push_back({"nabla_B A in Z", containment(B, A, {&Z})});
  rep.conclusions.push_back({"nabla_{B+Z}(B+Z) = 0", containment(BZ, BZ, {&none})});
  rep.conclusions.push_back({"nabla_A Z = nabla_Z A = 0",
                             containment(A, Z, {&none}) && containment(Z, A, {&none})});

  Tensor4<F> up = curvature(alg, gamma);
  bool cor210 = true;
  for (const auto& x : BZ)
    for (std::size_t j = 0; j < n && cor210; ++j)
      for (std::size_t k = 0; k < n && cor210; ++k) {
        auto y = alg.basis_vector(j), z = alg.basis_vector(k);
        cor210 = all_zero(curvature_apply(up, x, y, z)) && all_zero(curvature_apply(up, z, y, x));
      }
  rep.conclusions.push_back({"R(X, Y)Z = R(Z, Y)X = 0 for X in B + Z", cor210});
  bool in_center = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        in_center = in_center &&
                    in_span(curvature_apply(up, alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k)), {&Z});
  rep.conclusions.push_back({"R(X, Y)Z in Z", in_center});
  // With the coordinate split {e1,e2}, {e3,e4}, {e5,e6} only R_12k^s, k in {1,2}, s in {5,6} survive.
  auto coordinate_block = [&](const std::vector<Vector<F>>& blk, std::size_t first) {
    if (blk.size() != 2) return false;
    return in_span(alg.basis_vector(first), {&blk}) && in_span(alg.basis_vector(first + 1), {&blk});
  };
  if (n == 6 && coordinate_block(A, 0) && coordinate_block(B, 2) && coordinate_block(Z, 4)) {
    bool pattern = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t s = 0; s < n; ++s) {
            if (is_zero(up(i, j, k, s))) continue;
            bool allowed = ((i == 0 && j == 1) || (i == 1 && j == 0)) && k < 2 && s >= 4;
            pattern = pattern && allowed;
          }
    rep.conclusions.push_back({"only R_12k^s with k in {1,2}, s in {5,6} nonzero", pattern});
  }
  rep.conclusions.push_back({"Ricci = 0", ricci(up).is_zero()});
  return rep;
}

}  // namespace nilkaehler
