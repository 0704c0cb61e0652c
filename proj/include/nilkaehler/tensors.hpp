#pragma once

// Two-forms, endomorphisms and the pseudo-Kaehler constraint residuals.

#include <array>
#include <stdexcept>
#include <vector>

#include "nilkaehler/liealg.hpp"

namespace nilkaehler {

/// Dense n x n x n array.
template <class F>
class Tensor3 {
public:
  explicit Tensor3(std::size_t n = 0) : n_(n), data_(n * n * n, F(0L)) {}
  std::size_t dim() const { return n_; }
  F& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  const F& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }
  bool is_zero() const {
    for (const auto& x : data_)
      if (!nilkaehler::is_zero(x)) return false;
    return true;
  }
  const std::vector<F>& data() const { return data_; }

private:
  std::size_t n_;
  std::vector<F> data_;
};

/// Dense n^4 array.
template <class F>
class Tensor4 {
public:
  explicit Tensor4(std::size_t n = 0) : n_(n), data_(n * n * n * n, F(0L)) {}
  std::size_t dim() const { return n_; }
  F& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  const F& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  bool is_zero() const {
    for (const auto& x : data_)
      if (!nilkaehler::is_zero(x)) return false;
    return true;
  }

private:
  std::size_t n_;
  std::vector<F> data_;
};

/// omega(e_i, e_j) = omega_ij, antisymmetric.
template <class F>
class TwoForm {
public:
  explicit TwoForm(std::size_t dim = 0) : m_(dim, dim) {}
  explicit TwoForm(Matrix<F> m) : m_(std::move(m)) {
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = 0; j < m_.cols(); ++j)
        if (!is_zero(m_(i, j) + m_(j, i))) throw std::invalid_argument("two-form matrix is not antisymmetric");
  }

  /// Adds c e^i ^ e^j.
  void add_term(std::size_t i, std::size_t j, const F& c) {
    if (i == j) throw std::invalid_argument("e^i ^ e^i vanishes");
    m_(i, j) += c;
    m_(j, i) -= c;
  }

  std::size_t dim() const { return m_.rows(); }
  const F& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix<F>& matrix() const { return m_; }

  F eval(const Vector<F>& x, const Vector<F>& y) const {
    F out(0L);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (!is_zero(y[j]) && !is_zero(m_(i, j))) out += x[i] * m_(i, j) * y[j];
    }
    return out;
  }

private:
  Matrix<F> m_;
};

/// J e_i = J_i^k e_k: row i is the image of e_i.
template <class F>
using Endomorphism = Matrix<F>;

template <class F>
Vector<F> apply(const Endomorphism<F>& J, const Vector<F>& v) {
  Vector<F> out(J.cols(), F(0L));
  for (std::size_t m = 0; m < J.rows(); ++m) {
    if (is_zero(v[m])) continue;
    for (std::size_t k = 0; k < J.cols(); ++k)
      if (!is_zero(J(m, k))) out[k] += v[m] * J(m, k);
  }
  return out;
}

/// dw(e_i, e_j, e_k) = w([e_i,e_j],e_k) - w([e_i,e_k],e_j) + w([e_j,e_k],e_i); all index orders stored.
template <class F>
Tensor3<F> exterior_d(const LieAlgebra<F>& alg, const TwoForm<F>& w) {
  const std::size_t n = alg.dim();
  Tensor3<F> d(n);
  auto e = [&](std::size_t i) { return alg.basis_vector(i); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        F v = w.eval(alg.bracket(e(i), e(j)), e(k)) - w.eval(alg.bracket(e(i), e(k)), e(j)) +
              w.eval(alg.bracket(e(j), e(k)), e(i));
        d(i, j, k) = v;
        d(j, k, i) = v;
        d(k, i, j) = v;
        d(j, i, k) = -v;
        d(i, k, j) = -v;
        d(k, j, i) = -v;
      }
  return d;
}

template <class F>
bool is_closed(const LieAlgebra<F>& alg, const TwoForm<F>& w) {
  return exterior_d(alg, w).is_zero();
}

/// Pairs (x in C^1 g, z in center) with w(x, z) != 0, over bases of both.
template <class F>
std::vector<std::string> derived_center_pairing_violations(const LieAlgebra<F>& alg, const TwoForm<F>& w) {
  std::vector<std::string> out;
  auto series = descending_series(alg);
  if (series.size() < 2) return out;
  auto z = center(alg);
  for (const auto& x : series[1].basis())
    for (const auto& c : z.basis()) {
      F v = w.eval(x, c);
      if (!is_zero(v)) out.push_back("w(C^1, Z) = " + FieldTraits<F>::str(v));
    }
  return out;
}

template <class F>
bool nondegenerate(const TwoForm<F>& w) {
  return !is_zero(determinant(w.matrix()));
}

/// N_ij^k = J_i^l J_j^m C_lm^k - J_i^l J_m^k C_lj^m - J_j^l J_m^k C_il^m - C_ij^k.
template <class F>
Tensor3<F> nijenhuis(const LieAlgebra<F>& alg, const Endomorphism<F>& J) {
  const std::size_t n = alg.dim();
  Tensor3<F> N(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector<F> ei = alg.basis_vector(i), Jei = J.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector<F> ej = alg.basis_vector(j), Jej = J.row(j);
      Vector<F> a = alg.bracket(Jei, Jej);
      Vector<F> b = nilkaehler::apply(J, alg.bracket(Jei, ej));
      Vector<F> c = nilkaehler::apply(J, alg.bracket(ei, Jej));
      Vector<F> d = alg.bracket(ei, ej);
      for (std::size_t k = 0; k < n; ++k) {
        F v = a[k] - b[k] - c[k] - d[k];
        N(i, j, k) = v;
        N(j, i, k) = -v;
      }
    }
  }
  return N;
}

template <class F>
bool is_integrable(const LieAlgebra<F>& alg, const Endomorphism<F>& J) {
  return nijenhuis(alg, J).is_zero();
}

/// E_ij = w_kj J_i^k + w_is J_j^s.
template <class F>
Matrix<F> compat_residual(const TwoForm<F>& w, const Endomorphism<F>& J) {
  const Matrix<F>& W = w.matrix();
  return J * W + W * J.transpose();
}

template <class F>
bool is_compatible(const TwoForm<F>& w, const Endomorphism<F>& J) {
  return compat_residual(w, J).is_zero();
}

/// J^2 + I.
template <class F>
Matrix<F> almost_complex_residual(const Endomorphism<F>& J) {
  return J * J + Matrix<F>::identity(J.rows());
}

/// a_0 = 0, a_l = {X : [X, g] and [JX, g] in a_{l-1}}, until stable.
template <class F>
std::vector<Subspace<F>> j_ascending_series(const LieAlgebra<F>& alg, const Endomorphism<F>& J) {
  if (!J.is_numeric())
    throw UnboundParameterError("a_l(J) needs a numeric J; bind all parameters first");
  const std::size_t n = alg.dim();
  std::vector<Subspace<F>> series{Subspace<F>(n)};
  while (series.back().dim() < n) {
    auto next = detail::preimage_of_brackets(alg, series.back(), {nullptr, &J});
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

template <class F>
bool is_nilpotent_J(const LieAlgebra<F>& alg, const Endomorphism<F>& J) {
  return j_ascending_series(alg, J).back().dim() == alg.dim();
}

/// [J e_i, J e_j] = [e_i, e_j] for all i < j.
template <class F>
bool is_abelian_J(const LieAlgebra<F>& alg, const Endomorphism<F>& J) {
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto a = alg.bracket(J.row(i), J.row(j));
      auto b = alg.bracket(alg.basis_vector(i), alg.basis_vector(j));
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(a[k] - b[k])) return false;
    }
  return true;
}

}  // namespace nilkaehler
