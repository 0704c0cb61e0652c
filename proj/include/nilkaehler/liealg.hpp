#pragma once

// Lie algebras given by structure constants [e_i, e_j] = C_ij^k e_k (0-based).

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilkaehler/matrix.hpp"

namespace nilkaehler {

template <class F>
class LieAlgebra {
public:
  explicit LieAlgebra(std::size_t dim = 0) : dim_(dim), c_(dim * dim * dim, F(0L)) {
    for (std::size_t i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i + 1));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  /// Sets [e_i, e_j] += value * e_k (and the antisymmetric partner).
  void add_bracket(std::size_t i, std::size_t j, std::size_t k, const F& value) {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw std::out_of_range("bracket index out of range");
    if (i == j) throw std::invalid_argument("bracket [e_i, e_i] must vanish");
    at(i, j, k) += value;
    at(j, i, k) -= value;
  }

  const F& C(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  Vector<F> bracket(const Vector<F>& x, const Vector<F>& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
    Vector<F> out(dim_, F(0L));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (is_zero(y[j])) continue;
        F xy = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (!is_zero(C(i, j, k))) out[k] += xy * C(i, j, k);
      }
    }
    return out;
  }

  Vector<F> basis_vector(std::size_t i) const { return Subspace<F>::basis_vector(dim_, i); }

  /// Nonzero structure constants with i < j.
  std::vector<std::pair<std::array<std::size_t, 3>, F>> constants() const {
    std::vector<std::pair<std::array<std::size_t, 3>, F>> out;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (!is_zero(C(i, j, k))) out.push_back({{i, j, k}, C(i, j, k)});
    return out;
  }

  template <class G, class Fn>
  LieAlgebra<G> convert(Fn fn) const {
    LieAlgebra<G> out(dim_);
    for (const auto& [idx, value] : constants()) out.add_bracket(idx[0], idx[1], idx[2], fn(value));
    return out;
  }

private:
  std::size_t dim_;
  std::vector<F> c_;
  std::vector<std::string> labels_;

  F& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
};

/// Triples i < j < k violating the Jacobi identity.
template <class F>
std::vector<std::array<std::size_t, 3>> jacobi_check(const LieAlgebra<F>& alg) {
  std::vector<std::array<std::size_t, 3>> bad;
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto ei = alg.basis_vector(i), ej = alg.basis_vector(j), ek = alg.basis_vector(k);
        auto a = alg.bracket(alg.bracket(ei, ej), ek);
        auto b = alg.bracket(alg.bracket(ej, ek), ei);
        auto c = alg.bracket(alg.bracket(ek, ei), ej);
        for (std::size_t m = 0; m < n; ++m)
          if (!is_zero(a[m] + b[m] + c[m])) {
            bad.push_back({i, j, k});
            break;
          }
      }
  return bad;
}

/// C^0 = g, C^k = [g, C^{k-1}], until the dimension stabilises.
template <class F>
std::vector<Subspace<F>> descending_series(const LieAlgebra<F>& alg) {
  const std::size_t n = alg.dim();
  std::vector<Subspace<F>> series{Subspace<F>::whole(n)};
  while (series.back().dim() > 0) {
    std::vector<Vector<F>> gens;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& v : series.back().basis()) gens.push_back(alg.bracket(alg.basis_vector(i), v));
    auto next = Subspace<F>::span(n, gens);
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

namespace detail {

// {X : [M X, e_j] in target for every j and every map M in `maps`}.
template <class F>
Subspace<F> preimage_of_brackets(const LieAlgebra<F>& alg, const Subspace<F>& target,
                                 const std::vector<const Matrix<F>*>& maps) {
  const std::size_t n = alg.dim();
  auto ann = target.annihilator();
  std::vector<Vector<F>> rows;
  for (const Matrix<F>* m : maps) {
    for (std::size_t j = 0; j < n; ++j) {
      // Column i holds q([M e_i, e_j]).
      std::vector<Vector<F>> images(n);
      for (std::size_t i = 0; i < n; ++i) {
        Vector<F> mi = m ? m->row(i) : alg.basis_vector(i);
        images[i] = alg.bracket(mi, alg.basis_vector(j));
      }
      for (const auto& q : ann) {
        Vector<F> row(n, F(0L));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < n; ++k)
            if (!is_zero(q[k]) && !is_zero(images[i][k])) row[i] += q[k] * images[i][k];
        rows.push_back(std::move(row));
      }
    }
  }
  if (rows.empty()) return Subspace<F>::whole(n);
  Matrix<F> sys = Matrix<F>::from_rows(rows);
  if (!sys.is_numeric())
    throw UnboundParameterError("subspace computation needs numeric entries; bind all parameters first");
  return Subspace<F>::span(n, nullspace(sys));
}

}  // namespace detail

/// g_0 = 0, g_k = {X : [X, g] in g_{k-1}}, until stable.
template <class F>
std::vector<Subspace<F>> ascending_series(const LieAlgebra<F>& alg) {
  const std::size_t n = alg.dim();
  std::vector<Subspace<F>> series{Subspace<F>(n)};
  while (series.back().dim() < n) {
    auto next = detail::preimage_of_brackets(alg, series.back(), {nullptr});
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

template <class F>
Subspace<F> center(const LieAlgebra<F>& alg) {
  return detail::preimage_of_brackets(alg, Subspace<F>(alg.dim()), {nullptr});
}

/// Strictly increasing dimensions of g_1, g_2, ... of the ascending series.
template <class F>
std::vector<std::size_t> algebra_type(const LieAlgebra<F>& alg) {
  std::vector<std::size_t> dims;
  auto series = ascending_series(alg);
  for (std::size_t k = 1; k < series.size(); ++k) dims.push_back(series[k].dim());
  return dims;
}

template <class F>
bool is_nilpotent(const LieAlgebra<F>& alg) {
  return descending_series(alg).back().dim() == 0;
}

}  // namespace nilkaehler
