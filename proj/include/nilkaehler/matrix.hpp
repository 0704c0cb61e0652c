#pragma once

// Dense matrices over a field and exact elimination over the fraction field.

#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilkaehler/quadratic.hpp"
#include "nilkaehler/scalar.hpp"

namespace nilkaehler {

template <class F>
using Vector = std::vector<F>;

class UnboundParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Scalar> {
  static bool is_numeric(const Scalar& x) { return x.is_constant(); }
  static std::optional<Polynomial> nonvanishing(const Scalar& x) {
    if (x.numerator().is_constant()) return std::nullopt;
    return x.numerator();
  }
  static std::string str(const Scalar& x) { return x.to_string(); }
  static int sign(const Scalar& x) { return sgn(x.constant_value()); }
  static double to_double(const Scalar& x) { return x.to_double(); }
  static Scalar substitute(const Scalar& x, const ParamBinding& b) { return x.substitute(b); }
  static std::set<std::string> parameters(const Scalar& x) { return x.parameters(); }
};

template <>
struct FieldTraits<QuadScalar> {
  static bool is_numeric(const QuadScalar& x) { return x.is_constant(); }
  static std::optional<Polynomial> nonvanishing(const QuadScalar& x) {
    if (x.is_constant()) return std::nullopt;
    return x.norm().numerator();
  }
  static std::string str(const QuadScalar& x) { return x.to_string(); }
  static int sign(const QuadScalar& x) { return x.sign(); }
  static double to_double(const QuadScalar& x) { return x.to_double(); }
  static QuadScalar substitute(const QuadScalar& x, const ParamBinding& b) { return x.substitute(b); }
  static std::set<std::string> parameters(const QuadScalar& x) { return x.parameters(); }
};

template <>
struct FieldTraits<double> {
  static bool is_numeric(double) { return true; }
  static std::optional<Polynomial> nonvanishing(double) { return std::nullopt; }
  static std::string str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
  static int sign(double x) { return (x > 0) - (x < 0); }
  static double to_double(double x) { return x; }
  static double substitute(double x, const ParamBinding&) { return x; }
  static std::set<std::string> parameters(double) { return {}; }
};

/// Nonvanishing constraints accumulated while dividing by symbolic quantities.
class SideConditions {
public:
  template <class F>
  void require_nonzero(const F& x) {
    if (auto p = FieldTraits<F>::nonvanishing(x)) add(*p);
  }

  void add(const Polynomial& p) {
    if (p.is_constant()) return;
    auto [factor, prim] = p.integer_primitive();
    (void)factor;
    if (prim.leading_coefficient() < 0) prim = -prim;
    conditions_.insert(prim);
  }

  void merge(const SideConditions& other) { conditions_.insert(other.conditions_.begin(), other.conditions_.end()); }

  bool empty() const { return conditions_.empty(); }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& p : conditions_) out.push_back(p.to_string() + " != 0");
    return out;
  }
  const std::set<Polynomial>& polynomials() const { return conditions_; }

private:
  std::set<Polynomial> conditions_;
};

template <class F>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0L)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1L);
    return m;
  }

  static Matrix from_rows(const std::vector<Vector<F>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector<F> row(std::size_t i) const { return Vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (nilkaehler::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!nilkaehler::is_zero(b(k, j))) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  Matrix scaled(const F& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!nilkaehler::is_zero(x)) return false;
    return true;
  }

  bool is_numeric() const {
    for (const auto& x : data_)
      if (!FieldTraits<F>::is_numeric(x)) return false;
    return true;
  }

  std::set<std::string> parameters() const {
    std::set<std::string> out;
    for (const auto& x : data_) {
      auto p = FieldTraits<F>::parameters(x);
      out.insert(p.begin(), p.end());
    }
    return out;
  }

  template <class Fn>
  auto map(Fn fn) const -> Matrix<decltype(fn(std::declval<const F&>()))> {
    Matrix<decltype(fn(std::declval<const F&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = fn((*this)(i, j));
    return out;
  }

  Matrix substitute(const ParamBinding& b) const {
    return map([&](const F& x) { return FieldTraits<F>::substitute(x, b); });
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> data_;

  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
  }
};

/// In-place reduced row echelon form; returns pivot columns. Symbolic pivots are
/// treated as nonzero and recorded in `conditions`.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m, SideConditions* conditions = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::optional<std::size_t> choice;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      if (FieldTraits<F>::is_numeric(m(i, c))) {
        choice = i;
        break;
      }
      if (!choice) choice = i;
    }
    if (!choice) continue;
    if (*choice != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(*choice, j));
    F pivot = m(r, c);
    if (conditions) conditions->require_nonzero(pivot);
    F inv = F(1L) / pivot;
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m, SideConditions* conditions = nullptr) {
  return rref(m, conditions).size();
}

/// Basis of {x : m x = 0}.
template <class F>
std::vector<Vector<F>> nullspace(Matrix<F> m, SideConditions* conditions = nullptr) {
  auto pivots = rref(m, conditions);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(m.cols(), F(0L));
    v[free] = F(1L);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m, SideConditions* conditions = nullptr) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1L);
  }
  auto pivots = rref(aug, conditions);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class F>
F determinant(Matrix<F> m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
  F det(1L);
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> choice;
    for (std::size_t i = c; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      if (!choice || FieldTraits<F>::is_numeric(m(i, c))) choice = i;
      if (FieldTraits<F>::is_numeric(m(i, c))) break;
    }
    if (!choice) return F(0L);
    if (*choice != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(*choice, j));
      det = -det;
    }
    det *= m(c, c);
    F inv = F(1L) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      F f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Linear subspace of F^n held as a reduced row echelon basis. Entries must be
/// numeric: rank decisions on symbolic data are refused.
template <class F>
class Subspace {
public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vector<F>>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    Matrix<F> m = Matrix<F>::from_rows(vectors);
    if (m.cols() != ambient) throw std::invalid_argument("vector length does not match ambient dimension");
    if (!m.is_numeric())
      throw UnboundParameterError("subspace computation needs numeric entries; bind all parameters first");
    auto pivots = rref(m);
    for (std::size_t r = 0; r < pivots.size(); ++r) s.basis_.push_back(m.row(r));
    return s;
  }

  static Subspace whole(std::size_t ambient) {
    std::vector<Vector<F>> unit;
    for (std::size_t i = 0; i < ambient; ++i) unit.push_back(basis_vector(ambient, i));
    return span(ambient, unit);
  }

  static Vector<F> basis_vector(std::size_t ambient, std::size_t i) {
    Vector<F> v(ambient, F(0L));
    v[i] = F(1L);
    return v;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector<F>>& basis() const { return basis_; }

  bool contains(const Vector<F>& v) const {
    auto vs = basis_;
    vs.push_back(v);
    return span(ambient_, vs).dim() == dim();
  }
  bool contains(const Subspace& other) const {
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  Subspace operator+(const Subspace& other) const {
    auto vs = basis_;
    vs.insert(vs.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, vs);
  }

  /// Linear functionals vanishing on the subspace, as row vectors.
  std::vector<Vector<F>> annihilator() const {
    if (basis_.empty()) {
      std::vector<Vector<F>> all;
      for (std::size_t i = 0; i < ambient_; ++i) all.push_back(basis_vector(ambient_, i));
      return all;
    }
    return nullspace(Matrix<F>::from_rows(basis_));
  }

private:
  std::size_t ambient_;
  std::vector<Vector<F>> basis_;
};

}  // namespace nilkaehler
