#pragma once

// Linear compatibility solve, symbolic family verification and numeric root search.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nilkaehler/geometry.hpp"

namespace nilkaehler {

template <class F>
struct LinearSolution {
  std::vector<Matrix<F>> basis;
  std::size_t dimension = 0;
  SideConditions conditions;
};

/// Basis of {J : w_kj J_i^k + w_is J_j^s = 0}, unknown J_i^k at index i*n + k.
template <class F>
LinearSolution<F> compat_nullspace(const TwoForm<F>& w) {
  const std::size_t n = w.dim();
  Matrix<F> sys(n * (n - 1) / 2, n * n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++row)
      for (std::size_t k = 0; k < n; ++k) {
        sys(row, i * n + k) += w(k, j);
        sys(row, j * n + k) += w(i, k);
      }
  LinearSolution<F> sol;
  for (const auto& v : nullspace(sys, &sol.conditions)) {
    Matrix<F> J(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) J(i, k) = v[i * n + k];
    sol.basis.push_back(std::move(J));
  }
  sol.dimension = sol.basis.size();
  return sol;
}

template <class F>
bool in_span(const LinearSolution<F>& sol, const Matrix<F>& J) {
  const std::size_t n = J.rows();
  auto flatten = [n](const Matrix<F>& m) {
    Vector<F> v(n * n, F(0L));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) v[i * n + k] = m(i, k);
    return v;
  };
  std::vector<Vector<F>> rows;
  for (const auto& b : sol.basis) rows.push_back(flatten(b));
  if (rows.empty()) return J.is_zero();
  std::size_t r = rank(Matrix<F>::from_rows(rows));
  rows.push_back(flatten(J));
  return rank(Matrix<F>::from_rows(rows)) == r;
}

struct FamilyReport {
  bool compatible = true;
  bool almost_complex = true;
  bool integrable = true;
  std::vector<std::string> failures;
  SideConditions conditions;
  bool passed() const { return compatible && almost_complex && integrable; }
};

/// Checks compatibility, J^2 = -I and N_J = 0 identically in the family's parameters.
template <class F>
FamilyReport verify_family(const LieAlgebra<F>& alg, const TwoForm<F>& w, const Endomorphism<F>& J) {
  FamilyReport rep;
  const std::size_t n = alg.dim();
  auto idx = [](std::initializer_list<std::size_t> ids) {
    std::string s = "(";
    bool first = true;
    for (auto i : ids) {
      s += (first ? "" : ",") + std::to_string(i + 1);
      first = false;
    }
    return s + ")";
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if constexpr (std::is_same_v<F, Scalar>) rep.conditions.add(J(i, k).denominator());
  auto E = compat_residual(w, J);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!is_zero(E(i, j))) {
        rep.compatible = false;
        rep.failures.push_back("compat" + idx({i, j}) + " = " + FieldTraits<F>::str(E(i, j)));
      }
  auto S = almost_complex_residual(J);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!is_zero(S(i, k))) {
        rep.almost_complex = false;
        rep.failures.push_back("J^2+I" + idx({i, k}) + " = " + FieldTraits<F>::str(S(i, k)));
      }
  auto N = nijenhuis(alg, J);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(N(i, j, k))) {
          rep.integrable = false;
          rep.failures.push_back("N" + idx({i, j, k}) + " = " + FieldTraits<F>::str(N(i, j, k)));
        }
  return rep;
}

// ---------------------------------------------------------------------------
// Numeric search.

struct SearchOptions {
  double tolerance = 1e-9;
  std::size_t max_starts = 200;
  std::uint64_t seed = 1;
  std::size_t max_iterations = 60;
  double start_scale = 1.5;
};

struct SearchResult {
  bool converged = false;
  double residual = INFINITY;
  Matrix<double> J;
  std::size_t starts_tried = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
};

/// Stacked residual of compat (i<j), J^2+I and N (i<j) for numeric (alg, w).
class StructureSystem {
public:
  StructureSystem(const LieAlgebra<double>& alg, const TwoForm<double>& w) : n_(alg.dim()) {
    for (const auto& [idx, c] : alg.constants()) {
      consts_.push_back({idx[0], idx[1], idx[2], c});
      consts_.push_back({idx[1], idx[0], idx[2], -c});
    }
    C_.assign(n_ * n_ * n_, 0.0);
    for (const auto& t : consts_) C_[(t.i * n_ + t.j) * n_ + t.k] = t.c;
    W_.resize(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) W_(i, j) = w(i, j);
  }

  std::size_t unknowns() const { return n_ * n_; }
  std::size_t equations() const { return n_ * (n_ - 1) / 2 + n_ * n_ + n_ * n_ * (n_ - 1) / 2; }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> J(x.data(), n_, n_);
    Eigen::VectorXd r(equations());
    std::size_t row = 0;
    Eigen::MatrixXd E = J * W_ + W_ * J.transpose();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) r(row++) = E(i, j);
    Eigen::MatrixXd S = J * J + Eigen::MatrixXd::Identity(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) r(row++) = S(i, k);
    // N(e_i, e_j) = [Je_i, Je_j] - J[Je_i, e_j] - J[e_i, Je_j] - [e_i, e_j]
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n_, n_ * n_);  // B(k, a*n+b) = [Je_a, e_b]^k
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_, n_ * n_);  // D(k, a*n+b) = [Je_a, Je_b]^k
    for (const auto& t : consts_)
      for (std::size_t a = 0; a < n_; ++a) {
        double ja = J(a, t.i);
        if (ja == 0.0) continue;
        B(t.k, a * n_ + t.j) += ja * t.c;
        for (std::size_t b = 0; b < n_; ++b) D(t.k, a * n_ + b) += ja * J(b, t.j) * t.c;
      }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        // [e_i, Je_j] = -[Je_j, e_i]
        Eigen::VectorXd inner = B.col(i * n_ + j) - B.col(j * n_ + i);
        Eigen::VectorXd Jinner = J.transpose() * inner;
        for (std::size_t k = 0; k < n_; ++k) r(row++) = D(k, i * n_ + j) - Jinner(k) - C_[(i * n_ + j) * n_ + k];
      }
    return r;
  }

  /// Analytic Jacobian of `residual`; column a*n+b is d/dJ_a^b.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> J(x.data(), n_, n_);
    Eigen::MatrixXd Jac = Eigen::MatrixXd::Zero(equations(), unknowns());
    std::size_t row = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j, ++row)
        for (std::size_t b = 0; b < n_; ++b) {
          Jac(row, i * n_ + b) += W_(b, j);
          Jac(row, j * n_ + b) += W_(i, b);
        }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k, ++row)
        for (std::size_t b = 0; b < n_; ++b) {
          Jac(row, i * n_ + b) += J(b, k);
          Jac(row, b * n_ + k) += J(i, b);
        }
    auto c = [&](std::size_t i, std::size_t j, std::size_t k) { return C_[(i * n_ + j) * n_ + k]; };
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k, ++row)
          for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) {
              double v = 0;
              // J_i^l J_j^m C_lm^k
              if (a == i)
                for (std::size_t m = 0; m < n_; ++m) v += J(j, m) * c(b, m, k);
              if (a == j)
                for (std::size_t l = 0; l < n_; ++l) v += J(i, l) * c(l, b, k);
              // -J_i^l J_m^k C_lj^m
              if (a == i)
                for (std::size_t m = 0; m < n_; ++m) v -= J(m, k) * c(b, j, m);
              if (b == k)
                for (std::size_t l = 0; l < n_; ++l) v -= J(i, l) * c(l, j, a);
              // -J_j^l J_m^k C_il^m
              if (a == j)
                for (std::size_t m = 0; m < n_; ++m) v -= J(m, k) * c(i, b, m);
              if (b == k)
                for (std::size_t l = 0; l < n_; ++l) v -= J(j, l) * c(i, l, a);
              if (v != 0.0) Jac(row, a * n_ + b) = v;
            }
    return Jac;
  }

private:
  struct Const {
    std::size_t i, j, k;
    double c;
  };
  std::size_t n_;
  std::vector<Const> consts_;
  std::vector<double> C_;
  Eigen::MatrixXd W_;
};

namespace detail {

inline double sup_norm(const Eigen::VectorXd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

inline Matrix<double> to_matrix(const Eigen::VectorXd& x, std::size_t n) {
  Matrix<double> J(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) J(i, k) = x(i * n + k);
  return J;
}

}  // namespace detail

/// Damped Gauss-Newton from one start. Returns the final point and its sup-norm residual.
inline std::pair<Eigen::VectorXd, double> newton_refine(const StructureSystem& sys, Eigen::VectorXd x,
                                                        const SearchOptions& opt, std::size_t* iterations = nullptr) {
  Eigen::VectorXd r = sys.residual(x);
  double cost = r.squaredNorm();
  double sup = detail::sup_norm(r);
  const double floor = std::ldexp(1.0, -20);
  std::size_t it = 0;
  double stall_reference = cost;
  for (; it < opt.max_iterations && sup > opt.tolerance; ++it) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.jacobian(x));
    Eigen::VectorXd step = cod.solve(-r);
    double damping = 1.0;
    bool improved = false;
    while (damping >= floor) {
      Eigen::VectorXd trial = x + damping * step;
      Eigen::VectorXd rt = sys.residual(trial);
      double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct < cost) {
        x = trial;
        r = rt;
        cost = ct;
        sup = detail::sup_norm(r);
        improved = true;
        break;
      }
      damping *= 0.5;
    }
    if (!improved) break;
    // Give up on starts that stall far from a root.
    if ((it + 1) % 10 == 0) {
      if (cost > 1e-6 && cost > 0.9 * stall_reference) break;
      stall_reference = cost;
    }
  }
  if (iterations) *iterations = it;
  return {x, sup};
}

/// Independent re-check of a numeric J with the exact-path residual templates.
inline double structure_residual(const LieAlgebra<double>& alg, const TwoForm<double>& w, const Matrix<double>& J) {
  double worst = 0;
  auto E = compat_residual(w, J);
  auto S = almost_complex_residual(J);
  auto N = nijenhuis(alg, J);
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max({worst, std::abs(E(i, j)), std::abs(S(i, j))});
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(N(i, j, k)));
    }
  return worst;
}

/// Seeded multi-start search. `starts` are tried before random ones.
inline SearchResult newton_search(const LieAlgebra<double>& alg, const TwoForm<double>& w, const SearchOptions& opt,
                                  const std::vector<Matrix<double>>& starts = {}) {
  StructureSystem sys(alg, w);
  const std::size_t n = alg.dim();
  SearchResult best;
  best.seed = opt.seed;
  Eigen::VectorXd best_x;
  for (std::size_t s = 0; s < opt.max_starts; ++s) {
    Eigen::VectorXd x(n * n);
    if (s < starts.size()) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) x(i * n + k) = starts[s](i, k);
    } else {
      std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                        static_cast<std::uint32_t>(s)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> dist(0.0, opt.start_scale);
      for (auto& v : x) v = dist(rng);
    }
    std::size_t iterations = 0;
    auto [xs, sup] = newton_refine(sys, x, opt, &iterations);
    best.starts_tried = s + 1;
    if (sup < best.residual) {
      best.residual = sup;
      best_x = xs;
      best.iterations = iterations;
    }
    if (sup <= opt.tolerance) {
      best.converged = true;
      break;
    }
  }
  if (best_x.size()) best.J = detail::to_matrix(best_x, n);
  return best;
}

}  // namespace nilkaehler
