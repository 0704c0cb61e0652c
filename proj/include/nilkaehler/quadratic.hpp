#pragma once

// Q(params)(sqrt 2): values re + im*s with s^2 = 2.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "nilkaehler/scalar.hpp"

namespace nilkaehler {

class QuadScalar {
public:
  static constexpr const char* kGenerator = "s";

  QuadScalar() = default;
  QuadScalar(long v) : re_(v) {}              // NOLINT
  QuadScalar(const Rational& v) : re_(v) {}   // NOLINT
  QuadScalar(const Scalar& v) : re_(v) {}     // NOLINT
  QuadScalar(Scalar re, Scalar im) : re_(std::move(re)), im_(std::move(im)) {}

  static QuadScalar sqrt2() { return {Scalar(), Scalar(1L)}; }

  /// Reduces a Scalar in the generator `s` modulo s^2 - 2.
  static QuadScalar reduce(const Scalar& x) {
    if (!x.parameters().count(kGenerator)) return QuadScalar(x);
    return reduce_poly(x.numerator()) / reduce_poly(x.denominator());
  }

  const Scalar& re() const { return re_; }
  const Scalar& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_constant() const { return re_.is_constant() && im_.is_constant(); }

  std::set<std::string> parameters() const {
    auto p = re_.parameters();
    auto q = im_.parameters();
    p.insert(q.begin(), q.end());
    return p;
  }

  QuadScalar operator-() const { return {-re_, -im_}; }
  friend QuadScalar operator+(const QuadScalar& a, const QuadScalar& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend QuadScalar operator-(const QuadScalar& a, const QuadScalar& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend QuadScalar operator*(const QuadScalar& a, const QuadScalar& b) {
    if (a.im_.is_zero() && b.im_.is_zero()) return QuadScalar(a.re_ * b.re_);
    return {a.re_ * b.re_ + Scalar(2L) * a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend QuadScalar operator/(const QuadScalar& a, const QuadScalar& b) { return a * b.inverse(); }
  QuadScalar& operator+=(const QuadScalar& o) { return *this = *this + o; }
  QuadScalar& operator-=(const QuadScalar& o) { return *this = *this - o; }
  QuadScalar& operator*=(const QuadScalar& o) { return *this = *this * o; }
  QuadScalar& operator/=(const QuadScalar& o) { return *this = *this / o; }

  /// a^2 - 2 b^2, the field norm down to Q(params).
  Scalar norm() const { return re_ * re_ - Scalar(2L) * im_ * im_; }

  QuadScalar inverse() const {
    if (is_zero()) throw EvaluationError("division by zero");
    if (im_.is_zero()) return QuadScalar(re_.inverse());
    Scalar n = norm();
    return {re_ / n, -im_ / n};
  }

  QuadScalar pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    QuadScalar r(1L), base = *this;
    while (n) {
      if (n & 1) r *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return r;
  }

  friend bool operator==(const QuadScalar& a, const QuadScalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const QuadScalar& a, const QuadScalar& b) { return !(a == b); }

  QuadScalar substitute(const ParamBinding& b) const { return {re_.substitute(b), im_.substitute(b)}; }

  double evaluate(const std::map<std::string, double>& values) const {
    return re_.evaluate(values) + std::sqrt(2.0) * im_.evaluate(values);
  }

  double to_double() const { return re_.to_double() + std::sqrt(2.0) * im_.to_double(); }

  /// Exact sign of a constant value.
  int sign() const {
    Rational a = re_.constant_value(), b = im_.constant_value();
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    Rational d = a * a - 2 * b * b;
    return sgn(d) * sa;
  }

  /// As a Scalar expression in the generator, e.g. "s*lambda+1".
  Scalar as_scalar() const { return re_ + im_ * Scalar::variable(kGenerator); }
  std::string to_string() const { return as_scalar().to_string(); }
  friend std::ostream& operator<<(std::ostream& os, const QuadScalar& q) { return os << q.to_string(); }

private:
  Scalar re_, im_;

  static QuadScalar reduce_poly(const Polynomial& p) {
    auto coeffs = p.coefficients_in(kGenerator);
    QuadScalar result;
    Rational power(1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      Scalar c = Scalar(coeffs[k]) * Scalar(power);
      result += (k % 2 == 0) ? QuadScalar(c) : QuadScalar(Scalar(), c);
      if (k % 2 == 1) power *= 2;
    }
    return result;
  }
};

inline bool is_zero(const QuadScalar& q) { return q.is_zero(); }

inline std::string to_latex(const QuadScalar& q) {
  if (q.im().is_zero()) return to_latex(q.re());
  std::string im = to_latex(q.im());
  std::string term = (q.im() == Scalar(1L)) ? "\\sqrt{2}"
                     : (q.im() == Scalar(-1L)) ? "-\\sqrt{2}"
                                               : "\\left(" + im + "\\right)\\sqrt{2}";
  if (q.re().is_zero()) return term;
  return to_latex(q.re()) + (term[0] == '-' ? "" : "+") + term;
}

}  // namespace nilkaehler
