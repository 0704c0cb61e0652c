#pragma once

// Exact rational functions over Q in named parameters.

#include <cctype>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "nilkaehler/polynomial.hpp"

namespace nilkaehler {

using ParamBinding = std::map<std::string, Rational>;

class EvaluationError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Canonical form: num/den with integer coefficients, gcd(num, den) = 1,
/// joint integer content 1 and positive leading coefficient of den. Zero is 0/1.
class Scalar {
public:
  Scalar() : den_(1L) {}
  Scalar(long value) : num_(value), den_(1L) {}                 // NOLINT
  Scalar(const Rational& value) { set_constant(value); }         // NOLINT
  Scalar(const Polynomial& p) : Scalar(p, Polynomial(1L)) {}     // NOLINT
  Scalar(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw EvaluationError("division by the zero polynomial");
    Polynomial g = gcd(num, den);
    if (g.is_constant()) {
      assign_normalized(num, den);
    } else {
      assign_normalized(*divide_exact(num, g), *divide_exact(den, g));
    }
  }

  static Scalar variable(const std::string& name) { return Scalar(Polynomial::variable(name)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("scalar depends on parameters: " + to_string());
    Rational r = num_.constant_value() / den_.constant_value();
    r.canonicalize();
    return r;
  }
  double to_double() const { return constant_value().get_d(); }

  std::set<std::string> parameters() const {
    std::set<std::string> out(num_.variables().begin(), num_.variables().end());
    out.insert(den_.variables().begin(), den_.variables().end());
    return out;
  }

  Scalar operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b, false); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return add(a, b, true); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_constant() && b.den_.is_constant() && (a.num_.is_constant() || b.num_.is_constant()))
      return raw(a.num_ * b.num_, a.den_ * b.den_);
    Polynomial g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Polynomial n1 = exact(a.num_, g1), d2 = exact(b.den_, g1);
    Polynomial n2 = exact(b.num_, g2), d1 = exact(a.den_, g2);
    return raw(n1 * n2, d1 * d2);
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const {
    if (is_zero()) throw EvaluationError("division by zero");
    return raw(den_, num_);
  }

  Scalar pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    return raw(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Substitutes exact values; unbound parameters stay symbolic.
  Scalar substitute(const ParamBinding& binding) const {
    std::map<std::string, Polynomial> values;
    for (const auto& [k, v] : binding) values.emplace(k, Polynomial(v));
    return substitute(values);
  }

  Scalar substitute(const std::map<std::string, Polynomial>& values) const {
    Polynomial d = den_.substitute(values);
    if (d.is_zero())
      throw EvaluationError("denominator " + den_.to_string() + " vanishes under binding");
    return Scalar(num_.substitute(values), d);
  }

  Scalar substitute(const std::map<std::string, Scalar>& values) const {
    return eval_poly(num_, values) / eval_poly_checked(den_, values);
  }

  /// Numeric evaluation; every parameter must be bound.
  double evaluate(const std::map<std::string, double>& values) const {
    return eval_double(num_, values) / eval_double(den_, values);
  }

  std::string to_string() const {
    if (den_ == Polynomial(1L)) return num_.to_string();
    return wrap(num_, false) + "/" + wrap(den_, true);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
  Polynomial num_, den_;

  struct RawTag {};
  Scalar(RawTag, Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {}

  static Polynomial exact(const Polynomial& p, const Polynomial& d) {
    if (d.is_constant()) return p.scaled(1 / d.constant_value());
    return *divide_exact(p, d);
  }

  // num and den already coprime; fixes rational content and sign.
  static Scalar raw(const Polynomial& num, const Polynomial& den) {
    Scalar r(RawTag{}, {}, Polynomial(1L));
    r.assign_normalized(num, den);
    return r;
  }

  void set_constant(const Rational& value) {
    Rational v = value;
    v.canonicalize();
    num_ = Polynomial(Rational(v.get_num()));
    den_ = Polynomial(Rational(v.get_den()));
  }

  void assign_normalized(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw EvaluationError("division by the zero polynomial");
    if (num.is_zero()) {
      num_ = Polynomial();
      den_ = Polynomial(1L);
      return;
    }
    auto [fn, pn] = num.integer_primitive();
    auto [fd, pd] = den.integer_primitive();
    Rational f = fn / fd;
    f.canonicalize();
    if (pd.leading_coefficient() < 0) {
      pd = -pd;
      f = -f;
    }
    num_ = pn.scaled(Rational(f.get_num()));
    den_ = pd.scaled(Rational(f.get_den()));
  }

  static Scalar add(const Scalar& a, const Scalar& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    if (a.den_ == b.den_) {
      Polynomial t = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      if (t.is_zero()) return {};
      Polynomial g = gcd(t, a.den_);
      return raw(exact(t, g), exact(a.den_, g));
    }
    Polynomial g = gcd(a.den_, b.den_);
    Polynomial ad = exact(a.den_, g), bd = exact(b.den_, g);
    Polynomial t = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return {};
    Polynomial g2 = gcd(t, g);
    return raw(exact(t, g2), ad * bd * exact(g, g2));
  }

  static std::string wrap(const Polynomial& p, bool is_denominator) {
    std::string s = p.to_string();
    bool product = s.find_first_of("*/") != std::string::npos;
    if (p.term_count() > 1 || (is_denominator && product)) return "(" + s + ")";
    return s;
  }

  static Scalar eval_poly(const Polynomial& p, const std::map<std::string, Scalar>& values) {
    Scalar result;
    const auto& names = p.variables();
    for (std::size_t t = 0; t < p.term_count(); ++t) {
      Scalar term(p.coefficient(t));
      for (std::size_t v = 0; v < names.size(); ++v) {
        auto e = p.exponent(t, v);
        if (!e) continue;
        auto it = values.find(names[v]);
        Scalar base = it == values.end() ? variable(names[v]) : it->second;
        term *= base.pow(static_cast<int>(e));
      }
      result += term;
    }
    return result;
  }

  static Scalar eval_poly_checked(const Polynomial& p, const std::map<std::string, Scalar>& values) {
    Scalar d = eval_poly(p, values);
    if (d.is_zero()) throw EvaluationError("denominator " + p.to_string() + " vanishes under binding");
    return d;
  }

  static double eval_double(const Polynomial& p, const std::map<std::string, double>& values) {
    double result = 0;
    const auto& names = p.variables();
    std::vector<double> x(names.size());
    for (std::size_t v = 0; v < names.size(); ++v) {
      auto it = values.find(names[v]);
      if (it == values.end()) throw EvaluationError("unbound parameter " + names[v]);
      x[v] = it->second;
    }
    for (std::size_t t = 0; t < p.term_count(); ++t) {
      double term = p.coefficient(t).get_d();
      for (std::size_t v = 0; v < names.size(); ++v) term *= std::pow(x[v], p.exponent(t, v));
      result += term;
    }
    return result;
  }
};

/// Field-generic helpers used by the templated tensor code.
inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

/// LaTeX rendering of a parameter name: psi11 -> \psi_{11}, lambda -> \lambda.
inline std::string latex_name(const std::string& name) {
  static const std::set<std::string> greek = {"alpha", "beta",  "gamma", "delta", "lambda", "mu",
                                              "nu",    "xi",    "pi",    "rho",   "sigma",  "tau",
                                              "phi",   "chi",   "psi",   "omega", "theta",  "eta"};
  std::size_t split = name.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(name[split - 1]))) --split;
  std::string stem = name.substr(0, split), digits = name.substr(split);
  if (greek.count(stem)) stem = "\\" + stem;
  return digits.empty() ? stem : stem + "_{" + digits + "}";
}

inline std::string to_latex(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& names = p.variables();
  for (std::size_t t = 0; t < p.term_count(); ++t) {
    Rational c = p.coefficient(t);
    bool neg = c < 0;
    if (neg) c = -c;
    if (t > 0 || neg) out += neg ? "-" : (t ? "+" : "");
    std::string mono;
    for (std::size_t v = 0; v < names.size(); ++v) {
      auto e = p.exponent(t, v);
      if (!e) continue;
      mono += latex_name(names[v]);
      if (e > 1) mono += "^{" + std::to_string(e) + "}";
    }
    std::string coeff = c.get_den() == 1 ? c.get_num().get_str()
                                         : "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
    if (mono.empty()) out += coeff;
    else if (c == 1) out += mono;
    else out += coeff + " " + mono;
  }
  return out;
}

inline std::string to_latex(const Scalar& s) {
  if (s.denominator() == Polynomial(1L)) return to_latex(s.numerator());
  Polynomial num = s.numerator();
  std::string sign;
  if (num.leading_coefficient() < 0) {
    num = -num;
    sign = "-";
  }
  return sign + "\\frac{" + to_latex(num) + "}{" + to_latex(s.denominator()) + "}";
}

}  // namespace nilkaehler
