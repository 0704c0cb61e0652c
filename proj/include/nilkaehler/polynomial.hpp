#pragma once

// Sparse multivariate polynomials over Q with exact division and GCD.
//
// A polynomial carries its own sorted list of variable names, trimmed to the
// variables that actually occur, so two equal polynomials always have identical
// representations. Terms are kept in descending graded-lexicographic order,
// with variables ordered by name (the first name is the most significant).

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilkaehler {

using Rational = mpq_class;
using Integer = mpz_class;

class Polynomial {
public:
  using VarList = std::shared_ptr<const std::vector<std::string>>;
  using Exponents = std::vector<std::uint32_t>;

  Polynomial() = default;
  Polynomial(long value) : Polynomial(Rational(value)) {}  // NOLINT
  Polynomial(const Rational& value) {                       // NOLINT
    if (value != 0) {
      vars_ = empty_vars();
      coeffs_.push_back(value);
      coeffs_.back().canonicalize();
    }
  }

  static Polynomial variable(const std::string& name) {
    Polynomial p;
    p.vars_ = std::make_shared<const std::vector<std::string>>(std::vector<std::string>{name});
    p.exps_ = {1};
    p.coeffs_ = {Rational(1)};
    return p;
  }

  /// Builds from (exponents, coefficient) pairs over `names`; names need not be sorted.
  static Polynomial from_terms(const std::vector<std::string>& names,
                               std::vector<std::pair<Exponents, Rational>> terms) {
    std::vector<std::size_t> order(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
    std::vector<std::string> sorted;
    for (auto i : order) sorted.push_back(names[i]);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("duplicate variable name");
    for (auto& [e, c] : terms) {
      Exponents permuted(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) permuted[i] = e.at(order[i]);
      e = std::move(permuted);
    }
    return build(std::make_shared<const std::vector<std::string>>(std::move(sorted)),
                 std::move(terms));
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1 && nvars() == 0; }
  bool is_monomial() const { return coeffs_.size() == 1; }
  std::size_t term_count() const { return coeffs_.size(); }
  std::size_t nvars() const { return vars_ ? vars_->size() : 0; }

  const std::vector<std::string>& variables() const {
    return vars_ ? *vars_ : *empty_vars();
  }
  bool has_variable(const std::string& name) const {
    const auto& v = variables();
    return std::binary_search(v.begin(), v.end(), name);
  }

  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return is_zero() ? Rational(0) : coeffs_[0];
  }

  const Rational& coefficient(std::size_t t) const { return coeffs_[t]; }
  std::uint32_t exponent(std::size_t t, std::size_t v) const { return exps_[t * nvars() + v]; }
  const Rational& leading_coefficient() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    return coeffs_.front();
  }

  unsigned total_degree() const {
    unsigned best = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) best = std::max(best, term_degree(t));
    return best;
  }

  unsigned degree_in(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) return 0;
    unsigned best = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) best = std::max(best, exponent(t, *idx));
    return best;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.coeffs_[0]);
    if (b.is_constant()) return a.scaled(b.coeffs_[0]);
    auto [vars, ea, eb] = align(a, b);
    const std::size_t n = vars->size();
    std::vector<std::pair<Exponents, Rational>> terms;
    terms.reserve(a.term_count() * b.term_count());
    for (std::size_t i = 0; i < a.term_count(); ++i) {
      for (std::size_t j = 0; j < b.term_count(); ++j) {
        Exponents e(n);
        for (std::size_t v = 0; v < n; ++v) e[v] = ea[i * n + v] + eb[j * n + v];
        terms.emplace_back(std::move(e), a.coeffs_[i] * b.coeffs_[j]);
      }
    }
    return build(vars, std::move(terms));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Rational& factor) const {
    if (factor == 0) return {};
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c *= factor;
    return r;
  }

  Polynomial pow(unsigned n) const {
    Polynomial result(1L), base = *this;
    while (n) {
      if (n & 1U) result *= base;
      n >>= 1U;
      if (n) base *= base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.coeffs_ != b.coeffs_ || a.exps_ != b.exps_) return false;
    return a.variables() == b.variables();
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Total order used only for deterministic containers.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    return a.to_string() < b.to_string();
  }

  /// Multiplies by the lcm of coefficient denominators and divides by the gcd of
  /// numerators; returns the rational factor f with `*this == f * result`.
  std::pair<Rational, Polynomial> integer_primitive() const {
    if (is_zero()) return {Rational(0), {}};
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& c : coeffs_) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational factor(num_gcd, den_lcm);
    factor.canonicalize();
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c /= factor;
    return {factor, r};
  }

  /// Evaluates variables in `values` (others stay symbolic).
  Polynomial substitute(const std::map<std::string, Polynomial>& values) const {
    if (is_zero()) return {};
    const auto& names = variables();
    std::vector<const Polynomial*> images(names.size(), nullptr);
    bool any = false;
    for (std::size_t v = 0; v < names.size(); ++v) {
      auto it = values.find(names[v]);
      if (it != values.end()) {
        images[v] = &it->second;
        any = true;
      }
    }
    if (!any) return *this;
    // Cache powers per variable.
    std::vector<std::vector<Polynomial>> powers(names.size());
    auto power = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
      auto& cache = powers[v];
      if (cache.empty()) cache.emplace_back(1L);
      while (cache.size() <= e) cache.push_back(cache.back() * *images[v]);
      return cache[e];
    };
    Polynomial result;
    const std::size_t n = nvars();
    for (std::size_t t = 0; t < term_count(); ++t) {
      std::vector<std::pair<Exponents, Rational>> mono;
      Exponents e(n, 0);
      for (std::size_t v = 0; v < n; ++v)
        if (!images[v]) e[v] = exps_[t * n + v];
      mono.emplace_back(std::move(e), coeffs_[t]);
      Polynomial term = build(vars_, std::move(mono));
      for (std::size_t v = 0; v < n; ++v)
        if (images[v] && exps_[t * n + v]) term *= power(v, exps_[t * n + v]);
      result += term;
    }
    return result;
  }

  /// Coefficients as a polynomial in `name`: result[k] multiplies name^k.
  std::vector<Polynomial> coefficients_in(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) return {*this};
    const std::size_t n = nvars();
    std::vector<std::vector<std::pair<Exponents, Rational>>> buckets(degree_in(name) + 1);
    for (std::size_t t = 0; t < term_count(); ++t) {
      Exponents e(exps_.begin() + t * n, exps_.begin() + (t + 1) * n);
      auto k = e[*idx];
      e[*idx] = 0;
      buckets[k].emplace_back(std::move(e), coeffs_[t]);
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(build(vars_, std::move(b)));
    return out;
  }

  /// Inverse of coefficients_in.
  static Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, const std::string& name) {
    Polynomial result;
    Polynomial x = variable(name), xk(1L);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (!coeffs[k].is_zero()) result += coeffs[k] * xk;
      if (k + 1 < coeffs.size()) xk *= x;
    }
    return result;
  }

  /// Plain-text form using the expression grammar (`2*psi11^2-psi12+1`).
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    const std::size_t n = nvars();
    for (std::size_t t = 0; t < term_count(); ++t) {
      Rational c = coeffs_[t];
      bool neg = c < 0;
      if (neg) c = -c;
      if (t == 0) {
        if (neg) out += '-';
      } else {
        out += neg ? '-' : '+';
      }
      std::string mono;
      for (std::size_t v = 0; v < n; ++v) {
        auto e = exps_[t * n + v];
        if (!e) continue;
        if (!mono.empty()) mono += '*';
        mono += (*vars_)[v];
        if (e > 1) mono += '^' + std::to_string(e);
      }
      if (mono.empty()) {
        out += c.get_str();
      } else if (c == 1) {
        out += mono;
      } else {
        out += c.get_str() + '*' + mono;
      }
    }
    return out;
  }

  /// Monomial content: the largest monomial dividing every term.
  Polynomial monomial_content() const {
    if (is_zero()) return {};
    const std::size_t n = nvars();
    Exponents e(exps_.begin(), exps_.begin() + n);
    for (std::size_t t = 1; t < term_count(); ++t)
      for (std::size_t v = 0; v < n; ++v) e[v] = std::min(e[v], exps_[t * n + v]);
    std::vector<std::pair<Exponents, Rational>> mono;
    mono.emplace_back(std::move(e), Rational(1));
    return build(vars_, std::move(mono));
  }

  friend std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d);

private:
  VarList vars_;
  Exponents exps_;
  std::vector<Rational> coeffs_;

  static const VarList& empty_vars() {
    static const VarList empty = std::make_shared<const std::vector<std::string>>();
    return empty;
  }

  unsigned term_degree(std::size_t t) const {
    unsigned d = 0;
    for (std::size_t v = 0; v < nvars(); ++v) d += exps_[t * nvars() + v];
    return d;
  }

  std::optional<std::size_t> index_of(const std::string& name) const {
    const auto& v = variables();
    auto it = std::lower_bound(v.begin(), v.end(), name);
    if (it == v.end() || *it != name) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  }

  // Descending grlex comparison of two exponent rows of length n.
  static int compare(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t v = 0; v < n; ++v) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t v = 0; v < n; ++v)
      if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
    return 0;
  }

  // Sorts, merges duplicate monomials, drops zeros and trims unused variables.
  static Polynomial build(const VarList& vars, std::vector<std::pair<Exponents, Rational>> terms) {
    const std::size_t n = vars ? vars->size() : 0;
    std::sort(terms.begin(), terms.end(), [n](const auto& x, const auto& y) {
      return compare(x.first.data(), y.first.data(), n) > 0;
    });
    Polynomial r;
    r.vars_ = vars ? vars : empty_vars();
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < terms.size();) {
      Rational c = terms[i].second;
      c.canonicalize();
      std::size_t j = i + 1;
      for (; j < terms.size() && terms[j].first == terms[i].first; ++j) {
        terms[j].second.canonicalize();
        c += terms[j].second;
      }
      if (c != 0) {
        for (std::size_t v = 0; v < n; ++v) {
          r.exps_.push_back(terms[i].first[v]);
          if (terms[i].first[v]) used[v] = true;
        }
        r.coeffs_.push_back(std::move(c));
      }
      i = j;
    }
    if (r.coeffs_.empty()) return {};
    r.trim(used);
    return r;
  }

  void trim(const std::vector<bool>& used) {
    const std::size_t n = used.size();
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
      if (used[v]) names.push_back((*vars_)[v]);
    Exponents e;
    e.reserve(term_count() * names.size());
    for (std::size_t t = 0; t < term_count(); ++t)
      for (std::size_t v = 0; v < n; ++v)
        if (used[v]) e.push_back(exps_[t * n + v]);
    exps_ = std::move(e);
    vars_ = names.empty() ? empty_vars()
                          : std::make_shared<const std::vector<std::string>>(std::move(names));
  }

  // Re-expresses both operands on the union of their variable lists.
  static std::tuple<VarList, Exponents, Exponents> align(const Polynomial& a, const Polynomial& b) {
    const auto& va = a.variables();
    const auto& vb = b.variables();
    if (a.vars_ == b.vars_ || va == vb) return {a.vars_ ? a.vars_ : empty_vars(), a.exps_, b.exps_};
    std::vector<std::string> merged;
    std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(merged));
    auto remap = [&merged](const Polynomial& p, const std::vector<std::string>& own) {
      std::vector<std::size_t> pos(own.size());
      for (std::size_t i = 0; i < own.size(); ++i)
        pos[i] = std::lower_bound(merged.begin(), merged.end(), own[i]) - merged.begin();
      Exponents e(p.term_count() * merged.size(), 0);
      for (std::size_t t = 0; t < p.term_count(); ++t)
        for (std::size_t i = 0; i < own.size(); ++i)
          e[t * merged.size() + pos[i]] = p.exps_[t * own.size() + i];
      return e;
    };
    Exponents ea = remap(a, va), eb = remap(b, vb);
    return {std::make_shared<const std::vector<std::string>>(std::move(merged)), std::move(ea),
            std::move(eb)};
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    auto [vars, ea, eb] = align(a, b);
    const std::size_t n = vars->size();
    // Both inputs are sorted: merge.
    Polynomial r;
    r.vars_ = vars;
    std::vector<bool> used(n, false);
    std::size_t i = 0, j = 0;
    auto emit = [&](const std::uint32_t* e, Rational c) {
      if (c == 0) return;
      for (std::size_t v = 0; v < n; ++v) {
        r.exps_.push_back(e[v]);
        if (e[v]) used[v] = true;
      }
      r.coeffs_.push_back(std::move(c));
    };
    while (i < a.term_count() || j < b.term_count()) {
      int cmp;
      if (i == a.term_count()) cmp = -1;
      else if (j == b.term_count()) cmp = 1;
      else cmp = compare(&ea[i * n], &eb[j * n], n);
      if (cmp > 0) {
        emit(&ea[i * n], a.coeffs_[i]);
        ++i;
      } else if (cmp < 0) {
        emit(&eb[j * n], subtract ? Rational(-b.coeffs_[j]) : b.coeffs_[j]);
        ++j;
      } else {
        emit(&ea[i * n], subtract ? Rational(a.coeffs_[i] - b.coeffs_[j])
                                  : Rational(a.coeffs_[i] + b.coeffs_[j]));
        ++i;
        ++j;
      }
    }
    if (r.coeffs_.empty()) return {};
    r.trim(used);
    return r;
  }
};

/// Exact quotient p/d, or nullopt when d does not divide p.
inline std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (p.is_zero()) return Polynomial{};
  if (d.is_constant()) return p.scaled(1 / d.constant_value());
  for (const auto& v : d.variables())
    if (!p.has_variable(v)) return std::nullopt;
  auto [vars, ep, ed] = Polynomial::align(p, d);
  const std::size_t n = vars->size();
  using Exps = Polynomial::Exponents;
  auto desc = [n](const Exps& x, const Exps& y) {
    return Polynomial::compare(x.data(), y.data(), n) > 0;
  };
  std::map<Exps, Rational, decltype(desc)> rem(desc);
  for (std::size_t t = 0; t < p.term_count(); ++t)
    rem.emplace(Exps(ep.begin() + t * n, ep.begin() + (t + 1) * n), p.coeffs_[t]);
  const Rational& dlc = d.coeffs_.front();
  std::vector<std::pair<Exps, Rational>> quotient;
  while (!rem.empty()) {
    auto lead = rem.begin();
    Exps shift(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (lead->first[v] < ed[v]) return std::nullopt;
      shift[v] = lead->first[v] - ed[v];
    }
    Rational c = lead->second / dlc;
    for (std::size_t t = 0; t < d.term_count(); ++t) {
      Exps e(n);
      for (std::size_t v = 0; v < n; ++v) e[v] = shift[v] + ed[t * n + v];
      auto [it, inserted] = rem.try_emplace(std::move(e), 0);
      it->second -= c * d.coeffs_[t];
      if (it->second == 0) rem.erase(it);
    }
    quotient.emplace_back(std::move(shift), std::move(c));
  }
  return Polynomial::build(vars, std::move(quotient));
}

namespace detail {

// Univariate polynomial over a multivariate coefficient ring; index = degree.
using UPoly = std::vector<Polynomial>;

inline void strip(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("inexact division inside gcd");
  return *q;
}

// Pseudo-remainder of a by b (deg a >= deg b).
inline UPoly prem(UPoly a, const UPoly& b) {
  const int db = udeg(b);
  const Polynomial& lb = b.back();
  int e = udeg(a) - db + 1;
  while (!a.empty() && udeg(a) >= db) {
    Polynomial la = a.back();
    const int shift = udeg(a) - db;
    for (auto& c : a) c *= lb;
    for (int k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    strip(a);
    --e;
  }
  if (e > 0) {
    Polynomial f = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

}  // namespace detail

Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

inline Polynomial normalize_gcd(const Polynomial& p) {
  auto [factor, prim] = p.integer_primitive();
  (void)factor;
  if (prim.leading_coefficient() < 0) prim = -prim;
  return prim;
}

inline Polynomial content(const UPoly& p) {
  Polynomial c;
  for (const auto& k : p) {
    if (k.is_zero()) continue;
    c = gcd(c, k);
    if (c.is_constant()) return Polynomial(1L);
  }
  return c;
}

}  // namespace detail

/// Greatest common divisor, normalised to an integer primitive polynomial with
/// positive leading coefficient (1 for coprime inputs).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  using namespace detail;
  if (a.is_zero()) return b.is_zero() ? Polynomial{} : normalize_gcd(b);
  if (b.is_zero()) return normalize_gcd(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1L);
  if (a.is_monomial() || b.is_monomial()) {
    // gcd with a monomial is the common monomial content.
    const Polynomial& mono = a.is_monomial() ? a : b;
    const Polynomial& other = a.is_monomial() ? b : a;
    Polynomial mc = other.monomial_content();
    Polynomial result(1L);
    for (const auto& name : mono.variables()) {
      unsigned e = std::min(mono.degree_in(name), mc.degree_in(name));
      if (e) result *= Polynomial::variable(name).pow(e);
    }
    return result;
  }
  // A variable present in only one operand cannot occur in the gcd.
  for (int side = 0; side < 2; ++side) {
    const Polynomial& p = side ? b : a;
    const Polynomial& q = side ? a : b;
    for (const auto& name : p.variables()) {
      if (!q.has_variable(name)) {
        Polynomial c = content(p.coefficients_in(name));
        return gcd(c, q);
      }
    }
  }
  // Same variable sets: pick the main variable of least degree.
  const auto& names = a.variables();
  std::string x = names.front();
  unsigned best = ~0U;
  for (const auto& name : names) {
    unsigned d = std::max(a.degree_in(name), b.degree_in(name));
    if (d < best) {
      best = d;
      x = name;
    }
  }
  UPoly A = a.coefficients_in(x), B = b.coefficients_in(x);
  if (udeg(A) < udeg(B)) std::swap(A, B);
  Polynomial ca = content(A), cb = content(B);
  Polynomial d = gcd(ca, cb);
  for (auto& k : A) k = exact(k, ca);
  for (auto& k : B) k = exact(k, cb);
  Polynomial g(1L), h(1L);
  while (true) {
    const int delta = udeg(A) - udeg(B);
    UPoly R = prem(A, B);
    if (R.empty()) break;
    if (udeg(R) == 0) {
      B = {Polynomial(1L)};
      break;
    }
    A = std::move(B);
    Polynomial divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& k : R) k = exact(k, divisor);
    B = std::move(R);
    g = A.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Polynomial cB = content(B);
  for (auto& k : B) k = exact(k, cB);
  return normalize_gcd(d * Polynomial::from_coefficients(B, x));
}

}  // namespace nilkaehler
