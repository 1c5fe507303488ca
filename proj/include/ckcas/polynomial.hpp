#pragma once

#include "ckcas/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ckcas {

using Exponents = std::vector<unsigned>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by dense exponent vectors of length num_vars(). Zero
/// coefficients are never stored, so structural equality is polynomial
/// equality. A polynomial with num_vars() == 0 is a scalar and combines
/// with a polynomial of any arity.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c) {
    Polynomial p(num_vars);
    if (c != 0) p.terms_.emplace(Exponents(num_vars, 0), c);
    return p;
  }
  static Polynomial one(std::size_t num_vars) { return constant(num_vars, Rational(1)); }

  /// x_index^power with coefficient 1.
  static Polynomial variable(std::size_t num_vars, std::size_t index, unsigned power = 1) {
    if (index >= num_vars) throw std::out_of_range("polynomial variable index out of range");
    Exponents e(num_vars, 0);
    e[index] = power;
    Polynomial p(num_vars);
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }

  static Polynomial monomial(Exponents e, const Rational& c) {
    Polynomial p(e.size());
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (unsigned e : terms_.begin()->first)
      if (e != 0) return false;
    return true;
  }

  std::optional<Rational> constant_value() const {
    if (!is_constant()) return std::nullopt;
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  /// Single-term view, if this polynomial is a nonzero monomial.
  std::optional<std::pair<Exponents, Rational>> as_monomial() const {
    if (terms_.size() != 1) return std::nullopt;
    return *terms_.begin();
  }

  unsigned total_degree() const {
    unsigned best = 0;
    for (const auto& [e, c] : terms_) {
      unsigned d = 0;
      for (unsigned x : e) d += x;
      best = std::max(best, d);
    }
    return best;
  }

  /// Same polynomial over a larger variable set; old variable i maps to i.
  Polynomial extended(std::size_t num_vars) const {
    if (num_vars < num_vars_) throw std::invalid_argument("cannot shrink polynomial arity");
    Polynomial p(num_vars);
    for (const auto& [e, c] : terms_) {
      Exponents f(num_vars, 0);
      std::copy(e.begin(), e.end(), f.begin());
      p.terms_.emplace(std::move(f), c);
    }
    return p;
  }

  Polynomial& operator+=(const Polynomial& other) {
    unify(other);
    for (const auto& [e, c] : other.terms_) add_term(promote(e), c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    unify(other);
    for (const auto& [e, c] : other.terms_) add_term(promote(e), -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  Polynomial& operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::size_t n = std::max(a.num_vars_, b.num_vars_);
    if (a.num_vars_ != b.num_vars_ && a.num_vars_ != 0 && b.num_vars_ != 0)
      throw std::invalid_argument("polynomial arity mismatch");
    Polynomial r(n);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(n, 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.num_vars_ == b.num_vars_) return a.terms_ == b.terms_;
    // Scalars of different arity compare by value.
    if (a.is_constant() && b.is_constant()) return a.constant_value() == b.constant_value();
    return false;
  }

  Polynomial pow(unsigned k) const {
    Polynomial r = one(num_vars_);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Replaces the listed variables by rational values; arity is kept.
  Polynomial substitute(const std::map<std::size_t, Rational>& values) const {
    for (const auto& [i, v] : values)
      if (i >= num_vars_) throw std::out_of_range("substitution variable out of range");
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      Rational k = c;
      for (const auto& [i, v] : values) {
        for (unsigned t = 0; t < f[i]; ++t) k *= v;
        f[i] = 0;
      }
      r.add_term(std::move(f), k);
    }
    return r;
  }

  Rational evaluate(std::span<const Rational> values) const {
    if (values.size() < num_vars_) throw std::invalid_argument("too few values to evaluate polynomial");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= values[i];
      sum += t;
    }
    return sum;
  }

  void add_term(Exponents e, const Rational& c) {
    if (c == 0) return;
    if (num_vars_ == 0 && !e.empty()) num_vars_ = e.size();
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  void unify(const Polynomial& other) {
    if (other.num_vars_ == num_vars_ || other.num_vars_ == 0) return;
    if (num_vars_ == 0) {
      *this = extended(other.num_vars_);
      return;
    }
    throw std::invalid_argument("polynomial arity mismatch");
  }

  Exponents promote(const Exponents& e) const {
    if (e.size() == num_vars_) return e;
    Exponents f(num_vars_, 0);
    std::copy(e.begin(), e.end(), f.begin());
    return f;
  }

  std::size_t num_vars_ = 0;
  TermMap terms_;
};

}  // namespace ckcas
