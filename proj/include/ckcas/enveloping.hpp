#pragma once

#include "ckcas/algebra.hpp"
#include "ckcas/polynomial.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ckcas {

/// Ordered generator monomial Ω_{g1}^{p1} Ω_{g2}^{p2} ... with g1 < g2 < ... in canonical order.
class PBWMonomial {
 public:
  using Factor = std::pair<Generator, unsigned>;

  PBWMonomial() = default;

  explicit PBWMonomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].second == 0) throw std::invalid_argument("PBW factor with zero power");
      if (i > 0 && !(factors_[i - 1].first < factors_[i].first))
        throw std::invalid_argument("PBW factors must be strictly increasing");
    }
  }

  /// Collapses a non-decreasing word into powers.
  static PBWMonomial from_sorted_word(std::span<const Generator> word) {
    PBWMonomial m;
    for (const auto& g : word) {
      if (!m.factors_.empty() && m.factors_.back().first == g) {
        ++m.factors_.back().second;
      } else {
        if (!m.factors_.empty() && g < m.factors_.back().first)
          throw std::invalid_argument("word is not sorted");
        m.factors_.emplace_back(g, 1u);
      }
    }
    return m;
  }

  static PBWMonomial of(const Generator& g, unsigned power = 1) { return PBWMonomial({{g, power}}); }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  std::vector<Generator> word() const {
    std::vector<Generator> w;
    for (const auto& [g, p] : factors_)
      for (unsigned k = 0; k < p; ++k) w.push_back(g);
    return w;
  }

  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Element of the universal enveloping algebra in the PBW basis,
/// coefficients polynomial in the ω variables.
class Element {
 public:
  using TermMap = std::map<PBWMonomial, Polynomial>;

  Element() = default;

  static Element scalar(const Polynomial& c) { return monomial(PBWMonomial{}, c); }
  static Element monomial(const PBWMonomial& m, const Polynomial& c) {
    Element e;
    e.add_term(m, c);
    return e;
  }
  static Element generator(const Generator& g, std::size_t num_vars) {
    return monomial(PBWMonomial::of(g), Polynomial::one(num_vars));
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Polynomial coefficient(const PBWMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Polynomial() : it->second;
  }

  void add_term(const PBWMonomial& m, const Polynomial& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  bool is_homogeneous(unsigned degree) const {
    for (const auto& [m, c] : terms_)
      if (m.degree() != degree) return false;
    return true;
  }

  Element& operator+=(const Element& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  Element& operator-=(const Element& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  Element& operator*=(const Polynomial& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    TermMap out;
    for (auto& [m, c] : terms_) {
      Polynomial p = c * s;
      if (!p.is_zero()) out.emplace(m, std::move(p));
    }
    terms_ = std::move(out);
    return *this;
  }
  Element& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(Element a, const Polynomial& s) { return a *= s; }
  friend Element operator*(const Polynomial& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (!(m == ib->first) || !(c == ib->second)) return false;
      ++ib;
    }
    return true;
  }

  /// Substitutes numeric values into coefficient variables (0-based variable index).
  Element substituted(const std::map<std::size_t, Rational>& values) const {
    Element out;
    for (const auto& [m, c] : terms_) out.add_term(m, c.substitute(values));
    return out;
  }

 private:
  TermMap terms_;
};

enum class RewriteStrategy { leftmost, rightmost };

namespace detail {

inline std::size_t inversion_count(const std::vector<Generator>& w) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[j] < w[i]) ++k;
  return k;
}

/// PBW straightening with a worklist. Words are keyed by (length, inversions),
/// and every rewrite produces strictly smaller keys, so processing from the
/// largest key merges equal words before they are expanded again.
class Straightener {
 public:
  Straightener(const Algebra& alg, RewriteStrategy strategy) : alg_(alg), strategy_(strategy) {}

  void push(std::vector<Generator> word, const Polynomial& coeff) {
    if (coeff.is_zero()) return;
    Key key{word.size(), inversion_count(word), std::move(word)};
    auto [it, inserted] = pending_.try_emplace(std::move(key), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) pending_.erase(it);
    }
  }

  Element run() {
    Element result;
    while (!pending_.empty()) {
      auto node = pending_.extract(std::prev(pending_.end()));
      Key& key = node.key();
      const Polynomial& coeff = node.mapped();
      if (key.inversions == 0) {
        result.add_term(PBWMonomial::from_sorted_word(key.word), coeff);
        continue;
      }
      auto& w = key.word;
      std::size_t pos = find_swap(w);
      const Generator left = w[pos];
      const Generator right = w[pos + 1];
      // left·right = right·left + [left, right]
      if (const auto& br = alg_.bracket(left, right)) {
        std::vector<Generator> shorter;
        shorter.reserve(w.size() - 1);
        shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        shorter.push_back(br->gen);
        shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + 2), w.end());
        push(std::move(shorter), coeff * br->coeff);
      }
      std::swap(w[pos], w[pos + 1]);
      push(std::move(w), coeff);
    }
    return result;
  }

 private:
  struct Key {
    std::size_t length;
    std::size_t inversions;
    std::vector<Generator> word;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  std::size_t find_swap(const std::vector<Generator>& w) const {
    if (strategy_ == RewriteStrategy::leftmost) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i + 1] < w[i]) return i;
    } else {
      for (std::size_t i = w.size() - 1; i > 0; --i)
        if (w[i] < w[i - 1]) return i - 1;
    }
    throw std::logic_error("no inversion in word with positive inversion count");
  }

  const Algebra& alg_;
  RewriteStrategy strategy_;
  std::map<Key, Polynomial> pending_;
};

inline void check_word(const Algebra& alg, std::span<const Generator> word) {
  for (const auto& g : word)
    if (!alg.contains(g))
      throw std::invalid_argument("generator Ω" + g.label() + " does not belong to so(" + std::to_string(alg.n() + 1) + ")");
}

inline void check_element(const Algebra& alg, const Element& u) {
  for (const auto& [m, c] : u.terms()) {
    if (c.num_vars() != 0 && c.num_vars() != alg.num_vars())
      throw std::invalid_argument("element coefficients do not match the algebra's omega arity");
    for (const auto& [g, p] : m.factors())
      if (!alg.contains(g))
        throw std::invalid_argument("generator Ω" + g.label() + " does not belong to so(" + std::to_string(alg.n() + 1) + ")");
  }
}

}  // namespace detail

/// Rewrites a free word in the generators into the PBW basis.
inline Element normal_order(const Algebra& alg, std::span<const Generator> word,
                            RewriteStrategy strategy = RewriteStrategy::leftmost) {
  detail::check_word(alg, word);
  detail::Straightener s(alg, strategy);
  s.push(std::vector<Generator>(word.begin(), word.end()), alg.one());
  return s.run();
}

inline Element normal_order(const Algebra& alg, std::initializer_list<Generator> word,
                            RewriteStrategy strategy = RewriteStrategy::leftmost) {
  return normal_order(alg, std::span<const Generator>(word.begin(), word.size()), strategy);
}

inline Element multiply(const Algebra& alg, const Element& u, const Element& v) {
  detail::check_element(alg, u);
  detail::check_element(alg, v);
  detail::Straightener s(alg, RewriteStrategy::leftmost);
  for (const auto& [mu, cu] : u.terms()) {
    auto wu = mu.word();
    for (const auto& [mv, cv] : v.terms()) {
      auto w = wu;
      auto wv = mv.word();
      w.insert(w.end(), wv.begin(), wv.end());
      s.push(std::move(w), cu * cv);
    }
  }
  return s.run();
}

inline Element commutator(const Algebra& alg, const Element& u, const Element& v) {
  return multiply(alg, u, v) - multiply(alg, v, u);
}

inline Element generator_element(const Algebra& alg, const Generator& g) {
  if (!alg.contains(g)) throw std::invalid_argument("generator Ω" + g.label() + " outside the algebra");
  return Element::generator(g, alg.num_vars());
}

/// [g1, g2] from the structure constants, as a degree ≤ 1 element.
inline Element bracket_basis(const Algebra& alg, const Generator& g1, const Generator& g2) {
  if (!alg.contains(g1) || !alg.contains(g2))
    throw std::invalid_argument("generators do not belong to so(" + std::to_string(alg.n() + 1) + ")");
  Element e;
  if (const auto& br = alg.bracket(g1, g2)) e.add_term(PBWMonomial::of(br->gen), br->coeff);
  return e;
}

/// ad g (u) = [g, u].
inline Element adjoint_action(const Algebra& alg, const Generator& g, const Element& u) {
  return commutator(alg, generator_element(alg, g), u);
}

/// Evaluates ω coefficients. Keys are 1-based ω indices and must name symbolic entries.
inline Element substitute(const Algebra& alg, const Element& u, const Assignment& assignment) {
  alg.spec().validate(assignment);
  std::map<std::size_t, Rational> values;
  for (const auto& [a, v] : assignment) values.emplace(static_cast<std::size_t>(a - 1), v);
  return u.substituted(values);
}

struct CentralityResult {
  bool central = true;
  std::optional<Generator> witness;  // first generator (canonical order) with [g, u] ≠ 0
  Element remainder;                 // [witness, u]
};

/// Checks [g, u] = 0 for every generator; the per-generator checks run concurrently.
inline CentralityResult is_central(const Algebra& alg, const Element& u) {
  detail::check_element(alg, u);
  std::vector<std::future<Element>> jobs;
  jobs.reserve(alg.dimension());
  for (const auto& g : alg.generators())
    jobs.push_back(std::async(std::launch::async, [&alg, &u, g] { return adjoint_action(alg, g, u); }));
  CentralityResult result;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Element r = jobs[i].get();
    if (result.central && !r.is_zero()) {
      result.central = false;
      result.witness = alg.generators()[i];
      result.remainder = std::move(r);
    }
  }
  return result;
}

/// Polynomial in the commuting symmetric-algebra variables α_ab.
class SymmetricPoly {
 public:
  using TermMap = std::map<PBWMonomial, Polynomial>;

  void add_term(std::vector<Generator> factors, const Polynomial& c) {
    if (c.is_zero()) return;
    std::sort(factors.begin(), factors.end());
    auto m = PBWMonomial::from_sorted_word(factors);
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  TermMap terms_;
};

/// φ: S → Ug, each monomial sent to the average of all orderings of its factors.
inline Element symmetrize(const Algebra& alg, const SymmetricPoly& p) {
  detail::Straightener s(alg, RewriteStrategy::leftmost);
  for (const auto& [m, c] : p.terms()) {
    auto word = m.word();
    detail::check_word(alg, word);
    std::vector<std::vector<Generator>> orderings;
    do {
      orderings.push_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    const Polynomial share = c * Rational(1, static_cast<long long>(orderings.size()));
    for (auto& w : orderings) s.push(std::move(w), share);
  }
  return s.run();
}

}  // namespace ckcas
