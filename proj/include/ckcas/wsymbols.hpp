#pragma once

#include "ckcas/algebra.hpp"
#include "ckcas/enveloping.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ckcas {

/// Strictly increasing list a_1 < ... < a_s < b_1 < ... < b_s of 2s indices.
/// The a/b split is positional: the first half is the a-block.
class WIndexSet {
 public:
  explicit WIndexSet(std::vector<int> indices) : indices_(std::move(indices)) {
    if (indices_.size() < 2 || indices_.size() % 2 != 0)
      throw std::invalid_argument("W index set needs an even number (>= 2) of indices");
    if (indices_.front() < 0) throw std::invalid_argument("W indices must be non-negative");
    for (std::size_t i = 1; i < indices_.size(); ++i)
      if (indices_[i - 1] >= indices_[i]) throw std::invalid_argument("W indices must be strictly increasing");
  }

  /// "0123" (single digits) or "0,1,10,11".
  static WIndexSet parse(std::string_view text) {
    std::vector<int> idx;
    if (text.find(',') != std::string_view::npos) {
      std::size_t start = 0;
      while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        idx.push_back(std::stoi(std::string(text.substr(start, end - start))));
        start = end + 1;
      }
    } else {
      for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("malformed W index set");
        idx.push_back(c - '0');
      }
    }
    return WIndexSet(std::move(idx));
  }

  std::size_t order() const { return indices_.size() / 2; }
  const std::vector<int>& indices() const { return indices_; }
  /// a_{i+1}, 0-based position.
  int a(std::size_t i) const { return indices_.at(i); }
  /// b_{i+1}, 0-based position.
  int b(std::size_t i) const { return indices_.at(order() + i); }
  int max_index() const { return indices_.back(); }

  bool contains(int x) const { return std::binary_search(indices_.begin(), indices_.end(), x); }

  WIndexSet without(int x, int y) const {
    std::vector<int> rest;
    for (int i : indices_)
      if (i != x && i != y) rest.push_back(i);
    if (rest.size() + 2 != indices_.size()) throw std::invalid_argument("removed index not present");
    return WIndexSet(std::move(rest));
  }

  std::string label() const {
    bool wide = indices_.back() > 9;
    std::string s;
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (wide && i > 0) s += ',';
      s += std::to_string(indices_[i]);
    }
    return s;
  }

  friend auto operator<=>(const WIndexSet&, const WIndexSet&) = default;
  friend bool operator==(const WIndexSet&, const WIndexSet&) = default;

 private:
  std::vector<int> indices_;
};

/// All 2s-element increasing index sets drawn from {0..n}.
inline std::vector<WIndexSet> index_sets(int n, std::size_t s) {
  std::vector<WIndexSet> out;
  const std::size_t k = 2 * s;
  if (k == 0 || k > static_cast<std::size_t>(n + 1)) return out;
  std::vector<int> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<int>(i);
  while (true) {
    out.emplace_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - static_cast<int>(k - i)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

/// Exponent vector of ω_xy over the N variables, treating every entry as symbolic.
inline Exponents omega_exponents(int n, int x, int y) {
  if (x > y) std::swap(x, y);
  Exponents e(static_cast<std::size_t>(n), 0);
  for (int k = x + 1; k <= y; ++k) e[static_cast<std::size_t>(k - 1)] += 1;
  return e;
}

/// Exponents of ω_{a_1 b_s} ω_{a_2 b_{s-1}} ··· ω_{a_s b_1}.
inline Exponents nested_pairing_exponents(int n, const WIndexSet& ix) {
  Exponents e(static_cast<std::size_t>(n), 0);
  const std::size_t s = ix.order();
  for (std::size_t i = 0; i < s; ++i) {
    auto f = omega_exponents(n, ix.a(i), ix.b(s - 1 - i));
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += f[k];
  }
  return e;
}

/// Evaluates Π ω_k^{e_k} with the fixed entries folded in.
inline Polynomial omega_power_product(const OmegaSpec& spec, const Exponents& e) {
  Polynomial p = Polynomial::one(static_cast<std::size_t>(spec.n()));
  for (std::size_t k = 0; k < e.size(); ++k)
    if (e[k] > 0) p = p * spec.omega(static_cast<int>(k + 1)).pow(e[k]);
  return p;
}

struct WSymbol {
  WIndexSet index_set;
  Element element;
};

/// Memoized W-symbols for one algebra. The memo is shared and mutex-guarded,
/// so one table may serve concurrent callers. Holds a reference to the algebra.
class WSymbols {
 public:
  explicit WSymbols(const Algebra& alg) : alg_(alg) {}

  const Algebra& algebra() const { return alg_; }

  const Element& get(const WIndexSet& ix) const {
    if (ix.max_index() > alg_.n())
      throw std::invalid_argument("W index " + std::to_string(ix.max_index()) + " exceeds N=" + std::to_string(alg_.n()));
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(ix);
      if (it != memo_.end()) return it->second;
    }
    Element built = build(ix);
    std::lock_guard lock(mu_);
    return memo_.try_emplace(ix, std::move(built)).first->second;
  }

 private:
  // W_ab = Ω_ab; W over 2s indices expands along b_s:
  //   Σ_μ (−1)^{μ+1} Ω_{a_μ b_s} W(·\{a_μ,b_s}) + Σ_{ν<s} (−1)^{s+ν+1} ω_{a_s b_ν} Ω_{b_ν b_s} W(·\{b_ν,b_s})
  Element build(const WIndexSet& ix) const {
    const std::size_t s = ix.order();
    if (s == 1) return generator_element(alg_, Generator(ix.a(0), ix.b(0)));
    const int bs = ix.b(s - 1);
    Element out;
    for (std::size_t mu = 1; mu <= s; ++mu) {
      const int am = ix.a(mu - 1);
      Element t = multiply(alg_, generator_element(alg_, Generator(am, bs)), get(ix.without(am, bs)));
      out += (mu % 2 == 1) ? t : -t;
    }
    const int as = ix.a(s - 1);
    for (std::size_t nu = 1; nu + 1 <= s; ++nu) {
      const int bn = ix.b(nu - 1);
      const Polynomial& w = alg_.omega(as, bn);
      if (w.is_zero()) continue;
      Element t = multiply(alg_, generator_element(alg_, Generator(bn, bs)), get(ix.without(bn, bs))) * w;
      out += ((s + nu + 1) % 2 == 0) ? t : -t;
    }
    return out;
  }

  const Algebra& alg_;
  mutable std::mutex mu_;
  mutable std::map<WIndexSet, Element> memo_;
};

inline WSymbol w_symbol(const WSymbols& table, const WIndexSet& ix) { return {ix, table.get(ix)}; }

/// Inversions of the sequence with strict comparison (equal entries never count).
inline std::size_t transposition_count(const std::vector<int>& seq) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[j] < seq[i]) ++k;
  return k;
}

/// [Ω_ab, W_ix] from the closed-form rule:
/// zero if Ω_ab shares zero or two indices with ix, otherwise (−1)^{p+1} f W_{ix'}
/// with ix' the merge of {a,b} and ix minus the shared index, and f the exact
/// square root of ω_ab · pairing(ix) / pairing(ix').
inline Element w_gen_bracket_closed_form(const WSymbols& table, const Generator& g, const WIndexSet& ix) {
  const Algebra& alg = table.algebra();
  if (!alg.contains(g) || ix.max_index() > alg.n()) throw std::invalid_argument("generator or index set outside the algebra");
  const bool has_a = ix.contains(g.a());
  const bool has_b = ix.contains(g.b());
  if (has_a == has_b) return Element{};
  const int shared = has_a ? g.a() : g.b();

  std::vector<int> seq{g.a(), g.b()};
  seq.insert(seq.end(), ix.indices().begin(), ix.indices().end());
  const std::size_t p = transposition_count(seq);

  std::vector<int> merged;
  for (int x : seq)
    if (x != shared) merged.push_back(x);
  std::sort(merged.begin(), merged.end());
  const WIndexSet target(merged);

  const int n = alg.n();
  Exponents num = omega_exponents(n, g.a(), g.b());
  const Exponents pair_ix = nested_pairing_exponents(n, ix);
  const Exponents pair_target = nested_pairing_exponents(n, target);
  Exponents half(num.size(), 0);
  for (std::size_t k = 0; k < num.size(); ++k) {
    long long e = static_cast<long long>(num[k]) + pair_ix[k] - static_cast<long long>(pair_target[k]);
    if (e < 0 || e % 2 != 0)
      throw std::domain_error("closed-form bracket: omega factor does not cancel to a perfect square");
    half[k] = static_cast<unsigned>(e / 2);
  }
  Polynomial f = omega_power_product(alg.spec(), half);
  if (p % 2 == 0) f = -f;  // (−1)^{p+1}
  return table.get(target) * f;
}

/// [W_ix1, W_ix2] computed in the enveloping algebra.
inline Element w_w_bracket(const WSymbols& table, const WIndexSet& ix1, const WIndexSet& ix2) {
  return commutator(table.algebra(), table.get(ix1), table.get(ix2));
}

/// True when every monomial of u is built from pairwise commuting generators.
inline bool monomials_commute(const Algebra& alg, const Element& u) {
  for (const auto& [m, c] : u.terms()) {
    const auto& f = m.factors();
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        if (alg.bracket(f[i].first, f[j].first)) return false;
  }
  return true;
}

/// Doubled dimensional weight of one term: 2·[coefficient] + Σ [ω_ab] over its
/// generators, since [Ω_ab] = [ω_ab]^{1/2}. Meaningful under fully symbolic ω.
inline Exponents doubled_weight(int n, const PBWMonomial& m, const Exponents& coeff_exponents) {
  Exponents w(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < coeff_exponents.size() && k < w.size(); ++k) w[k] += 2 * coeff_exponents[k];
  for (const auto& [g, p] : m.factors()) {
    auto e = omega_exponents(n, g.a(), g.b());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] += p * e[k];
  }
  return w;
}

/// Common doubled weight of every term of u, or nullopt if the terms disagree.
inline std::optional<Exponents> homogeneous_weight(int n, const Element& u) {
  std::optional<Exponents> common;
  for (const auto& [m, c] : u.terms()) {
    for (const auto& [e, r] : c.terms()) {
      auto w = doubled_weight(n, m, e);
      if (!common) common = w;
      else if (*common != w) return std::nullopt;
    }
  }
  return common;
}

}  // namespace ckcas
