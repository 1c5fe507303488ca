#pragma once

#include "ckcas/algebra.hpp"
#include "ckcas/enveloping.hpp"
#include "ckcas/wsymbols.hpp"

#include <cstddef>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckcas {

/// One prefactor·W² summand of an even-order Casimir.
struct WSquareTerm {
  Polynomial prefactor;
  WIndexSet index_set;
};

struct CasimirInvariant {
  std::string name;  // "C1", "C2", ..., or "C" for the extra invariant
  unsigned order = 0;
  std::vector<WSquareTerm> squares;      // even-order invariants: Σ prefactor·W²
  std::optional<WIndexSet> linear;       // extra invariant: W_{01...N}
  Element element;                       // PBW expansion
};

/// The floor((N+1)/2) invariants of so_{ω}(N+1).
struct CasimirSet {
  OmegaSpec spec;
  std::vector<CasimirInvariant> even_order;
  std::optional<CasimirInvariant> extra;

  std::size_t size() const { return even_order.size() + (extra ? 1 : 0); }

  std::vector<const CasimirInvariant*> all() const {
    std::vector<const CasimirInvariant*> v;
    for (const auto& c : even_order) v.push_back(&c);
    if (extra) v.push_back(&*extra);
    return v;
  }
};

/// ω_{0 a_1} ω_{1 a_2} ··· ω_{(s−1) a_s} · ω_{b_1 (N−s+1)} ··· ω_{b_s N}.
inline Polynomial casimir_prefactor(const Algebra& alg, const WIndexSet& ix) {
  const std::size_t s = ix.order();
  const int n = alg.n();
  Polynomial p = alg.one();
  for (std::size_t i = 0; i < s; ++i) {
    p = p * alg.omega(static_cast<int>(i), ix.a(i));
    p = p * alg.omega(ix.b(i), n - static_cast<int>(s) + 1 + static_cast<int>(i));
  }
  return p;
}

/// The W² summands of C_s with nonzero prefactor, in index-set order.
inline std::vector<WSquareTerm> casimir_squares(const Algebra& alg, std::size_t s) {
  if (s < 1 || s > static_cast<std::size_t>(alg.n() / 2))
    throw std::out_of_range("casimir order s must satisfy 1 <= s <= floor(N/2)");
  std::vector<WSquareTerm> out;
  for (auto& ix : index_sets(alg.n(), s)) {
    Polynomial p = casimir_prefactor(alg, ix);
    if (!p.is_zero()) out.push_back({std::move(p), std::move(ix)});
  }
  return out;
}

inline Element expand_squares(const WSymbols& table, const std::vector<WSquareTerm>& squares) {
  Element out;
  for (const auto& t : squares) {
    const Element& w = table.get(t.index_set);
    out += multiply(table.algebra(), w, w) * t.prefactor;
  }
  return out;
}

/// C_s = Σ prefactor(ix) W_ix² over all 2s-index sets.
inline Element casimir_s(const WSymbols& table, std::size_t s) {
  return expand_squares(table, casimir_squares(table.algebra(), s));
}

/// W_{012...N}, defined for odd N.
inline Element casimir_extra(const WSymbols& table) {
  const int n = table.algebra().n();
  if (n % 2 == 0) throw std::domain_error("extra Casimir exists only for odd N");
  std::vector<int> all(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) all[static_cast<std::size_t>(i)] = i;
  return table.get(WIndexSet(all));
}

inline CasimirSet casimir_set(const WSymbols& table) {
  const Algebra& alg = table.algebra();
  CasimirSet set{alg.spec(), {}, std::nullopt};
  for (std::size_t s = 1; s <= static_cast<std::size_t>(alg.n() / 2); ++s) {
    CasimirInvariant c;
    c.name = "C" + std::to_string(s);
    c.order = static_cast<unsigned>(2 * s);
    c.squares = casimir_squares(alg, s);
    c.element = expand_squares(table, c.squares);
    set.even_order.push_back(std::move(c));
  }
  if (alg.n() % 2 == 1) {
    CasimirInvariant c;
    c.name = "C";
    c.order = static_cast<unsigned>((alg.n() + 1) / 2);
    std::vector<int> all(static_cast<std::size_t>(alg.n() + 1));
    for (int i = 0; i <= alg.n(); ++i) all[static_cast<std::size_t>(i)] = i;
    c.linear = WIndexSet(all);
    c.element = table.get(*c.linear);
    set.extra = std::move(c);
  }
  return set;
}

struct CentralityEntry {
  std::string name;
  bool central = false;
  std::optional<Generator> witness;
  Element remainder;
};

struct CentralityReport {
  std::vector<CentralityEntry> entries;

  std::size_t passed() const {
    std::size_t k = 0;
    for (const auto& e : entries) k += e.central ? 1 : 0;
    return k;
  }
  bool all_central() const { return passed() == entries.size(); }
};

/// Runs is_central on every member of an already-built set.
inline CentralityReport verify_centrality(const Algebra& alg, const CasimirSet& set) {
  CentralityReport report;
  for (const auto* c : set.all()) {
    auto r = is_central(alg, c->element);
    report.entries.push_back({c->name, r.central, r.witness, std::move(r.remainder)});
  }
  return report;
}

inline CentralityReport verify_centrality(const Algebra& alg) {
  WSymbols table(alg);
  return verify_centrality(alg, casimir_set(table));
}

/// {0, 1, ..., s−1, N−s+1, ..., N}: the index set whose prefactor is 1 for every spec.
inline WIndexSet flag_survivor(int n, std::size_t s) {
  if (s < 1 || 2 * s > static_cast<std::size_t>(n + 1)) throw std::out_of_range("flag_survivor: s out of range");
  std::vector<int> idx;
  for (std::size_t i = 0; i < s; ++i) idx.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < s; ++i) idx.push_back(n - static_cast<int>(s) + 1 + static_cast<int>(i));
  return WIndexSet(idx);
}

/// Rebuilds the C_s prefactor of ix from dimensional homogeneity alone: every W²
/// term must carry the doubled weight of the unit-coefficient flag survivor.
/// The W weights are read off the expanded symbols, not from the pairing formula.
inline Polynomial homogeneity_prefactor(const WSymbols& symbolic_table, std::size_t s, const WIndexSet& ix) {
  const Algebra& alg = symbolic_table.algebra();
  if (!alg.spec().all_symbolic()) throw std::invalid_argument("homogeneity reconstruction needs fully symbolic omega");
  const int n = alg.n();
  auto w_flag = homogeneous_weight(n, symbolic_table.get(flag_survivor(n, s)));
  auto w_ix = homogeneous_weight(n, symbolic_table.get(ix));
  if (!w_flag || !w_ix) throw std::logic_error("W-symbol is not dimensionally homogeneous");
  // [prefactor]·[W_ix]² = [W_flag]²; doubled weights give 2·pref + 2·w_ix = 2·w_flag.
  Exponents e(w_flag->size(), 0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    long long d = static_cast<long long>((*w_flag)[k]) - static_cast<long long>((*w_ix)[k]);
    if (d < 0) throw std::domain_error("no homogeneous prefactor for this index set");
    e[k] = static_cast<unsigned>(d);
  }
  return Polynomial::monomial(e, Rational(1));
}

/// Checks C_1 = −2(N−1) ω_0N Σ β^{ab,cd} Ω_ab Ω_cd with β the Killing form from the
/// trace definition. Requires every ω fixed and nonzero (β is degenerate otherwise).
inline bool killing_duality_check(const Algebra& alg) {
  if (!alg.spec().all_fixed_nonzero())
    throw std::domain_error("Killing form is degenerate unless every omega is a nonzero number");
  const auto& gens = alg.generators();
  const std::size_t d = gens.size();
  RationalMatrix beta(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) beta(i, j) = *killing_form(alg, gens[i], gens[j]).constant_value();
  // Invert beta by Gauss–Jordan.
  RationalMatrix inv = RationalMatrix::identity(d);
  RationalMatrix work = beta;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && work(pivot, col) == 0) ++pivot;
    if (pivot == d) throw std::domain_error("Killing form is singular");
    for (std::size_t c = 0; c < d; ++c) {
      std::swap(work(pivot, c), work(col, c));
      std::swap(inv(pivot, c), inv(col, c));
    }
    const Rational p = work(col, col);
    for (std::size_t c = 0; c < d; ++c) {
      work(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || work(r, col) == 0) continue;
      const Rational f = work(r, col);
      for (std::size_t c = 0; c < d; ++c) {
        work(r, c) -= f * work(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  const int n = alg.n();
  const Rational scale = Rational(-2 * (n - 1)) * *alg.omega(0, n).constant_value();
  Element dual;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (inv(i, j) == 0) continue;
      Element t = normal_order(alg, {gens[i], gens[j]});
      dual += t * (scale * inv(i, j));
    }
  WSymbols table(alg);
  return dual == casimir_s(table, 1);
}

}  // namespace ckcas
