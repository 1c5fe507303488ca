#pragma once

#include "ckcas/algebra.hpp"
#include "ckcas/enveloping.hpp"
#include "ckcas/linalg.hpp"
#include "ckcas/wsymbols.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace ckcas {

/// Values for the commuting variables α_ab, one per generator slot.
class AlphaAssignment {
 public:
  explicit AlphaAssignment(std::map<Generator, Rational> values, int n) : values_(std::move(values)), n_(n) {
    for (int a = 0; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        if (!values_.contains(Generator(a, b)))
          throw std::invalid_argument("alpha assignment must cover every generator");
  }

  /// Uniform nonzero rationals p/q with |p| ≤ magnitude, 1 ≤ q ≤ 7.
  template <class Rng>
  static AlphaAssignment random(int n, Rng& rng, int magnitude = 10000) {
    std::map<Generator, Rational> v;
    for (int a = 0; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) v.emplace(Generator(a, b), random_nonzero(rng, magnitude));
    return AlphaAssignment(std::move(v), n);
  }

  template <class Rng>
  static Rational random_nonzero(Rng& rng, int magnitude) {
    std::uniform_int_distribution<int> num(1, magnitude);
    std::uniform_int_distribution<int> den(1, 7);
    std::bernoulli_distribution neg(0.5);
    Rational r(num(rng), den(rng));
    return neg(rng) ? Rational(-r) : r;
  }

  int n() const { return n_; }
  const Rational& operator()(const Generator& g) const { return values_.at(g); }
  const std::map<Generator, Rational>& values() const { return values_; }

 private:
  std::map<Generator, Rational> values_;
  int n_;
};

namespace detail {
inline Rational fixed_omega(const Algebra& alg, int a, int b) {
  auto v = alg.omega(a, b).constant_value();
  if (!v) throw std::invalid_argument("numeric omega required");
  return *v;
}
inline void require_nonzero_fixed(const Algebra& alg) {
  if (!alg.spec().all_fixed_nonzero())
    throw std::domain_error("this operation requires every omega to be a nonzero number");
}
}  // namespace detail

/// I_κ-antisymmetric matrix on the given indices: entry (i,j), u_i < u_j, is
/// −α_{u_i u_j}/ω_{u_i u_j}; entry (j,i) is α_{u_i u_j}.
inline RationalMatrix t_matrix(const Algebra& alg, const AlphaAssignment& alpha, const std::vector<int>& subset) {
  detail::require_nonzero_fixed(alg);
  if (subset.empty()) throw std::invalid_argument("t_matrix needs a nonempty index subset");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] > alg.n()) throw std::out_of_range("t_matrix index out of range");
    if (i > 0 && subset[i - 1] >= subset[i]) throw std::invalid_argument("t_matrix subset must be increasing");
  }
  const std::size_t k = subset.size();
  RationalMatrix t(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const Generator g(subset[i], subset[j]);
      t(i, j) = -alpha(g) / detail::fixed_omega(alg, subset[i], subset[j]);
      t(j, i) = alpha(g);
    }
  return t;
}

inline RationalMatrix t_matrix(const Algebra& alg, const AlphaAssignment& alpha) {
  std::vector<int> all(static_cast<std::size_t>(alg.n() + 1));
  std::iota(all.begin(), all.end(), 0);
  return t_matrix(alg, alpha, all);
}

/// diag(ω_{0 u_i}) restricted to the subset.
inline RationalMatrix sub_metric(const Algebra& alg, const std::vector<int>& subset) {
  RationalMatrix m(subset.size(), subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) m(i, i) = detail::fixed_omega(alg, 0, subset[i]);
  return m;
}

/// Value of u with every Ω_ab replaced by α_ab. Only meaningful when the factors
/// of each monomial commute; coefficients must be numeric.
inline Rational evaluate_commuting(const Element& u, const AlphaAssignment& alpha) {
  Rational sum = 0;
  for (const auto& [m, c] : u.terms()) {
    auto k = c.constant_value();
    if (!k) throw std::invalid_argument("evaluate_commuting needs numeric coefficients");
    Rational t = *k;
    for (const auto& [g, p] : m.factors())
      for (unsigned i = 0; i < p; ++i) t *= alpha(g);
    sum += t;
  }
  return sum;
}

struct WSquaredCheck {
  Rational prefactor_times_minor;
  Rational w_value_squared;
  bool holds() const { return prefactor_times_minor == w_value_squared; }
};

/// ω_{a_1 b_s}···ω_{a_s b_1} · det T[ix] against (W_ix evaluated at α)².
inline WSquaredCheck w_squared_identity_check(const WSymbols& table, const AlphaAssignment& alpha, const WIndexSet& ix) {
  const Algebra& alg = table.algebra();
  detail::require_nonzero_fixed(alg);
  Rational pref = 1;
  const std::size_t s = ix.order();
  for (std::size_t i = 0; i < s; ++i) pref *= detail::fixed_omega(alg, ix.a(i), ix.b(s - 1 - i));
  const Rational minor = determinant(t_matrix(alg, alpha, ix.indices()));
  const Rational w = evaluate_commuting(table.get(ix), alpha);
  return {pref * minor, w * w};
}

namespace detail {
/// α_ij as a signed generator term: i<j gives (Ω_ij, 1); i>j gives (Ω_ji, −1/ω_ji).
inline std::pair<Generator, Rational> oriented_alpha(const Algebra& alg, int i, int j) {
  if (i < j) return {Generator(i, j), Rational(1)};
  return {Generator(j, i), Rational(-1) / fixed_omega(alg, j, i)};
}
}  // namespace detail

/// Σ α_{i1 i2} α_{i2 i3} ··· α_{i_{2s} i1} over all index cycles, α_ba = −α_ab/ω_ab.
inline SymmetricPoly gelfand_trace_poly(const Algebra& alg, std::size_t s) {
  detail::require_nonzero_fixed(alg);
  if (s < 1) throw std::out_of_range("trace form order must be >= 1");
  const int n = alg.n();
  const std::size_t len = 2 * s;
  SymmetricPoly out;
  std::vector<int> seq(len, 0);
  while (true) {
    bool ok = true;
    for (std::size_t k = 0; k < len && ok; ++k) ok = seq[k] != seq[(k + 1) % len];
    if (ok) {
      std::vector<Generator> factors;
      Rational c = 1;
      for (std::size_t k = 0; k < len; ++k) {
        auto [g, f] = detail::oriented_alpha(alg, seq[k], seq[(k + 1) % len]);
        factors.push_back(g);
        c *= f;
      }
      out.add_term(std::move(factors), Polynomial::constant(alg.num_vars(), c));
    }
    std::size_t pos = 0;
    while (pos < len && seq[pos] == n) seq[pos++] = 0;
    if (pos == len) break;
    ++seq[pos];
  }
  return out;
}

/// Σ ε_{i0..iN} A_{i0 i1} A_{i2 i3} ··· A_{i_{N−1} i_N} with A = T·I_κ up to sign,
/// so A_ij = ω_{0i} α_ij and A_ji = −A_ij for i < j. Odd N.
inline SymmetricPoly gelfand_epsilon_poly(const Algebra& alg) {
  detail::require_nonzero_fixed(alg);
  const int n = alg.n();
  if (n % 2 == 0) throw std::domain_error("epsilon invariant needs odd N");
  std::vector<int> perm(static_cast<std::size_t>(n + 1));
  std::iota(perm.begin(), perm.end(), 0);
  SymmetricPoly out;
  do {
    std::vector<int> tmp = perm;
    int sign = 1;
    for (std::size_t i = 0; i < tmp.size(); ++i)
      while (tmp[i] != static_cast<int>(i)) {
        std::swap(tmp[i], tmp[static_cast<std::size_t>(tmp[i])]);
        sign = -sign;
      }
    std::vector<Generator> factors;
    Rational c = sign;
    for (std::size_t k = 0; k + 1 < perm.size(); k += 2) {
      const int i = std::min(perm[k], perm[k + 1]);
      const int j = std::max(perm[k], perm[k + 1]);
      factors.emplace_back(i, j);
      c *= detail::fixed_omega(alg, 0, i);
      if (perm[k] > perm[k + 1]) c = -c;
    }
    out.add_term(std::move(factors), Polynomial::constant(alg.num_vars(), c));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline Element gelfand_trace_form(const Algebra& alg, std::size_t s) { return symmetrize(alg, gelfand_trace_poly(alg, s)); }
inline Element gelfand_epsilon_form(const Algebra& alg) { return symmetrize(alg, gelfand_epsilon_poly(alg)); }

/// Trace forms of orders 2, 4, ..., 2 floor(N/2), then the ε-form for odd N.
inline std::vector<Element> gelfand_classical_casimirs(const Algebra& alg) {
  std::vector<Element> out;
  for (std::size_t s = 1; s <= static_cast<std::size_t>(alg.n() / 2); ++s) out.push_back(gelfand_trace_form(alg, s));
  if (alg.n() % 2 == 1) out.push_back(gelfand_epsilon_form(alg));
  return out;
}

/// k with a = k·b for numeric-coefficient elements, if one exists (both nonzero).
inline std::optional<Rational> proportionality(const Element& a, const Element& b) {
  if (a.is_zero() || b.is_zero() || a.size() != b.size()) return std::nullopt;
  std::optional<Rational> k;
  auto ib = b.terms().begin();
  for (const auto& [m, c] : a.terms()) {
    if (!(m == ib->first)) return std::nullopt;
    auto ca = c.constant_value();
    auto cb = ib->second.constant_value();
    if (!ca || !cb) return std::nullopt;
    Rational r = *ca / *cb;
    if (!k) k = r;
    else if (*k != r) return std::nullopt;
    ++ib;
  }
  return k;
}

/// Random nonzero values for the symbolic ω entries; fixed entries keep their value.
template <class Rng>
std::vector<Rational> sample_omega(const OmegaSpec& spec, Rng& rng, int magnitude = 10000) {
  std::vector<Rational> v;
  for (const auto& e : spec.entries())
    v.push_back(e.is_fixed() ? e.value() : AlphaAssignment::random_nonzero(rng, magnitude));
  return v;
}

/// (M_g)_{ab,cd} = Σ_mn C_{ab,cd}^{mn} α_mn, at numeric ω and α.
inline RationalMatrix mg_matrix(const Algebra& alg, const AlphaAssignment& alpha, const std::vector<Rational>& omega_values) {
  const std::size_t d = alg.dimension();
  RationalMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (const auto& br = alg.bracket(i, j)) m(i, j) = br->coeff.evaluate(omega_values) * alpha(br->gen);
  return m;
}

struct RankResult {
  std::size_t dimension = 0;
  std::size_t rank = 0;
  std::vector<std::size_t> trial_ranks;

  std::size_t tau() const { return dimension - rank; }
  bool stable() const {
    return std::all_of(trial_ranks.begin(), trial_ranks.end(), [&](std::size_t r) { return r == rank; });
  }
};

/// Maximum rank observed over independent random draws. The sampler receives the
/// generator and returns one numeric matrix of size dimension.
template <class Sampler>
RankResult randomized_rank(std::size_t dimension, Sampler&& sample, std::uint64_t seed, int trials = 3) {
  RankResult r;
  r.dimension = dimension;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(t));
    std::size_t k = rank(sample(rng));
    r.trial_ranks.push_back(k);
    r.rank = std::max(r.rank, k);
  }
  return r;
}

/// Rank of M_g by random exact evaluation; symbolic ω entries are sampled too.
inline RankResult mg_rank(const Algebra& alg, std::uint64_t seed = 1, int trials = 3) {
  return randomized_rank(
      alg.dimension(),
      [&alg](std::mt19937_64& rng) {
        auto omega = sample_omega(alg.spec(), rng);
        auto alpha = AlphaAssignment::random(alg.n(), rng);
        return mg_matrix(alg, alpha, omega);
      },
      seed, trials);
}

/// dim g − rank M_g: the bound on algebraically independent Casimirs.
inline std::size_t tau_bound(const Algebra& alg, std::uint64_t seed = 1) { return mg_rank(alg, seed).tau(); }

/// Expected rank of M_g for every member of the family.
inline std::size_t expected_mg_rank(int n) {
  return n % 2 == 0 ? static_cast<std::size_t>(n * n / 2) : static_cast<std::size_t>((n * n - 1) / 2);
}

struct WitnessMinor {
  std::vector<Generator> removed;  // α_{0N}, α_{1,N−1}, ...
  Polynomial determinant;          // over N ω variables followed by one variable per removed α
  Exponents expected_alpha;        // 2(N−1), 2(N−3), ...
  Polynomial expected_coefficient; // ω-polynomial multiplying α^expected in the determinant
  bool single_monomial = false;
  Rational generic_value;          // full minor at a random point

  bool holds() const {
    auto c = expected_coefficient.constant_value();
    return c && (*c == 1 || *c == -1) && generic_value != 0;
  }
};

/// The constructive minor of M_g: delete the rows and columns of α_{k, N−k},
/// k = 0..floor((N+1)/2)−1, keep only those α variables, and expand the rest
/// symbolically. The determinant must contain Π α_{k,N−k}^{2(N−1−2k)} with an
/// ω-free unit coefficient.
inline WitnessMinor witness_minor(const Algebra& alg, std::uint64_t seed = 7) {
  const int n = alg.n();
  const std::size_t l = static_cast<std::size_t>((n + 1) / 2);
  WitnessMinor w;
  std::map<Generator, std::size_t> witness_var;
  for (std::size_t k = 0; k < l; ++k) {
    Generator g(static_cast<int>(k), n - static_cast<int>(k));
    witness_var.emplace(g, k);
    w.removed.push_back(g);
    w.expected_alpha.push_back(static_cast<unsigned>(2 * (n - 1 - 2 * static_cast<int>(k))));
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < alg.dimension(); ++i)
    if (!witness_var.contains(alg.generators()[i])) kept.push_back(i);
  const std::size_t m = kept.size();
  const std::size_t nv = alg.num_vars() + l;
  if (m > 26) throw std::length_error("witness minor too large for subset expansion");

  // Sparse rows: (column position, entry polynomial) for witness-variable entries only.
  std::vector<std::vector<std::pair<std::size_t, Polynomial>>> rows(m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      const auto& br = alg.bracket(kept[r], kept[c]);
      if (!br) continue;
      auto it = witness_var.find(br->gen);
      if (it == witness_var.end()) continue;
      rows[r].emplace_back(c, br->coeff.extended(nv) * Polynomial::variable(nv, alg.num_vars() + it->second));
    }

  // Row-by-row expansion keyed by the set of used columns.
  std::unordered_map<std::uint32_t, Polynomial> layer{{0u, Polynomial::one(nv)}};
  for (std::size_t r = 0; r < m; ++r) {
    std::unordered_map<std::uint32_t, Polynomial> next;
    for (const auto& [mask, val] : layer)
      for (const auto& [c, entry] : rows[r]) {
        const std::uint32_t bit = 1u << c;
        if (mask & bit) continue;
        const int above = std::popcount(mask >> (c + 1));
        Polynomial t = val * entry;
        if (above % 2) t = -t;
        auto [it, ins] = next.try_emplace(mask | bit, t);
        if (!ins) it->second += t;
      }
    layer = std::move(next);
  }
  w.determinant = layer.empty() ? Polynomial(nv) : layer.begin()->second;
  if (w.determinant.num_vars() == 0) w.determinant = Polynomial(nv);
  w.single_monomial = w.determinant.size() == 1;

  Polynomial coeff(alg.num_vars());
  for (const auto& [e, c] : w.determinant.terms()) {
    if (!std::equal(w.expected_alpha.begin(), w.expected_alpha.end(), e.begin() + static_cast<std::ptrdiff_t>(alg.num_vars())))
      continue;
    coeff.add_term(Exponents(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(alg.num_vars())), c);
  }
  w.expected_coefficient = coeff;

  std::mt19937_64 rng(seed);
  auto omega = sample_omega(alg.spec(), rng);
  auto alpha = AlphaAssignment::random(n, rng);
  w.generic_value = determinant(principal_submatrix(mg_matrix(alg, alpha, omega), kept));
  return w;
}

}  // namespace ckcas
