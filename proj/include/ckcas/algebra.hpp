#pragma once

#include "ckcas/linalg.hpp"
#include "ckcas/omega_spec.hpp"
#include "ckcas/polynomial.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ckcas {

/// Basis generator Ω_ab of so_{ω}(N+1), always with a < b.
class Generator {
 public:
  constexpr Generator(int a, int b) : a_(a), b_(b) {
    if (!(0 <= a && a < b)) throw std::invalid_argument("generator requires 0 <= a < b");
  }

  constexpr int a() const { return a_; }
  constexpr int b() const { return b_; }

  bool involves(int index) const { return a_ == index || b_ == index; }

  std::string label() const { return std::to_string(a_) + std::to_string(b_); }

  /// Canonical order: lexicographic on (a, b).
  friend constexpr auto operator<=>(const Generator&, const Generator&) = default;

 private:
  int a_;
  int b_;
};

/// ω_ab = ω_{a+1}···ω_b (ω_aa = 1), Fixed entries folded into the coefficient.
inline Polynomial omega_product(const OmegaSpec& spec, int a, int b) {
  if (a < 0 || b > spec.n() || a > b) throw std::out_of_range("omega_product requires 0 <= a <= b <= N");
  Polynomial p = Polynomial::one(static_cast<std::size_t>(spec.n()));
  for (int k = a + 1; k <= b; ++k) p = p * spec.omega(k);
  return p;
}

/// Image of a basis bracket: coeff · Ω_gen (absent when the bracket vanishes).
struct BracketTerm {
  Polynomial coeff;
  Generator gen;
};

/// so_{ω_1..ω_N}(N+1) with its bracket table precomputed. Immutable.
class Algebra {
 public:
  explicit Algebra(OmegaSpec spec) : spec_(std::move(spec)) {
    const int n = spec_.n();
    for (int a = 0; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) generators_.emplace_back(a, b);
    const std::size_t d = generators_.size();
    omega_.assign(static_cast<std::size_t>((n + 1) * (n + 1)), Polynomial(static_cast<std::size_t>(n)));
    for (int a = 0; a <= n; ++a)
      for (int b = a; b <= n; ++b) omega_[static_cast<std::size_t>(a * (n + 1) + b)] = omega_product(spec_, a, b);
    table_.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) table_[i * d + j] = compute_bracket(generators_[i], generators_[j]);
  }

  const OmegaSpec& spec() const { return spec_; }
  int n() const { return spec_.n(); }
  std::size_t num_vars() const { return static_cast<std::size_t>(spec_.n()); }
  std::size_t dimension() const { return generators_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }

  bool contains(const Generator& g) const { return g.b() <= n(); }

  /// Position of g in the canonical (lexicographic) order.
  std::size_t index(const Generator& g) const {
    if (!contains(g)) throw std::out_of_range("generator Ω" + g.label() + " outside so(" + std::to_string(n() + 1) + ")");
    const int n1 = n() + 1;
    return static_cast<std::size_t>(g.a() * (2 * n1 - g.a() - 1) / 2 + (g.b() - g.a() - 1));
  }

  /// ω_ab for 0 ≤ a ≤ b ≤ N; ω_ba := ω_ab is accepted for a > b.
  const Polynomial& omega(int a, int b) const {
    if (a > b) std::swap(a, b);
    if (a < 0 || b > n()) throw std::out_of_range("omega index out of range");
    return omega_[static_cast<std::size_t>(a * (n() + 1) + b)];
  }

  const std::optional<BracketTerm>& bracket(std::size_t i, std::size_t j) const {
    return table_[i * dimension() + j];
  }
  const std::optional<BracketTerm>& bracket(const Generator& g1, const Generator& g2) const {
    return bracket(index(g1), index(g2));
  }

  Polynomial zero() const { return Polynomial(num_vars()); }
  Polynomial one() const { return Polynomial::one(num_vars()); }

 private:
  std::optional<BracketTerm> compute_bracket(const Generator& g1, const Generator& g2) const {
    if (g1 == g2) return std::nullopt;
    int shared = -1;
    int other1 = -1;
    int other2 = -1;
    if (g1.a() == g2.a()) {
      shared = g1.a(), other1 = g1.b(), other2 = g2.b();
    } else if (g1.a() == g2.b()) {
      shared = g1.a(), other1 = g1.b(), other2 = g2.a();
    } else if (g1.b() == g2.a()) {
      shared = g1.b(), other1 = g1.a(), other2 = g2.b();
    } else if (g1.b() == g2.b()) {
      shared = g1.b(), other1 = g1.a(), other2 = g2.a();
    } else {
      return std::nullopt;
    }
    // Rebuild (a,b,c) with a<b<c and classify the pair.
    int idx[3] = {shared, other1, other2};
    std::sort(idx, idx + 3);
    const int a = idx[0], b = idx[1], c = idx[2];
    const Generator ab(a, b), ac(a, c), bc(b, c);
    const Polynomial& w_ab = omega(a, b);
    const Polynomial& w_bc = omega(b, c);
    auto term = [](Polynomial coeff, Generator g) -> std::optional<BracketTerm> {
      if (coeff.is_zero()) return std::nullopt;
      return BracketTerm{std::move(coeff), g};
    };
    // [Ω_ab, Ω_ac] = ω_ab Ω_bc ; [Ω_ab, Ω_bc] = −Ω_ac ; [Ω_ac, Ω_bc] = ω_bc Ω_ab
    if (g1 == ab && g2 == ac) return term(w_ab, bc);
    if (g1 == ac && g2 == ab) return term(-w_ab, bc);
    if (g1 == ab && g2 == bc) return term(-one(), ac);
    if (g1 == bc && g2 == ab) return term(one(), ac);
    if (g1 == ac && g2 == bc) return term(w_bc, ab);
    if (g1 == bc && g2 == ac) return term(-w_bc, ab);
    throw std::logic_error("unreachable bracket case");
  }

  OmegaSpec spec_;
  std::vector<Generator> generators_;
  std::vector<Polynomial> omega_;
  std::vector<std::optional<BracketTerm>> table_;
};

/// diag(1, ω_01, ω_02, ..., ω_0N).
inline std::vector<Polynomial> metric_matrix(const OmegaSpec& spec) {
  std::vector<Polynomial> d;
  for (int a = 0; a <= spec.n(); ++a) d.push_back(omega_product(spec, 0, a));
  return d;
}

/// −ω_ab e_ab + e_ba as an (N+1)×(N+1) matrix. Requires every ω fixed.
inline RationalMatrix vector_rep(const Algebra& alg, const Generator& g) {
  if (!alg.spec().all_fixed()) throw std::invalid_argument("vector_rep requires numeric omega");
  if (!alg.contains(g)) throw std::out_of_range("generator outside algebra");
  const auto size = static_cast<std::size_t>(alg.n() + 1);
  RationalMatrix m(size, size);
  m(static_cast<std::size_t>(g.a()), static_cast<std::size_t>(g.b())) = -*alg.omega(g.a(), g.b()).constant_value();
  m(static_cast<std::size_t>(g.b()), static_cast<std::size_t>(g.a())) = 1;
  return m;
}

/// Numeric I_κ for an all-fixed spec.
inline RationalMatrix metric_matrix_numeric(const OmegaSpec& spec) {
  if (!spec.all_fixed()) throw std::invalid_argument("numeric metric requires numeric omega");
  auto d = metric_matrix(spec);
  RationalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = *d[i].constant_value();
  return m;
}

/// β(g1, g2) = Tr(ad g1 · ad g2), summed from the structure constants.
inline Polynomial killing_form(const Algebra& alg, const Generator& g1, const Generator& g2) {
  const std::size_t i1 = alg.index(g1);
  const std::size_t i2 = alg.index(g2);
  Polynomial trace = alg.zero();
  for (std::size_t mn = 0; mn < alg.dimension(); ++mn) {
    // [g2, Ω_mn] = c·Ω_pq, then the Ω_mn component of [g1, Ω_pq].
    const auto& inner = alg.bracket(i2, mn);
    if (!inner) continue;
    const auto& outer = alg.bracket(i1, alg.index(inner->gen));
    if (!outer || alg.index(outer->gen) != mn) continue;
    trace += inner->coeff * outer->coeff;
  }
  return trace;
}

/// Generator image under the reversal isomorphism, with sign.
struct SignedGenerator {
  int sign;
  Generator gen;
};

struct ReversalIsomorphism {
  OmegaSpec reversed;
  /// Ω_ab ↦ −Ω_{N−b, N−a}.
  SignedGenerator operator()(const Generator& g) const {
    const int n = reversed.n();
    return {-1, Generator(n - g.b(), n - g.a())};
  }
};

/// so_{ω_1..ω_N}(N+1) ≅ so_{ω_N..ω_1}(N+1).
inline ReversalIsomorphism reverse_isomorphism(const OmegaSpec& spec) { return {spec.reversed()}; }

/// p with variable k renamed to N−1−k, so ω_a of the reversed parameters reads as ω_{N+1−a}.
inline Polynomial reverse_variables(const Polynomial& p, std::size_t n) {
  Polynomial r(n);
  for (const auto& [e, c] : p.terms()) {
    Exponents f(n, 0);
    for (std::size_t k = 0; k < e.size(); ++k) f[n - 1 - k] = e[k];
    r.add_term(std::move(f), c);
  }
  return r;
}

/// Checks φ[g1, g2] = [φ g1, φ g2] over every basis pair for Ω_ab ↦ sign·Ω_{N−b,N−a}.
/// Returns the first pair that fails, if any.
inline std::optional<std::pair<Generator, Generator>> reversal_counterexample(const OmegaSpec& spec, int sign = -1) {
  const Algebra src(spec);
  const Algebra dst(spec.reversed());
  const std::size_t nv = src.num_vars();
  const int n = src.n();
  auto image = [&](const Generator& g) { return Generator(n - g.b(), n - g.a()); };
  for (const auto& g1 : src.generators())
    for (const auto& g2 : src.generators()) {
      // φ[g1,g2] = sign · c · Ω_{image(h)}
      const auto& lhs = src.bracket(g1, g2);
      // [φ g1, φ g2] = sign² · c' · Ω_h'
      const auto& rhs = dst.bracket(image(g1), image(g2));
      if (!lhs && !rhs) continue;
      if (!lhs || !rhs || !(image(lhs->gen) == rhs->gen)) return std::pair{g1, g2};
      Polynomial left = lhs->coeff * Rational(sign);
      Polynomial right = reverse_variables(rhs->coeff, nv);
      if (!(left == right)) return std::pair{g1, g2};
    }
  return std::nullopt;
}

}  // namespace ckcas
