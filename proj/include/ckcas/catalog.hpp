#pragma once

#include "ckcas/algebra.hpp"
#include "ckcas/omega_spec.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ckcas {

/// name = sign · Ω_gen.
struct GeneratorAlias {
  Generator gen;
  int sign;
  std::string name;
};

/// A point of the kinematical plane: κ ∈ {−1, 0, 1}, c ∈ {1, ∞}.
struct KinematicalPoint {
  int kappa;
  bool c_infinite;

  /// ω_1 = κ, ω_2 = −1/c², ω_3 = ω_4 = 1.
  OmegaSpec spec() const { return OmegaSpec::fixed({kappa, c_infinite ? 0 : -1, 1, 1}); }
  Assignment assignment() const { return {{1, Rational(kappa)}, {2, Rational(c_infinite ? 0 : -1)}}; }
  friend bool operator==(const KinematicalPoint&, const KinematicalPoint&) = default;
};

struct AlgebraEntry {
  std::string name;
  std::string structure;  // e.g. "iso(3,1)"
  int n = 0;
  OmegaSpec spec;
  std::vector<OmegaSpec> alternates;
  std::vector<GeneratorAlias> aliases;
  std::optional<KinematicalPoint> kinematics;
};

/// (κ, −1/c², +1, +1) with κ and −1/c² left symbolic.
inline OmegaSpec kinematical_pattern() {
  return OmegaSpec({OmegaEntry::symbolic(SymbolKind::kappa), OmegaEntry::symbolic(SymbolKind::inverse_c_squared),
                    OmegaEntry::fixed(1), OmegaEntry::fixed(1)});
}

/// Display order P1, P2, P3, H, K1, K2, K3, J1, J2, J3.
inline std::vector<GeneratorAlias> kinematical_aliases() {
  return {
      {Generator(0, 2), 1, "P1"}, {Generator(0, 3), 1, "P2"}, {Generator(0, 4), 1, "P3"},
      {Generator(0, 1), 1, "H"},  {Generator(1, 2), 1, "K1"}, {Generator(1, 3), 1, "K2"},
      {Generator(1, 4), 1, "K3"}, {Generator(3, 4), 1, "J1"}, {Generator(2, 4), -1, "J2"},
      {Generator(2, 3), 1, "J3"},
  };
}

struct KinematicalCell {
  std::string name;
  std::string title;
  std::string structure;
  KinematicalPoint point;
};

/// The six cells of the kinematical table, row by row.
inline const std::vector<KinematicalCell>& kinematical_cells() {
  static const std::vector<KinematicalCell> cells{
      {"newton-hooke-osc", "Oscillating Newton-Hooke", "t6(so(3)+so(2))", {1, true}},
      {"galilei", "Galilei", "iiso(3)", {0, true}},
      {"newton-hooke-exp", "Expanding Newton-Hooke", "t6(so(3)+so(1,1))", {-1, true}},
      {"anti-desitter", "Anti-DeSitter", "so(3,2)", {1, false}},
      {"poincare", "Poincare", "iso(3,1)", {0, false}},
      {"desitter", "DeSitter", "so(4,1)", {-1, false}},
  };
  return cells;
}

inline std::vector<std::string> catalog_names() {
  return {"euclidean", "poincare",      "galilei",          "carroll",          "flag",     "desitter",
          "anti-desitter", "newton-hooke-exp", "newton-hooke-osc", "so(p,q)", "iso(p,q)"};
}

namespace detail {
inline OmegaSpec signs(const std::vector<int>& v) {
  std::vector<Rational> r(v.begin(), v.end());
  return OmegaSpec::fixed(r);
}

/// "so(3,1)" → {3, 1}.
inline std::optional<std::pair<int, int>> parse_pq(std::string_view name, std::string_view head) {
  if (!name.starts_with(head) || !name.ends_with(")")) return std::nullopt;
  auto body = name.substr(head.size(), name.size() - head.size() - 1);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    std::string ps(body.substr(0, comma)), qs(body.substr(comma + 1));
    int p = std::stoi(ps, &used);
    if (used != ps.size()) return std::nullopt;
    int q = std::stoi(qs, &used);
    if (used != qs.size()) return std::nullopt;
    return std::pair{p, q};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::vector<OmegaSpec> poincare_alternates(int n) {
  std::vector<std::vector<int>> pats;
  auto base = [&] { return std::vector<int>(static_cast<std::size_t>(n), 1); };
  {
    auto v = base();
    v[0] = 0, v[1] = -1;
    pats.push_back(v);
  }
  if (n >= 2) {
    auto v = base();
    v[0] = 0, v[static_cast<std::size_t>(n - 1)] = -1;
    pats.push_back(v);
  }
  for (int j = 2; j + 1 <= n; ++j) {
    auto v = base();
    v[0] = 0, v[static_cast<std::size_t>(j - 1)] = -1, v[static_cast<std::size_t>(j)] = -1;
    pats.push_back(v);
  }
  std::vector<OmegaSpec> out;
  for (const auto& p : pats) {
    auto s = signs(p);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}
}  // namespace detail

/// Looks up a named algebra. Throws std::invalid_argument for unknown names and
/// std::out_of_range when n does not fit the name.
inline AlgebraEntry resolve(std::string_view name, int n) {
  if (n < 1) throw std::out_of_range("n must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  AlgebraEntry e;
  e.name = std::string(name);
  e.n = n;
  auto need = [&](int min_n) {
    if (n < min_n) throw std::out_of_range(std::string(name) + " needs n >= " + std::to_string(min_n));
  };
  std::vector<int> v(un, 1);

  for (const auto& cell : kinematical_cells()) {
    if (cell.name != name) continue;
    if (cell.name == "poincare" || cell.name == "galilei") break;
    if (n != 4) throw std::out_of_range(std::string(name) + " is defined for n = 4 only");
    e.structure = cell.structure;
    e.spec = cell.point.spec();
    e.aliases = kinematical_aliases();
    e.kinematics = cell.point;
    return e;
  }

  if (name == "euclidean") {
    v[0] = 0;
    e.structure = "iso(" + std::to_string(n) + ")";
  } else if (name == "poincare") {
    need(2);
    e.alternates = detail::poincare_alternates(n);
    e.spec = e.alternates.front();
    e.alternates.erase(e.alternates.begin());
    e.structure = "iso(" + std::to_string(n - 1) + ",1)";
    if (n == 4) e.aliases = kinematical_aliases(), e.kinematics = KinematicalPoint{0, false};
    return e;
  } else if (name == "galilei") {
    need(2);
    v[0] = v[1] = 0;
    e.structure = "iiso(" + std::to_string(n - 1) + ")";
    if (n == 4) e.aliases = kinematical_aliases(), e.kinematics = KinematicalPoint{0, true};
  } else if (name == "carroll") {
    need(2);
    v[0] = v[un - 1] = 0;
    e.structure = "ii'so(" + std::to_string(n - 1) + ")";
  } else if (name == "flag") {
    std::fill(v.begin(), v.end(), 0);
    e.structure = "flag";
  } else if (auto pq = detail::parse_pq(name, "so(")) {
    auto [p, q] = *pq;
    if (p < 1 || q < 0 || p + q != n + 1) throw std::out_of_range("so(p,q) needs p >= 1, q >= 0, p + q = n + 1");
    if (q > 0) v[static_cast<std::size_t>(p - 1)] = -1;
    e.structure = e.name;
  } else if (auto pq2 = detail::parse_pq(name, "iso(")) {
    auto [p, q] = *pq2;
    if (p < 1 || q < 0 || p + q != n) throw std::out_of_range("iso(p,q) needs p >= 1, q >= 0, p + q = n");
    v[0] = 0;
    if (q > 0) v[static_cast<std::size_t>(p)] = -1;
    e.structure = e.name;
  } else {
    throw std::invalid_argument("unknown algebra '" + std::string(name) + "'");
  }
  e.spec = detail::signs(v);
  return e;
}

/// Signs of diag(1, ω_{f,f+1}, ..., ω_{fN}) for an all-fixed spec: {positive, negative, zero}.
/// f = 0 is I_κ; f = 1 is the metric of the subalgebra fixing the first axis.
inline std::array<int, 3> metric_signature(const OmegaSpec& spec, int first = 0) {
  std::array<int, 3> sig{0, 0, 0};
  Rational p = 1;
  for (int a = first; a <= spec.n(); ++a) {
    if (a > first) p *= spec.entry(a).value();
    sig[p > 0 ? 0 : (p < 0 ? 1 : 2)] += 1;
  }
  return sig;
}

}  // namespace ckcas
