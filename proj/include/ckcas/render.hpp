#pragma once

#include "ckcas/casimirs.hpp"
#include "ckcas/catalog.hpp"
#include "ckcas/enveloping.hpp"
#include "ckcas/omega_spec.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckcas {

enum class Format { text, latex, json };

inline Format parse_format(std::string_view s) {
  if (s == "text") return Format::text;
  if (s == "latex") return Format::latex;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

struct RenderOptions {
  Format format = Format::text;
  /// Collapse runs ω_{a+1}···ω_b into ω_ab.
  bool named_omega = false;
  std::vector<GeneratorAlias> aliases;
};

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline std::string superscript(unsigned k) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(k)) s += digits[c - '0'];
  return s;
}

inline std::string power_suffix(unsigned p, Format f) {
  if (p == 1) return "";
  return f == Format::latex ? "^{" + std::to_string(p) + "}" : superscript(p);
}

inline std::string index_pair(int a, int b) {
  if (a > 9 || b > 9) return std::to_string(a) + "," + std::to_string(b);
  return std::to_string(a) + std::to_string(b);
}

/// "P1" → "P_{1}" for LaTeX.
inline std::string latex_alias(const std::string& name) {
  auto pos = name.find_first_of("0123456789");
  if (pos == std::string::npos) return name;
  return name.substr(0, pos) + "_{" + name.substr(pos) + "}";
}

inline std::string plain_omega(int a, Format f) {
  if (f == Format::latex) return "\\omega_{" + std::to_string(a) + "}";
  return a > 9 ? "ω_{" + std::to_string(a) + "}" : "ω" + std::to_string(a);
}

inline std::string named_omega(int a, int b, Format f) {
  if (b == a + 1) return plain_omega(b, f);
  if (f == Format::latex) return "\\omega_{" + index_pair(a, b) + "}";
  return (a > 9 || b > 9) ? "ω_{" + index_pair(a, b) + "}" : "ω" + index_pair(a, b);
}

/// Sign-free coefficient text, split into numerator and denominator factors.
struct CoeffText {
  bool negative = false;
  std::string body;  // empty means the unit coefficient
};

inline CoeffText monomial_coefficient(const OmegaSpec& spec, const Exponents& e, const Rational& c, const RenderOptions& o) {
  const Format f = o.format;
  bool neg = c < 0;
  Integer num = abs(numerator_of(c));
  Integer den = denominator_of(c);
  std::string top, bottom;
  auto symbol_kind = [&](std::size_t k) { return spec.entry(static_cast<int>(k + 1)).kind(); };

  std::vector<unsigned> plain(e.size(), 0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    switch (symbol_kind(k)) {
      case SymbolKind::kappa:
        top += (f == Format::latex ? "\\kappa" : "κ") + power_suffix(e[k], f);
        break;
      case SymbolKind::inverse_c_squared:
        if (e[k] % 2 == 1) neg = !neg;
        bottom += (f == Format::latex ? "c^{" + std::to_string(2 * e[k]) + "}" : "c" + superscript(2 * e[k]));
        break;
      case SymbolKind::plain:
        plain[k] = e[k];
        break;
    }
  }
  std::string omegas;
  if (o.named_omega) {
    while (std::any_of(plain.begin(), plain.end(), [](unsigned x) { return x > 0; })) {
      std::size_t start = 0;
      while (plain[start] == 0) ++start;
      std::size_t end = start;
      unsigned m = plain[start];
      while (end + 1 < plain.size() && plain[end + 1] > 0) m = std::min(m, plain[++end]);
      omegas += named_omega(static_cast<int>(start), static_cast<int>(end + 1), f) + power_suffix(m, f);
      for (std::size_t k = start; k <= end; ++k) plain[k] -= m;
    }
  } else {
    for (std::size_t k = 0; k < plain.size(); ++k)
      if (plain[k] > 0) omegas += plain_omega(static_cast<int>(k + 1), f) + power_suffix(plain[k], f);
  }
  top = omegas + top;
  if (num != 1 || (top.empty() && !bottom.empty())) top = num.str() + top;
  if (den != 1) bottom = den.str() + bottom;
  CoeffText out;
  out.negative = neg;
  if (bottom.empty()) out.body = top;
  else if (f == Format::latex) out.body = "\\frac{" + top + "}{" + bottom + "}";
  else out.body = top + "/" + bottom;
  return out;
}

inline std::string join_signed(const std::vector<std::pair<bool, std::string>>& parts, Format f) {
  if (parts.empty()) return "0";
  const std::string minus = f == Format::latex ? "-" : "−";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].first) s += minus;
    else if (i > 0) s += "+";
    s += parts[i].second;
  }
  return s;
}

inline std::string polynomial_text(const OmegaSpec& spec, const Polynomial& p, const RenderOptions& o) {
  std::vector<std::pair<bool, std::string>> parts;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    auto c = monomial_coefficient(spec, it->first, it->second, o);
    parts.emplace_back(c.negative, c.body.empty() ? "1" : c.body);
  }
  return join_signed(parts, o.format);
}

/// Coefficient of a term; multi-term polynomials are parenthesized.
inline CoeffText coefficient(const OmegaSpec& spec, const Polynomial& p, const RenderOptions& o) {
  if (auto m = p.as_monomial()) {
    Exponents e = m->first;
    e.resize(static_cast<std::size_t>(spec.n()), 0);
    return monomial_coefficient(spec, e, m->second, o);
  }
  const bool latex = o.format == Format::latex;
  return {false, (latex ? "\\left(" : "(") + polynomial_text(spec, p, o) + (latex ? "\\right)" : ")")};
}

inline std::string term(const CoeffText& c, const std::string& monomial) {
  if (monomial.empty()) return c.body.empty() ? "1" : c.body;
  if (c.body.empty()) return monomial;
  return c.body + " " + monomial;
}

class GeneratorNames {
 public:
  GeneratorNames(const std::vector<GeneratorAlias>& aliases, Format f) : format_(f) {
    for (std::size_t i = 0; i < aliases.size(); ++i) by_gen_.emplace(aliases[i].gen, std::pair{i, &aliases[i]});
  }

  bool aliased() const { return !by_gen_.empty(); }

  std::string name(const Generator& g) const {
    auto it = by_gen_.find(g);
    if (it != by_gen_.end())
      return format_ == Format::latex ? latex_alias(it->second.second->name) : it->second.second->name;
    if (format_ == Format::latex) return "\\Omega_{" + index_pair(g.a(), g.b()) + "}";
    return (g.a() > 9 || g.b() > 9) ? "Ω_{" + index_pair(g.a(), g.b()) + "}" : "Ω" + index_pair(g.a(), g.b());
  }

  int sign(const Generator& g) const {
    auto it = by_gen_.find(g);
    return it == by_gen_.end() ? 1 : it->second.second->sign;
  }

  std::size_t position(const Generator& g) const {
    auto it = by_gen_.find(g);
    if (it == by_gen_.end()) throw std::invalid_argument("generator Ω" + g.label() + " has no alias");
    return it->second.first;
  }

 private:
  Format format_;
  std::map<Generator, std::pair<std::size_t, const GeneratorAlias*>> by_gen_;
};

}  // namespace detail

inline ordered_json omega_to_json(const OmegaSpec& spec) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : spec.entries()) {
    if (e.is_fixed()) {
      arr.push_back({{"fixed", to_fraction_string(e.value())}});
    } else {
      ordered_json j{{"symbolic", true}};
      if (e.kind() == SymbolKind::kappa) j["kind"] = "kappa";
      if (e.kind() == SymbolKind::inverse_c_squared) j["kind"] = "-1/c2";
      arr.push_back(j);
    }
  }
  return arr;
}

inline OmegaSpec omega_from_json(const ordered_json& arr) {
  if (!arr.is_array() || arr.empty()) throw std::invalid_argument("omega must be a nonempty array");
  std::vector<OmegaEntry> entries;
  for (const auto& e : arr) {
    if (e.contains("fixed")) {
      entries.push_back(OmegaEntry::fixed(parse_rational(e.at("fixed").get<std::string>())));
    } else if (e.value("symbolic", false)) {
      auto kind = e.value("kind", std::string("plain"));
      SymbolKind k = kind == "kappa" ? SymbolKind::kappa : kind == "-1/c2" ? SymbolKind::inverse_c_squared : SymbolKind::plain;
      entries.push_back(OmegaEntry::symbolic(k));
    } else {
      throw std::invalid_argument("omega entry must be fixed or symbolic");
    }
  }
  return OmegaSpec(std::move(entries));
}

inline ordered_json polynomial_to_json(const OmegaSpec& spec, const Polynomial& c) {
  ordered_json coeff = ordered_json::array();
  for (const auto& [e, r] : c.terms()) {
    Exponents full = e;
    full.resize(static_cast<std::size_t>(spec.n()), 0);
    coeff.push_back({{"rational", to_fraction_string(r)}, {"exponents", full}});
  }
  return coeff;
}

inline ordered_json element_to_json(const OmegaSpec& spec, const Element& u) {
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : u.terms()) {
    ordered_json mono = ordered_json::array();
    for (const auto& [g, p] : m.factors()) mono.push_back({g.a(), g.b(), p});
    terms.push_back({{"monomial", mono}, {"coeff", polynomial_to_json(spec, c)}});
  }
  return {{"n", spec.n()}, {"omega", omega_to_json(spec)}, {"terms", terms}};
}

inline std::pair<OmegaSpec, Element> element_from_json(const ordered_json& j) {
  OmegaSpec spec = omega_from_json(j.at("omega"));
  if (j.at("n").get<int>() != spec.n()) throw std::invalid_argument("n does not match omega length");
  const auto nv = static_cast<std::size_t>(spec.n());
  Element u;
  for (const auto& t : j.at("terms")) {
    std::vector<PBWMonomial::Factor> factors;
    for (const auto& f : t.at("monomial")) {
      Generator g(f.at(0).get<int>(), f.at(1).get<int>());
      if (g.b() > spec.n()) throw std::invalid_argument("generator index exceeds n");
      factors.emplace_back(g, f.at(2).get<unsigned>());
    }
    Polynomial c(nv);
    for (const auto& k : t.at("coeff")) {
      auto e = k.at("exponents").get<Exponents>();
      if (e.size() != nv) throw std::invalid_argument("exponent vector length must equal n");
      c.add_term(e, parse_rational(k.at("rational").get<std::string>()));
    }
    u.add_term(PBWMonomial(std::move(factors)), c);
  }
  return {spec, u};
}

/// Text or LaTeX for an element; JSON is delegated to element_to_json.
inline std::string render(const OmegaSpec& spec, const Element& u, const RenderOptions& o = {}) {
  if (o.format == Format::json) return element_to_json(spec, u).dump();
  detail::GeneratorNames names(o.aliases, o.format);

  struct Row {
    std::vector<std::size_t> key;
    bool negative;
    std::string text;
  };
  std::vector<Row> rows;
  for (const auto& [m, c] : u.terms()) {
    auto coeff = detail::coefficient(spec, c, o);
    std::vector<std::pair<Generator, unsigned>> factors(m.factors().begin(), m.factors().end());
    std::vector<std::size_t> key;
    if (names.aliased()) {
      std::sort(factors.begin(), factors.end(),
                [&](const auto& x, const auto& y) { return names.position(x.first) < names.position(y.first); });
      for (const auto& [g, p] : factors) {
        if (names.sign(g) < 0 && p % 2 == 1) coeff.negative = !coeff.negative;
        key.insert(key.end(), p, names.position(g));
      }
    }
    std::string mono;
    for (const auto& [g, p] : factors) mono += names.name(g) + detail::power_suffix(p, o.format);
    rows.push_back({std::move(key), coeff.negative, detail::term(coeff, mono)});
  }
  if (names.aliased())
    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.key < y.key; });
  std::vector<std::pair<bool, std::string>> parts;
  for (auto& r : rows) parts.emplace_back(r.negative, std::move(r.text));
  return detail::join_signed(parts, o.format);
}

/// "W_{0123}" (order ≥ 2) or the generator name (order 1).
inline std::string w_name(const WIndexSet& ix, const RenderOptions& o) {
  if (ix.order() == 1) return detail::GeneratorNames(o.aliases, o.format).name(Generator(ix.a(0), ix.b(0)));
  std::string digits;
  for (std::size_t i = 0; i < ix.indices().size(); ++i) {
    if (ix.max_index() > 9 && i > 0) digits += ",";
    digits += std::to_string(ix.indices()[i]);
  }
  return "W_{" + digits + "}";
}

/// Σ prefactor · W² in the grouped form, one summand per index set.
inline std::string render_squares(const OmegaSpec& spec, const std::vector<WSquareTerm>& squares, const RenderOptions& o) {
  std::vector<std::pair<bool, std::string>> parts;
  struct Row {
    std::size_t key;
    bool negative;
    std::string text;
  };
  std::vector<Row> rows;
  detail::GeneratorNames names(o.aliases, o.format);
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const auto& t = squares[i];
    auto c = detail::coefficient(spec, t.prefactor, o);
    std::size_t key = i;
    if (t.index_set.order() == 1 && names.aliased()) key = names.position(Generator(t.index_set.a(0), t.index_set.b(0)));
    rows.push_back({key, c.negative, detail::term(c, w_name(t.index_set, o) + detail::power_suffix(2, o.format))});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.key < y.key; });
  for (auto& r : rows) parts.emplace_back(r.negative, std::move(r.text));
  return detail::join_signed(parts, o.format);
}

/// Squares with the prefactors evaluated at an assignment; vanishing terms dropped.
inline std::vector<WSquareTerm> substitute_squares(const std::vector<WSquareTerm>& squares, const Assignment& a) {
  std::map<std::size_t, Rational> values;
  for (const auto& [k, v] : a) values.emplace(static_cast<std::size_t>(k - 1), v);
  std::vector<WSquareTerm> out;
  for (const auto& t : squares) {
    Polynomial p = t.prefactor.substitute(values);
    if (!p.is_zero()) out.push_back({std::move(p), t.index_set});
  }
  return out;
}

inline ordered_json casimir_set_to_json(const CasimirSet& set) {
  ordered_json list = ordered_json::array();
  for (const auto* c : set.all()) {
    ordered_json j{{"name", c->name}, {"order", c->order}};
    if (c->linear) j["w_symbol"] = c->linear->indices();
    if (!c->squares.empty()) {
      ordered_json sq = ordered_json::array();
      for (const auto& t : c->squares)
        sq.push_back({{"index_set", t.index_set.indices()},
                      {"prefactor", polynomial_to_json(set.spec, t.prefactor)}});
      j["squares"] = sq;
    }
    j["element"] = element_to_json(set.spec, c->element);
    list.push_back(j);
  }
  return {{"n", set.spec.n()}, {"omega", omega_to_json(set.spec)}, {"casimirs", list}};
}

/// The elements of an exported set, in export order, with their names.
inline std::vector<std::pair<std::string, Element>> casimir_elements_from_json(const ordered_json& j) {
  std::vector<std::pair<std::string, Element>> out;
  for (const auto& c : j.at("casimirs")) out.emplace_back(c.at("name").get<std::string>(), element_from_json(c.at("element")).second);
  return out;
}

}  // namespace ckcas
