#pragma once

#include "ckcas/casimirs.hpp"
#include "ckcas/catalog.hpp"
#include "ckcas/render.hpp"

#include <optional>
#include <sstream>
#include <string>

namespace ckcas {

/// Casimirs of the kinematical pattern with κ and −1/c² symbolic, built once
/// and contracted by substitution.
class KinematicalFamily {
 public:
  KinematicalFamily() : alg_(kinematical_pattern()), table_(alg_), set_(casimir_set(table_)) {}

  const Algebra& algebra() const { return alg_; }
  const WSymbols& w_symbols() const { return table_; }
  const CasimirSet& casimirs() const { return set_; }

 private:
  Algebra alg_;
  WSymbols table_;
  CasimirSet set_;
};

/// "(+,0,−,+)" for an all-fixed spec.
inline std::string signature_label(const OmegaSpec& spec) {
  std::string s = "(";
  for (int a = 1; a <= spec.n(); ++a) {
    if (a > 1) s += ",";
    const Rational& v = spec.entry(a).value();
    s += v > 0 ? "+" : (v < 0 ? "−" : "0");
  }
  return s + ")";
}

inline const KinematicalCell* find_cell(const Rational& kappa, const Rational& omega2) {
  for (const auto& c : kinematical_cells())
    if (Rational(c.point.kappa) == kappa && Rational(c.point.c_infinite ? 0 : -1) == omega2) return &c;
  return nullptr;
}

/// Header line of a kinematical cell at ω_1 = κ, ω_2 = −1/c².
inline std::string kinematical_header(const Rational& kappa, const Rational& omega2) {
  OmegaSpec spec = OmegaSpec::fixed(std::vector<Rational>{kappa, omega2, 1, 1});
  std::string c = omega2 == 0 ? "∞" : (omega2 == -1 ? "1" : "");
  std::string constants = "κ=" + std::string(kappa < 0 ? "−" : "") + to_string(abs(kappa)) + ", ";
  constants += c.empty() ? "−1/c²=" + to_string(omega2) : "c=" + c;
  std::string line = signature_label(spec) + " " + constants;
  if (const auto* cell = find_cell(kappa, omega2)) line = cell->title + " " + line + " " + cell->structure;
  return line;
}

/// One cell: header plus the W-square forms of C1 and C2 after substitution.
inline std::string kinematical_block(const KinematicalFamily& fam, const Assignment& a, const RenderOptions& base = {}) {
  const OmegaSpec contracted = fam.algebra().spec().substituted(a);
  RenderOptions o = base;
  o.aliases = kinematical_aliases();
  std::ostringstream out;
  if (contracted.entry(1).is_fixed() && contracted.entry(2).is_fixed())
    out << kinematical_header(contracted.entry(1).value(), contracted.entry(2).value()) << "\n";
  for (const auto& c : fam.casimirs().even_order)
    out << c.name << " = " << render_squares(contracted, substitute_squares(c.squares, a), o) << "\n";
  return out.str();
}

/// The six kinematical cells, row by row, separated by blank lines.
inline std::string table1_text(const KinematicalFamily& fam, const RenderOptions& o = {}) {
  std::string s;
  bool first = true;
  for (const auto& cell : kinematical_cells()) {
    if (!first) s += "\n";
    first = false;
    s += kinematical_block(fam, cell.point.assignment(), o);
  }
  return s;
}

}  // namespace ckcas
