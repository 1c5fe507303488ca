#include "ckcas/ckcas.hpp"
#include "support/expressions.hpp"
#include "support/golden.hpp"

#include <gtest/gtest.h>

#include <future>
#include <set>

using namespace ckcas;

namespace {

WIndexSet ix(const std::string& s) { return WIndexSet::parse(s); }

bool is_w_symbol(const std::string& s) { return s.front() == 'W'; }

Element operand(const WSymbols& table, const std::string& s) { return golden::parse(table, s); }

SymmetricPoly times(const SymmetricPoly& p, const Generator& g, const Polynomial& c) {
  SymmetricPoly out;
  for (const auto& [m, coeff] : p.terms()) {
    auto w = m.word();
    w.push_back(g);
    out.add_term(w, coeff * c);
  }
  return out;
}

void accumulate(SymmetricPoly& into, const SymmetricPoly& p) {
  for (const auto& [m, c] : p.terms()) into.add_term(m.word(), c);
}

// The same recursion run in the commutative symmetric algebra.
SymmetricPoly commutative_w(const Algebra& alg, const WIndexSet& w) {
  const std::size_t s = w.order();
  SymmetricPoly out;
  if (s == 1) {
    out.add_term({Generator(w.a(0), w.b(0))}, alg.one());
    return out;
  }
  const int bs = w.b(s - 1);
  for (std::size_t mu = 1; mu <= s; ++mu) {
    const int am = w.a(mu - 1);
    Polynomial sign = alg.one() * Rational(mu % 2 == 1 ? 1 : -1);
    accumulate(out, times(commutative_w(alg, w.without(am, bs)), Generator(am, bs), sign));
  }
  const int as = w.a(s - 1);
  for (std::size_t nu = 1; nu + 1 <= s; ++nu) {
    const int bn = w.b(nu - 1);
    Polynomial c = alg.omega(as, bn) * Rational((s + nu + 1) % 2 == 0 ? 1 : -1);
    accumulate(out, times(commutative_w(alg, w.without(bn, bs)), Generator(bn, bs), c));
  }
  return out;
}

}  // namespace

TEST(WIndexSet, ParseAndValidate) {
  EXPECT_EQ(ix("0123").order(), 2u);
  EXPECT_EQ(WIndexSet::parse("0,1,10,11").max_index(), 11);
  EXPECT_THROW(ix("012"), std::invalid_argument);
  EXPECT_THROW(ix("0213"), std::invalid_argument);
  EXPECT_THROW(ix("0x"), std::invalid_argument);
  EXPECT_EQ(ix("0123").label(), "0123");
  EXPECT_EQ(ix("0123").without(1, 3).indices(), (std::vector<int>{0, 2}));
}

TEST(WIndexSet, Enumeration) {
  EXPECT_EQ(index_sets(4, 2).size(), 5u);
  EXPECT_EQ(index_sets(5, 2).size(), 15u);
  EXPECT_EQ(index_sets(5, 3).size(), 1u);
  EXPECT_TRUE(index_sets(2, 2).empty());
  EXPECT_EQ(index_sets(3, 1).size(), 6u);
}

TEST(WSymbols, OrderOneIsGenerator) {
  Algebra alg(OmegaSpec::symbolic(3));
  WSymbols table(alg);
  EXPECT_EQ(table.get(ix("13")), generator_element(alg, Generator(1, 3)));
  EXPECT_THROW(table.get(ix("0145")), std::invalid_argument);
}

TEST(WSymbols, N3Examples) {
  Algebra alg(OmegaSpec::symbolic(3));
  WSymbols table(alg);
  EXPECT_EQ(table.get(ix("0123")), golden::parse(table, golden::kN3CExpanded));
  EXPECT_EQ(table.get(ix("0123")), golden::parse(table, golden::kN3C));
}

TEST(WSymbols, N4Table) {
  Algebra alg(OmegaSpec::symbolic(4));
  WSymbols table(alg);
  for (const auto& [label, text] : golden::n4_w_symbols())
    EXPECT_EQ(table.get(ix(label)), golden::parse(table, text)) << label;
}

TEST(WSymbols, N5TopSymbolExpansion) {
  Algebra alg(OmegaSpec::symbolic(5));
  WSymbols table(alg);
  EXPECT_EQ(table.get(ix("012345")), golden::parse(table, golden::kN5C));
}

TEST(WSymbols, ConcurrentAccessAgrees) {
  Algebra alg(OmegaSpec::symbolic(5));
  WSymbols shared(alg);
  std::vector<std::future<Element>> jobs;
  for (int t = 0; t < 4; ++t) jobs.push_back(std::async(std::launch::async, [&] { return shared.get(ix("012345")); }));
  WSymbols fresh(alg);
  for (auto& j : jobs) EXPECT_EQ(j.get(), fresh.get(ix("012345")));
}

TEST(TranspositionCount, Examples) {
  EXPECT_EQ(transposition_count({1, 3, 0, 2, 3, 4}), 3u);
  EXPECT_EQ(transposition_count({1, 5, 1, 2, 3, 4}), 4u);
  EXPECT_EQ(transposition_count({0, 1, 2}), 0u);
}

TEST(ClosedForm, MatchesCommutatorEverywhere) {
  for (int n = 2; n <= 5; ++n) {
    Algebra alg(OmegaSpec::symbolic(n));
    WSymbols table(alg);
    for (std::size_t s = 1; 2 * s <= static_cast<std::size_t>(n + 1); ++s)
      for (const auto& w : index_sets(n, s))
        for (const auto& g : alg.generators())
          ASSERT_EQ(w_gen_bracket_closed_form(table, g, w), commutator(alg, generator_element(alg, g), table.get(w)))
              << "N=" << n << " O" << g.label() << " W" << w.label();
  }
}

TEST(ClosedForm, HoldsForFixedCoefficients) {
  Algebra alg(OmegaSpec::fixed({2, 0, -1, 3}));
  WSymbols table(alg);
  for (const auto& w : index_sets(4, 2))
    for (const auto& g : alg.generators())
      EXPECT_EQ(w_gen_bracket_closed_form(table, g, w), commutator(alg, generator_element(alg, g), table.get(w)));
}

TEST(ClosedForm, RejectsForeignInput) {
  Algebra alg(OmegaSpec::symbolic(3));
  WSymbols table(alg);
  EXPECT_THROW(w_gen_bracket_closed_form(table, Generator(0, 4), ix("0123")), std::invalid_argument);
}

TEST(Brackets, GeneratorWithWN4) {
  Algebra alg(OmegaSpec::symbolic(4));
  WSymbols table(alg);
  std::set<std::pair<std::string, std::string>> listed;
  for (const auto& r : golden::n4_generator_w_table()) {
    Element lhs = commutator(alg, operand(table, r.lhs_a), operand(table, r.lhs_b));
    EXPECT_EQ(lhs, golden::parse(table, r.rhs)) << r.lhs_a << "," << r.lhs_b;
    listed.emplace(r.lhs_a, r.lhs_b);
  }
  EXPECT_EQ(listed.size(), 20u);
  std::size_t zeros = 0;
  for (const auto& g : alg.generators())
    for (const auto& w : index_sets(4, 2)) {
      if (listed.count({"O" + g.label(), "W" + w.label()})) continue;
      EXPECT_TRUE(commutator(alg, generator_element(alg, g), table.get(w)).is_zero()) << g.label() << "," << w.label();
      ++zeros;
    }
  EXPECT_EQ(zeros, 30u);
}

TEST(Brackets, WWithWN4) {
  Algebra alg(OmegaSpec::symbolic(4));
  WSymbols table(alg);
  for (const auto& r : golden::n4_w_w_table()) {
    ASSERT_TRUE(is_w_symbol(r.lhs_a) && is_w_symbol(r.lhs_b));
    EXPECT_EQ(w_w_bracket(table, ix(r.lhs_a.substr(1)), ix(r.lhs_b.substr(1))), golden::parse(table, r.rhs))
        << r.lhs_a << "," << r.lhs_b;
  }
  EXPECT_EQ(golden::n4_w_w_table().size(), 10u);
}

TEST(Structure, MonomialsCommute) {
  for (int n = 2; n <= 6; ++n) {
    Algebra alg(OmegaSpec::symbolic(n));
    WSymbols table(alg);
    for (std::size_t s = 1; 2 * s <= static_cast<std::size_t>(n + 1); ++s)
      for (const auto& w : index_sets(n, s)) EXPECT_TRUE(monomials_commute(alg, table.get(w))) << w.label();
  }
  Algebra alg(OmegaSpec::symbolic(2));
  EXPECT_FALSE(monomials_commute(alg, normal_order(alg, {Generator(0, 1), Generator(0, 2)})));
}

TEST(Structure, HomogeneousOfOrderS) {
  for (int n = 2; n <= 6; ++n) {
    Algebra alg(OmegaSpec::symbolic(n));
    WSymbols table(alg);
    for (std::size_t s = 1; 2 * s <= static_cast<std::size_t>(n + 1); ++s)
      for (const auto& w : index_sets(n, s)) {
        EXPECT_TRUE(table.get(w).is_homogeneous(static_cast<unsigned>(s))) << w.label();
        EXPECT_TRUE(homogeneous_weight(n, table.get(w))) << w.label();
      }
  }
}

TEST(Structure, DimensionalWeightExample) {
  // Each term of W_0123 carries ω1 ω2² ω3 in doubled units.
  Algebra alg(OmegaSpec::symbolic(3));
  WSymbols table(alg);
  auto wgt = homogeneous_weight(3, table.get(ix("0123")));
  ASSERT_TRUE(wgt);
  EXPECT_EQ(*wgt, (Exponents{1, 2, 1}));
  EXPECT_FALSE(homogeneous_weight(3, generator_element(alg, Generator(0, 1)) + generator_element(alg, Generator(0, 2))));
}

TEST(Symmetrization, CommutativeRecursionMapsToW) {
  for (int n = 2; n <= 5; ++n) {
    Algebra alg(OmegaSpec::symbolic(n));
    WSymbols table(alg);
    for (std::size_t s = 1; 2 * s <= static_cast<std::size_t>(n + 1); ++s)
      for (const auto& w : index_sets(n, s)) EXPECT_EQ(symmetrize(alg, commutative_w(alg, w)), table.get(w)) << w.label();
  }
}
