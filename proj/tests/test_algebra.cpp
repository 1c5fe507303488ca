#include "ckcas/ckcas.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace ckcas;

namespace {

Polynomial var(std::size_t nv, std::size_t a, unsigned p = 1) { return Polynomial::variable(nv, a - 1, p); }

/// Linear combination of generators, a stand-in for degree-1 elements.
using Linear = std::map<Generator, Polynomial>;

void add(Linear& acc, const Generator& g, const Polynomial& c) {
  auto [it, ins] = acc.try_emplace(g, c);
  if (!ins) it->second += c;
  if (it->second.is_zero()) acc.erase(it);
}

Linear bracket_linear(const Algebra& alg, const Generator& g, const Linear& x) {
  Linear out;
  for (const auto& [h, c] : x)
    if (const auto& br = alg.bracket(g, h)) add(out, br->gen, br->coeff * c);
  return out;
}

Linear single(const Algebra& alg, const Generator& g) { return {{g, alg.one()}}; }

/// Coefficients of X in the basis of vector-representation matrices: Ω_ab carries +1 at (b, a).
Linear decompose(const Algebra& alg, const RationalMatrix& m) {
  Linear out;
  for (const auto& g : alg.generators()) {
    const Rational& c = m(static_cast<std::size_t>(g.b()), static_cast<std::size_t>(g.a()));
    if (c != 0) add(out, g, Polynomial::constant(alg.num_vars(), c));
  }
  return out;
}

}  // namespace

TEST(OmegaProduct, SymbolicProductOfConsecutiveCoefficients) {
  auto spec = OmegaSpec::symbolic(3);
  EXPECT_EQ(omega_product(spec, 0, 3), var(3, 1) * var(3, 2) * var(3, 3));
}

TEST(OmegaProduct, EmptyProductIsOne) {
  EXPECT_EQ(omega_product(OmegaSpec::symbolic(4), 2, 2), Polynomial::one(4));
  EXPECT_EQ(omega_product(OmegaSpec::fixed({0, -1}), 1, 1), Polynomial::one(2));
}

TEST(OmegaProduct, ZeroFactorAnnihilates) {
  OmegaSpec spec({OmegaEntry::fixed(0), OmegaEntry::symbolic(), OmegaEntry::fixed(-1)});
  EXPECT_TRUE(omega_product(spec, 0, 3).is_zero());
  EXPECT_EQ(omega_product(spec, 1, 3), -var(3, 2));
}

TEST(OmegaProduct, RejectsBadIndices) {
  auto spec = OmegaSpec::symbolic(3);
  EXPECT_THROW(omega_product(spec, 2, 1), std::out_of_range);
  EXPECT_THROW(omega_product(spec, 0, 4), std::out_of_range);
  EXPECT_THROW(omega_product(spec, -1, 2), std::out_of_range);
}

TEST(OmegaProduct, Multiplicative) {
  Algebra alg(OmegaSpec::symbolic(6));
  for (int a = 0; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b)
      for (int c = b + 1; c <= 6; ++c) EXPECT_EQ(alg.omega(a, c), alg.omega(a, b) * alg.omega(b, c));
}

TEST(Generator, RequiresIncreasingIndices) {
  EXPECT_THROW(Generator(1, 1), std::invalid_argument);
  EXPECT_THROW(Generator(2, 1), std::invalid_argument);
  EXPECT_THROW(Generator(-1, 1), std::invalid_argument);
  EXPECT_NO_THROW(Generator(0, 7));
}

TEST(Algebra, CanonicalIndexMatchesGeneratorList) {
  Algebra alg(OmegaSpec::symbolic(5));
  ASSERT_EQ(alg.dimension(), 15u);
  for (std::size_t i = 0; i < alg.dimension(); ++i) EXPECT_EQ(alg.index(alg.generators()[i]), i);
  EXPECT_THROW(alg.index(Generator(0, 6)), std::out_of_range);
}

TEST(BracketBasis, ReferenceCases) {
  Algebra alg(OmegaSpec::symbolic(3));
  const auto nv = alg.num_vars();
  auto b1 = bracket_basis(alg, Generator(0, 1), Generator(0, 2));
  EXPECT_EQ(b1, Element::monomial(PBWMonomial::of(Generator(1, 2)), var(nv, 1)));
  EXPECT_TRUE(bracket_basis(alg, Generator(0, 1), Generator(2, 3)).is_zero());
  auto b3 = bracket_basis(alg, Generator(0, 2), Generator(1, 2));
  EXPECT_EQ(b3, Element::monomial(PBWMonomial::of(Generator(0, 1)), var(nv, 2)));
  auto b4 = bracket_basis(alg, Generator(0, 1), Generator(1, 2));
  EXPECT_EQ(b4, Element::monomial(PBWMonomial::of(Generator(0, 2)), -alg.one()));
  EXPECT_TRUE(bracket_basis(alg, Generator(1, 3), Generator(1, 3)).is_zero());
}

TEST(BracketBasis, RejectsForeignGenerators) {
  Algebra alg(OmegaSpec::symbolic(2));
  EXPECT_THROW(bracket_basis(alg, Generator(0, 1), Generator(1, 3)), std::invalid_argument);
}

TEST(BracketBasis, AntisymmetricUpToN6) {
  for (int n = 1; n <= 6; ++n) {
    Algebra alg(OmegaSpec::symbolic(n));
    for (const auto& g1 : alg.generators())
      for (const auto& g2 : alg.generators())
        EXPECT_EQ(bracket_basis(alg, g1, g2), -bracket_basis(alg, g2, g1)) << "N=" << n;
  }
}

TEST(BracketBasis, JacobiUpToN5) {
  for (int n = 2; n <= 5; ++n) {
    Algebra alg(OmegaSpec::symbolic(n));
    const auto& gens = alg.generators();
    for (const auto& x : gens)
      for (const auto& y : gens)
        for (const auto& z : gens) {
          Linear sum;
          for (const auto& [g, c] : bracket_linear(alg, x, bracket_linear(alg, y, single(alg, z)))) add(sum, g, c);
          for (const auto& [g, c] : bracket_linear(alg, y, bracket_linear(alg, z, single(alg, x)))) add(sum, g, c);
          for (const auto& [g, c] : bracket_linear(alg, z, bracket_linear(alg, x, single(alg, y)))) add(sum, g, c);
          ASSERT_TRUE(sum.empty()) << "N=" << n << " Ω" << x.label() << " Ω" << y.label() << " Ω" << z.label();
        }
  }
}

TEST(VectorRep, SingleEntryMatrices) {
  Algebra one(OmegaSpec::fixed({1, 1}));
  auto m = vector_rep(one, Generator(0, 1));
  RationalMatrix expect(3, 3);
  expect(0, 1) = -1;
  expect(1, 0) = 1;
  EXPECT_EQ(m, expect);

  Algebra contracted(OmegaSpec::fixed({0, 1}));
  RationalMatrix only(3, 3);
  only(1, 0) = 1;
  EXPECT_EQ(vector_rep(contracted, Generator(0, 1)), only);
}

TEST(VectorRep, RequiresNumericOmega) {
  Algebra alg(OmegaSpec::symbolic(2));
  EXPECT_THROW(vector_rep(alg, Generator(0, 1)), std::invalid_argument);
}

TEST(VectorRep, MetricAntisymmetry) {
  for (auto spec : {OmegaSpec::fixed({1, -1, 1, 1}), OmegaSpec::fixed({0, -1, 1, 1}), OmegaSpec::fixed({2, 0, -3})}) {
    Algebra alg(spec);
    auto metric = metric_matrix_numeric(spec);
    for (const auto& g : alg.generators()) {
      auto x = vector_rep(alg, g);
      EXPECT_TRUE((x.transposed() * metric + metric * x).is_zero()) << "Ω" << g.label();
    }
  }
}

TEST(VectorRep, HomomorphismOracle) {
  for (auto spec : {OmegaSpec::fixed({1, -1, 1, 1}), OmegaSpec::fixed({0, 0, 1, 1}), OmegaSpec::fixed({-1, 2, 0, 1, 3})}) {
    Algebra alg(spec);
    for (const auto& g1 : alg.generators())
      for (const auto& g2 : alg.generators()) {
        auto comm = commutator(vector_rep(alg, g1), vector_rep(alg, g2));
        RationalMatrix expect(comm.rows(), comm.cols());
        if (const auto& br = alg.bracket(g1, g2)) expect = vector_rep(alg, br->gen) * *br->coeff.constant_value();
        EXPECT_EQ(comm, expect) << "[Ω" << g1.label() << ", Ω" << g2.label() << "]";
      }
  }
}

TEST(MetricMatrix, Diagonal) {
  auto d = metric_matrix(OmegaSpec::symbolic(2));
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0], Polynomial::one(2));
  EXPECT_EQ(d[1], var(2, 1));
  EXPECT_EQ(d[2], var(2, 1) * var(2, 2));
  EXPECT_EQ(metric_matrix_numeric(OmegaSpec::fixed({1, 1, 1})), RationalMatrix::identity(4));
  auto z = metric_matrix_numeric(OmegaSpec::fixed({0, 0, 0}));
  RationalMatrix expect(4, 4);
  expect(0, 0) = 1;
  EXPECT_EQ(z, expect);
}

TEST(KillingForm, ReferenceEntries) {
  Algebra n4(OmegaSpec::symbolic(4));
  EXPECT_EQ(killing_form(n4, Generator(0, 1), Generator(0, 1)), var(4, 1) * Rational(-6));
  EXPECT_TRUE(killing_form(n4, Generator(0, 1), Generator(2, 3)).is_zero());
  Algebra n3(OmegaSpec::symbolic(3));
  EXPECT_EQ(killing_form(n3, Generator(1, 3), Generator(1, 3)), var(3, 2) * var(3, 3) * Rational(-4));
}

TEST(KillingForm, ClosedFormUpToN5) {
  for (int n = 1; n <= 5; ++n) {
    Algebra alg(OmegaSpec::symbolic(n));
    for (const auto& g1 : alg.generators())
      for (const auto& g2 : alg.generators()) {
        Polynomial expect = g1 == g2 ? alg.omega(g1.a(), g1.b()) * Rational(-2 * (n - 1)) : alg.zero();
        EXPECT_EQ(killing_form(alg, g1, g2), expect) << "N=" << n;
      }
  }
}

TEST(KillingForm, MatchesAdjointMatricesFromVectorRep) {
  for (auto spec : {OmegaSpec::fixed({1, -1, 1, 1}), OmegaSpec::fixed({2, 1, -1}), OmegaSpec::fixed({0, 3, 1, -2})}) {
    Algebra alg(spec);
    const auto& gens = alg.generators();
    const std::size_t d = gens.size();
    std::vector<RationalMatrix> ad;
    for (const auto& g : gens) {
      RationalMatrix m(d, d);
      for (std::size_t j = 0; j < d; ++j)
        for (const auto& [h, c] : decompose(alg, commutator(vector_rep(alg, g), vector_rep(alg, gens[j]))))
          m(alg.index(h), j) = *c.constant_value();
      ad.push_back(m);
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto prod = ad[i] * ad[j];
        Rational tr = 0;
        for (std::size_t k = 0; k < d; ++k) tr += prod(k, k);
        EXPECT_EQ(*killing_form(alg, gens[i], gens[j]).constant_value(), tr);
      }
  }
}

TEST(ReverseIsomorphism, ReversedSpec) {
  auto iso = reverse_isomorphism(OmegaSpec::fixed({0, 1, 1}));
  EXPECT_EQ(iso.reversed, OmegaSpec::fixed({1, 1, 0}));
  auto pal = reverse_isomorphism(OmegaSpec::fixed({1, -1, 1}));
  EXPECT_EQ(pal.reversed, OmegaSpec::fixed({1, -1, 1}));
  auto img = iso(Generator(0, 1));
  EXPECT_EQ(img.sign, -1);
  EXPECT_EQ(img.gen, Generator(2, 3));
}

TEST(ReverseIsomorphism, SignedMapPreservesBrackets) {
  EXPECT_FALSE(reversal_counterexample(OmegaSpec::fixed({0, 1, 1})));
  EXPECT_FALSE(reversal_counterexample(OmegaSpec::fixed({1, -1, 1})));
  for (int n = 1; n <= 5; ++n) EXPECT_FALSE(reversal_counterexample(OmegaSpec::symbolic(n))) << "N=" << n;
}

TEST(ReverseIsomorphism, UnsignedRelabelingIsNotAHomomorphism) {
  for (int n = 2; n <= 5; ++n) {
    auto bad = reversal_counterexample(OmegaSpec::symbolic(n), +1);
    ASSERT_TRUE(bad) << "N=" << n;
  }
  // [Ω01, Ω02] = ω1 Ω12, while the relabeled pair brackets to −ω1 Ω01.
  auto bad = reversal_counterexample(OmegaSpec::symbolic(2), +1);
  EXPECT_EQ(bad->first, Generator(0, 1));
  EXPECT_EQ(bad->second, Generator(0, 2));
}
