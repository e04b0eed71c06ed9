#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "ipsforge/linalg.hpp"
#include "ipsforge/mvpoly.hpp"
#include "ipsforge/rng.hpp"

using namespace ipsforge;
using namespace ipsforge::mvpoly;
using gf::Field;
using gf::FieldElem;

namespace {

Poly random_sparse(const Field& f, std::size_t n, std::size_t terms, Exp max_exp, Rng& rng) {
  Poly r(f, n);
  for (std::size_t t = 0; t < terms; ++t) {
    ExpVector e(n, 0);
    for (auto& v : e) v = static_cast<Exp>(rng.below(max_exp + 1));
    r.add_term(e, f.sample(rng));
  }
  return r;
}

std::vector<FieldElem> cube_point(const Field& f, std::size_t n, std::size_t mask) {
  std::vector<FieldElem> pt(n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) pt[i] = f.one();
  return pt;
}

ExpVector exps(std::initializer_list<Exp> v) { return ExpVector(v.begin(), v.end()); }

}  // namespace

TEST(MvpolyExamples, Arithmetic) {
  auto F2 = Field::prime(2);
  const Poly x1 = Poly::variable(*F2, 2, 0), x2 = Poly::variable(*F2, 2, 1);
  EXPECT_EQ((x1 + x2) * (x1 + x2), x1.pow(2) + x2.pow(2));
  EXPECT_TRUE(((x1 + x2) * Poly(*F2, 2)).is_zero());

  auto F3 = Field::prime(3);
  const Poly f = parse("x1*x2+1", *F3, 2);
  EXPECT_EQ(eval(f, {F3->one(), F3->one()}), F3->from_int(2));
  try {
    (void)eval(f, {F3->one()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::arity_mismatch);
  }
}

TEST(MvpolyExamples, Substitute) {
  auto F = Field::prime(5);
  const Poly y = parse("y1+y2", *F, VarLayout::single('y', 2));
  const Poly x1x2 = parse("x1*x2", *F, 3), x3 = parse("x3", *F, 3);
  EXPECT_EQ(substitute(y, {{0, x1x2}, {1, x3}}, 3), parse("x1*x2+x3", *F, 3));
  EXPECT_EQ(substitute(y, {}), y);
}

TEST(MvpolyExamples, Multilinearization) {
  auto F = Field::prime(7);
  const Poly f = parse("x1^2*x2^3 + x2*x3^2", *F, 3);
  EXPECT_EQ(ml_partial(f, {0, 1}), parse("x1*x2 + x2*x3^2", *F, 3));
  EXPECT_EQ(ml(parse("x1^2", *F, 1)), parse("x1", *F, 1));
}

TEST(MvpolyProperties, MlOfProduct) {
  Rng rng(17);
  for (auto [p, k] : {std::pair<gf::u64, unsigned>{2, 1}, {3, 2}, {5, 1}}) {
    auto F = Field::make(p, k);
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + rng.below(5);
      const Poly f = random_sparse(*F, n, 1 + rng.below(5), 3, rng);
      const Poly g = random_sparse(*F, n, 1 + rng.below(5), 3, rng);
      EXPECT_EQ(ml(f * g), ml(ml(f) * ml(g)));
      EXPECT_EQ(ml(ml(f)), ml(f));
      EXPECT_EQ(ml(f + g), ml(f) + ml(g));
    }
  }
}

TEST(MvpolyProperties, MlAgreesOnCube) {
  auto F = Field::make(3, 2);
  Rng rng(2);
  for (std::size_t n : {1u, 4u, 10u}) {
    const Poly f = random_sparse(*F, n, 12, 4, rng);
    const Poly g = ml(f);
    EXPECT_TRUE(g.is_multilinear());
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m)
      ASSERT_EQ(eval(f, cube_point(*F, n, m)), eval(g, cube_point(*F, n, m)));
  }
}

TEST(MvpolyExamples, IndividualDegreeReduction) {
  auto F3 = Field::prime(3);
  const Poly y4 = parse("x1^4", *F3, 1);
  const auto d = inddeg_p(y4, 3);
  EXPECT_EQ(d.remainder, parse("x1^2", *F3, 1));
  EXPECT_EQ(reconstruct(d), y4);

  const Poly low = parse("x1^2*x2 + 2*x2^2", *F3, 2);
  const auto dl = inddeg_p(low, 3);
  EXPECT_EQ(dl.remainder, low);
  for (const auto& q : dl.quotients) EXPECT_TRUE(q.is_zero());
}

TEST(MvpolyProperties, IndividualDegreeAtTwoIsMl) {
  auto F = Field::prime(2);
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const Poly f = random_sparse(*F, 4, 6, 5, rng);
    const auto a = inddeg_p(f, 2);
    const auto b = divide_by_axioms(f, AxiomKind::boolean);
    EXPECT_EQ(a.remainder, ml(f));
    EXPECT_EQ(a.remainder, b.remainder);
    EXPECT_EQ(a.quotients, b.quotients);
  }
}

TEST(MvpolyProperties, IndividualDegreeBounds) {
  auto F = Field::make(5, 2);
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    const Poly f = random_sparse(*F, 3, 5, 13, rng);
    const auto d = inddeg_p(f, 5);
    EXPECT_LE(d.remainder.individual_degree(), 4u);
    EXPECT_EQ(reconstruct(d), f);
    // Each term of degree D spawns at most D/(p-1) quotient terms.
    for (const auto& q : d.quotients) EXPECT_LE(q.sparsity(), f.sparsity() * 13 / 4);
  }
}

TEST(MvpolyExamples, DivideByAxioms) {
  auto F = Field::prime(3);
  const auto d = divide_by_axioms(parse("x1^2", *F, 3), AxiomKind::boolean);
  EXPECT_EQ(d.remainder, parse("x1", *F, 3));
  EXPECT_EQ(d.quotients[0], Poly::one(*F, 3));
  EXPECT_TRUE(d.quotients[1].is_zero());
  EXPECT_TRUE(d.quotients[2].is_zero());

  const Poly m = parse("x1*x2 + 2*x3 + 1", *F, 3);
  const auto dm = divide_by_axioms(m, AxiomKind::boolean);
  EXPECT_EQ(dm.remainder, m);
  for (const auto& q : dm.quotients) EXPECT_TRUE(q.is_zero());
}

TEST(MvpolyProperties, DivisionReconstructsExactly) {
  Rng rng(6);
  for (auto [p, k] : {std::pair<gf::u64, unsigned>{2, 2}, {3, 1}, {7, 1}}) {
    auto F = Field::make(p, k);
    for (int i = 0; i < 40; ++i) {
      Poly f(*F, 4);
      // Random terms of total degree at most 6.
      for (int t = 0; t < 8; ++t) {
        ExpVector e(4, 0);
        for (unsigned s = 0, budget = static_cast<unsigned>(rng.below(7)); s < budget; ++s) ++e[rng.below(4)];
        f.add_term(e, F->sample(rng));
      }
      for (auto kind : {AxiomKind::boolean, AxiomKind::fermat}) {
        const auto d = divide_by_axioms(f, kind);
        EXPECT_EQ(reconstruct(d), f);
        EXPECT_LT(d.remainder.individual_degree(), kind == AxiomKind::boolean ? 2u : p);
        for (const auto& q : d.quotients) EXPECT_LE(q.degree(), f.degree());
      }
    }
  }
}

TEST(MvpolyExamples, CubeInterpolation) {
  auto F2 = Field::prime(2);
  for (std::size_t n : {1u, 3u, 5u}) {
    std::vector<FieldElem> and_table(std::size_t{1} << n, F2->zero());
    and_table.back() = F2->one();
    Poly prod = Poly::one(*F2, n);
    for (std::size_t i = 0; i < n; ++i) prod *= Poly::variable(*F2, n, i);
    EXPECT_EQ(cube_interpolate(*F2, n, and_table), prod);
  }
  auto F = Field::make(3, 2);
  const FieldElem c = F->generator();
  EXPECT_EQ(cube_interpolate(*F, 3, std::vector<FieldElem>(8, c)), Poly::constant(*F, 3, c));
}

TEST(MvpolyProperties, CubeRoundTripAndTopCoefficient) {
  auto F = Field::make(5, 2);
  Rng rng(12);
  for (std::size_t n = 0; n <= 8; ++n) {
    const Poly f = ml(random_sparse(*F, n, 10, 1, rng));
    const auto values = cube_values(f);
    for (std::size_t m = 0; m < values.size(); ++m) ASSERT_EQ(values[m], eval(f, cube_point(*F, n, m)));
    EXPECT_EQ(cube_interpolate(*F, n, values), f);
    // Top coefficient equals the signed sum of all values, sign (-1)^{n-|a|}.
    FieldElem alt = F->zero();
    for (std::size_t m = 0; m < values.size(); ++m) {
      const bool odd = (n - static_cast<std::size_t>(std::popcount(m))) % 2 == 1;
      alt += odd ? -values[m] : values[m];
    }
    EXPECT_EQ(alt, f.coeff(ExpVector(n, 1)));
  }
}

TEST(MvpolyExamples, LeadingMonomial) {
  auto F = Field::prime(3);
  EXPECT_EQ(leading_monomial(parse("x1*x2 + x3", *F, 3)), exps({1, 1, 0}));
  EXPECT_EQ(leading_monomial(parse("2*x2^3", *F, 3)), exps({0, 3, 0}));
  EXPECT_EQ(leading_monomial(parse("x3^3 + x1", *F, 3), MonomialOrder::lex), exps({1, 0, 0}));
  try {
    (void)leading_monomial(Poly(*F, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_polynomial);
  }
}

TEST(MvpolyProperties, DistinctLeadingMonomialsSpanFullDimension) {
  auto F = Field::prime(5);
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    // Triangular family: distinct leading monomials plus lower terms.
    std::vector<Poly> family;
    std::set<ExpVector> leads;
    for (int i = 0; i < 6; ++i) {
      Poly f = ml(random_sparse(*F, n, 4, 1, rng));
      if (f.is_zero() || !leads.insert(leading_monomial(f)).second) continue;
      family.push_back(f);
    }
    std::vector<ExpVector> cols;
    for (const auto& f : family)
      for (const auto& [e, c] : f.terms()) cols.push_back(e);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    linalg::Matrix m(*F, family.size(), cols.size());
    for (std::size_t r = 0; r < family.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) m.at(r, c) = family[r].coeff(cols[c]);
    EXPECT_EQ(linalg::rank(m), family.size());
  }
}

TEST(MvpolyText, FormatParseRoundTrip) {
  auto F = Field::make(3, 2);
  Rng rng(30);
  const auto layout = VarLayout::parse("x2,y2");
  for (int i = 0; i < 50; ++i) {
    const Poly f = random_sparse(*F, 4, 5, 3, rng);
    EXPECT_EQ(parse(format(f, layout), *F, layout), f);
  }
  EXPECT_EQ(format(parse("x1^2*x3", *F, 3)), "[1,0]*x1^2*x3^1");
}

TEST(MvpolyText, ParseErrorsCarryColumn) {
  auto F = Field::prime(5);
  try {
    (void)parse("x1 + * x2", *F, 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
    EXPECT_EQ(e.column(), 6u);
  }
  EXPECT_THROW(parse("", *F, 2), ParseError);
  EXPECT_THROW(parse("x3", *F, 2), Error);
}

TEST(MvpolyProperties, PolynomialIdentityLemmaZeroRate) {
  auto F = Field::make(2, 8);
  Rng rng(99);
  const std::size_t n = 3;
  const Poly f = parse("x1^3*x2 + x2^2*x3 + x1 + [1,1]", *F, n);
  const double bound = 4.0 / 256.0;
  const int trials = 20000;
  int zeros = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<FieldElem> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(F->sample(rng));
    if (eval(f, pt).is_zero()) ++zeros;
  }
  const double rate = static_cast<double>(zeros) / trials;
  EXPECT_LE(rate, bound + 3 * std::sqrt(bound * (1 - bound) / trials));
}
