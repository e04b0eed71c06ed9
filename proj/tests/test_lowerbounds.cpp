#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdlib>

#include "ipsforge/lowerbounds.hpp"
#include "ipsforge/rng.hpp"

using namespace ipsforge;
using namespace ipsforge::lowerbounds;
using gf::FieldTower;
using mvpoly::parse;

namespace {

std::vector<FieldElem> base_alphas(const FieldTower& T, std::size_t n, Rng& rng) {
  std::vector<FieldElem> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(T.embed(T.base().sample(rng)));
  return a;
}

// Checks f * (sum alpha_i x_i - beta) reduces to 1 modulo the Boolean axioms.
void expect_inverse(const Poly& f, const std::vector<FieldElem>& alphas, const FieldElem& beta) {
  const Poly L = certificates::linear_poly(*beta.field(), alphas, beta);
  EXPECT_EQ(mvpoly::ml(f * L), Poly::one(*beta.field(), alphas.size()));
  EXPECT_TRUE(f.is_multilinear());
}

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST(LowerBoundExamples, InverseSmallCases) {
  auto T = FieldTower::make(2, 1);
  const Field& F4 = T->ext();
  const FieldElem t = F4.generator();
  const Poly f0 = ml_inverse({}, t);
  EXPECT_EQ(f0, Poly::constant(F4, 0, -t.inv()));

  // Two-point interpolation: f(0) = 1/(-t), f(1) = 1/(1-t).
  const std::vector<FieldElem> a{F4.one()};
  const Poly f1 = ml_inverse(a, t);
  const FieldElem v0 = (-t).inv(), v1 = (F4.one() - t).inv();
  EXPECT_EQ(f1, Poly::constant(F4, 1, v0) + Poly::variable(F4, 1, 0).scale(v1 - v0));
  expect_inverse(f1, a, t);

  try {
    (void)ml_inverse(a, F4.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_denominator);
  }
}

TEST(LowerBoundProperties, InverseIdentityAndBaseDegree) {
  Rng rng(3);
  for (auto [p, k] : {std::pair<gf::u64, unsigned>{2, 3}, {3, 2}, {5, 1}}) {
    auto T = FieldTower::make(p, k);
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto alphas = base_alphas(*T, n, rng);
      const FieldElem beta = T->sample_beta(rng);
      expect_inverse(ml_inverse(alphas, beta), alphas, beta);
    }
    // With beta in the base field the inverse has degree at most k(p-1).
    const Field& B = T->base();
    for (int i = 0; i < 20; ++i) {
      std::vector<FieldElem> alphas;
      for (std::size_t j = 0; j < 5; ++j) alphas.push_back(B.sample(rng));
      const FieldElem beta = B.sample(rng);
      if (!certificates::is_unsat_on_cube(certificates::linear_poly(B, alphas, beta))) continue;
      EXPECT_LE(ml_inverse(alphas, beta).degree(), static_cast<long>(k * (p - 1)));
    }
  }
}

TEST(LowerBoundExamples, TopCoefficient) {
  auto T = FieldTower::make(3, 1);
  const FieldElem beta = T->ext().generator();
  const std::vector<FieldElem> a{T->embed(T->base().from_int(2))};
  const auto r = top_coeff(a, beta);
  EXPECT_TRUE(r.agree());
  EXPECT_EQ(r.closed_form, (a[0] - beta).inv() - (-beta).inv());

  auto F = Field::prime(5);
  EXPECT_TRUE(alternating_cube_sum(parse("x1*x2", *F, 2)).is_one());
}

TEST(LowerBoundProperties, TopCoefficientAgreesAndIsGeneric) {
  auto T = FieldTower::make(2, 12);
  Rng rng(7);
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto alphas = base_alphas(*T, n, rng);
    const auto r = top_coeff(alphas, T->sample_beta(rng));
    EXPECT_TRUE(r.agree()) << n;
    EXPECT_FALSE(r.interpolated.is_zero()) << n;
  }
}

TEST(LowerBoundExamples, NumeratorMonomial) {
  auto T = FieldTower::make(2, 2);
  Rng rng(1);
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_TRUE(numerator_monomial_check(T->ext(), n, T->sample_beta(rng)).is_one()) << n;
  auto F7 = Field::prime(7);
  EXPECT_TRUE(numerator_monomial_check(*F7, 3, F7->from_int(3)).is_one());
  try {
    (void)numerator_monomial_check(*F7, numerator_budget_n() + 1, F7->one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::budget_exceeded);
  }
}

TEST(LowerBoundProperties, NumeratorMatchesFullExpansion) {
  // Independent oracle: expand the whole product without pruning.
  auto F = Field::prime(3);
  const std::size_t n = 2;
  const FieldElem beta = F->from_int(2);
  Poly prod = Poly::one(*F, n);
  for (std::size_t T = 1; T < 4; ++T) {
    Poly L = Poly::constant(*F, n, -beta);
    for (std::size_t i = 0; i < n; ++i)
      if (T >> i & 1) L += Poly::variable(*F, n, i);
    prod *= L;
  }
  EXPECT_EQ(prod.coeff({1, 2}), numerator_monomial_check(*F, n, beta));
}

TEST(LowerBoundExamples, DegreeTrialBounds) {
  auto small = FieldTower::make(2, 1);
  const auto v = degree_trial(4, *small, 5, 1);
  EXPECT_TRUE(v.vacuous_single);
  EXPECT_TRUE(v.vacuous_union);
  EXPECT_LE(v.bound_single, 0.0);

  auto T = FieldTower::make(2, 12);
  const auto r = degree_trial(4, *T, 200, 1);
  EXPECT_DOUBLE_EQ(r.bound_union, 15.0 / 16.0);
  EXPECT_FALSE(r.vacuous_union);
  EXPECT_GE(r.rate(), r.bound_single - 3 * r.sigma(r.bound_single));
  EXPECT_GE(r.rate_all_subsets(), r.bound_union - 3 * r.sigma(r.bound_union));
  EXPECT_LE(r.successes_all_subsets, r.successes);
  EXPECT_GE(r.bound_union_exact, r.bound_union);
}

TEST(LowerBoundProperties, DegreeTrialIsDeterministic) {
  auto T = FieldTower::make(3, 4);
  const auto a = degree_trial(5, *T, 30, 9), b = degree_trial(5, *T, 30, 9);
  EXPECT_EQ(a.beta, b.beta);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_EQ(a.successes_all_subsets, b.successes_all_subsets);
}

TEST(LowerBoundExamples, ScanFindsZeroCoordinate) {
  auto T = FieldTower::make(2, 12);
  Rng rng(4);
  auto alphas = base_alphas(*T, 4, rng);
  alphas[1] = T->ext().zero();
  const auto r = restricted_degree_scan(alphas, T->sample_beta(rng));
  EXPECT_FALSE(r.all_full());
  EXPECT_NE(std::find(r.degenerate.begin(), r.degenerate.end(), std::size_t{2}), r.degenerate.end());
  for (auto m : r.degenerate) EXPECT_TRUE(m & 2) << m;
  EXPECT_TRUE(r.worst_mask & 2);
}

TEST(LowerBoundProperties, RestrictedDegreesMatchDirectRestriction) {
  // Oracle: interpolate each restricted instance on its own.
  auto T = FieldTower::make(2, 2);
  Rng rng(5);
  const std::size_t n = 4;
  const auto alphas = base_alphas(*T, n, rng);
  const FieldElem beta = T->sample_beta(rng);
  const auto d = restricted_degrees(ml_inverse(alphas, beta));
  for (std::size_t U = 1; U < (std::size_t{1} << n); ++U) {
    std::vector<FieldElem> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (U >> i & 1) sub.push_back(alphas[i]);
    EXPECT_EQ(d[U], ml_inverse(sub, beta).degree()) << U;
  }
}

TEST(LowerBoundExamples, Sparsity) {
  auto T = FieldTower::make(2, 12);
  Rng rng(6);
  const auto r4 = sparsity_probe(base_alphas(*T, 4, rng), T->sample_beta(rng));
  EXPECT_EQ(r4.sparsity, 16u);
  EXPECT_TRUE(r4.holds());
  const auto r0 = sparsity_probe({}, T->sample_beta(rng));
  EXPECT_EQ(r0.sparsity, 1u);
  for (int i = 0; i < 20; ++i) {
    const auto r8 = sparsity_probe(base_alphas(*T, 8, rng), T->sample_beta(rng));
    EXPECT_GE(r8.sparsity, 2u);
    EXPECT_TRUE(r8.holds());
  }
}

TEST(LowerBoundExamples, CoefficientMatrixRank) {
  auto F = Field::prime(5);
  const auto layout = mvpoly::VarLayout::parse("x2,y2");
  const Poly f = parse("x1*y1 + x2*y2", *F, layout);
  EXPECT_EQ(rank(coefficient_matrix(f, {0, 1}, {2, 3})), 2u);

  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    Poly g(*F, 4), h(*F, 4);
    for (std::size_t m = 0; m < 4; ++m) {
      g.add_term({static_cast<mvpoly::Exp>(m & 1), static_cast<mvpoly::Exp>(m >> 1), 0, 0}, F->sample(rng));
      h.add_term({0, 0, static_cast<mvpoly::Exp>(m & 1), static_cast<mvpoly::Exp>(m >> 1)}, F->sample(rng));
    }
    if (g.is_zero() || h.is_zero()) continue;
    const Poly prod = g * h;
    EXPECT_EQ(rank(coefficient_matrix(prod, {0, 1}, {2, 3})), 1u);
    EXPECT_LE(rank(coefficient_matrix(prod + parse("x1*y1", *F, layout), {0, 1}, {2, 3})), 2u);
  }
  for (int i = 0; i < 20; ++i) {
    Poly f2(*F, 4);
    for (std::size_t m = 0; m < 16; ++m) {
      mvpoly::ExpVector e(4, 0);
      for (std::size_t b = 0; b < 4; ++b) e[b] = (m >> b) & 1;
      if (rng.coin()) f2.add_term(e, F->sample(rng));
    }
    const std::size_t a = rank(coefficient_matrix(f2, {0, 2}, {1, 3}));
    EXPECT_EQ(a, rank(coefficient_matrix(f2, {1, 3}, {0, 2})));
    EXPECT_LE(eval_dimension(f2, {0, 2}, {1, 3}), a);
    // Over the cube with multilinear f the two dimensions coincide.
    EXPECT_EQ(eval_dimension(f2, {0, 2}, {1, 3}), a);
  }
}

TEST(LowerBoundExamples, RankOneIffFactorsForBilinear) {
  auto F = Field::prime(3);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    // Bilinear f = sum c_ij x_i y_j, built from a random 2x2 matrix.
    std::array<FieldElem, 4> c{F->sample(rng), F->sample(rng), F->sample(rng), F->sample(rng)};
    Poly f(*F, 4);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        mvpoly::ExpVector e(4, 0);
        e[a] = e[2 + b] = 1;
        f.add_term(e, c[2 * a + b]);
      }
    const bool det_zero = (c[0] * c[3] - c[1] * c[2]).is_zero();
    const std::size_t r = rank(coefficient_matrix(f, {0, 1}, {2, 3}));
    if (f.is_zero()) {
      EXPECT_EQ(r, 0u);
      continue;
    }
    EXPECT_EQ(r == 1, det_zero);
    if (r == 1) {
      // Explicit factor: a nonzero row times the column ratios.
      const std::size_t row = (c[0].is_zero() && c[1].is_zero()) ? 1 : 0;
      const std::size_t col = c[2 * row].is_zero() ? 1 : 0;
      Poly g(*F, 4), h(*F, 4);
      for (std::size_t a = 0; a < 2; ++a) g += Poly::variable(*F, 4, a).scale(c[2 * a + col]);
      for (std::size_t b = 0; b < 2; ++b) h += Poly::variable(*F, 4, 2 + b).scale(c[2 * row + b] * c[2 * row + col].inv());
      EXPECT_EQ(g * h, f);
    }
  }
}

TEST(LowerBoundExamples, EvaluationDimension) {
  auto F = Field::prime(7);
  const Poly f = parse("x1*x2 + 3*x1 + 1", *F, 4);
  EXPECT_EQ(eval_dimension(f, {0, 1}, {2, 3}), 1u);

  auto T = std::shared_ptr<const FieldTower>(FieldTower::make(2, 12));
  const auto li = lifted_instance(LiftedKind::fixed_order, 3, T, 3);
  const Poly inv = ml_inverse(li.poly());
  EXPECT_EQ(eval_dimension(inv, iota(0, 3), iota(3, 6)), 8u);
  EXPECT_LE(eval_dimension(inv, iota(0, 3), iota(3, 6)), rank(coefficient_matrix(inv, iota(0, 3), iota(3, 6))));
}

TEST(LowerBoundExamples, RoabpWidth) {
  auto F = Field::prime(3);
  const Poly prod = parse("x1*x2*x3*x4", *F, 4);
  std::vector<std::size_t> order{0, 1, 2, 3};
  do {
    EXPECT_EQ(roabp_width(prod, order).width, 1u);
  } while (std::next_permutation(order.begin(), order.end()));

  auto T = std::shared_ptr<const FieldTower>(FieldTower::make(2, 12));
  const auto li4 = lifted_instance(LiftedKind::fixed_order, 4, T, 1);
  const auto w = roabp_width(ml_inverse(li4.poly()), iota(0, 8));
  EXPECT_GE(w.width, 16u);
  for (auto r : w.cut_ranks) EXPECT_LE(r, w.width);

  // Interleaving each x_i with its y_i collapses the width.
  const auto li2 = lifted_instance(LiftedKind::fixed_order, 2, T, 2);
  const Poly g = ml_inverse(li2.poly());
  const std::size_t separated = roabp_width(g, {0, 1, 2, 3}).width;
  const std::size_t interleaved = roabp_width(g, {0, 2, 1, 3}).width;
  EXPECT_EQ(separated, 4u);
  EXPECT_LT(interleaved, separated);
}

TEST(LowerBoundExamples, LiftedRestriction) {
  auto T = std::shared_ptr<const FieldTower>(FieldTower::make(2, 3));
  const auto li = lifted_instance(LiftedKind::any_order, 2, T, 4);
  const auto b = balanced_restriction(li, {0, 1}, {2, 3});
  EXPECT_EQ(std::count(b.begin(), b.end(), 1), 2);
  const Field& E = T->ext();
  Poly expect = Poly::constant(E, 4, -li.beta);
  expect.add_term({1, 0, 1, 0}, li.alphas[li.pair_index(0, 2)]);
  expect.add_term({0, 1, 0, 1}, li.alphas[li.pair_index(1, 3)]);
  EXPECT_EQ(apply_restriction(li, b), expect);
  // Cube-point cross-check of the substitution against the full polynomial.
  for (std::size_t m = 0; m < 16; ++m) {
    std::vector<FieldElem> full, x;
    for (std::size_t i = 0; i < 4; ++i) x.push_back(E.from_index(m >> i & 1));
    full = x;
    for (int v : b) full.push_back(E.from_index(static_cast<gf::u64>(v)));
    EXPECT_EQ(mvpoly::eval(li.poly(), full), mvpoly::eval(expect, x));
  }
}

TEST(LowerBoundProperties, BalancedRestrictionsAreZeroOne) {
  auto T = std::shared_ptr<const FieldTower>(FieldTower::make(2, 12));
  const auto li = lifted_instance(LiftedKind::any_order, 3, T, 8);
  std::size_t partitions = 0;
  std::vector<int> pick(6, 0);
  std::fill(pick.begin() + 3, pick.end(), 1);
  do {
    if (pick[0] != 0) continue;  // u holds variable 0; each partition once
    std::vector<std::size_t> u, v;
    for (std::size_t i = 0; i < 6; ++i) (pick[i] ? v : u).push_back(i);
    const auto b = balanced_restriction(li, u, v);
    for (int x : b) EXPECT_TRUE(x == 0 || x == 1);
    EXPECT_EQ(std::count(b.begin(), b.end(), 1), 3);
    EXPECT_EQ(specialized_eval_dimension(li, u, v), 8u);
    ++partitions;
  } while (std::next_permutation(pick.begin(), pick.end()));
  EXPECT_EQ(partitions, 10u);
}

TEST(LowerBoundBudget, EnvironmentCap) {
  EXPECT_EQ(budget_n(), 12u);
  ::setenv("IPSFORGE_BUDGET_N", "3", 1);
  EXPECT_EQ(budget_n(), 3u);
  try {
    check_cube_budget(4);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::budget_exceeded);
  }
  ::unsetenv("IPSFORGE_BUDGET_N");
  EXPECT_NO_THROW(check_cube_budget(12));
}
