#include <gtest/gtest.h>

#include <bit>

#include <boost/multiprecision/cpp_int.hpp>

#include "ipsforge/rng.hpp"
#include "ipsforge/symfun.hpp"

using namespace ipsforge;
using namespace ipsforge::symfun;
using mvpoly::parse;

namespace {

std::vector<FieldElem> cube_point(const Field& f, std::size_t n, std::size_t mask) {
  std::vector<FieldElem> pt(n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) pt[i] = f.one();
  return pt;
}

u64 exact_binom_mod(u64 a, u64 b, u64 p) {
  using boost::multiprecision::cpp_int;
  if (b > a) return 0;
  cpp_int c = 1;
  for (u64 i = 0; i < b; ++i) c = c * (a - i) / (i + 1);
  return static_cast<u64>(c % p);
}

ElemSymExpansion random_expansion(const Field& f, std::size_t n, Rng& rng) {
  ElemSymExpansion x;
  for (std::size_t d = 0; d <= n; ++d) x.lambdas.push_back(rng.coin() ? f.sample(rng) : f.zero());
  return x;
}

}  // namespace

TEST(SymfunExamples, ElementarySymmetric) {
  auto F = Field::prime(5);
  EXPECT_EQ(elem_sym(*F, 4, 0), Poly::one(*F, 4));
  EXPECT_EQ(elem_sym(*F, 3, 3), parse("x1*x2*x3", *F, 3));
  EXPECT_EQ(elem_sym(*F, 3, 2), parse("x1*x2+x1*x3+x2*x3", *F, 3));
  try {
    (void)elem_sym(*F, 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::out_of_range);
  }
}

TEST(SymfunProperties, ElementarySparsityIsBinomial) {
  auto F = Field::prime(2);
  for (std::size_t n = 0; n <= 12; ++n)
    for (std::size_t d = 0; d <= n; ++d) {
      const Poly e = elem_sym(*F, n, d);
      ASSERT_EQ(e.sparsity(), exact_binom_mod(n, d, ~u64{0}));
      EXPECT_TRUE(e.is_multilinear());
    }
}

TEST(SymfunProperties, ElementaryValuesAreBinomials) {
  for (u64 p : {2u, 3u, 7u}) {
    auto F = Field::prime(p);
    for (std::size_t n = 0; n <= 10; ++n)
      for (std::size_t d = 0; d <= n; ++d) {
        const auto values = mvpoly::cube_values(elem_sym(*F, n, d));
        for (std::size_t m = 0; m < values.size(); ++m)
          ASSERT_EQ(F->index_of(values[m]), exact_binom_mod(std::popcount(m), d, p));
      }
  }
}

TEST(SymfunExamples, Lucas) {
  EXPECT_EQ(lucas_binom(5, 2, 2), 0u);
  for (u64 a : {0u, 1u, 17u, 1000u}) EXPECT_EQ(lucas_binom(a, 0, 7), 1u);
}

TEST(SymfunProperties, LucasMatchesExactBinomial) {
  for (u64 p : {2u, 3u, 5u, 7u, 13u, 197u})
    for (u64 a = 0; a <= 200; ++a)
      for (u64 b = 0; b <= 200; ++b) ASSERT_EQ(lucas_binom(a, b, p), exact_binom_mod(a, b, p)) << a << " " << b << " " << p;
}

TEST(SymfunProperties, BenOrIdentityIsExact) {
  for (auto [p, k] : {std::pair<u64, unsigned>{7, 1}, {2, 3}, {3, 2}}) {
    auto F = Field::make(p, k);
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto form = ben_or_coeffs(n, *F);
      for (std::size_t d = 0; d <= n; ++d) EXPECT_EQ(ben_or_expand(*F, form, d), elem_sym(*F, n, d)) << n << " " << d;
    }
  }
  auto F5 = Field::prime(5);
  const auto form = ben_or_coeffs(1, *F5);
  EXPECT_EQ(ben_or_expand(*F5, form, 1), parse("x1", *F5, 1));
  EXPECT_EQ(ben_or_expand(*F5, form, 0), Poly::one(*F5, 1));
  try {
    (void)ben_or_coeffs(5, *F5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::field_too_small);
  }
}

TEST(SymfunExamples, ElementaryBasis) {
  auto F = Field::prime(3);
  EXPECT_EQ(sym_to_elem_basis(parse("x1*x2+x1+x2", *F, 2)).lambdas,
            (std::vector<FieldElem>{F->zero(), F->one(), F->one()}));
  EXPECT_EQ(sym_to_elem_basis(Poly::one(*F, 3)), unit_expansion(*F, 3, 0));
  for (const char* asym : {"x1", "x1*x2+x1", "x1+2*x2"}) {
    try {
      (void)sym_to_elem_basis(parse(asym, *F, 2));
      FAIL() << asym;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::not_symmetric);
    }
  }
}

TEST(SymfunProperties, ElementaryBasisRoundTrip) {
  Rng rng(3);
  for (auto [p, k] : {std::pair<u64, unsigned>{2, 2}, {3, 1}, {5, 2}}) {
    auto F = Field::make(p, k);
    for (std::size_t n = 0; n <= 8; ++n) {
      const auto x = random_expansion(*F, n, rng);
      const Poly f = expand(*F, x);
      EXPECT_EQ(sym_to_elem_basis(f), x);
      const auto values = weight_values(*F, x);
      for (std::size_t w = 0; w <= n; ++w) {
        std::vector<FieldElem> pt(n, F->zero());
        for (std::size_t i = 0; i < w; ++i) pt[i] = F->one();
        EXPECT_EQ(mvpoly::eval(f, pt), values[w]);
      }
    }
  }
}

TEST(SymfunExamples, Compression) {
  for (u64 p : {2u, 3u, 5u}) {
    auto F = Field::prime(p);
    const auto c = compress_char_p(elem_sym(*F, 4, 1), p);
    Poly y1 = Poly::variable(*F, c.r, 0);
    EXPECT_EQ(c.F, y1);
  }
  // Over F_2 the selectors are y_i or 1, so e_d is a digit product.
  auto F2 = Field::prime(2);
  const auto c = compress_char_p(elem_sym(*F2, 7, 5), 2);
  ASSERT_EQ(c.r, 3u);
  EXPECT_EQ(c.F, parse("y1*y3", *F2, mvpoly::VarLayout::single('y', 3)));

  // n=5, p=3, e_2: F(e1(a), e3(a)) = C(|a|,2) mod 3.
  auto F3 = Field::prime(3);
  const auto c3 = compress_char_p(elem_sym(*F3, 5, 2), 3);
  ASSERT_EQ(c3.r, 2u);
  const auto eh = e_hat(*F3, 5, 2);
  for (std::size_t m = 0; m < 32; ++m) {
    const auto pt = cube_point(*F3, 5, m);
    const FieldElem v = mvpoly::eval(c3.F, {mvpoly::eval(eh[0], pt), mvpoly::eval(eh[1], pt)});
    EXPECT_EQ(F3->index_of(v), exact_binom_mod(std::popcount(m), 2, 3));
  }
}

TEST(SymfunProperties, CompressionAgreesOnCube) {
  Rng rng(5);
  for (u64 p : {2u, 3u, 5u}) {
    auto F = Field::prime(p);
    for (std::size_t n : {1u, 6u, 12u}) {
      const auto x = random_expansion(*F, n, rng);
      const Poly f = expand(*F, x);
      const auto c = compress_char_p(f, p);
      EXPECT_LE(c.F.individual_degree(), p - 1);
      const auto eh = e_hat(*F, n, c.r);
      const auto direct = mvpoly::cube_values(f);
      std::vector<std::vector<FieldElem>> hat_values;
      for (const auto& e : eh) hat_values.push_back(mvpoly::cube_values(e));
      for (std::size_t m = 0; m < direct.size(); ++m) {
        std::vector<FieldElem> y;
        for (const auto& hv : hat_values) y.push_back(hv[m]);
        ASSERT_EQ(mvpoly::eval(c.F, y), direct[m]);
      }
    }
  }
}

TEST(SymfunExamples, DigitSelector) {
  auto F2 = Field::prime(2);
  EXPECT_EQ(qt_poly(*F2, 3, 2, 2), parse("y1*y2", *F2, mvpoly::VarLayout::single('y', 2)));
  EXPECT_THROW(qt_poly(*F2, 4, 2, 2), Error);

  auto F3 = Field::prime(3);
  const std::size_t r = 3;
  for (u64 t = 0; t < 27; ++t) {
    const Poly q = qt_poly(*F3, t, r, 3);
    EXPECT_LE(q.individual_degree(), 2u);
    const auto td = digits(t, 3, r);
    for (u64 b = 0; b < 27; ++b) {
      const auto bd = digits(b, 3, r);
      std::vector<FieldElem> pt;
      u64 expect = 1;
      for (std::size_t i = 0; i < r; ++i) {
        pt.push_back(F3->from_index(bd[i]));
        expect = expect * exact_binom_mod(bd[i], td[i], 3) % 3;
      }
      ASSERT_EQ(F3->index_of(mvpoly::eval(q, pt)), expect);
    }
  }
}

TEST(SymfunExamples, MultilinearProductOfElementary) {
  auto F3 = Field::prime(3);
  const auto single = ml_prod_elem(*F3, 3, {2});
  EXPECT_EQ(single.expansion, unit_expansion(*F3, 3, 2));
  for (const auto& r : single.R) EXPECT_TRUE(r.is_zero());

  const auto sq = ml_prod_elem(*F3, 2, {1, 1});
  EXPECT_EQ(sq.expansion.lambdas, (std::vector<FieldElem>{F3->zero(), F3->one(), F3->from_int(2)}));
  EXPECT_THROW(ml_prod_elem(*F3, 2, {3}), Error);
}

TEST(SymfunProperties, MultilinearProductIdentityIsExact) {
  auto check = [](const Field& f, std::size_t n, const std::vector<std::size_t>& alphas) {
    const auto m = ml_prod_elem(f, n, alphas);
    Poly prod = Poly::one(f, n);
    for (auto a : alphas) prod *= elem_sym(f, n, a);
    Poly rhs = expand(f, m.expansion);
    for (std::size_t j = 0; j < n; ++j) rhs += m.R[j] * mvpoly::boolean_axiom(f, n, j);
    EXPECT_EQ(prod, rhs);
    EXPECT_EQ(mvpoly::ml(prod), expand(f, m.expansion));
  };
  auto F3 = Field::prime(3);
  check(*F3, 4, {1, 3, 3});
  Rng rng(9);
  for (u64 p : {2u, 3u, 5u}) {
    auto F = Field::prime(p);
    for (int i = 0; i < 10; ++i) {
      const std::size_t n = 1 + rng.below(5);
      std::vector<std::size_t> alphas;
      for (std::size_t s = 0, len = 1 + rng.below(3); s < len; ++s) alphas.push_back(rng.below(n + 1));
      check(*F, n, alphas);
    }
  }
}

TEST(SymfunProperties, ProductOfUnivariates) {
  auto F = Field::prime(5);
  const std::size_t n = 3;
  std::vector<Poly> h;
  Rng rng(14);
  for (std::size_t j = 0; j < n; ++j) {
    Poly hj(*F, n);
    for (mvpoly::Exp e = 0; e <= 3; ++e) {
      mvpoly::ExpVector ev(n, 0);
      ev[j] = e;
      hj.add_term(ev, F->sample(rng));
    }
    h.push_back(hj);
  }
  const auto c = ml_product_of_univariates(h);
  Poly prod = Poly::one(*F, n), rhs = c.multilinear;
  for (const auto& hj : h) prod *= hj;
  for (std::size_t j = 0; j < n; ++j) rhs += c.B[j] * mvpoly::boolean_axiom(*F, n, j);
  EXPECT_EQ(prod, rhs);
  EXPECT_TRUE(c.multilinear.is_multilinear());
}
