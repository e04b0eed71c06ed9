#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ipsforge/errors.hpp"
#include "ipsforge/gf.hpp"
#include "ipsforge/linalg.hpp"
#include "ipsforge/mvpoly.hpp"

namespace ipsforge::symfun {

using gf::Field;
using gf::FieldElem;
using gf::u64;
using mvpoly::ExpVector;
using mvpoly::Poly;

// lambdas[d] is the coefficient of e_d, d = 0..n.
struct ElemSymExpansion {
  std::vector<FieldElem> lambdas;

  std::size_t n() const { return lambdas.empty() ? 0 : lambdas.size() - 1; }
  bool operator==(const ElemSymExpansion& o) const { return lambdas == o.lambdas; }
};

inline Poly elem_sym(const Field& f, std::size_t n, std::size_t d) {
  if (d > n) throw Error(ErrorCode::out_of_range, "e_" + std::to_string(d) + " in " + std::to_string(n) + " variables");
  // e_d(x_1..x_n) = x_1 e_{d-1}(x_2..x_n) + e_d(x_2..x_n), unrolled over
  // suffixes: row[j] holds e_j of the current suffix.
  std::vector<Poly> row;
  row.push_back(Poly::one(f, n));
  for (std::size_t j = 1; j <= d; ++j) row.emplace_back(f, n);
  for (std::size_t i = n; i-- > 0;) {
    const Poly xi = Poly::variable(f, n, i);
    for (std::size_t j = std::min(d, n - i); j >= 1; --j) row[j] += xi * row[j - 1];
  }
  return row[d];
}

inline u64 lucas_binom(u64 a, u64 b, u64 p) {
  u64 r = 1;
  while (a != 0 || b != 0) {
    const u64 ai = a % p, bi = b % p;
    if (bi > ai) return 0;
    // C(ai, bi) mod p with ai < p: multiplicative formula.
    u64 num = 1, den = 1;
    for (u64 j = 0; j < bi; ++j) {
      num = gf::mul_mod(num, ai - j, p);
      den = gf::mul_mod(den, j + 1, p);
    }
    r = gf::mul_mod(r, gf::mul_mod(num, gf::pow_mod(den, p - 2, p), p), p);
    a /= p;
    b /= p;
  }
  return r % p;
}

inline FieldElem binom_elem(const Field& f, u64 a, u64 b) {
  return f.from_index(lucas_binom(a, b, f.p()));
}

// Values sum_d lambda_d C(w, d) at Hamming weights w = 0..n.
inline std::vector<FieldElem> weight_values(const Field& f, const ElemSymExpansion& x) {
  const std::size_t n = x.n();
  std::vector<FieldElem> v(n + 1, f.zero());
  for (std::size_t w = 0; w <= n; ++w)
    for (std::size_t d = 0; d <= w; ++d)
      if (!x.lambdas[d].is_zero()) v[w] += x.lambdas[d] * binom_elem(f, w, d);
  return v;
}

// Triangular solve: value(w) = sum_{d<=w} lambda_d C(w,d), C(w,w) = 1.
inline ElemSymExpansion from_weight_values(const Field& f, const std::vector<FieldElem>& values) {
  ElemSymExpansion x;
  for (std::size_t w = 0; w < values.size(); ++w) {
    FieldElem l = values[w];
    for (std::size_t d = 0; d < w; ++d)
      if (!x.lambdas[d].is_zero()) l -= x.lambdas[d] * binom_elem(f, w, d);
    x.lambdas.push_back(l);
  }
  return x;
}

inline ElemSymExpansion unit_expansion(const Field& f, std::size_t n, std::size_t d) {
  ElemSymExpansion x{std::vector<FieldElem>(n + 1, f.zero())};
  x.lambdas.at(d) = f.one();
  return x;
}

inline Poly expand(const Field& f, const ElemSymExpansion& x) {
  const std::size_t n = x.n();
  Poly r(f, n);
  for (std::size_t d = 0; d <= n; ++d)
    if (!x.lambdas[d].is_zero()) r += elem_sym(f, n, d).scale(x.lambdas[d]);
  return r;
}

// For multilinear f, symmetry on the cube is equivalent to every coefficient
// depending only on the degree of its monomial, which is what we check.
inline ElemSymExpansion sym_to_elem_basis(const Poly& input) {
  const Field& f = input.field();
  const std::size_t n = input.nvars();
  const Poly g = mvpoly::ml(input);
  std::vector<std::size_t> count(n + 1, 0);
  std::vector<std::optional<FieldElem>> coeff(n + 1);
  for (const auto& [e, c] : g.terms()) {
    const auto d = mvpoly::total_degree(e);
    if (coeff[d] && *coeff[d] != c) throw Error(ErrorCode::not_symmetric, "coefficients differ within degree " + std::to_string(d));
    coeff[d] = c;
    ++count[d];
  }
  gf::u128 binom = 1;  // C(n, d) as an integer, only compared against counts
  for (std::size_t d = 0; d <= n; ++d) {
    if (d > 0) binom = binom * (n - d + 1) / d;
    if (count[d] != 0 && count[d] != binom)
      throw Error(ErrorCode::not_symmetric, "missing monomials in degree " + std::to_string(d));
  }
  // Weight values at 1^w 0^(n-w), then the triangular solve.
  std::vector<FieldElem> values(n + 1, f.zero());
  for (std::size_t w = 0; w <= n; ++w) {
    std::vector<FieldElem> point(n, f.zero());
    for (std::size_t i = 0; i < w; ++i) point[i] = f.one();
    values[w] = mvpoly::eval(g, point);
  }
  return from_weight_values(f, values);
}

struct BenOrForm {
  std::vector<FieldElem> nodes;
  std::vector<std::vector<FieldElem>> coeffs;  // coeffs[k][i]
};

inline BenOrForm ben_or_coeffs(std::size_t n, const Field& f) {
  const auto q = f.size();
  if (q && *q <= n) throw Error(ErrorCode::field_too_small, "need more than " + std::to_string(n) + " field elements");
  BenOrForm form;
  for (std::size_t i = 0; i <= n; ++i) form.nodes.push_back(f.from_index(i));
  // V[i][d] = gamma_i^d; the coefficient matrix is V^{-1}.
  linalg::Matrix v(f, n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    FieldElem pw = f.one();
    for (std::size_t d = 0; d <= n; ++d) {
      v.at(i, d) = pw;
      pw *= form.nodes[i];
    }
  }
  const auto inv = linalg::inverse(v);
  if (!inv) throw Error(ErrorCode::field_too_small, "Vandermonde system is singular");
  form.coeffs.assign(n + 1, std::vector<FieldElem>(n + 1, f.zero()));
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t i = 0; i <= n; ++i) form.coeffs[k][i] = inv->at(k, i);
  return form;
}

// sum_i c_{k,i} prod_j (1 + gamma_i x_j), expanded.
inline Poly ben_or_expand(const Field& f, const BenOrForm& form, std::size_t k) {
  const std::size_t n = form.nodes.size() - 1;
  Poly r(f, n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (form.coeffs[k][i].is_zero()) continue;
    Poly prod = Poly::one(f, n);
    for (std::size_t j = 0; j < n; ++j)
      prod *= Poly::one(f, n) + Poly::variable(f, n, j).scale(form.nodes[i]);
    r += prod.scale(form.coeffs[k][i]);
  }
  return r;
}

// Number of base-p digits of n (at least 1).
inline std::size_t compressed_width(std::size_t n, u64 p) {
  std::size_t r = 1;
  u64 pw = p;
  while (pw <= n) {
    ++r;
    pw *= p;
  }
  return r;
}

inline std::vector<u64> digits(u64 v, u64 p, std::size_t r) {
  std::vector<u64> d(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

struct CompressedSymmetric {
  std::size_t r = 0;
  Poly F;
};

// S(z) = (1/d!) prod_{j<d} (z - j) in variable y_{i+1} of r.
inline Poly digit_selector(const Field& f, std::size_t r, std::size_t i, u64 d) {
  Poly s = Poly::one(f, r);
  FieldElem fact = f.one();
  for (u64 j = 0; j < d; ++j) {
    s *= Poly::variable(f, r, i) - Poly::constant(f, r, f.from_int(static_cast<long long>(j)));
    fact *= f.from_int(static_cast<long long>(j + 1));
  }
  return s.scale(fact.inv());
}

inline CompressedSymmetric compress_expansion(const Field& f, const ElemSymExpansion& x) {
  const u64 p = f.p();
  const std::size_t n = x.n();
  const std::size_t r = compressed_width(n, p);
  Poly F(f, r);
  for (std::size_t d = 0; d <= n; ++d) {
    if (x.lambdas[d].is_zero()) continue;
    const auto dig = digits(d, p, r);
    Poly term = Poly::constant(f, r, x.lambdas[d]);
    for (std::size_t i = 0; i < r; ++i)
      if (dig[i] != 0) term *= digit_selector(f, r, i, dig[i]);
    F += term;
  }
  return {r, mvpoly::inddeg_p(F, p).remainder};
}

inline CompressedSymmetric compress_char_p(const Poly& f, u64 p) {
  if (p != f.field().p()) throw Error(ErrorCode::out_of_range, "p must be the field characteristic");
  return compress_expansion(f.field(), sym_to_elem_basis(f));
}

// (e_1, e_p, ..., e_{p^{r-1}}) in n variables.
inline std::vector<Poly> e_hat(const Field& f, std::size_t n, std::size_t r) {
  std::vector<Poly> out;
  u64 pw = 1;
  for (std::size_t i = 0; i < r; ++i) {
    out.push_back(pw <= n ? elem_sym(f, n, pw) : Poly(f, n));
    pw *= f.p();
  }
  return out;
}

inline Poly qt_poly(const Field& f, u64 t, std::size_t r, u64 p) {
  if (p != f.p()) throw Error(ErrorCode::out_of_range, "p must be the field characteristic");
  gf::u128 limit = 1;
  for (std::size_t i = 0; i < r && limit <= t; ++i) limit *= p;
  if (static_cast<gf::u128>(t) >= limit) throw Error(ErrorCode::out_of_range, "t must be below p^r");
  const auto dig = digits(t, p, r);
  Poly q = Poly::one(f, r);
  for (std::size_t i = 0; i < r; ++i)
    if (dig[i] != 0) q *= digit_selector(f, r, i, dig[i]);
  return q;
}

// Structure of ml[e_a e_b]: its weight values are C(w,a) C(w,b).
inline ElemSymExpansion ml_pair_expansion(const Field& f, std::size_t n, std::size_t a, std::size_t b) {
  std::vector<FieldElem> v(n + 1, f.zero());
  for (std::size_t w = 0; w <= n; ++w) v[w] = binom_elem(f, w, a) * binom_elem(f, w, b);
  return from_weight_values(f, v);
}

// ml[(sum_i lambda_i e_i) e_b] as an expansion.
inline ElemSymExpansion ml_times_elem(const Field& f, const ElemSymExpansion& x, std::size_t b) {
  const std::size_t n = x.n();
  ElemSymExpansion out{std::vector<FieldElem>(n + 1, f.zero())};
  for (std::size_t i = 0; i <= n; ++i) {
    if (x.lambdas[i].is_zero()) continue;
    const auto c = ml_pair_expansion(f, n, i, b);
    for (std::size_t l = 0; l <= n; ++l) out.lambdas[l] += x.lambdas[i] * c.lambdas[l];
  }
  return out;
}

struct MlProduct {
  ElemSymExpansion expansion;
  std::vector<Poly> R;  // empty unless certificates were requested
};

// Left-to-right fold over the sorted degrees. With certificates, keeps
//   prod e_alpha = expand(expansion) + sum_j R_j (x_j^2 - x_j)
// by R_j <- R_j e_b + sum_i lambda_i D_{i,b,j}, where D are the Boolean
// quotients of e_i e_b.
inline MlProduct ml_prod_elem(const Field& f, std::size_t n, std::vector<std::size_t> alphas, bool with_certificate = true) {
  for (auto a : alphas)
    if (a > n) throw Error(ErrorCode::out_of_range, "degree " + std::to_string(a) + " exceeds n");
  std::sort(alphas.begin(), alphas.end());
  MlProduct out;
  if (with_certificate) out.R.assign(n, Poly(f, n));
  if (alphas.empty()) {
    out.expansion = unit_expansion(f, n, 0);
    return out;
  }
  out.expansion = unit_expansion(f, n, alphas[0]);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Poly>> quotient_cache;
  std::map<std::size_t, Poly> elem_cache;
  auto elem = [&](std::size_t d) -> const Poly& {
    auto it = elem_cache.find(d);
    if (it == elem_cache.end()) it = elem_cache.emplace(d, elem_sym(f, n, d)).first;
    return it->second;
  };
  for (std::size_t s = 1; s < alphas.size(); ++s) {
    const std::size_t b = alphas[s];
    if (with_certificate) {
      for (auto& Rj : out.R) Rj = Rj * elem(b);
      for (std::size_t i = 0; i <= n; ++i) {
        const FieldElem& li = out.expansion.lambdas[i];
        if (li.is_zero()) continue;
        const auto key = std::make_pair(i, b);
        auto it = quotient_cache.find(key);
        if (it == quotient_cache.end())
          it = quotient_cache.emplace(key, mvpoly::divide_by_axioms(elem(i) * elem(b), mvpoly::AxiomKind::boolean).quotients).first;
        for (std::size_t j = 0; j < n; ++j) out.R[j] += it->second[j].scale(li);
      }
    }
    out.expansion = ml_times_elem(f, out.expansion, b);
  }
  return out;
}

struct MlCertificate {
  Poly multilinear;
  std::vector<Poly> B;
};

// prod_j h_j(x_j) = prod_j L_j + sum_j (prod_{i<j} L_i) q_j (prod_{i>j} h_i) (x_j^2 - x_j)
// where h_j = L_j + q_j (x_j^2 - x_j) and L_j = ml[h_j].
inline MlCertificate ml_product_of_univariates(const std::vector<Poly>& h) {
  if (h.empty()) throw Error(ErrorCode::arity_mismatch, "need at least one factor");
  const Field& f = h[0].field();
  const std::size_t n = h.size();
  std::vector<Poly> lin, quo;
  for (std::size_t j = 0; j < n; ++j) {
    const auto d = mvpoly::divide_by_axioms(h[j], mvpoly::AxiomKind::boolean);
    lin.push_back(d.remainder);
    quo.push_back(d.quotients[j]);
  }
  std::vector<Poly> suffix(n + 1, Poly::one(f, n));
  for (std::size_t j = n; j-- > 0;) suffix[j] = h[j] * suffix[j + 1];
  MlCertificate out{Poly::one(f, n), {}};
  Poly prefix = Poly::one(f, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.B.push_back(prefix * quo[j] * suffix[j + 1]);
    prefix *= lin[j];
  }
  out.multilinear = prefix;
  return out;
}

}  // namespace ipsforge::symfun
