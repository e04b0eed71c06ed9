#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ipsforge/errors.hpp"
#include "ipsforge/gf.hpp"
#include "ipsforge/linalg.hpp"
#include "ipsforge/mvpoly.hpp"
#include "ipsforge/symfun.hpp"

namespace ipsforge::certificates {

using gf::Field;
using gf::FieldElem;
using gf::FieldTower;
using gf::u64;
using mvpoly::ExpVector;
using mvpoly::Poly;

struct Instance {
  std::shared_ptr<const FieldTower> tower;
  gf::Level level = gf::Level::ext;
  mvpoly::VarLayout vars;
  std::vector<Poly> axioms;
  std::string family;

  const Field& field() const { return tower->at(level); }
  std::size_t nvars() const { return vars.size(); }
};

struct Provenance {
  std::string constructor;
  std::map<std::string, std::string> params;
};

struct CertStats {
  long max_degree = 0;
  std::size_t total_sparsity = 0;
  int modeled_depth = 0;

  bool operator==(const CertStats& o) const {
    return max_degree == o.max_degree && total_sparsity == o.total_sparsity && modeled_depth == o.modeled_depth;
  }
};

struct Certificate {
  std::vector<Poly> A;  // one per axiom
  std::vector<Poly> B;  // one per variable, multiplying x_j^2 - x_j
  Provenance provenance;
  CertStats stats;
};

// Coefficient depth claimed by the construction each constructor follows;
// metadata only, never measured.
inline int modeled_depth(const std::string& constructor) {
  if (constructor == "refute_linear_frobenius") return 3;
  if (constructor == "refute_sparse") return 5;
  if (constructor == "refute_symmetric_system") return 7;
  return 2;
}

inline CertStats cert_stats(const Certificate& c) {
  CertStats s;
  for (const auto* group : {&c.A, &c.B}) {
    for (const auto& p : *group) {
      s.max_degree = std::max(s.max_degree, p.degree());
      s.total_sparsity += p.sparsity();
    }
  }
  s.modeled_depth = modeled_depth(c.provenance.constructor);
  return s;
}

inline Certificate finish(std::vector<Poly> A, std::vector<Poly> B, Provenance prov) {
  Certificate c{std::move(A), std::move(B), std::move(prov), {}};
  c.stats = cert_stats(c);
  return c;
}

struct VerificationReport {
  bool valid;
  Poly residual;
  CertStats stats;
};

// Expands sum A_i f_i + sum B_j (x_j^2 - x_j) - 1 exactly.
inline VerificationReport verify(const std::vector<Poly>& axioms, const Certificate& cert) {
  if (axioms.empty()) throw Error(ErrorCode::arity_mismatch, "instance has no axioms");
  const Field& f = axioms[0].field();
  const std::size_t n = axioms[0].nvars();
  if (cert.A.size() != axioms.size())
    throw Error(ErrorCode::arity_mismatch, "certificate has " + std::to_string(cert.A.size()) + " A-polynomials for " +
                                               std::to_string(axioms.size()) + " axioms");
  if (cert.B.size() != n && !cert.B.empty())
    throw Error(ErrorCode::arity_mismatch, "certificate must have one B-polynomial per variable");
  Poly total = -Poly::one(f, n);
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    axioms[i].check_compatible(axioms[0]);
    cert.A[i].check_compatible(axioms[0]);
    total += cert.A[i] * axioms[i];
  }
  for (std::size_t j = 0; j < cert.B.size(); ++j) {
    cert.B[j].check_compatible(axioms[0]);
    if (!cert.B[j].is_zero()) total += cert.B[j] * mvpoly::boolean_axiom(f, n, j);
  }
  const bool ok = total.is_zero();
  return {ok, std::move(total), cert_stats(cert)};
}

inline VerificationReport verify(const Instance& inst, const Certificate& cert) { return verify(inst.axioms, cert); }

struct LinearForm {
  std::vector<FieldElem> alphas;
  FieldElem beta;  // L = sum alpha_i x_i - beta
};

inline LinearForm linear_form(const Poly& L) {
  if (L.degree() > 1) throw Error(ErrorCode::not_linear, "degree " + std::to_string(L.degree()) + " > 1");
  const Field& f = L.field();
  LinearForm lf{std::vector<FieldElem>(L.nvars(), f.zero()), f.zero()};
  for (const auto& [e, c] : L.terms()) {
    bool constant = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) {
        lf.alphas[i] = c;
        constant = false;
      }
    }
    if (constant) lf.beta = -c;
  }
  return lf;
}

inline Poly linear_poly(const Field& f, const std::vector<FieldElem>& alphas, const FieldElem& beta) {
  const std::size_t n = alphas.size();
  Poly L = Poly::constant(f, n, -beta);
  for (std::size_t i = 0; i < n; ++i) L += Poly::variable(f, n, i).scale(alphas[i]);
  return L;
}

// True iff beta is not a subset sum of the alphas. Works at any level.
inline bool is_unsat_on_cube(const Poly& L) {
  const LinearForm lf = linear_form(L);
  auto less = [](const FieldElem& a, const FieldElem& b) { return gf::index_less(a, b); };
  std::set<FieldElem, decltype(less)> reach(less);
  reach.insert(L.field().zero());
  for (const auto& a : lf.alphas) {
    if (a.is_zero()) continue;
    std::vector<FieldElem> add;
    for (const auto& s : reach) add.push_back(s + a);
    reach.insert(add.begin(), add.end());
  }
  return reach.count(lf.beta) == 0;
}

struct FrobeniusStep {
  Poly L;               // L_j = sum alpha_i^{p^j} x_i - beta^{p^j}
  Poly A;               // A_j
  std::vector<Poly> B;  // B_{j,i}: L_j = A_j L_0 + sum_i B_{j,i} (x_i^p - x_i)
};

namespace detail {

inline Poly to_ext(const Poly& L, const FieldTower& tower) {
  if (&L.field() == &tower.ext()) return L;
  if (&L.field() != &tower.base()) throw Error(ErrorCode::level_mismatch, "polynomial is not over this tower");
  return mvpoly::map_coeffs(L, tower.ext(), [&](const FieldElem& c) { return tower.embed(c); });
}

inline LinearForm checked_form(const Poly& L, const FieldTower& tower) {
  LinearForm lf = linear_form(L);
  for (std::size_t i = 0; i < lf.alphas.size(); ++i) {
    if (!tower.is_in_subfield(lf.alphas[i]))
      throw Error(ErrorCode::level_mismatch, "coefficient of x" + std::to_string(i + 1) + " is outside the base field");
  }
  if (tower.is_in_subfield(lf.beta)) throw Error(ErrorCode::beta_in_subfield, "beta^(p^k) = beta");
  return lf;
}

}  // namespace detail

// Iterates L_{j+1} = L_j^p reduced by Freshman's Dream, for j = 0..k.
inline std::vector<FrobeniusStep> frobenius_trace(const Poly& input, const FieldTower& tower) {
  const Poly L0 = detail::to_ext(input, tower);
  const LinearForm lf = detail::checked_form(L0, tower);
  const Field& f = tower.ext();
  const std::size_t n = L0.nvars();
  const u64 p = tower.p();
  std::vector<FrobeniusStep> steps;
  steps.push_back({L0, Poly::one(f, n), std::vector<Poly>(n, Poly(f, n))});
  std::vector<FieldElem> alphas = lf.alphas;
  FieldElem beta = lf.beta;
  for (unsigned j = 0; j < tower.k(); ++j) {
    const FrobeniusStep& cur = steps.back();
    const Poly P = cur.L.pow(p - 1);
    for (auto& a : alphas) a = a.pow(p);
    beta = beta.pow(p);
    FrobeniusStep next{linear_poly(f, alphas, beta), cur.A * P, {}};
    for (std::size_t i = 0; i < n; ++i) next.B.push_back(cur.B[i] * P - Poly::constant(f, n, alphas[i]));
    steps.push_back(std::move(next));
  }
  return steps;
}

inline Certificate refute_linear_frobenius(const Poly& input, const FieldTower& tower) {
  const auto steps = frobenius_trace(input, tower);
  const Field& f = tower.ext();
  const FrobeniusStep& last = steps.back();
  const Poly& L0 = steps.front().L;
  const std::size_t n = L0.nvars();
  const u64 p = tower.p();
  // (A_k - 1) L_0 + sum B_{k,i} (x_i^p - x_i) = L_k - L_0 = beta - beta^{p^k}.
  const FieldElem beta = linear_form(L0).beta;
  const FieldElem c = beta - beta.frobenius(tower.k());
  const FieldElem ci = c.inv();
  Poly A = (last.A - Poly::one(f, n)).scale(ci);
  std::vector<Poly> B;
  for (std::size_t i = 0; i < n; ++i) {
    // x^p - x = (x^{p-2} + ... + 1)(x^2 - x)
    Poly factor(f, n);
    ExpVector e(n, 0);
    for (u64 d = 0; d + 2 <= p; ++d) {
      e[i] = static_cast<mvpoly::Exp>(d);
      factor.add_term(e, f.one());
    }
    B.push_back(last.B[i].scale(ci) * factor);
  }
  Provenance prov{"refute_linear_frobenius",
                  {{"p", std::to_string(p)}, {"k", std::to_string(tower.k())}, {"n", std::to_string(n)}}};
  std::vector<Poly> As;
  As.push_back(std::move(A));
  return finish(std::move(As), std::move(B), std::move(prov));
}

// (x^mu)^2 - x^mu = sum_j E_j (x_j^2 - x_j), peeling the largest-index
// variable t first: E_t = (sum_{i<=2mu_t-2} x_t^i)(x^nu)^2 - (sum_{i<=mu_t-2} x_t^i) x^nu
// and E_j = x_t E'_j for the remaining monomial nu.
inline std::vector<Poly> monomial_axiom_expansion(const Field& f, const ExpVector& mu) {
  const std::size_t n = mu.size();
  std::vector<Poly> E(n, Poly(f, n));
  std::size_t t = n;
  for (std::size_t i = n; i-- > 0;) {
    if (mu[i] != 0) {
      t = i;
      break;
    }
  }
  if (t == n) return E;
  ExpVector nu(mu);
  nu[t] = 0;
  const Poly xnu = Poly::monomial(f, nu, f.one());
  ExpVector nu2(nu);
  for (auto& v : nu2) v *= 2;
  const Poly xnu2 = Poly::monomial(f, nu2, f.one());
  auto geometric = [&](long top) {
    Poly s(f, n);
    ExpVector e(n, 0);
    for (long i = 0; i <= top; ++i) {
      e[t] = static_cast<mvpoly::Exp>(i);
      s.add_term(e, f.one());
    }
    return s;
  };
  const long m = mu[t];
  E[t] = geometric(2 * m - 2) * xnu2 - geometric(m - 2) * xnu;
  const auto inner = monomial_axiom_expansion(f, nu);
  const Poly xt = Poly::variable(f, n, t);
  for (std::size_t j = 0; j < n; ++j)
    if (!inner[j].is_zero()) E[j] += xt * inner[j];
  return E;
}

// Replaces y_s by the monomial x^{mus[s]}; a term maps to a single term.
inline Poly substitute_monomials(const Poly& g, const std::vector<ExpVector>& mus, std::size_t n) {
  Poly r(g.field(), n);
  for (const auto& [e, c] : g.terms()) {
    ExpVector x(n, 0);
    for (std::size_t s = 0; s < e.size(); ++s) {
      if (e[s] == 0) continue;
      for (std::size_t i = 0; i < n; ++i) x[i] += e[s] * mus[s][i];
    }
    r.add_term(x, c);
  }
  return r;
}

inline Certificate refute_sparse(const Poly& input, const FieldTower& tower) {
  const Poly fx = detail::to_ext(input, tower);
  const Field& f = tower.ext();
  const std::size_t n = fx.nvars();
  std::vector<ExpVector> mus;
  std::vector<FieldElem> alphas;
  FieldElem beta = -fx.constant_term();
  for (const auto& [e, c] : fx.terms()) {
    if (mvpoly::total_degree(e) == 0) continue;
    if (!tower.is_in_subfield(c)) throw Error(ErrorCode::level_mismatch, "non-constant coefficient outside the base field");
    mus.push_back(e);
    alphas.push_back(c);
  }
  if (tower.is_in_subfield(beta)) throw Error(ErrorCode::beta_in_subfield, "beta^(p^k) = beta");
  const std::size_t s = mus.size();
  const Poly Fy = linear_poly(f, alphas, beta);
  const Certificate lin = refute_linear_frobenius(Fy, tower);
  Poly A = substitute_monomials(lin.A[0], mus, n);
  std::vector<Poly> B(n, Poly(f, n));
  for (std::size_t k = 0; k < s; ++k) {
    if (lin.B[k].is_zero()) continue;
    const Poly Bk = substitute_monomials(lin.B[k], mus, n);
    const auto E = monomial_axiom_expansion(f, mus[k]);
    for (std::size_t j = 0; j < n; ++j)
      if (!E[j].is_zero()) B[j] += Bk * E[j];
  }
  Provenance prov{"refute_sparse", {{"p", std::to_string(tower.p())},
                                    {"k", std::to_string(tower.k())},
                                    {"n", std::to_string(n)},
                                    {"support", std::to_string(s)}}};
  std::vector<Poly> As;
  As.push_back(std::move(A));
  return finish(std::move(As), std::move(B), std::move(prov));
}

// A = ml[L^{q-2}] with q - 2 = sum_j m_j p^j, m = (p-2, p-1, ..., p-1), and
// L^{p^j} = sum alpha_i^{p^j} x_i - beta^{p^j} on the cube.
inline Poly ml_inverse_power(const Poly& L) {
  const Field& f = L.field();
  const std::size_t n = L.nvars();
  const u64 p = f.p();
  const LinearForm lf = linear_form(L);
  Poly A = Poly::one(f, n);
  std::vector<FieldElem> alphas = lf.alphas;
  FieldElem beta = lf.beta;
  for (unsigned j = 0; j < f.degree(); ++j) {
    const u64 m = j == 0 ? p - 2 : p - 1;
    const Poly Lj = linear_poly(f, alphas, beta);
    for (u64 r = 0; r < m; ++r) A = mvpoly::ml(A * Lj);
    for (auto& a : alphas) a = a.pow(p);
    beta = beta.pow(p);
  }
  return A;
}

inline Certificate refute_linear_lowdegree(const Poly& L) {
  if (!is_unsat_on_cube(L)) throw Error(ErrorCode::satisfiable_instance, "beta is a subset sum of the coefficients");
  const Field& f = L.field();
  Poly A = ml_inverse_power(L);
  const auto d = mvpoly::divide_by_axioms(A * L, mvpoly::AxiomKind::boolean);
  if (d.remainder != Poly::one(f, L.nvars()))
    throw Error(ErrorCode::no_certificate_at_degree, "ml[A L] is not 1; field arithmetic is inconsistent");
  std::vector<Poly> B;
  for (const auto& q : d.quotients) B.push_back(-q);
  Provenance prov{"refute_linear_lowdegree",
                  {{"p", std::to_string(f.p())}, {"k", std::to_string(f.degree())}, {"n", std::to_string(L.nvars())}}};
  std::vector<Poly> As;
  As.push_back(std::move(A));
  return finish(std::move(As), std::move(B), std::move(prov));
}

// All exponent vectors of total degree <= d, grlex ascending.
inline std::vector<ExpVector> monomials_up_to(std::size_t n, std::size_t d) {
  std::vector<ExpVector> out;
  ExpVector e(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      e[i] = static_cast<mvpoly::Exp>(v);
      rec(i + 1, left - v);
    }
    e[i] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), [](const ExpVector& a, const ExpVector& b) { return mvpoly::GrlexGreater{}(b, a); });
  return out;
}

// All exponent vectors with every entry <= max_exp, grlex ascending.
inline std::vector<ExpVector> monomials_box(std::size_t n, u64 max_exp) {
  std::vector<ExpVector> out;
  ExpVector e(n, 0);
  for (;;) {
    out.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] == max_exp) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  std::sort(out.begin(), out.end(), [](const ExpVector& a, const ExpVector& b) { return mvpoly::GrlexGreater{}(b, a); });
  return out;
}

inline std::size_t solver_column_budget() { return 40000; }

// Finds multipliers c_i supported on `support` with reduce(sum c_i g_i) =
// target. Columns run over (monomial, generator) with monomials grlex
// ascending, rows over result monomials grlex ascending; pivoting is
// leftmost-column, first-row, so the answer is deterministic.
inline std::optional<std::vector<Poly>> solve_combination(const std::vector<Poly>& gens,
                                                          const std::vector<ExpVector>& support,
                                                          const std::function<Poly(const Poly&)>& reduce,
                                                          const Poly& target) {
  const Field& f = target.field();
  const std::size_t n = target.nvars();
  const std::size_t cols = support.size() * gens.size();
  if (cols > solver_column_budget())
    throw Error(ErrorCode::budget_exceeded, std::to_string(cols) + " unknowns exceed the solver cap of " +
                                                std::to_string(solver_column_budget()));
  std::vector<Poly> products;
  products.reserve(cols);
  std::map<ExpVector, std::size_t, mvpoly::GrlexGreater> rows;
  for (const auto& m : support) {
    for (const auto& g : gens) {
      Poly pr = Poly::monomial(f, m, f.one()) * g;
      if (reduce) pr = reduce(pr);
      for (const auto& [e, c] : pr.terms()) rows.emplace(e, 0);
      products.push_back(std::move(pr));
    }
  }
  for (const auto& [e, c] : target.terms()) rows.emplace(e, 0);
  // Ascending row order: reverse of the descending map.
  std::size_t idx = rows.size();
  for (auto& [e, i] : rows) i = --idx;
  linalg::Matrix M(f, rows.size(), cols);
  std::vector<FieldElem> rhs(rows.size(), f.zero());
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [e, v] : products[c].terms()) M.at(rows.at(e), c) = v;
  for (const auto& [e, v] : target.terms()) rhs[rows.at(e)] = v;
  const auto x = linalg::solve(M, rhs);
  if (!x) return std::nullopt;
  std::vector<Poly> mult(gens.size(), Poly(f, n));
  std::size_t c = 0;
  for (const auto& m : support)
    for (std::size_t g = 0; g < gens.size(); ++g, ++c) mult[g].add_term(m, (*x)[c]);
  return mult;
}

// Bounded-degree Nullstellensatz search: deg(A_i), deg(B_j) <= degree_bound.
// With boolean_axioms the x_j^2 - x_j are appended and their multipliers are
// reported as B. nullopt means no certificate exists at this bound.
inline std::optional<Certificate> solve_nullstellensatz(const std::vector<Poly>& axioms, std::size_t degree_bound,
                                                        bool boolean_axioms = true) {
  if (axioms.empty()) throw Error(ErrorCode::arity_mismatch, "no axioms");
  const Field& f = axioms[0].field();
  const std::size_t n = axioms[0].nvars();
  std::vector<Poly> gens = axioms;
  if (boolean_axioms)
    for (std::size_t j = 0; j < n; ++j) gens.push_back(mvpoly::boolean_axiom(f, n, j));
  const auto mult = solve_combination(gens, monomials_up_to(n, degree_bound), nullptr, Poly::one(f, n));
  if (!mult) return std::nullopt;
  std::vector<Poly> A(mult->begin(), mult->begin() + static_cast<long>(axioms.size()));
  std::vector<Poly> B;
  if (boolean_axioms) {
    B.assign(mult->begin() + static_cast<long>(axioms.size()), mult->end());
  } else {
    B.assign(n, Poly(f, n));
  }
  Provenance prov{"solve_nullstellensatz", {{"degree_bound", std::to_string(degree_bound)}}};
  return finish(std::move(A), std::move(B), std::move(prov));
}

// Smallest bound in [0, max_bound] admitting a certificate.
inline std::optional<std::pair<std::size_t, Certificate>> min_degree_nullstellensatz(const std::vector<Poly>& axioms,
                                                                                    std::size_t max_bound) {
  for (std::size_t d = 0; d <= max_bound; ++d) {
    auto c = solve_nullstellensatz(axioms, d);
    if (c) return std::make_pair(d, std::move(*c));
  }
  return std::nullopt;
}

struct SymmetricTrace {
  std::size_t r = 0;
  std::vector<Poly> compressed;  // F_i(y)
  std::vector<u64> ts;           // t with n < t <= p^r - 1
  std::vector<Poly> low_A;       // multipliers of F_i
  std::vector<Poly> low_S;       // multipliers of Q_t
  std::vector<Poly> low_B;       // multipliers of y_j^p - y_j
  std::set<std::vector<std::size_t>> degree_multisets;  // products of e_d lifted via ml_prod_elem
};

inline Certificate refute_symmetric_system(const std::vector<Poly>& system, u64 p, SymmetricTrace* trace = nullptr) {
  if (system.empty()) throw Error(ErrorCode::arity_mismatch, "empty system");
  const Field& f = system[0].field();
  const std::size_t n = system[0].nvars();
  if (p != f.p()) throw Error(ErrorCode::out_of_range, "p must be the field characteristic");
  for (const auto& s : system) s.check_compatible(system[0]);

  std::vector<symfun::ElemSymExpansion> lams;
  for (const auto& s : system) lams.push_back(symfun::sym_to_elem_basis(s));
  std::vector<std::vector<FieldElem>> wv;
  for (const auto& l : lams) wv.push_back(symfun::weight_values(f, l));
  for (std::size_t w = 0; w <= n; ++w) {
    bool all_zero = true;
    for (const auto& v : wv) all_zero = all_zero && v[w].is_zero();
    if (all_zero) throw Error(ErrorCode::satisfiable_system, "every polynomial vanishes at Hamming weight " + std::to_string(w));
  }

  SymmetricTrace local;
  SymmetricTrace& tr = trace ? *trace : local;
  tr = SymmetricTrace{};
  tr.r = symfun::compressed_width(n, p);
  const std::size_t r = tr.r;
  std::vector<Poly> gens;
  for (const auto& l : lams) {
    tr.compressed.push_back(symfun::compress_expansion(f, l).F);
    gens.push_back(tr.compressed.back());
  }
  gf::u128 top = 1;
  for (std::size_t i = 0; i < r; ++i) top *= p;
  for (u64 t = n + 1; t < top; ++t) {
    tr.ts.push_back(t);
    gens.push_back(symfun::qt_poly(f, t, r, p));
  }
  auto reduce = [p](const Poly& g) { return mvpoly::inddeg_p(g, p).remainder; };
  const auto mult = solve_combination(gens, monomials_box(r, p - 1), reduce, Poly::one(f, r));
  if (!mult)
    throw Error(ErrorCode::no_certificate_at_degree, "low-variate system has no certificate with individual degree <= p-1");
  const std::size_t m = system.size();
  tr.low_A.assign(mult->begin(), mult->begin() + static_cast<long>(m));
  tr.low_S.assign(mult->begin() + static_cast<long>(m), mult->end());
  Poly H(f, r);
  for (std::size_t i = 0; i < gens.size(); ++i) H += (*mult)[i] * gens[i];
  const auto hd = mvpoly::inddeg_p(H, p);
  for (const auto& g : hd.quotients) tr.low_B.push_back(-g);

  // A_i = ml[A~_i(e_1, e_p, ...)] through the elementary-symmetric fold.
  std::vector<Poly> A;
  for (const auto& la : tr.low_A) {
    symfun::ElemSymExpansion acc{std::vector<FieldElem>(n + 1, f.zero())};
    for (const auto& [nu, c] : la.terms()) {
      std::vector<std::size_t> degs;
      u64 pw = 1;
      for (std::size_t i = 0; i < r; ++i, pw *= p)
        for (mvpoly::Exp k = 0; k < nu[i]; ++k) degs.push_back(pw);
      if (degs.size() > 1) tr.degree_multisets.insert(degs);
      const auto x = symfun::ml_prod_elem(f, n, degs, false).expansion;
      for (std::size_t d = 0; d <= n; ++d) acc.lambdas[d] += c * x.lambdas[d];
    }
    A.push_back(symfun::expand(f, acc));
  }
  Poly total = -Poly::one(f, n);
  for (std::size_t i = 0; i < m; ++i) total += A[i] * system[i];
  const auto d = mvpoly::divide_by_axioms(total, mvpoly::AxiomKind::boolean);
  if (!d.remainder.is_zero())
    throw Error(ErrorCode::no_certificate_at_degree, "lifted combination is not 1 on the cube");
  std::vector<Poly> B;
  for (const auto& q : d.quotients) B.push_back(-q);
  Provenance prov{"refute_symmetric_system", {{"p", std::to_string(p)},
                                              {"n", std::to_string(n)},
                                              {"m", std::to_string(m)},
                                              {"r", std::to_string(r)},
                                              {"q_t_count", std::to_string(tr.ts.size())}}};
  return finish(std::move(A), std::move(B), std::move(prov));
}

}  // namespace ipsforge::certificates
