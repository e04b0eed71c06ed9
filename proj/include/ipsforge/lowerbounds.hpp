#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ipsforge/certificates.hpp"
#include "ipsforge/errors.hpp"
#include "ipsforge/gf.hpp"
#include "ipsforge/linalg.hpp"
#include "ipsforge/mvpoly.hpp"
#include "ipsforge/rng.hpp"

namespace ipsforge::lowerbounds {

using gf::Field;
using gf::FieldElem;
using gf::FieldTower;
using gf::u64;
using mvpoly::ExpVector;
using mvpoly::Poly;

// Cube cap for 2^n tables; IPSFORGE_BUDGET_N overrides the default of 12.
inline std::size_t budget_n() {
  if (const char* env = std::getenv("IPSFORGE_BUDGET_N")) {
    u64 v = 0;
    if (gf::detail::parse_u64(env, v) && v <= 26) return static_cast<std::size_t>(v);
  }
  return 12;
}

inline void check_cube_budget(std::size_t n) {
  if (n > budget_n())
    throw Error(ErrorCode::budget_exceeded,
                "n = " + std::to_string(n) + " exceeds the cube cap " + std::to_string(budget_n()) +
                    " (set IPSFORGE_BUDGET_N to raise it)");
}

struct CubeTable {
  std::size_t n = 0;
  std::vector<FieldElem> values;
};

// Subset sums sum_{i in a} alpha_i for every cube point a.
inline std::vector<FieldElem> subset_sums(const Field& f, const std::vector<FieldElem>& alphas) {
  const std::size_t n = alphas.size();
  check_cube_budget(n);
  std::vector<FieldElem> s(std::size_t{1} << n, f.zero());
  for (std::size_t a = 1; a < s.size(); ++a) s[a] = s[a & (a - 1)] + alphas[std::countr_zero(a)];
  return s;
}

inline CubeTable inverse_table(const Poly& g) {
  check_cube_budget(g.nvars());
  CubeTable t{g.nvars(), mvpoly::cube_values(g)};
  for (std::size_t a = 0; a < t.values.size(); ++a) {
    if (t.values[a].is_zero()) throw Error(ErrorCode::zero_denominator, "denominator vanishes at cube point " + std::to_string(a));
    t.values[a] = t.values[a].inv();
  }
  return t;
}

inline CubeTable inverse_table(const std::vector<FieldElem>& alphas, const FieldElem& beta) {
  const Field& f = *beta.field();
  auto s = subset_sums(f, alphas);
  for (std::size_t a = 0; a < s.size(); ++a) {
    s[a] -= beta;
    if (s[a].is_zero()) throw Error(ErrorCode::zero_denominator, "beta is the subset sum at cube point " + std::to_string(a));
    s[a] = s[a].inv();
  }
  return {alphas.size(), std::move(s)};
}

// Alphas must live in beta's field; use embed_all for base-level inputs.
inline Poly ml_inverse(const std::vector<FieldElem>& alphas, const FieldElem& beta) {
  auto t = inverse_table(alphas, beta);
  return mvpoly::cube_interpolate(*beta.field(), t.n, std::move(t.values));
}

// The unique multilinear polynomial equal to 1/g on the cube.
inline Poly ml_inverse(const Poly& g) {
  auto t = inverse_table(g);
  return mvpoly::cube_interpolate(g.field(), t.n, std::move(t.values));
}

inline std::vector<FieldElem> embed_all(const FieldTower& tower, const std::vector<FieldElem>& xs) {
  std::vector<FieldElem> out;
  for (const auto& x : xs) out.push_back(x.field() == &tower.ext() ? x : tower.embed(x));
  return out;
}

// sum_a (-1)^{n-|a|} f(a): the x_[n] coefficient of ml[f].
inline FieldElem alternating_cube_sum(const Poly& f) {
  check_cube_budget(f.nvars());
  const auto v = mvpoly::cube_values(f);
  const std::size_t n = f.nvars();
  FieldElem s = f.field().zero();
  for (std::size_t a = 0; a < v.size(); ++a) {
    if ((n - static_cast<std::size_t>(std::popcount(a))) % 2) s -= v[a];
    else s += v[a];
  }
  return s;
}

// sum_V (-1)^{n-|V|} / (alpha_V - beta).
inline FieldElem closed_form_top_coeff(const std::vector<FieldElem>& alphas, const FieldElem& beta) {
  const auto t = inverse_table(alphas, beta);
  FieldElem s = beta.field()->zero();
  for (std::size_t a = 0; a < t.values.size(); ++a) {
    if ((t.n - static_cast<std::size_t>(std::popcount(a))) % 2) s -= t.values[a];
    else s += t.values[a];
  }
  return s;
}

struct TopCoeffReport {
  FieldElem alternating;
  FieldElem closed_form;
  FieldElem interpolated;
  bool agree() const { return alternating == closed_form && closed_form == interpolated; }
};

inline TopCoeffReport top_coeff(const std::vector<FieldElem>& alphas, const FieldElem& beta) {
  const std::size_t n = alphas.size();
  const Poly f = ml_inverse(alphas, beta);
  return {alternating_cube_sum(f), closed_form_top_coeff(alphas, beta), f.coeff(ExpVector(n, 1))};
}

inline std::size_t numerator_budget_n() { return 5; }

// Coefficient of prod_i z_i^{2^{i-1}} in prod_{T nonempty} (sum_{i in T} z_i - beta).
// Terms exceeding the target exponent in any variable are dropped as they
// can never contribute.
inline FieldElem numerator_monomial_check(const Field& f, std::size_t n, const FieldElem& beta) {
  if (n > numerator_budget_n())
    throw Error(ErrorCode::budget_exceeded,
                "n = " + std::to_string(n) + " exceeds the symbolic expansion cap " + std::to_string(numerator_budget_n()));
  ExpVector target(n, 0);
  for (std::size_t i = 0; i < n; ++i) target[i] = static_cast<mvpoly::Exp>(1u << i);
  Poly acc = Poly::one(f, n);
  for (std::size_t T = 1; T < (std::size_t{1} << n); ++T) {
    Poly L = Poly::constant(f, n, -beta);
    for (std::size_t i = 0; i < n; ++i)
      if (T >> i & 1) L += Poly::variable(f, n, i);
    const Poly prod = acc * L;
    Poly next(f, n);
    for (const auto& [e, c] : prod.terms()) {
      bool fits = true;
      for (std::size_t i = 0; i < n; ++i) fits = fits && e[i] <= target[i];
      if (fits) next.add_term(e, c);
    }
    acc = std::move(next);
  }
  return acc.coeff(target);
}

inline double field_size(const Field& f) { return std::pow(static_cast<double>(f.p()), static_cast<double>(f.degree())); }

// Degree of the restriction x_j = 0 (j outside U) for every U, indexed by
// mask: the largest support set of f inside U (subset-maximum transform).
inline std::vector<long> restricted_degrees(const Poly& f) {
  const std::size_t n = f.nvars();
  std::vector<long> d(std::size_t{1} << n, -1);
  for (const auto& [e, c] : f.terms()) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) m |= std::size_t{1} << i;
    d[m] = std::max(d[m], static_cast<long>(mvpoly::total_degree(e)));
  }
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t m = 0; m < d.size(); ++m)
      if (m >> b & 1) d[m] = std::max(d[m], d[m ^ (std::size_t{1} << b)]);
  return d;
}

struct ScanReport {
  std::size_t n = 0;
  std::vector<std::size_t> degenerate;  // masks U with deg f_U < |U|
  std::size_t worst_mask = 0;           // U maximizing |U| - deg f_U
  long worst_deficit = 0;
  bool all_full() const { return degenerate.empty(); }
};

// f_U = ml inverse of sum_{i in U} alpha_i x_i - beta is the restriction of
// ml_inverse(alpha, beta) to x_j = 0 outside U, so one interpolation covers
// every nonempty U.
inline ScanReport restricted_degree_scan(const std::vector<FieldElem>& alphas, const FieldElem& beta) {
  const Poly f = ml_inverse(alphas, beta);
  const auto d = restricted_degrees(f);
  ScanReport r;
  r.n = alphas.size();
  for (std::size_t U = 1; U < d.size(); ++U) {
    const long deficit = std::popcount(U) - d[U];
    if (deficit > 0) r.degenerate.push_back(U);
    if (deficit > r.worst_deficit) {
      r.worst_deficit = deficit;
      r.worst_mask = U;
    }
  }
  return r;
}

struct TrialReport {
  std::string kind = "degree-trial";
  std::size_t n = 0;
  u64 p = 0;
  unsigned k = 0;
  u64 seed = 0;
  std::string beta;
  std::size_t trials = 0;
  std::size_t successes = 0;              // deg ml_inverse = n
  std::size_t successes_all_subsets = 0;  // deg f_U = |U| for every nonempty U
  double bound_single = 0;                // 1 - (2^n - 1)/|S|
  double bound_union = 0;                 // 1 - 2^{2n}/|S|
  double bound_union_exact = 0;           // 1 - sum_U (2^{|U|} - 1)/|S|
  bool vacuous_single = false;
  bool vacuous_union = false;

  double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
  double rate_all_subsets() const {
    return trials ? static_cast<double>(successes_all_subsets) / static_cast<double>(trials) : 0.0;
  }
  // Monte Carlo standard deviation of the rate at success probability P.
  double sigma(double P) const {
    P = std::clamp(P, 0.0, 1.0);
    return trials ? std::sqrt(P * (1 - P) / static_cast<double>(trials)) : 0.0;
  }
};

// alpha is drawn uniformly from the base field per trial (seed derived from
// (seed, trial)); beta is drawn once per report outside the base field.
inline TrialReport degree_trial(std::size_t n, const FieldTower& tower, std::size_t trials, u64 seed) {
  check_cube_budget(n);
  TrialReport r;
  r.n = n;
  r.p = tower.p();
  r.k = tower.k();
  r.seed = seed;
  r.trials = trials;
  Rng beta_rng(derive_seed(seed, ~u64{0}));
  const FieldElem beta = tower.sample_beta(beta_rng);
  r.beta = tower.ext().format(beta);
  const double S = field_size(tower.base());
  const double cube = std::ldexp(1.0, static_cast<int>(n));
  r.bound_single = 1 - (cube - 1) / S;
  r.bound_union = 1 - cube * cube / S;
  double exact = 0;
  for (std::size_t u = 1; u <= n; ++u) {
    double binom = 1;
    for (std::size_t i = 0; i < u; ++i) binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
    exact += binom * (std::ldexp(1.0, static_cast<int>(u)) - 1);
  }
  r.bound_union_exact = 1 - exact / S;
  r.vacuous_single = r.bound_single <= 0;
  r.vacuous_union = r.bound_union <= 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<FieldElem> alphas;
    for (std::size_t i = 0; i < n; ++i) alphas.push_back(tower.embed(tower.base().sample(rng)));
    const Poly f = ml_inverse(alphas, beta);
    if (f.degree() == static_cast<long>(n)) ++r.successes;
    // Full support is exactly deg f_U = |U| for every U.
    if (f.sparsity() == (std::size_t{1} << n)) ++r.successes_all_subsets;
  }
  return r;
}

struct SparsityReport {
  std::size_t n = 0;
  std::size_t sparsity = 0;
  double bound = 0;  // 2^{n/4 - 1}
  bool holds() const { return static_cast<double>(sparsity) >= bound; }
};

inline SparsityReport sparsity_probe(const std::vector<FieldElem>& alphas, const FieldElem& beta) {
  const std::size_t n = alphas.size();
  SparsityReport r{n, ml_inverse(alphas, beta).sparsity(), std::exp2(static_cast<double>(n) / 4 - 1)};
  return r;
}

struct CoefficientMatrix {
  std::vector<std::size_t> left, right;
  std::vector<ExpVector> row_labels, col_labels;  // exponents on left / right vars
  linalg::Matrix M;
};

namespace detail {

// All exponent vectors on `vars` with entry i in [0, caps[i]], mixed radix.
inline std::vector<ExpVector> box(const std::vector<mvpoly::Exp>& caps) {
  std::vector<ExpVector> out;
  ExpVector e(caps.size(), 0);
  for (;;) {
    out.push_back(e);
    std::size_t i = 0;
    while (i < caps.size() && e[i] == caps[i]) e[i++] = 0;
    if (i == caps.size()) break;
    ++e[i];
  }
  return out;
}

inline std::size_t box_index(const ExpVector& e, const std::vector<mvpoly::Exp>& caps) {
  std::size_t idx = 0, mul = 1;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    idx += e[i] * mul;
    mul *= caps[i] + 1;
  }
  return idx;
}

inline std::vector<mvpoly::Exp> caps_of(const Poly& f, const std::vector<std::size_t>& vars) {
  std::vector<mvpoly::Exp> caps(vars.size(), 1);
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < vars.size(); ++i) caps[i] = std::max(caps[i], e[vars[i]]);
  return caps;
}

inline void check_partition(std::size_t n, const std::vector<std::size_t>& left, const std::vector<std::size_t>& right) {
  std::vector<int> seen(n, 0);
  for (auto v : left) {
    if (v >= n) throw Error(ErrorCode::out_of_range, "partition variable out of range");
    ++seen[v];
  }
  for (auto v : right) {
    if (v >= n) throw Error(ErrorCode::out_of_range, "partition variable out of range");
    ++seen[v];
  }
  for (int s : seen)
    if (s != 1) throw Error(ErrorCode::out_of_range, "partition must cover every variable exactly once");
}

inline constexpr std::size_t kMatrixCells = std::size_t{1} << 24;

}  // namespace detail

// Rows and columns run over every monomial with individual degrees up to the
// largest appearing in f (all multilinear monomials when f is multilinear).
inline CoefficientMatrix coefficient_matrix(const Poly& f, const std::vector<std::size_t>& left,
                                            const std::vector<std::size_t>& right) {
  detail::check_partition(f.nvars(), left, right);
  const auto lc = detail::caps_of(f, left);
  const auto rc = detail::caps_of(f, right);
  auto rows = detail::box(lc);
  auto cols = detail::box(rc);
  if (rows.size() * cols.size() > detail::kMatrixCells)
    throw Error(ErrorCode::budget_exceeded, "coefficient matrix too large");
  linalg::Matrix M(f.field(), rows.size(), cols.size());
  for (const auto& [e, c] : f.terms()) {
    ExpVector a(left.size()), b(right.size());
    for (std::size_t i = 0; i < left.size(); ++i) a[i] = e[left[i]];
    for (std::size_t i = 0; i < right.size(); ++i) b[i] = e[right[i]];
    M.at(detail::box_index(a, lc), detail::box_index(b, rc)) = c;
  }
  return {left, right, std::move(rows), std::move(cols), std::move(M)};
}

inline std::size_t rank(const CoefficientMatrix& cm) { return linalg::rank(cm.M); }

inline std::string to_csv(const CoefficientMatrix& cm, const mvpoly::VarLayout& layout) {
  auto label = [&](const ExpVector& e, const std::vector<std::size_t>& vars) {
    std::string s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!e[i]) continue;
      if (!s.empty()) s += '*';
      s += layout.name(vars[i]);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? std::string("1") : s;
  };
  std::ostringstream os;
  os << "monomial";
  for (const auto& c : cm.col_labels) os << ',' << label(c, cm.right);
  os << '\n';
  for (std::size_t r = 0; r < cm.row_labels.size(); ++r) {
    os << label(cm.row_labels[r], cm.left);
    for (std::size_t c = 0; c < cm.col_labels.size(); ++c) os << ",\"" << cm.M.field().format(cm.M.at(r, c)) << '"';
    os << '\n';
  }
  return os.str();
}

// dim span { f(x_left, b) : b in {0,1}^right } as polynomials in x_left.
inline std::size_t eval_dimension(const Poly& f, const std::vector<std::size_t>& left,
                                  const std::vector<std::size_t>& right) {
  detail::check_partition(f.nvars(), left, right);
  check_cube_budget(right.size());
  const auto lc = detail::caps_of(f, left);
  const std::size_t cols = detail::box(lc).size();
  const std::size_t rows = std::size_t{1} << right.size();
  if (rows * cols > detail::kMatrixCells) throw Error(ErrorCode::budget_exceeded, "evaluation matrix too large");
  linalg::Matrix M(f.field(), rows, cols);
  for (const auto& [e, c] : f.terms()) {
    std::size_t need = 0;
    for (std::size_t i = 0; i < right.size(); ++i)
      if (e[right[i]]) need |= std::size_t{1} << i;
    ExpVector a(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) a[i] = e[left[i]];
    const std::size_t col = detail::box_index(a, lc);
    for (std::size_t b = 0; b < rows; ++b)
      if ((b & need) == need) M.at(b, col) += c;
  }
  return linalg::rank(M);
}

struct WidthReport {
  std::vector<std::size_t> order;
  std::vector<std::size_t> cut_ranks;  // rank at cut after position i+1
  std::size_t width = 0;
};

// Optimal roABP width in the given order: the largest coefficient-matrix rank
// over prefix cuts.
inline WidthReport roabp_width(const Poly& f, const std::vector<std::size_t>& order) {
  const std::size_t n = f.nvars();
  if (order.size() != n) throw Error(ErrorCode::arity_mismatch, "order must list every variable");
  WidthReport r{order, {}, f.is_zero() ? 0u : 1u};
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> left(order.begin(), order.begin() + static_cast<long>(i));
    std::vector<std::size_t> right(order.begin() + static_cast<long>(i), order.end());
    r.cut_ranks.push_back(rank(coefficient_matrix(f, left, right)));
    r.width = std::max(r.width, r.cut_ranks.back());
  }
  return r;
}

enum class LiftedKind { fixed_order, any_order };

inline std::string lifted_kind_name(LiftedKind k) { return k == LiftedKind::fixed_order ? "fixed-order" : "any-order"; }

// fixed-order: sum alpha_i x_i y_i - beta over x1..xn, y1..yn.
// any-order:   sum_{i<j} alpha_ij z_ij x_i x_j - beta over x1..x2n and the
//              C(2n,2) pair variables z, flattened by (i,j) in lex order.
struct LiftedInstance {
  LiftedKind kind;
  std::size_t n = 0;
  certificates::Instance instance;
  std::vector<FieldElem> alphas;  // ext-level; per i, or per pair in z order
  FieldElem beta;

  const Poly& poly() const { return instance.axioms.front(); }
  std::size_t x_count() const { return kind == LiftedKind::fixed_order ? n : 2 * n; }

  // Index of z_{ij} (0-based i < j < 2n) among the pair variables.
  std::size_t pair_index(std::size_t i, std::size_t j) const {
    const std::size_t m = 2 * n;
    return i * m - i * (i + 1) / 2 + (j - i - 1);
  }
};

inline LiftedInstance lifted_instance(LiftedKind kind, std::size_t n, std::shared_ptr<const FieldTower> tower, u64 seed) {
  Rng rng(seed);
  const Field& E = tower->ext();
  LiftedInstance li{kind, n, {}, {}, E.zero()};
  std::size_t nv = 0;
  mvpoly::VarLayout layout;
  std::size_t pairs = 0;
  if (kind == LiftedKind::fixed_order) {
    layout = mvpoly::VarLayout({{'x', n}, {'y', n}});
    nv = 2 * n;
    pairs = n;
  } else {
    pairs = (2 * n) * (2 * n - 1) / 2;
    layout = mvpoly::VarLayout({{'x', 2 * n}, {'z', pairs}});
    nv = 2 * n + pairs;
  }
  for (std::size_t i = 0; i < pairs; ++i) li.alphas.push_back(tower->embed(tower->base().sample(rng)));
  li.beta = tower->sample_beta(rng);
  Poly f = Poly::constant(E, nv, -li.beta);
  if (kind == LiftedKind::fixed_order) {
    for (std::size_t i = 0; i < n; ++i) {
      ExpVector e(nv, 0);
      e[i] = e[n + i] = 1;
      f.add_term(e, li.alphas[i]);
    }
  } else {
    for (std::size_t i = 0; i < 2 * n; ++i) {
      for (std::size_t j = i + 1; j < 2 * n; ++j) {
        ExpVector e(nv, 0);
        e[i] = e[j] = 1;
        const std::size_t z = li.pair_index(i, j);
        e[2 * n + z] = 1;
        f.add_term(e, li.alphas[z]);
      }
    }
  }
  li.instance = certificates::Instance{std::move(tower), gf::Level::ext, layout, {std::move(f)}, "lifted-subset-sum"};
  return li;
}

// The 0/1 assignment b_{u,v} to the pair variables: z_{u_k v_k} = 1 with u
// and v sorted and paired in order, all other z = 0.
inline std::vector<int> balanced_restriction(const LiftedInstance& li, std::vector<std::size_t> u,
                                             std::vector<std::size_t> v) {
  if (li.kind != LiftedKind::any_order) throw Error(ErrorCode::usage, "restriction applies to any-order instances");
  if (u.size() != li.n || v.size() != li.n) throw Error(ErrorCode::arity_mismatch, "partition sides must have n variables");
  detail::check_partition(2 * li.n, u, v);
  std::sort(u.begin(), u.end());
  std::sort(v.begin(), v.end());
  std::vector<int> b((2 * li.n) * (2 * li.n - 1) / 2, 0);
  for (std::size_t k = 0; k < li.n; ++k) b[li.pair_index(std::min(u[k], v[k]), std::max(u[k], v[k]))] = 1;
  return b;
}

// Substitutes the pair assignment, leaving a polynomial in x1..x2n.
inline Poly apply_restriction(const LiftedInstance& li, const std::vector<int>& b) {
  const std::size_t m = 2 * li.n;
  const Poly& f = li.poly();
  Poly r(f.field(), m);
  for (const auto& [e, c] : f.terms()) {
    bool zero = false;
    for (std::size_t z = 0; z < b.size(); ++z) zero = zero || (e[m + z] && !b[z]);
    if (zero) continue;
    ExpVector x(e.begin(), e.begin() + static_cast<long>(m));
    r.add_term(x, c);
  }
  return r;
}

// Evaluation dimension of ml[1/f_b] under the partition (u | v) after
// specializing z to b_{u,v}; lower-bounds the rank over F(z).
inline std::size_t specialized_eval_dimension(const LiftedInstance& li, const std::vector<std::size_t>& u,
                                              const std::vector<std::size_t>& v) {
  const Poly g = apply_restriction(li, balanced_restriction(li, u, v));
  return eval_dimension(ml_inverse(g), u, v);
}

}  // namespace ipsforge::lowerbounds
