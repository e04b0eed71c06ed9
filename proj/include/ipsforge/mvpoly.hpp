#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>

#include "ipsforge/errors.hpp"
#include "ipsforge/gf.hpp"

namespace ipsforge::mvpoly {

using gf::Field;
using gf::FieldElem;
using Exp = std::uint32_t;
using ExpVector = boost::container::small_vector<Exp, 8>;

inline std::uint64_t total_degree(const ExpVector& e) {
  std::uint64_t d = 0;
  for (Exp v : e) d += v;
  return d;
}

inline ExpVector add_exps(const ExpVector& a, const ExpVector& b) {
  ExpVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

// Graded lexicographic, x1 > x2 > ... ; "greater" sorts descending.
struct GrlexGreater {
  bool operator()(const ExpVector& a, const ExpVector& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }
};

struct ExpHash {
  std::size_t operator()(const ExpVector& e) const { return boost::hash_range(e.begin(), e.end()); }
};

enum class MonomialOrder { grlex, lex };

class Poly {
 public:
  using TermMap = std::map<ExpVector, FieldElem, GrlexGreater>;

  Poly(const Field& f, std::size_t n) : f_(&f), n_(n) {}

  static Poly constant(const Field& f, std::size_t n, const FieldElem& c) {
    Poly r(f, n);
    r.add_term(ExpVector(n, 0), c);
    return r;
  }
  static Poly one(const Field& f, std::size_t n) { return constant(f, n, f.one()); }
  // Variable x_{i+1}.
  static Poly variable(const Field& f, std::size_t n, std::size_t i) {
    if (i >= n) throw Error(ErrorCode::arity_mismatch, "variable index out of range");
    ExpVector e(n, 0);
    e[i] = 1;
    Poly r(f, n);
    r.add_term(e, f.one());
    return r;
  }
  static Poly monomial(const Field& f, const ExpVector& e, const FieldElem& c) {
    Poly r(f, e.size());
    r.add_term(e, c);
    return r;
  }

  const Field& field() const { return *f_; }
  std::size_t nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t sparsity() const { return terms_.size(); }

  // -1 for the zero polynomial.
  long degree() const { return terms_.empty() ? -1 : static_cast<long>(total_degree(terms_.begin()->first)); }

  Exp individual_degree() const {
    Exp d = 0;
    for (const auto& [e, c] : terms_)
      for (Exp v : e) d = std::max(d, v);
    return d;
  }
  bool is_multilinear() const { return individual_degree() <= 1; }

  FieldElem coeff(const ExpVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? f_->zero() : it->second;
  }
  FieldElem constant_term() const { return coeff(ExpVector(n_, 0)); }

  void add_term(const ExpVector& e, const FieldElem& c) {
    if (e.size() != n_) throw Error(ErrorCode::arity_mismatch, "exponent vector length differs from variable count");
    if (c.field() != f_) throw Error(ErrorCode::level_mismatch, "coefficient from a different field");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r(*f_, n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly r(*a.f_, a.n_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.sparsity() == 1 || b.sparsity() == 1) {
      const Poly& mono = a.sparsity() == 1 ? a : b;
      const Poly& other = a.sparsity() == 1 ? b : a;
      const auto& [me, mc] = *mono.terms_.begin();
      // Multiplying by a monomial preserves grlex order.
      for (const auto& [e, c] : other.terms_) {
        FieldElem v = c * mc;
        if (!v.is_zero()) r.terms_.emplace_hint(r.terms_.end(), add_exps(e, me), std::move(v));
      }
      return r;
    }
    std::unordered_map<ExpVector, FieldElem, ExpHash> acc;
    acc.reserve(a.sparsity() * b.sparsity() / 2 + 1);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        ExpVector e = add_exps(ea, eb);
        auto it = acc.find(e);
        if (it == acc.end()) {
          acc.emplace(std::move(e), ca * cb);
        } else {
          it->second += ca * cb;
        }
      }
    }
    for (auto& [e, c] : acc) {
      if (!c.is_zero()) r.terms_.emplace(e, std::move(c));
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scale(const FieldElem& s) const {
    Poly r(*f_, n_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
    return r;
  }

  Poly pow(std::uint64_t k) const {
    Poly r = one(*f_, n_);
    Poly b = *this;
    while (k != 0) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k != 0) b *= b;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.f_ == b.f_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  void check_compatible(const Poly& o) const {
    if (o.f_ != f_) throw Error(ErrorCode::level_mismatch, "polynomials over different fields");
    if (o.n_ != n_) throw Error(ErrorCode::arity_mismatch, "polynomials in different variable counts");
  }

 private:
  const Field* f_;
  std::size_t n_;
  TermMap terms_;
};

inline Poly boolean_axiom(const Field& f, std::size_t n, std::size_t j) {
  return Poly::variable(f, n, j).pow(2) - Poly::variable(f, n, j);
}

inline Poly power_axiom(const Field& f, std::size_t n, std::size_t j, std::uint64_t e) {
  return Poly::variable(f, n, j).pow(e) - Poly::variable(f, n, j);
}

inline FieldElem eval(const Poly& f, const std::vector<FieldElem>& point) {
  if (point.size() != f.nvars()) throw Error(ErrorCode::arity_mismatch, "evaluation point has wrong length");
  FieldElem acc = f.field().zero();
  for (const auto& [e, c] : f.terms()) {
    FieldElem t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t *= point[i].pow(e[i]);
    }
    acc += t;
  }
  return acc;
}

// Applies a coefficient map into another field, e.g. the tower embedding.
template <class Fn>
Poly map_coeffs(const Poly& f, const Field& target, Fn&& fn) {
  Poly r(target, f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e, fn(c));
  return r;
}

// Moves x_{i+1} to x_{mapping[i]+1} in a space of target_n variables.
inline Poly rename_vars(const Poly& f, std::size_t target_n, const std::vector<std::size_t>& mapping) {
  if (mapping.size() != f.nvars()) throw Error(ErrorCode::arity_mismatch, "variable mapping has wrong length");
  Poly r(f.field(), target_n);
  for (const auto& [e, c] : f.terms()) {
    ExpVector ne(target_n, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (mapping[i] >= target_n) throw Error(ErrorCode::arity_mismatch, "variable mapping out of range");
      ne[mapping[i]] += e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

// Simultaneous substitution. Replacements live in target_n variables; an
// unassigned x_i stays x_i, which requires i < target_n.
inline Poly substitute(const Poly& f, const std::map<std::size_t, Poly>& assignments, std::size_t target_n) {
  for (const auto& [v, g] : assignments) {
    if (v >= f.nvars()) throw Error(ErrorCode::arity_mismatch, "substituted variable out of range");
    if (g.nvars() != target_n) throw Error(ErrorCode::arity_mismatch, "replacement has wrong variable count");
    if (&g.field() != &f.field()) throw Error(ErrorCode::level_mismatch, "replacement over a different field");
  }
  const Field& fld = f.field();
  std::vector<std::map<Exp, Poly>> power_cache(f.nvars());
  auto power_of = [&](std::size_t v, Exp k) -> const Poly& {
    auto& cache = power_cache[v];
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    return cache.emplace(k, assignments.at(v).pow(k)).first->second;
  };
  Poly r(fld, target_n);
  for (const auto& [e, c] : f.terms()) {
    ExpVector kept(target_n, 0);
    Poly term = Poly::one(fld, target_n);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (assignments.count(i)) {
        term *= power_of(i, e[i]);
      } else {
        if (i >= target_n) throw Error(ErrorCode::arity_mismatch, "unassigned variable outside target space");
        kept[i] += e[i];
      }
    }
    r += term * Poly::monomial(fld, kept, c);
  }
  return r;
}

inline Poly substitute(const Poly& f, const std::map<std::size_t, Poly>& assignments) {
  return substitute(f, assignments, assignments.empty() ? f.nvars() : assignments.begin()->second.nvars());
}

inline Poly ml_partial(const Poly& f, const std::vector<std::size_t>& vars) {
  Poly r(f.field(), f.nvars());
  for (const auto& [e, c] : f.terms()) {
    ExpVector ne(e);
    for (std::size_t v : vars) {
      if (v >= ne.size()) throw Error(ErrorCode::arity_mismatch, "variable out of range");
      ne[v] = std::min<Exp>(ne[v], 1);
    }
    r.add_term(ne, c);
  }
  return r;
}

inline Poly ml(const Poly& f) {
  Poly r(f.field(), f.nvars());
  for (const auto& [e, c] : f.terms()) {
    ExpVector ne(e);
    for (auto& v : ne) v = std::min<Exp>(v, 1);
    r.add_term(ne, c);
  }
  return r;
}

enum class AxiomKind { boolean, fermat };

struct QuotientDecomposition {
  Poly remainder;
  std::vector<Poly> quotients;
  AxiomKind kind;
  std::uint64_t exponent;  // e in x^e - x
};

// Sequential division by x_1^e - x_1, then x_2^e - x_2, ... Each power
// x^a with a >= e is rewritten using
//   x^{m(e-1)+a'} - x^{a'} = x^{a'-1} (x^e - x) sum_{i<m} x^{i(e-1)}.
inline QuotientDecomposition divide_by_power_axioms(const Poly& f, std::uint64_t e) {
  if (e < 2) throw Error(ErrorCode::out_of_range, "axiom exponent must be at least 2");
  const Field& fld = f.field();
  const std::size_t n = f.nvars();
  std::vector<Poly> q(n, Poly(fld, n));
  Poly rem = f;
  for (std::size_t j = 0; j < n; ++j) {
    Poly next(fld, n);
    for (const auto& [mu, c] : rem.terms()) {
      const std::uint64_t a = mu[j];
      if (a < e) {
        next.add_term(mu, c);
        continue;
      }
      const std::uint64_t reduced = (a - 1) % (e - 1) + 1;
      const std::uint64_t m = (a - reduced) / (e - 1);
      ExpVector base(mu);
      base[j] = static_cast<Exp>(reduced - 1);
      for (std::uint64_t i = 0; i < m; ++i) {
        ExpVector qe(base);
        qe[j] += static_cast<Exp>(i * (e - 1));
        q[j].add_term(qe, c);
      }
      ExpVector re(mu);
      re[j] = static_cast<Exp>(reduced);
      next.add_term(re, c);
    }
    rem = std::move(next);
  }
  return {std::move(rem), std::move(q), e == 2 ? AxiomKind::boolean : AxiomKind::fermat, e};
}

inline QuotientDecomposition divide_by_axioms(const Poly& f, AxiomKind kind) {
  return divide_by_power_axioms(f, kind == AxiomKind::boolean ? 2 : f.field().p());
}

// Reduces individual degrees below p modulo y_j^p - y_j.
inline QuotientDecomposition inddeg_p(const Poly& f, std::uint64_t p) { return divide_by_power_axioms(f, p); }

// Reconstructs remainder + sum_j quotients[j] (x_j^e - x_j).
inline Poly reconstruct(const QuotientDecomposition& d) {
  const Field& fld = d.remainder.field();
  const std::size_t n = d.remainder.nvars();
  Poly r = d.remainder;
  for (std::size_t j = 0; j < n; ++j) r += d.quotients[j] * power_axiom(fld, n, j, d.exponent);
  return r;
}

// Cube point index: bit i holds x_{i+1}.
inline std::vector<FieldElem> cube_values(const Poly& f) {
  const std::size_t n = f.nvars();
  if (n > 26) throw Error(ErrorCode::budget_exceeded, "cube too large");
  std::vector<FieldElem> v(std::size_t{1} << n, f.field().zero());
  for (const auto& [e, c] : f.terms()) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] != 0) mask |= std::size_t{1} << i;
    v[mask] += c;
  }
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t m = 0; m < v.size(); ++m)
      if (m & bit) v[m] += v[m ^ bit];
  }
  return v;
}

// Moebius inversion: coeff(x_S) = sum_{T subset S} (-1)^{|S\T|} value(1_T).
inline Poly cube_interpolate(const Field& f, std::size_t n, std::vector<FieldElem> values) {
  if (values.size() != (std::size_t{1} << n)) throw Error(ErrorCode::arity_mismatch, "table must have 2^n entries");
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t m = 0; m < values.size(); ++m)
      if (m & bit) values[m] -= values[m ^ bit];
  }
  Poly r(f, n);
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (values[m].is_zero()) continue;
    ExpVector e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = (m >> i) & 1;
    r.add_term(e, values[m]);
  }
  return r;
}

inline ExpVector leading_monomial(const Poly& f, MonomialOrder order = MonomialOrder::grlex) {
  if (f.is_zero()) throw Error(ErrorCode::zero_polynomial, "leading monomial of zero");
  if (order == MonomialOrder::grlex) return f.terms().begin()->first;
  const ExpVector* best = nullptr;
  for (const auto& [e, c] : f.terms()) {
    if (!best || std::lexicographical_compare(best->begin(), best->end(), e.begin(), e.end())) best = &e;
  }
  return *best;
}

// Variable naming for text I/O: consecutive blocks such as x1..x4, y1..y4.
class VarLayout {
 public:
  struct Block {
    char prefix;
    std::size_t count;
  };

  VarLayout() = default;
  explicit VarLayout(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    for (const auto& b : blocks_) {
      if (b.prefix != 'x' && b.prefix != 'y' && b.prefix != 'z')
        throw Error(ErrorCode::parse_error, "variable prefix must be x, y or z");
      for (const auto& o : blocks_)
        if (&o != &b && o.prefix == b.prefix) throw Error(ErrorCode::parse_error, "duplicate variable prefix");
    }
  }
  static VarLayout single(char prefix, std::size_t n) { return VarLayout({{prefix, n}}); }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& b : blocks_) s += b.count;
    return s;
  }
  std::string name(std::size_t i) const {
    for (const auto& b : blocks_) {
      if (i < b.count) return std::string(1, b.prefix) + std::to_string(i + 1);
      i -= b.count;
    }
    throw Error(ErrorCode::arity_mismatch, "variable index outside layout");
  }
  std::optional<std::size_t> index(char prefix, std::size_t one_based) const {
    std::size_t off = 0;
    for (const auto& b : blocks_) {
      if (b.prefix == prefix) {
        if (one_based == 0 || one_based > b.count) return std::nullopt;
        return off + one_based - 1;
      }
      off += b.count;
    }
    return std::nullopt;
  }
  std::string to_string() const {
    std::string s;
    for (const auto& b : blocks_) {
      if (!s.empty()) s += ',';
      s += std::string(1, b.prefix) + std::to_string(b.count);
    }
    return s;
  }
  static VarLayout parse(std::string_view text) {
    std::vector<Block> blocks;
    while (!text.empty()) {
      const auto comma = text.find(',');
      std::string_view part = gf::detail::trim(text.substr(0, comma));
      gf::u64 count = 0;
      if (part.size() < 2 || !gf::detail::parse_u64(part.substr(1), count))
        throw Error(ErrorCode::parse_error, "bad variable layout '" + std::string(text) + "'");
      blocks.push_back({part[0], static_cast<std::size_t>(count)});
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return VarLayout(std::move(blocks));
  }
  bool operator==(const VarLayout& o) const {
    if (blocks_.size() != o.blocks_.size()) return false;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i].prefix != o.blocks_[i].prefix || blocks_[i].count != o.blocks_[i].count) return false;
    return true;
  }

 private:
  std::vector<Block> blocks_;
};

// Canonical text: grlex-descending terms "c*x1^2*x3^1" joined by " + ".
inline std::string format(const Poly& f, const VarLayout& layout) {
  if (layout.size() != f.nvars()) throw Error(ErrorCode::arity_mismatch, "layout does not match variable count");
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : f.terms()) {
    if (!s.empty()) s += " + ";
    s += f.field().format(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      s += '*';
      s += layout.name(i);
      s += '^';
      s += std::to_string(e[i]);
    }
  }
  return s;
}

inline std::string format(const Poly& f) { return format(f, VarLayout::single('x', f.nvars())); }

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(ErrorCode::parse_error, what + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Grammar: term (("+"|"-") term)*, term = [coeff] ("*"? var ("^" exp)?)*.
inline Poly parse(std::string_view text, const Field& f, const VarLayout& layout) {
  const std::size_t n = layout.size();
  std::size_t pos = 0;
  auto col = [&] { return pos + 1; };
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) ++pos;
  };
  auto read_uint = [&]() -> gf::u64 {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    gf::u64 v = 0;
    if (!gf::detail::parse_u64(text.substr(start, pos - start), v)) {
      pos = start;
      throw ParseError("expected unsigned integer", col());
    }
    return v;
  };
  Poly r(f, n);
  skip_ws();
  if (pos == text.size()) throw ParseError("empty polynomial", col());
  bool first = true;
  while (true) {
    skip_ws();
    bool negate = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negate = text[pos] == '-';
      ++pos;
      skip_ws();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", col());
    }
    first = false;
    FieldElem c = f.one();
    bool have_coeff = false;
    if (pos < text.size() && text[pos] == '[') {
      const std::size_t close = text.find(']', pos);
      if (close == std::string_view::npos) throw ParseError("unterminated '['", col());
      try {
        c = f.parse(text.substr(pos, close - pos + 1));
      } catch (const Error& err) {
        throw ParseError(err.what(), col());
      }
      pos = close + 1;
      have_coeff = true;
    } else if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      const gf::u64 v = read_uint();
      gf::Coeffs cc(f.degree(), 0);
      cc[0] = v % f.p();
      c = FieldElem(&f, std::move(cc));
      have_coeff = true;
    }
    ExpVector e(n, 0);
    bool any_var = false;
    while (true) {
      skip_ws();
      std::size_t save = pos;
      if (pos < text.size() && text[pos] == '*') {
        if (!have_coeff && !any_var) throw ParseError("unexpected '*'", col());
        ++pos;
        skip_ws();
      } else if (have_coeff || any_var) {
        break;
      }
      if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'y' || text[pos] == 'z')) {
        const char prefix = text[pos++];
        const std::size_t vcol = col();
        const gf::u64 idx = read_uint();
        auto vi = layout.index(prefix, idx);
        if (!vi) throw ParseError("unknown variable " + std::string(1, prefix) + std::to_string(idx), vcol);
        skip_ws();
        gf::u64 ex = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip_ws();
          ex = read_uint();
        }
        e[*vi] += static_cast<Exp>(ex);
        any_var = true;
      } else {
        pos = save;
        if (!have_coeff && !any_var) throw ParseError("expected coefficient or variable", col());
        if (save < text.size() && text[save] == '*') throw ParseError("expected variable after '*'", save + 2);
        break;
      }
    }
    r.add_term(e, negate ? -c : c);
    skip_ws();
    if (pos == text.size()) break;
  }
  return r;
}

inline Poly parse(std::string_view text, const Field& f, std::size_t n) {
  return parse(text, f, VarLayout::single('x', n));
}

}  // namespace ipsforge::mvpoly
