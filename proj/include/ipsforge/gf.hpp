#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "ipsforge/errors.hpp"
#include "ipsforge/rng.hpp"

namespace ipsforge::gf {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Coeffs = boost::container::small_vector<u64, 8>;

inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  if (s < a || s >= p) s -= p;
  return s;
}
inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }
inline u64 neg_mod(u64 a, u64 p) { return a == 0 ? 0 : p - a; }
inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

enum class Level { base, ext };

inline const char* level_name(Level l) { return l == Level::base ? "base" : "ext"; }

struct FieldSpec {
  u64 p = 2;
  unsigned k = 1;
  std::vector<u64> modulus;  // c0..ck, monic

  bool operator==(const FieldSpec& o) const { return p == o.p && k == o.k && modulus == o.modulus; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  std::string to_string() const {
    std::ostringstream os;
    os << "GF(" << p << "^" << k << "){modulus=";
    for (std::size_t i = 0; i < modulus.size(); ++i) {
      if (i) os << ',';
      os << modulus[i];
    }
    os << '}';
    return os.str();
  }

  static FieldSpec parse(std::string_view text);
};

namespace detail {

inline bool parse_u64(std::string_view s, u64& out) {
  if (s.empty()) return false;
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
    if (v > ~u64{0}) return false;
  }
  out = static_cast<u64>(v);
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline FieldSpec FieldSpec::parse(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::parse_error, "field spec '" + std::string(text) + "': " + why);
  };
  std::string_view s = detail::trim(text);
  if (s.substr(0, 3) != "GF(") throw fail("expected 'GF('");
  s.remove_prefix(3);
  const auto caret = s.find('^');
  const auto close = s.find(')');
  if (caret == std::string_view::npos || close == std::string_view::npos || caret > close)
    throw fail("expected 'p^k)'");
  FieldSpec spec;
  u64 k = 0;
  if (!detail::parse_u64(s.substr(0, caret), spec.p)) throw fail("bad characteristic");
  if (!detail::parse_u64(s.substr(caret + 1, close - caret - 1), k) || k == 0 || k > 4096)
    throw fail("bad extension degree");
  spec.k = static_cast<unsigned>(k);
  s.remove_prefix(close + 1);
  if (s.substr(0, 9) != "{modulus=" || s.back() != '}') throw fail("expected '{modulus=...}'");
  s = s.substr(9, s.size() - 10);
  while (!s.empty()) {
    const auto comma = s.find(',');
    u64 c = 0;
    if (!detail::parse_u64(detail::trim(s.substr(0, comma)), c)) throw fail("bad modulus coefficient");
    spec.modulus.push_back(c);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return spec;
}

class Field;

class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const Field* f, Coeffs c) : f_(f), c_(std::move(c)) {}

  const Field* field() const { return f_; }
  const Coeffs& coeffs() const { return c_; }
  Level level() const;

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
  }
  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](u64 v) { return v == 0; });
  }

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }
  FieldElem operator-() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  FieldElem inv() const;
  FieldElem pow(u64 e) const;
  // a^(p^j)
  FieldElem frobenius(u64 j) const;

  std::string to_string() const;

 private:
  const Field* f_ = nullptr;
  Coeffs c_;
};

// Order by the integer index sum c_i p^i; this is the "lexicographic" order
// used for node choice, root choice and modulus search.
inline bool index_less(const FieldElem& a, const FieldElem& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] != y[i]) return x[i] < y[i];
  }
  return false;
}

bool is_irreducible(const std::vector<u64>& monic, u64 p);
std::vector<u64> first_irreducible(u64 p, unsigned degree);

// One level of the tower: F_p[X]/(modulus). Elements hold a pointer to their
// field, so a Field must outlive its elements and is never moved.
class Field {
 public:
  explicit Field(FieldSpec spec, Level level = Level::base) : spec_(std::move(spec)), level_(level) {
    if (!is_prime(spec_.p)) throw Error(ErrorCode::invalid_field, "characteristic is not prime");
    if (spec_.k == 0) throw Error(ErrorCode::invalid_field, "extension degree must be positive");
    if (spec_.modulus.size() != spec_.k + 1 || spec_.modulus.back() != 1)
      throw Error(ErrorCode::invalid_field, "modulus must be monic of degree k");
    for (u64 c : spec_.modulus) {
      if (c >= spec_.p) throw Error(ErrorCode::invalid_field, "modulus coefficient not reduced");
    }
    if (!is_irreducible(spec_.modulus, spec_.p))
      throw Error(ErrorCode::invalid_field, "modulus is reducible: " + spec_.to_string());
    small_ = spec_.p < (u64{1} << 60);
  }
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  static std::shared_ptr<const Field> make(u64 p, unsigned k) {
    return std::make_shared<const Field>(FieldSpec{p, k, first_irreducible(p, k)});
  }
  static std::shared_ptr<const Field> prime(u64 p) { return std::make_shared<const Field>(FieldSpec{p, 1, {0, 1}}); }

  const FieldSpec& spec() const { return spec_; }
  u64 p() const { return spec_.p; }
  unsigned degree() const { return spec_.k; }
  Level level() const { return level_; }

  // Field order if it fits in 64 bits.
  std::optional<u64> size() const {
    u128 q = 1;
    for (unsigned i = 0; i < spec_.k; ++i) {
      q *= spec_.p;
      if (q > ~u64{0}) return std::nullopt;
    }
    return static_cast<u64>(q);
  }

  FieldElem zero() const { return FieldElem(this, Coeffs(spec_.k, 0)); }
  FieldElem one() const {
    Coeffs c(spec_.k, 0);
    c[0] = 1;
    return FieldElem(this, std::move(c));
  }
  FieldElem from_int(long long v) const {
    Coeffs c(spec_.k, 0);
    const u64 p = spec_.p;
    if (v >= 0) {
      c[0] = static_cast<u64>(v) % p;
    } else {
      const u64 magnitude = static_cast<u64>(-(v + 1)) + 1;
      c[0] = neg_mod(magnitude % p, p);
    }
    return FieldElem(this, std::move(c));
  }
  FieldElem from_coeffs(Coeffs c) const {
    if (c.size() > spec_.k) throw Error(ErrorCode::out_of_range, "too many coefficients for " + spec_.to_string());
    c.resize(spec_.k, 0);
    for (auto& v : c) v %= spec_.p;
    return FieldElem(this, std::move(c));
  }
  // The class of X; zero when the modulus is X itself.
  FieldElem generator() const {
    if (spec_.k == 1) return FieldElem(this, Coeffs{neg_mod(spec_.modulus[0], spec_.p)});
    Coeffs c(spec_.k, 0);
    c[1] = 1;
    return FieldElem(this, std::move(c));
  }
  FieldElem from_index(u64 idx) const {
    Coeffs c(spec_.k, 0);
    for (unsigned i = 0; i < spec_.k && idx != 0; ++i) {
      c[i] = idx % spec_.p;
      idx /= spec_.p;
    }
    return FieldElem(this, std::move(c));
  }
  u64 index_of(const FieldElem& a) const {
    u128 v = 0;
    for (std::size_t i = spec_.k; i-- > 0;) v = v * spec_.p + a.coeffs()[i];
    return static_cast<u64>(v);
  }

  FieldElem sample(Rng& rng) const {
    Coeffs c(spec_.k, 0);
    for (auto& v : c) v = rng.below(spec_.p);
    return FieldElem(this, std::move(c));
  }

  std::string format(const FieldElem& a) const {
    if (spec_.k == 1) return std::to_string(a.coeffs()[0]);
    std::string s = "[";
    for (unsigned i = 0; i < spec_.k; ++i) {
      if (i) s += ',';
      s += std::to_string(a.coeffs()[i]);
    }
    return s + "]";
  }

  // Accepts "[c0,...]" (missing trailing entries are zero) or a possibly
  // negative decimal naming a prime-subfield constant.
  FieldElem parse(std::string_view text) const {
    std::string_view s = detail::trim(text);
    auto fail = [&](const std::string& why) {
      return Error(ErrorCode::parse_error, "field element '" + std::string(text) + "': " + why);
    };
    if (!s.empty() && s.front() == '[') {
      if (s.back() != ']') throw fail("missing ']'");
      s = s.substr(1, s.size() - 2);
      Coeffs c;
      while (!detail::trim(s).empty()) {
        const auto comma = s.find(',');
        u64 v = 0;
        if (!detail::parse_u64(detail::trim(s.substr(0, comma)), v)) throw fail("bad coefficient");
        if (v >= spec_.p) throw fail("coefficient not reduced mod p");
        c.push_back(v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
      }
      if (c.size() > spec_.k) throw fail("too many coefficients");
      return from_coeffs(std::move(c));
    }
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
      neg = true;
      s.remove_prefix(1);
    }
    u64 v = 0;
    if (!detail::parse_u64(s, v)) throw fail("expected decimal or [c0,...]");
    Coeffs c(spec_.k, 0);
    c[0] = v % spec_.p;
    FieldElem e(this, std::move(c));
    return neg ? -e : e;
  }

  // Raw arithmetic on coefficient vectors of length k.
  void add_into(Coeffs& a, const Coeffs& b) const {
    for (unsigned i = 0; i < spec_.k; ++i) a[i] = add_mod(a[i], b[i], spec_.p);
  }
  void sub_into(Coeffs& a, const Coeffs& b) const {
    for (unsigned i = 0; i < spec_.k; ++i) a[i] = sub_mod(a[i], b[i], spec_.p);
  }

  Coeffs mul(const Coeffs& a, const Coeffs& b) const {
    const unsigned k = spec_.k;
    const u64 p = spec_.p;
    if (k == 1) return Coeffs{mul_mod(a[0], b[0], p)};
    boost::container::small_vector<u64, 16> r(2 * k - 1, 0);
    if (small_ && k <= 256) {
      boost::container::small_vector<u128, 16> acc(2 * k - 1, 0);
      for (unsigned i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k; ++j) acc[i + j] += static_cast<u128>(a[i]) * b[j];
      }
      for (unsigned i = 0; i < 2 * k - 1; ++i) r[i] = static_cast<u64>(acc[i] % p);
    } else {
      for (unsigned i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k; ++j) r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
      }
    }
    const auto& m = spec_.modulus;
    for (unsigned i = 2 * k - 2; i >= k; --i) {
      const u64 c = r[i];
      if (c == 0) continue;
      for (unsigned j = 0; j < k; ++j) {
        if (m[j] != 0) r[i - k + j] = sub_mod(r[i - k + j], mul_mod(c, m[j], p), p);
      }
    }
    return Coeffs(r.begin(), r.begin() + k);
  }

  // Extended Euclid over F_p[X].
  Coeffs inv(const Coeffs& a) const {
    const u64 p = spec_.p;
    using V = std::vector<u64>;
    auto trim = [](V& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    V r0(spec_.modulus.begin(), spec_.modulus.end());
    V r1(a.begin(), a.end());
    trim(r1);
    if (r1.empty()) throw Error(ErrorCode::zero_inverse, "inverse of zero in " + spec_.to_string());
    V s0, s1{1};
    while (!r1.empty()) {
      // r0 = q*r1 + rem
      V rem = r0;
      V q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
      const u64 lead_inv = pow_mod(r1.back(), p - 2, p);
      while (rem.size() >= r1.size() && !rem.empty()) {
        const std::size_t shift = rem.size() - r1.size();
        const u64 c = mul_mod(rem.back(), lead_inv, p);
        q[shift] = c;
        for (std::size_t j = 0; j < r1.size(); ++j)
          rem[shift + j] = sub_mod(rem[shift + j], mul_mod(c, r1[j], p), p);
        trim(rem);
      }
      // s2 = s0 - q*s1
      V qs(q.size() + s1.size(), 0);
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = add_mod(qs[i + j], mul_mod(q[i], s1[j], p), p);
      V s2(std::max(s0.size(), qs.size()), 0);
      for (std::size_t i = 0; i < s2.size(); ++i) {
        const u64 x = i < s0.size() ? s0[i] : 0;
        const u64 y = i < qs.size() ? qs[i] : 0;
        s2[i] = sub_mod(x, y, p);
      }
      trim(s2);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant since the modulus is irreducible.
    const u64 c = pow_mod(r0[0], p - 2, p);
    Coeffs out(spec_.k, 0);
    for (std::size_t i = 0; i < s0.size() && i < spec_.k; ++i) out[i] = mul_mod(s0[i], c, p);
    return out;
  }

 private:
  FieldSpec spec_;
  Level level_;
  bool small_ = true;
};

inline Level FieldElem::level() const { return f_->level(); }

namespace detail {
inline void check_same(const FieldElem& a, const FieldElem& b) {
  if (a.field() != b.field() || a.field() == nullptr)
    throw Error(ErrorCode::level_mismatch, "field elements from different fields");
}
}  // namespace detail

inline FieldElem& FieldElem::operator+=(const FieldElem& o) {
  detail::check_same(*this, o);
  f_->add_into(c_, o.c_);
  return *this;
}
inline FieldElem& FieldElem::operator-=(const FieldElem& o) {
  detail::check_same(*this, o);
  f_->sub_into(c_, o.c_);
  return *this;
}
inline FieldElem& FieldElem::operator*=(const FieldElem& o) {
  detail::check_same(*this, o);
  c_ = f_->mul(c_, o.c_);
  return *this;
}
inline FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  detail::check_same(a, b);
  return FieldElem(a.f_, a.f_->mul(a.c_, b.c_));
}
inline FieldElem FieldElem::operator-() const {
  Coeffs c = c_;
  for (auto& v : c) v = neg_mod(v, f_->p());
  return FieldElem(f_, std::move(c));
}
inline FieldElem FieldElem::inv() const { return FieldElem(f_, f_->inv(c_)); }
inline FieldElem FieldElem::pow(u64 e) const {
  FieldElem r = f_->one();
  FieldElem b = *this;
  while (e != 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return r;
}
inline FieldElem FieldElem::frobenius(u64 j) const {
  FieldElem r = *this;
  j %= f_->degree();
  for (u64 i = 0; i < j; ++i) r = r.pow(f_->p());
  return r;
}
inline std::string FieldElem::to_string() const { return f_ ? f_->format(*this) : "<null>"; }

// Univariate polynomials over a Field, lowest coefficient first, no trailing zeros.
namespace upoly {

using UPoly = std::vector<FieldElem>;

inline void trim(UPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}
inline int deg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

inline UPoly mul(const UPoly& a, const UPoly& b, const Field& f) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline UPoly sub(UPoly a, const UPoly& b, const Field& f) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline UPoly add(UPoly a, const UPoly& b, const Field& f) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

// Returns (quotient, remainder); m must be nonzero.
inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& m, const Field& f) {
  trim(a);
  if (a.size() < m.size()) return {{}, a};
  UPoly q(a.size() - m.size() + 1, f.zero());
  const FieldElem lead_inv = m.back().inv();
  while (a.size() >= m.size() && !a.empty()) {
    const std::size_t shift = a.size() - m.size();
    const FieldElem c = a.back() * lead_inv;
    q[shift] = c;
    for (std::size_t j = 0; j < m.size(); ++j) a[shift + j] -= c * m[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline UPoly mod(const UPoly& a, const UPoly& m, const Field& f) { return divmod(a, m, f).second; }

inline UPoly monic(UPoly a) {
  if (a.empty()) return a;
  const FieldElem c = a.back().inv();
  for (auto& x : a) x *= c;
  return a;
}

inline UPoly gcd(UPoly a, UPoly b, const Field& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline UPoly powmod(UPoly base, u64 e, const UPoly& m, const Field& f) {
  UPoly r{f.one()};
  r = mod(r, m, f);
  base = mod(base, m, f);
  while (e != 0) {
    if (e & 1) r = mod(mul(r, base, f), m, f);
    e >>= 1;
    if (e != 0) base = mod(mul(base, base, f), m, f);
  }
  return r;
}

}  // namespace upoly

// Ben-Or style test: gcd(X^(p^i) - X, g) = 1 for 1 <= i <= deg/2.
inline bool is_irreducible(const std::vector<u64>& monic, u64 p) {
  const std::size_t d = monic.size() - 1;
  if (d <= 1) return d == 1;
  if (monic[0] == 0) return false;
  const Field fp(FieldSpec{p, 1, {0, 1}});
  upoly::UPoly g;
  for (u64 c : monic) g.push_back(FieldElem(&fp, Coeffs{c % p}));
  const upoly::UPoly x{fp.zero(), fp.one()};
  upoly::UPoly h = x;
  for (std::size_t i = 1; i <= d / 2; ++i) {
    h = upoly::powmod(h, p, g, fp);
    const upoly::UPoly t = upoly::sub(h, x, fp);
    if (upoly::deg(upoly::gcd(t, g, fp)) != 0) return false;
  }
  return true;
}

// First monic irreducible in index order of (c0, ..., c_{d-1}), c0 fastest.
inline std::vector<u64> first_irreducible(u64 p, unsigned degree) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_field, "characteristic " + std::to_string(p) + " is not prime");
  if (degree == 0) throw Error(ErrorCode::invalid_field, "extension degree must be positive");
  std::vector<u64> m(degree + 1, 0);
  m[degree] = 1;
  // Irreducibles have density about 1/degree, but for huge p the lex walk can
  // sit in a reducible family (x^3 + c when p = 2 mod 3) for ~p steps.
  constexpr u64 kMaxCandidates = u64{1} << 12;
  for (u64 tried = 0;; ++tried) {
    if (tried == kMaxCandidates)
      throw Error(ErrorCode::budget_exceeded, "no irreducible of degree " + std::to_string(degree) + " over F_" +
                                                  std::to_string(p) + " among the first " +
                                                  std::to_string(kMaxCandidates) + " candidates");
    if (is_irreducible(m, p)) return m;
    std::size_t i = 0;
    while (i < degree) {
      if (++m[i] < p) break;
      m[i] = 0;
      ++i;
    }
    if (i == degree) throw Error(ErrorCode::invalid_field, "no irreducible found");
  }
}

// F_{p^k} inside F_{p^{2k}}. The base generator t maps to the least (index
// order) root of the base modulus in the extension.
class FieldTower {
 public:
  FieldTower(FieldSpec base, FieldSpec ext) : base_(std::move(base), Level::base), ext_(std::move(ext), Level::ext) {
    if (base_.p() != ext_.p() || ext_.degree() != 2 * base_.degree())
      throw Error(ErrorCode::degenerate_tower, "extension must have degree 2k over the same prime");
    compute_embedding();
  }
  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

  static std::shared_ptr<const FieldTower> make(u64 p, unsigned k) {
    if (k == 0) throw Error(ErrorCode::degenerate_tower, "k = 0 makes the extension equal to the base");
    return std::make_shared<const FieldTower>(FieldSpec{p, k, first_irreducible(p, k)},
                                              FieldSpec{p, 2 * k, first_irreducible(p, 2 * k)});
  }
  static std::shared_ptr<const FieldTower> from_specs(const FieldSpec& base, const FieldSpec& ext) {
    return std::make_shared<const FieldTower>(base, ext);
  }

  const Field& base() const { return base_; }
  const Field& ext() const { return ext_; }
  const Field& at(Level l) const { return l == Level::base ? base_ : ext_; }
  u64 p() const { return base_.p(); }
  unsigned k() const { return base_.degree(); }
  const FieldElem& generator_image() const { return theta_; }

  FieldElem embed(const FieldElem& a) const {
    if (a.field() == &ext_) return a;
    if (a.field() != &base_) throw Error(ErrorCode::level_mismatch, "element is not from this tower");
    FieldElem r = ext_.zero();
    for (unsigned i = 0; i < base_.degree(); ++i) {
      const u64 c = a.coeffs()[i];
      if (c == 0) continue;
      r += scale(powers_[i], c);
    }
    return r;
  }

  bool is_in_subfield(const FieldElem& a) const {
    if (a.field() == &base_) return true;
    if (a.field() != &ext_) throw Error(ErrorCode::level_mismatch, "element is not from this tower");
    return a.frobenius(base_.degree()) == a;
  }

  // Inverse of embed on the image; nullopt outside the subfield.
  std::optional<FieldElem> project(const FieldElem& a) const {
    if (a.field() == &base_) return a;
    if (!is_in_subfield(a)) return std::nullopt;
    // Solve sum c_i powers_[i] = a over F_p by elimination on 2k x k.
    const unsigned k = base_.degree(), d = ext_.degree();
    const u64 p = base_.p();
    std::vector<std::vector<u64>> rows(d, std::vector<u64>(k + 1, 0));
    for (unsigned r = 0; r < d; ++r) {
      for (unsigned c = 0; c < k; ++c) rows[r][c] = powers_[c].coeffs()[r];
      rows[r][k] = a.coeffs()[r];
    }
    std::vector<int> pivot_col_row(k, -1);
    unsigned row = 0;
    for (unsigned c = 0; c < k && row < d; ++c) {
      unsigned sel = row;
      while (sel < d && rows[sel][c] == 0) ++sel;
      if (sel == d) continue;
      std::swap(rows[sel], rows[row]);
      const u64 iv = pow_mod(rows[row][c], p - 2, p);
      for (auto& v : rows[row]) v = mul_mod(v, iv, p);
      for (unsigned r = 0; r < d; ++r) {
        if (r == row || rows[r][c] == 0) continue;
        const u64 f = rows[r][c];
        for (unsigned j = 0; j <= k; ++j) rows[r][j] = sub_mod(rows[r][j], mul_mod(f, rows[row][j], p), p);
      }
      pivot_col_row[c] = static_cast<int>(row);
      ++row;
    }
    Coeffs out(k, 0);
    for (unsigned c = 0; c < k; ++c) {
      if (pivot_col_row[c] >= 0) out[c] = rows[static_cast<std::size_t>(pivot_col_row[c])][k];
    }
    return base_.from_coeffs(std::move(out));
  }

  FieldElem sample_beta(Rng& rng) const {
    for (;;) {
      FieldElem b = ext_.sample(rng);
      if (!is_in_subfield(b)) return b;
    }
  }

 private:
  FieldElem scale(const FieldElem& a, u64 c) const {
    Coeffs r = a.coeffs();
    for (auto& v : r) v = mul_mod(v, c, ext_.p());
    return FieldElem(&ext_, std::move(r));
  }

  void compute_embedding() {
    const unsigned k = base_.degree();
    const u64 p = base_.p();
    upoly::UPoly g;
    for (u64 c : base_.spec().modulus) g.push_back(FieldElem(&ext_, lift_const(c)));
    Rng rng(0x5eed0f7e4ULL);
    FieldElem root = find_root(g, rng);
    FieldElem best = root;
    for (unsigned i = 1; i < k; ++i) {
      root = root.pow(p);
      if (index_less(root, best)) best = root;
    }
    powers_.clear();
    FieldElem cur = ext_.one();
    for (unsigned i = 0; i < k; ++i) {
      powers_.push_back(cur);
      cur *= best;
    }
    theta_ = best;
  }

  Coeffs lift_const(u64 c) const {
    Coeffs r(ext_.degree(), 0);
    r[0] = c % ext_.p();
    return r;
  }

  // Equal-degree splitting of g, which splits into distinct linear factors.
  FieldElem find_root(upoly::UPoly g, Rng& rng) const {
    const Field& f = ext_;
    const u64 p = f.p();
    const unsigned D = f.degree();
    g = upoly::monic(g);
    while (upoly::deg(g) > 1) {
      const FieldElem a = f.sample(rng);
      upoly::UPoly acc;
      if (p == 2) {
        upoly::UPoly s = upoly::mod({f.zero(), a}, g, f);
        acc = s;
        for (unsigned i = 1; i < D; ++i) {
          s = upoly::mod(upoly::mul(s, s, f), g, f);
          acc = upoly::add(acc, s, f);
        }
      } else {
        upoly::UPoly u = upoly::powmod({a, f.one()}, (p - 1) / 2, g, f);
        acc = u;
        upoly::UPoly v = u;
        for (unsigned i = 1; i < D; ++i) {
          v = upoly::powmod(v, p, g, f);
          acc = upoly::mod(upoly::mul(acc, v, f), g, f);
        }
        acc = upoly::sub(acc, {f.one()}, f);
      }
      upoly::UPoly h = upoly::gcd(acc, g, f);
      const int dh = upoly::deg(h);
      if (dh <= 0 || dh >= upoly::deg(g)) continue;
      upoly::UPoly other = upoly::monic(upoly::divmod(g, h, f).first);
      g = dh <= upoly::deg(other) ? h : other;
    }
    return -g[0];
  }

  Field base_;
  Field ext_;
  FieldElem theta_;
  std::vector<FieldElem> powers_;  // theta^0 .. theta^(k-1)
};

}  // namespace ipsforge::gf
