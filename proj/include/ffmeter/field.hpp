// Finite fields GF(p^n) in a polynomial basis with table-driven arithmetic.
//
// Elements are encoded as integers: c_0 + c_1 λ + ... + c_{n-1} λ^{n-1}
// maps to c_0 + c_1 p + ... + c_{n-1} p^{n-1}, where λ is the class of X
// modulo the defining polynomial. Value tables of self-maps are therefore
// plain integer sequences.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffm {

using Elem = std::uint32_t;

/// Upper bound on q; value tables, log tables and O(q^2) routines are sized against it.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace detail {

// Dense polynomials over F_p, coefficients low-to-high, trimmed.
using FpPoly = std::vector<std::uint32_t>;

inline void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is prime and small.
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

inline FpPoly poly_mod(FpPoly a, const FpPoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return poly_mod(std::move(r), m, p);
}

inline FpPoly poly_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: m of degree n is irreducible iff gcd(X^{p^i} - X, m) = 1 for 1 <= i <= n/2.
inline bool is_irreducible(const FpPoly& m, std::uint32_t p) {
  const std::size_t n = m.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  if (m[0] == 0) return false;  // X divides m
  // Root trial: catches linear factors directly.
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = m.size(); i-- > 0;) v = (v * x + m[i]) % p;
    if (v == 0) return false;
  }
  FpPoly xp = {0, 1};  // X^{p^i} mod m
  for (std::size_t i = 1; i <= n / 2; ++i) {
    // raise to the p-th power
    FpPoly acc = {1};
    FpPoly base = xp;
    std::uint64_t e = p;
    while (e) {
      if (e & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1;
    }
    xp = acc;
    FpPoly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(m, diff, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// Immutable arithmetic context for GF(p^n). Safe to share read-only.
class FieldCtx {
 public:
  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  /// Defining polynomial, low-to-high, monic of degree n.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem zeta() const { return zeta_; }
  Elem lambda() const { return lambda_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
    return digitwise(a, b, false);
  }
  Elem sub(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + neg_[b]];
    return digitwise(a, b, true);
  }
  Elem neg(Elem a) const { return neg_[a]; }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  /// x^{q-2}: the inverse for x != 0 and 0 at 0.
  Elem inv(Elem a) const {
    if (a == 0) return 0;
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Elem pow(Elem a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t e = (std::uint64_t{log_[a]} * (k % (q_ - 1))) % (q_ - 1);
    return exp_[e];
  }

  /// Square-and-multiply on the log-free path; used to cross-check pow().
  Elem pow_slow(Elem a, std::uint64_t k) const {
    Elem result = 1;
    Elem base = a;
    while (k) {
      if (k & 1) result = mul_poly(result, base);
      base = mul_poly(base, base);
      k >>= 1;
    }
    return result;
  }

  /// ζ^e for any e.
  Elem exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

  /// Discrete log base ζ, in [0, q-1).
  std::uint32_t dlog(Elem a) const {
    if (a == 0) throw std::domain_error("dlog: zero has no discrete logarithm");
    return log_[a];
  }

  /// Multiplication by polynomial product modulo the defining polynomial.
  Elem mul_poly(Elem a, Elem b) const {
    return encode(detail::poly_mulmod(decode(a), decode(b), modulus_, p_));
  }

  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  Elem from_digits(const std::vector<std::uint32_t>& d) const {
    Elem e = 0;
    for (std::size_t i = d.size(); i-- > 0;) e = e * p_ + d[i] % p_;
    return e;
  }

  /// Embeds an integer into the prime subfield.
  Elem from_int(std::int64_t v) const {
    const std::int64_t m = static_cast<std::int64_t>(p_);
    return static_cast<Elem>(((v % m) + m) % m);
  }

  std::string describe() const {
    std::ostringstream os;
    os << "GF(" << p_ << "^" << n_ << ") mod [";
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    os << "] zeta=" << zeta_;
    return os.str();
  }

  friend FieldCtx make_field(std::uint64_t p, std::uint64_t n,
                             std::optional<std::vector<std::uint32_t>> modulus);

 private:
  FieldCtx() = default;

  detail::FpPoly decode(Elem a) const {
    detail::FpPoly d = digits(a);
    detail::trim(d);
    return d;
  }
  Elem encode(const detail::FpPoly& d) const {
    Elem e = 0;
    for (std::size_t i = d.size(); i-- > 0;) e = e * p_ + d[i];
    return e;
  }

  Elem digitwise(Elem a, Elem b, bool subtract) const {
    Elem r = 0, scale = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
      const std::uint32_t da = a % p_, db = b % p_;
      const std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
      r += d * scale;
      scale *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

  std::uint32_t p_ = 0, n_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem zeta_ = 0, lambda_ = 0;
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<Elem> exp_;           // length 2(q-1), so exp_[la + lb] needs no reduction
  std::vector<Elem> neg_;
  std::vector<Elem> add_table_;  // q*q, only for odd p and q <= 1024
};

/// Builds GF(p^n). Without an explicit modulus the smallest monic irreducible
/// (coefficients c_0..c_n read as Σ c_i p^i) is used; ζ is the smallest
/// encoding of multiplicative order q-1.
inline FieldCtx make_field(std::uint64_t p, std::uint64_t n,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (n < 1) throw std::invalid_argument("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxFieldOrder)
      throw std::overflow_error("field order " + std::to_string(p) + "^" + std::to_string(n) +
                                " exceeds the supported table range");
  }

  FieldCtx f;
  f.p_ = static_cast<std::uint32_t>(p);
  f.n_ = static_cast<std::uint32_t>(n);
  f.q_ = static_cast<std::uint32_t>(q);

  if (modulus) {
    auto m = *modulus;
    if (m.size() != n + 1 || m.back() != 1)
      throw std::invalid_argument("modulus must be monic of degree " + std::to_string(n));
    for (auto c : m)
      if (c >= p) throw std::invalid_argument("modulus coefficient out of range [0, p)");
    if (!detail::is_irreducible(m, f.p_))
      throw std::invalid_argument("modulus is reducible over F_" + std::to_string(p));
    f.modulus_ = std::move(m);
  } else {
    for (std::uint64_t v = q; v < 2 * q; ++v) {
      std::vector<std::uint32_t> m(n + 1);
      std::uint64_t t = v;
      for (std::uint64_t i = 0; i <= n; ++i) {
        m[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (detail::is_irreducible(m, f.p_)) {
        f.modulus_ = std::move(m);
        break;
      }
    }
    if (f.modulus_.empty()) throw std::logic_error("no irreducible polynomial found");
  }

  f.neg_.resize(q);
  for (Elem a = 0; a < q; ++a) f.neg_[a] = f.digitwise(0, a, true);
  if (f.p_ != 2 && q <= 1024) {
    f.add_table_.resize(q * q);
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) f.add_table_[std::size_t{a} * q + b] = f.digitwise(a, b, false);
  }

  // λ = X mod modulus; for n = 1 this is -c_0.
  f.lambda_ = n == 1 ? static_cast<Elem>((p - f.modulus_[0]) % p) : static_cast<Elem>(p);

  f.log_.assign(q, 0);
  f.exp_.assign(2 * (q - 1), 0);
  if (q == 2) {
    f.zeta_ = 1;
    f.exp_ = {1, 1};
    return f;
  }
  for (Elem cand = 1; cand < q; ++cand) {
    std::vector<bool> seen(q, false);
    Elem x = 1;
    std::uint64_t order = 0;
    do {
      seen[x] = true;
      x = f.mul_poly(x, cand);
      ++order;
    } while (x != 1 && !seen[x]);
    if (x == 1 && order == q - 1) {
      f.zeta_ = cand;
      break;
    }
  }
  if (f.zeta_ == 0) throw std::logic_error("no primitive element found");
  Elem x = 1;
  for (std::uint32_t e = 0; e < q - 1; ++e) {
    f.exp_[e] = x;
    f.exp_[e + q - 1] = x;
    f.log_[x] = e;
    x = f.mul_poly(x, f.zeta_);
  }
  return f;
}

/// Parses "p^n" (or a bare prime "p").
inline FieldCtx parse_field(const std::string& spec,
                            std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  const auto caret = spec.find('^');
  std::uint64_t p = 0, n = 1;
  try {
    std::size_t used = 0;
    p = std::stoull(spec.substr(0, caret), &used);
    if (used != (caret == std::string::npos ? spec.size() : caret)) throw std::invalid_argument("");
    if (caret != std::string::npos) {
      const std::string tail = spec.substr(caret + 1);
      n = std::stoull(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed field spec '" + spec + "', expected p^n");
  }
  if (!is_prime(p)) {
    std::string hint;
    if (p > 1) {
      std::uint64_t r = 2;
      while (p % r != 0) ++r;
      std::uint64_t t = p, e = 0;
      while (t % r == 0) {
        t /= r;
        ++e;
      }
      if (t == 1) hint = "; write " + std::to_string(r) + "^" + std::to_string(e * n);
    }
    throw std::invalid_argument(std::to_string(p) + " is not prime" + hint);
  }
  return make_field(p, n, std::move(modulus));
}

}  // namespace ffm
