// Self-maps of GF(q) as value tables and their reduced interpolation polynomials.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ffmeter/field.hpp"

namespace ffm {

/// A self-map of GF(q): table[x] = f(x). Canonical representation.
struct Func {
  std::vector<Elem> table;

  std::size_t size() const { return table.size(); }
  Elem operator()(Elem x) const { return table[x]; }
  Elem& operator[](std::size_t i) { return table[i]; }
  Elem operator[](std::size_t i) const { return table[i]; }

  friend bool operator==(const Func&, const Func&) = default;
  friend auto operator<=>(const Func&, const Func&) = default;
};

/// Polynomial over GF(q); coeffs[i] multiplies x^i, trailing zeros trimmed.
struct Poly {
  std::vector<Elem> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Degree of a polynomial; std::nullopt is -infinity (the zero polynomial).
/// std::optional ordering places nullopt below every value, which matches.
using Degree = std::optional<std::uint64_t>;
inline constexpr std::nullopt_t kNegInfinity = std::nullopt;

inline void trim(Poly& p) {
  while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
}

inline void validate(const FieldCtx& ctx, const Func& f) {
  if (f.size() != ctx.q()) throw std::invalid_argument("function table must have exactly q entries");
  for (Elem v : f.table)
    if (v >= ctx.q()) throw std::invalid_argument("function value out of range [0, q)");
}

inline bool is_permutation(const FieldCtx& ctx, const Func& f) {
  std::vector<bool> seen(ctx.q(), false);
  for (Elem v : f.table) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// Horner evaluation.
inline Elem evaluate(const FieldCtx& ctx, const Poly& poly, Elem x) {
  Elem acc = 0;
  for (std::size_t i = poly.coeffs.size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, x), poly.coeffs[i]);
  return acc;
}

inline Func to_func(const FieldCtx& ctx, const Poly& poly) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) f[x] = evaluate(ctx, poly, x);
  return f;
}

/// Reduces modulo X^q - X: exponent i >= q folds to ((i-1) mod (q-1)) + 1.
inline Poly reduce(const FieldCtx& ctx, const Poly& poly) {
  const std::uint64_t q = ctx.q();
  if (poly.coeffs.size() <= q) {
    Poly r = poly;
    trim(r);
    return r;
  }
  Poly r{std::vector<Elem>(q, 0)};
  for (std::uint64_t i = 0; i < poly.coeffs.size(); ++i) {
    const std::uint64_t e = i < q ? i : ((i - 1) % (q - 1)) + 1;
    r.coeffs[e] = ctx.add(r.coeffs[e], poly.coeffs[i]);
  }
  trim(r);
  return r;
}

/// Unique polynomial of degree <= q-1 agreeing with f. With c = ζ^k:
/// a_0 = f(0), a_i = -Σ_{c≠0} f(c) c^{-i} for 0 < i < q-1, a_{q-1} = -Σ_c f(c).
inline Poly interpolate(const FieldCtx& ctx, const Func& f) {
  const std::uint32_t q = ctx.q();
  const std::uint32_t m = q - 1;
  Poly poly{std::vector<Elem>(q, 0)};
  poly.coeffs[0] = f[0];
  if (q == 2) {
    poly.coeffs[1] = ctx.add(f[0], f[1]);
    trim(poly);
    return poly;
  }
  // logs of f(ζ^k), or m meaning "zero"
  std::vector<std::uint32_t> logv(m);
  Elem total = f[0];
  for (std::uint32_t k = 0; k < m; ++k) {
    const Elem v = f[ctx.exp(k)];
    logv[k] = v == 0 ? m : ctx.dlog(v);
    total = ctx.add(total, v);
  }
  for (std::uint32_t i = 1; i < m; ++i) {
    Elem acc = 0;
    const std::uint32_t step = m - i;  // exponent of ζ^k contributed by c^{-i}
    std::uint32_t e = 0;
    for (std::uint32_t k = 0; k < m; ++k) {
      if (logv[k] != m) {
        std::uint32_t t = logv[k] + e;
        if (t >= m) t -= m;
        acc = ctx.add(acc, ctx.exp(t));
      }
      e += step;
      if (e >= m) e -= m;
    }
    poly.coeffs[i] = ctx.neg(acc);
  }
  poly.coeffs[m] = ctx.neg(total);
  trim(poly);
  return poly;
}

struct DegreeWeight {
  Degree degree;
  std::uint64_t weight = 0;
  friend bool operator==(const DegreeWeight&, const DegreeWeight&) = default;
};

inline DegreeWeight measure_poly(const Poly& poly) {
  DegreeWeight dw;
  for (std::size_t i = 0; i < poly.coeffs.size(); ++i) {
    if (poly.coeffs[i] != 0) {
      dw.degree = i;
      ++dw.weight;
    }
  }
  return dw;
}

/// reduce(outer ∘ inner), computed on value tables.
inline Poly compose_reduce(const FieldCtx& ctx, const Poly& outer, const Poly& inner) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) f[x] = evaluate(ctx, outer, evaluate(ctx, inner, x));
  return interpolate(ctx, f);
}

inline Func compose(const Func& outer, const Func& inner) {
  Func r{std::vector<Elem>(inner.size())};
  for (std::size_t x = 0; x < inner.size(); ++x) r[x] = outer[inner[x]];
  return r;
}

/// |{c ∈ F_q^* : P(c) ≠ 0}| for a nonzero P of degree at most q-2.
inline std::uint64_t nonzero_value_count(const FieldCtx& ctx, const Poly& poly) {
  const auto dw = measure_poly(poly);
  if (!dw.degree) throw std::invalid_argument("nonzero_value_count: zero polynomial");
  if (*dw.degree > ctx.q() - 2) throw std::invalid_argument("nonzero_value_count: degree exceeds q-2");
  std::uint64_t count = 0;
  for (Elem c = 1; c < ctx.q(); ++c)
    if (evaluate(ctx, poly, c) != 0) ++count;
  return count;
}

/// Lagrange interpolation through distinct nodes (Newton form, then expanded).
inline Poly interpolate_nodes(const FieldCtx& ctx, const std::vector<Elem>& xs,
                              const std::vector<Elem>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate_nodes: size mismatch");
  const std::size_t m = xs.size();
  std::vector<Elem> dd = ys;
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      const Elem den = ctx.sub(xs[i], xs[i - level]);
      if (den == 0) throw std::invalid_argument("interpolate_nodes: repeated node");
      dd[i] = ctx.mul(ctx.sub(dd[i], dd[i - 1]), ctx.inv(den));
    }
  }
  // Horner on the Newton basis.
  Poly acc;
  for (std::size_t i = m; i-- > 0;) {
    // acc = acc * (X - xs[i]) + dd[i]
    Poly next{std::vector<Elem>(acc.coeffs.size() + 1, 0)};
    for (std::size_t j = 0; j < acc.coeffs.size(); ++j) {
      next.coeffs[j + 1] = ctx.add(next.coeffs[j + 1], acc.coeffs[j]);
      next.coeffs[j] = ctx.sub(next.coeffs[j], ctx.mul(acc.coeffs[j], xs[i]));
    }
    next.coeffs[0] = ctx.add(next.coeffs[0], dd[i]);
    acc = std::move(next);
    trim(acc);
  }
  return acc;
}

}  // namespace ffm
