// F_p-linear structure of GF(q): subspaces, linearised polynomials, kernels.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ffmeter/field.hpp"
#include "ffmeter/poly.hpp"

namespace ffm {

/// F_p-subspace of GF(q) with a reduced row-echelon basis over the digit
/// vectors. The pivot of a basis vector is its most significant nonzero
/// digit; pivots are 1, other basis vectors are 0 there, and the basis is
/// sorted by descending pivot. Equal subspaces have identical bases.
struct Subspace {
  std::vector<Elem> basis;

  std::size_t dim() const { return basis.size(); }
  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace&, const Subspace&) = default;
};

namespace detail {

inline int pivot_of(const std::vector<std::uint32_t>& d) {
  for (std::size_t i = d.size(); i-- > 0;)
    if (d[i] != 0) return static_cast<int>(i);
  return -1;
}

inline void axpy_digits(std::vector<std::uint32_t>& y, std::uint32_t a,
                        const std::vector<std::uint32_t>& x, std::uint32_t p) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<std::uint32_t>((y[i] + std::uint64_t{a} * x[i]) % p);
}

}  // namespace detail

/// Canonical echelon basis of the F_p-span of the given elements.
inline Subspace span(const FieldCtx& ctx, const std::vector<Elem>& vectors) {
  const std::uint32_t p = ctx.p();
  std::vector<std::vector<std::uint32_t>> rows;
  for (Elem v : vectors) {
    if (v >= ctx.q()) throw std::invalid_argument("span: element out of range");
    auto d = ctx.digits(v);
    for (const auto& r : rows) {
      const int piv = detail::pivot_of(r);
      if (d[piv] != 0) detail::axpy_digits(d, p - d[piv], r, p);
    }
    const int piv = detail::pivot_of(d);
    if (piv < 0) continue;
    const std::uint32_t s = detail::inv_mod_p(d[piv], p);
    for (auto& x : d) x = static_cast<std::uint32_t>(std::uint64_t{x} * s % p);
    for (auto& r : rows)
      if (r[piv] != 0) detail::axpy_digits(r, p - r[piv], d, p);
    rows.push_back(std::move(d));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return detail::pivot_of(a) > detail::pivot_of(b);
  });
  Subspace u;
  for (const auto& r : rows) u.basis.push_back(ctx.from_digits(r));
  return u;
}

/// All p^dim elements, ascending.
inline std::vector<Elem> enumerate(const FieldCtx& ctx, const Subspace& u) {
  std::vector<Elem> out{0};
  for (Elem b : u.basis) {
    const std::size_t sz = out.size();
    Elem mult = b;
    for (std::uint32_t a = 1; a < ctx.p(); ++a) {
      for (std::size_t i = 0; i < sz; ++i) out.push_back(ctx.add(out[i], mult));
      mult = ctx.add(mult, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Canonical representative of x + U: digits at the pivots of U cleared.
inline Elem coset_rep(const FieldCtx& ctx, const Subspace& u, Elem x) {
  if (u.basis.empty()) return x;
  auto d = ctx.digits(x);
  for (Elem b : u.basis) {
    const auto bd = ctx.digits(b);
    const int piv = detail::pivot_of(bd);
    if (d[piv] != 0) detail::axpy_digits(d, ctx.p() - d[piv], bd, ctx.p());
  }
  return ctx.from_digits(d);
}

inline bool contains(const FieldCtx& ctx, const Subspace& u, Elem x) { return coset_rep(ctx, u, x) == 0; }

/// Every subspace of the given dimension, via echelon patterns.
inline std::vector<Subspace> all_subspaces(const FieldCtx& ctx, std::size_t dim) {
  const std::uint32_t n = ctx.n(), p = ctx.p();
  std::vector<Subspace> out;
  if (dim > n) return out;
  // choose pivot columns, descending
  std::vector<std::uint32_t> pivots(dim);
  std::vector<bool> choose(n, false);
  std::fill(choose.end() - static_cast<std::ptrdiff_t>(dim), choose.end(), true);
  do {
    pivots.clear();
    for (std::uint32_t c = n; c-- > 0;)
      if (choose[c]) pivots.push_back(c);
    // free slots: (row, column) with column below the row's pivot and not a pivot
    std::vector<std::pair<std::size_t, std::uint32_t>> slots;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::uint32_t c = 0; c < pivots[r]; ++c)
        if (!choose[c]) slots.emplace_back(r, c);
    std::vector<std::uint32_t> assign(slots.size(), 0);
    while (true) {
      Subspace u;
      for (std::size_t r = 0; r < dim; ++r) {
        std::vector<std::uint32_t> d(n, 0);
        d[pivots[r]] = 1;
        u.basis.push_back(ctx.from_digits(d));
      }
      for (std::size_t s = 0; s < slots.size(); ++s) {
        auto d = ctx.digits(u.basis[slots[s].first]);
        d[slots[s].second] = assign[s];
        u.basis[slots[s].first] = ctx.from_digits(d);
      }
      out.push_back(std::move(u));
      std::size_t s = 0;
      while (s < assign.size() && ++assign[s] == p) assign[s++] = 0;
      if (s == assign.size()) break;
    }
  } while (std::next_permutation(choose.begin(), choose.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// M(X) = Σ_j coeffs[j] X^{p^j}. Index n is allowed so that X^q - X is representable.
struct LinearisedPoly {
  std::vector<Elem> coeffs;

  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](Elem c) { return c == 0; });
  }
  friend bool operator==(const LinearisedPoly&, const LinearisedPoly&) = default;
};

inline Elem evaluate(const FieldCtx& ctx, const LinearisedPoly& m, Elem x) {
  Elem acc = 0;
  Elem xp = x;  // x^{p^j}
  for (std::size_t j = 0; j < m.coeffs.size(); ++j) {
    if (m.coeffs[j] != 0) acc = ctx.add(acc, ctx.mul(m.coeffs[j], xp));
    xp = ctx.pow(xp, ctx.p());
  }
  return acc;
}

inline Func to_func(const FieldCtx& ctx, const LinearisedPoly& m) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) f[x] = evaluate(ctx, m, x);
  return f;
}

/// Formal degree p^j of the top nonzero coefficient; nullopt for the zero polynomial.
inline Degree formal_degree(const FieldCtx& ctx, const LinearisedPoly& m) {
  Degree d;
  std::uint64_t pj = 1;
  for (std::size_t j = 0; j < m.coeffs.size(); ++j) {
    if (m.coeffs[j] != 0) d = pj;
    pj *= ctx.p();
  }
  return d;
}

/// Expanded polynomial, reduced modulo X^q - X.
inline Poly to_poly(const FieldCtx& ctx, const LinearisedPoly& m) {
  Poly raw;
  std::uint64_t pj = 1;
  for (std::size_t j = 0; j < m.coeffs.size(); ++j) {
    if (raw.coeffs.size() <= pj) raw.coeffs.resize(pj + 1, 0);
    raw.coeffs[pj] = ctx.add(raw.coeffs[pj], m.coeffs[j]);
    pj *= ctx.p();
  }
  return reduce(ctx, raw);
}

/// Dense polynomial product, no reduction.
inline Poly multiply(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r{std::vector<Elem>(a.coeffs.size() + b.coeffs.size() - 1, 0)};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r.coeffs[i + j] = ctx.add(r.coeffs[i + j], ctx.mul(a.coeffs[i], b.coeffs[j]));
  trim(r);
  return r;
}

/// h_U(X) = ∏_{u∈U}(X - u), built with h_{U+<v>} = h_U^p - h_U(v)^{p-1} h_U.
/// The product is also expanded directly and checked to carry only X^{p^j} terms.
inline LinearisedPoly subspace_poly(const FieldCtx& ctx, const Subspace& u) {
  LinearisedPoly h{{1}};
  for (Elem v : u.basis) {
    const Elem hv = evaluate(ctx, h, v);
    const Elem scale = ctx.pow(hv, ctx.p() - 1);
    LinearisedPoly next{std::vector<Elem>(h.coeffs.size() + 1, 0)};
    for (std::size_t j = 0; j < h.coeffs.size(); ++j) {
      next.coeffs[j + 1] = ctx.add(next.coeffs[j + 1], ctx.pow(h.coeffs[j], ctx.p()));
      next.coeffs[j] = ctx.sub(next.coeffs[j], ctx.mul(scale, h.coeffs[j]));
    }
    h = std::move(next);
  }

  Poly product{{1}};
  for (Elem x : enumerate(ctx, u)) product = multiply(ctx, product, Poly{{ctx.neg(x), 1}});
  std::uint64_t pj = 1;
  std::size_t j = 0;
  for (std::uint64_t e = 0; e < product.coeffs.size(); ++e) {
    if (e == pj) {
      if (j >= h.coeffs.size() || product.coeffs[e] != h.coeffs[j])
        throw std::logic_error("subspace_poly: recursion disagrees with the expanded product");
      ++j;
      pj *= ctx.p();
    } else if (product.coeffs[e] != 0) {
      throw std::logic_error("subspace_poly: exponent that is not a power of p survived");
    }
  }
  return h;
}

/// {x : M(x) = 0}.
inline Subspace kernel(const FieldCtx& ctx, const LinearisedPoly& m) {
  std::vector<Elem> roots;
  for (Elem x = 0; x < ctx.q(); ++x)
    if (evaluate(ctx, m, x) == 0) roots.push_back(x);
  Subspace k = span(ctx, roots);
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < k.dim(); ++i) size *= ctx.p();
  if (size != roots.size()) throw std::logic_error("kernel: root set is not a subspace");
  return k;
}

/// Solves A x = b over GF(q); nullopt when A is singular.
inline std::optional<std::vector<Elem>> solve_linear(const FieldCtx& ctx, std::vector<std::vector<Elem>> a,
                                                     std::vector<Elem> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Elem s = ctx.inv(a[col][col]);
    for (auto& x : a[col]) x = ctx.mul(x, s);
    b[col] = ctx.mul(b[col], s);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Elem f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] = ctx.sub(a[r][c], ctx.mul(f, a[col][c]));
      b[r] = ctx.sub(b[r], ctx.mul(f, b[col]));
    }
  }
  return b;
}

/// The linearised polynomial of degree <= p^{dim-1} taking the given values on
/// the basis of U (Moore system). Zero map for dim 0.
inline LinearisedPoly linear_extension(const FieldCtx& ctx, const Subspace& u, const std::vector<Elem>& values) {
  if (values.size() != u.dim()) throw std::invalid_argument("linear_extension: one value per basis vector");
  const std::size_t d = u.dim();
  if (d == 0) return LinearisedPoly{};
  std::vector<std::vector<Elem>> moore(d, std::vector<Elem>(d));
  for (std::size_t i = 0; i < d; ++i) {
    Elem xp = u.basis[i];
    for (std::size_t j = 0; j < d; ++j) {
      moore[i][j] = xp;
      xp = ctx.pow(xp, ctx.p());
    }
  }
  auto sol = solve_linear(ctx, std::move(moore), values);
  if (!sol) throw std::logic_error("linear_extension: singular Moore matrix");
  LinearisedPoly m{std::move(*sol)};
  for (std::size_t i = 0; i < d; ++i)
    if (evaluate(ctx, m, u.basis[i]) != values[i]) throw std::logic_error("linear_extension: solve check failed");
  return m;
}

}  // namespace ffm
