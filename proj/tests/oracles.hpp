// Slow reference implementations used only by the tests. None of them call
// into the library's algorithms; they share only the element encoding.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ffmeter/ffmeter.hpp"

namespace oracle {

using ffm::Elem;

/// Schoolbook arithmetic on coefficient vectors reduced by the modulus.
struct NaiveField {
  std::uint32_t p, n, q;
  std::vector<std::uint32_t> modulus;

  explicit NaiveField(const ffm::FieldCtx& ctx) : p(ctx.p()), n(ctx.n()), q(ctx.q()), modulus(ctx.modulus()) {}

  std::vector<std::uint32_t> digits(Elem e) const {
    std::vector<std::uint32_t> d(n);
    for (auto& c : d) {
      c = e % p;
      e /= p;
    }
    return d;
  }
  Elem encode(const std::vector<std::uint32_t>& d) const {
    Elem e = 0;
    for (std::size_t i = d.size(); i-- > 0;) e = e * p + d[i];
    return e;
  }
  Elem add(Elem a, Elem b) const {
    auto x = digits(a), y = digits(b);
    for (std::uint32_t i = 0; i < n; ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }
  Elem neg(Elem a) const {
    auto x = digits(a);
    for (auto& c : x) c = (p - c) % p;
    return encode(x);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    const auto x = digits(a), y = digits(b);
    std::vector<std::uint32_t> prod(2 * n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (std::uint32_t d = 2 * n - 1; d >= n; --d) {
      const std::uint32_t c = prod[d];
      if (c == 0) continue;
      for (std::uint32_t i = 0; i <= n; ++i)
        prod[d - n + i] = (prod[d - n + i] + (p - c) * modulus[i]) % p;
    }
    prod.resize(n);
    return encode(prod);
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  Elem inv(Elem a) const {
    for (Elem b = 1; b < q; ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }
  std::uint64_t order(Elem a) const {
    if (a == 0) return 0;
    Elem x = a;
    std::uint64_t k = 1;
    while (x != 1) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }
};

/// Value table of a polynomial by direct power sums.
inline std::vector<Elem> eval_poly(const NaiveField& F, const std::vector<Elem>& coeffs) {
  std::vector<Elem> out(F.q, 0);
  for (Elem x = 0; x < F.q; ++x) {
    Elem acc = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc = F.add(acc, F.mul(coeffs[i], F.pow(x, i)));
    out[x] = acc;
  }
  return out;
}

/// Interpolation by expanding sum_c f(c) (1 - (X - c)^{q-1}) with schoolbook products.
inline std::vector<Elem> interpolate(const NaiveField& F, const std::vector<Elem>& f) {
  std::vector<Elem> acc(F.q, 0);
  for (Elem c = 0; c < F.q; ++c) {
    if (f[c] == 0) continue;
    std::vector<Elem> power{1};
    for (std::uint32_t k = 0; k + 1 < F.q; ++k) {
      std::vector<Elem> next(power.size() + 1, 0);
      for (std::size_t i = 0; i < power.size(); ++i) {
        next[i + 1] = F.add(next[i + 1], power[i]);
        next[i] = F.sub(next[i], F.mul(power[i], c));
      }
      power = next;
    }
    for (auto& v : power) v = F.neg(v);
    power[0] = F.add(power[0], 1);
    for (std::size_t i = 0; i < power.size(); ++i) acc[i] = F.add(acc[i], F.mul(f[c], power[i]));
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  return acc;
}

/// Every additive subgroup of F_q, found by closing generator sets under addition.
inline std::vector<std::vector<Elem>> all_subspaces(const NaiveField& F) {
  std::set<std::vector<Elem>> found{{0}};
  std::vector<std::vector<Elem>> frontier{{0}};
  while (!frontier.empty()) {
    std::vector<std::vector<Elem>> next;
    for (const auto& s : frontier)
      for (Elem g = 1; g < F.q; ++g) {
        if (std::find(s.begin(), s.end(), g) != s.end()) continue;
        std::set<Elem> closed(s.begin(), s.end());
        closed.insert(g);
        bool grew = true;
        while (grew) {
          grew = false;
          std::vector<Elem> cur(closed.begin(), closed.end());
          for (Elem a : cur)
            for (Elem b : cur) grew = closed.insert(F.add(a, b)).second || grew;
        }
        std::vector<Elem> v(closed.begin(), closed.end());
        if (found.insert(v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

inline std::uint32_t log_p(std::uint32_t p, std::size_t size) {
  std::uint32_t d = 0;
  while (size > 1) {
    size /= p;
    ++d;
  }
  return d;
}

/// Smallest k such that f - L is constant on every coset of some U of
/// codimension k, for some additive L, searching all U and all additive maps on U.
inline std::uint32_t codimension(const NaiveField& F, const std::vector<std::vector<Elem>>& subspaces,
                                 const std::vector<Elem>& f) {
  std::uint32_t best = F.n;
  for (const auto& u : subspaces) {
    const std::uint32_t dim = log_p(F.p, u.size());
    const std::uint32_t k = F.n - dim;
    if (k >= best) continue;
    // f - L is constant on x + U iff f(x+u) - f(x) = L(u) for all x and u in U.
    bool ok = true;
    std::map<Elem, Elem> l;
    for (Elem uu : u) {
      const Elem d = F.sub(f[uu], f[0]);
      l[uu] = d;
      for (Elem x = 0; x < F.q && ok; ++x) ok = F.sub(f[F.add(x, uu)], f[x]) == d;
      if (!ok) break;
    }
    if (!ok) continue;
    for (Elem a : u)
      for (Elem b : u) ok = ok && F.add(l[a], l[b]) == l[F.add(a, b)];
    if (ok) best = k;
  }
  return best;
}

/// Carlitz rank of every permutation by 0-1 BFS from the identity: left
/// composition with an affine map costs 0, with the inversion costs 1.
inline std::map<std::vector<Elem>, std::uint32_t> carlitz_ranks(const NaiveField& F) {
  std::map<std::vector<Elem>, std::uint32_t> dist;
  std::vector<Elem> id(F.q);
  for (Elem x = 0; x < F.q; ++x) id[x] = x;
  std::vector<std::vector<Elem>> current{id};
  dist[id] = 0;
  for (std::uint32_t level = 0; !current.empty(); ++level) {
    // close the level under affine maps
    std::vector<std::vector<Elem>> stack = current, members;
    while (!stack.empty()) {
      auto g = stack.back();
      stack.pop_back();
      members.push_back(g);
      for (Elem a = 1; a < F.q; ++a)
        for (Elem b = 0; b < F.q; ++b) {
          std::vector<Elem> h(F.q);
          for (Elem x = 0; x < F.q; ++x) h[x] = F.add(F.mul(a, g[x]), b);
          if (dist.emplace(h, level).second) stack.push_back(h);
        }
    }
    std::vector<std::vector<Elem>> next;
    for (const auto& g : members) {
      std::vector<Elem> h(F.q);
      for (Elem x = 0; x < F.q; ++x) h[x] = F.inv(g[x]);
      if (dist.emplace(h, level + 1).second) next.push_back(h);
    }
    current = std::move(next);
  }
  return dist;
}

/// Largest agreement of f with (ax+b)/(cx+d), ad != bc, over points off the pole. O(q^5).
inline std::uint64_t mobius_agreement(const NaiveField& F, const std::vector<Elem>& f) {
  std::uint64_t best = 0;
  for (Elem a = 0; a < F.q; ++a)
    for (Elem b = 0; b < F.q; ++b)
      for (Elem c = 0; c < F.q; ++c)
        for (Elem d = 0; d < F.q; ++d) {
          if (F.mul(a, d) == F.mul(b, c)) continue;
          std::uint64_t agree = 0;
          for (Elem x = 0; x < F.q; ++x) {
            const Elem den = F.add(F.mul(c, x), d);
            if (den == 0) continue;
            if (f[x] == F.mul(F.add(F.mul(a, x), b), F.inv(den))) ++agree;
          }
          best = std::max(best, agree);
        }
  return best;
}

/// Smallest l | q-1 with f - f(0) = a_i x^r on each coset of the l-th powers, a_i != 0.
inline std::optional<std::uint32_t> mult_index(const NaiveField& F, Elem zeta, const std::vector<Elem>& f) {
  std::vector<Elem> g(F.q);
  for (Elem x = 0; x < F.q; ++x) g[x] = F.sub(f[x], f[0]);
  for (Elem x = 1; x < F.q; ++x)
    if (g[x] == 0) return std::nullopt;
  const std::uint32_t m = F.q - 1;
  std::vector<Elem> zpow(m);
  Elem z = 1;
  for (std::uint32_t i = 0; i < m; ++i, z = F.mul(z, zeta)) zpow[i] = z;
  for (std::uint32_t l = 1; l <= m; ++l) {
    if (m % l) continue;
    for (std::uint32_t r = 1; r <= m; ++r) {
      bool ok = true;
      for (std::uint32_t i = 0; i < l && ok; ++i) {
        std::optional<Elem> a;
        for (std::uint32_t e = i; e < m && ok; e += l) {
          const Elem x = zpow[e];
          const Elem coeff = F.mul(g[x], F.inv(F.pow(x, r)));
          if (!a) a = coeff;
          ok = *a == coeff && coeff != 0;
        }
      }
      if (ok) return l;
    }
  }
  return std::nullopt;
}

/// Number of k-dimensional subspaces of F_p^n.
inline std::uint64_t gaussian_binomial(std::uint64_t p, std::uint32_t n, std::uint32_t k) {
  std::uint64_t num = 1, den = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (std::uint32_t j = 0; j < n - i; ++j) a *= p;
    for (std::uint32_t j = 0; j < i + 1; ++j) b *= p;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

}  // namespace oracle
