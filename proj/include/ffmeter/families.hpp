// Named function families and seeded random maps.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffmeter/field.hpp"
#include "ffmeter/linalg.hpp"
#include "ffmeter/measures.hpp"
#include "ffmeter/poly.hpp"

namespace ffm {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic across standard libraries: mt19937_64 is fully specified and
/// bounded draws use our own rejection step rather than a distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(detail::splitmix64(seed)) {}

  /// Independent stream for item `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(detail::splitmix64(seed) ^ detail::splitmix64(index + 0x632be59bd9b4e019ull));
  }

  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 engine_;
};

inline Func identity_func(const FieldCtx& ctx) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) f[x] = x;
  return f;
}

inline Func affine_func(const FieldCtx& ctx, Elem a, Elem b) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) f[x] = ctx.add(ctx.mul(a, x), b);
  return f;
}

inline Func monomial_func(const FieldCtx& ctx, Elem a, std::uint64_t r) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) f[x] = ctx.mul(a, r == 0 ? 1 : ctx.pow(x, r));
  return f;
}

/// x -> x^{q-2}, 0 -> 0.
inline Func inversion_func(const FieldCtx& ctx) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) f[x] = ctx.inv(x);
  return f;
}

/// f = 1 on U, 0 elsewhere.
inline Func indicator_func(const FieldCtx& ctx, const Subspace& u) {
  Func f{std::vector<Elem>(ctx.q(), 0)};
  for (Elem x : enumerate(ctx, u)) f[x] = 1;
  return f;
}

/// f(ζ^x) = x_0 + x_1 λ + ... + x_{n-1} λ^{n-1} for the base-p digits of x,
/// and f(0) = -(1 + λ + ... + λ^{n-1}).
inline Func dlog_func(const FieldCtx& ctx) {
  const std::uint32_t q = ctx.q();
  std::vector<Elem> lambda_pows(ctx.n());
  Elem lp = 1;
  for (std::uint32_t i = 0; i < ctx.n(); ++i) {
    lambda_pows[i] = lp;
    lp = ctx.mul(lp, ctx.lambda());
  }
  Func f{std::vector<Elem>(q)};
  for (std::uint32_t x = 0; x + 1 < q; ++x) {
    const auto digits = ctx.digits(x);
    Elem v = 0;
    for (std::uint32_t i = 0; i < ctx.n(); ++i) v = ctx.add(v, ctx.mul(ctx.from_int(digits[i]), lambda_pows[i]));
    f[ctx.exp(x)] = v;
  }
  Elem s = 0;
  for (Elem l : lambda_pows) s = ctx.add(s, l);
  f[0] = ctx.neg(s);
  if (!is_permutation(ctx, f)) throw std::logic_error("dlog family: table collision");
  return f;
}

inline Func random_function(const FieldCtx& ctx, std::uint64_t seed) {
  Rng rng(seed);
  Func f{std::vector<Elem>(ctx.q())};
  for (auto& v : f.table) v = static_cast<Elem>(rng.below(ctx.q()));
  return f;
}

/// Uniform over the q! permutations (Fisher-Yates).
inline Func random_permutation(const FieldCtx& ctx, std::uint64_t seed) {
  Rng rng(seed);
  Func f = identity_func(ctx);
  for (std::size_t i = f.size(); i > 1; --i) std::swap(f.table[i - 1], f.table[rng.below(i)]);
  return f;
}

/// Random bijective F_p-affine map: an invertible F_p-linear map on the digit
/// vectors plus a constant.
inline Func random_fp_affine(const FieldCtx& ctx, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Elem> images;
  while (true) {
    images.clear();
    for (std::uint32_t i = 0; i < ctx.n(); ++i) images.push_back(static_cast<Elem>(rng.below(ctx.q())));
    if (span(ctx, images).dim() == ctx.n()) break;
  }
  const Elem shift = static_cast<Elem>(rng.below(ctx.q()));
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) {
    const auto d = ctx.digits(x);
    Elem v = shift;
    for (std::uint32_t i = 0; i < ctx.n(); ++i)
      for (std::uint32_t k = 0; k < d[i]; ++k) v = ctx.add(v, images[i]);
    f[x] = v;
  }
  return f;
}

/// Named family plus parameters, as in `family:<name>[:p1,p2,...]`.
struct FamilySpec {
  std::string name;
  std::vector<std::uint64_t> params;
  std::optional<std::uint64_t> seed;
};

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"identity", "affine",    "monomial",   "inversion",
                                                 "carlitz",  "subspace_poly", "indicator", "dlog",
                                                 "cyclotomic", "random_func", "random_perm"};
  return names;
}

inline Func build(const FieldCtx& ctx, const FamilySpec& spec) {
  const auto& ps = spec.params;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (ps.size() < lo || ps.size() > hi)
      throw std::invalid_argument("family " + spec.name + ": wrong number of parameters");
  };
  auto elem = [&](std::uint64_t v) {
    if (v >= ctx.q()) throw std::invalid_argument("family " + spec.name + ": parameter out of range [0, q)");
    return static_cast<Elem>(v);
  };
  auto seed = [&]() -> std::uint64_t {
    if (spec.seed) return *spec.seed;
    need(1, 1);
    return ps[0];
  };

  if (spec.name == "identity") {
    need(0, 0);
    return identity_func(ctx);
  }
  if (spec.name == "affine") {
    need(2, 2);
    if (ps[0] == 0) throw std::invalid_argument("family affine: a must be nonzero");
    return affine_func(ctx, elem(ps[0]), elem(ps[1]));
  }
  if (spec.name == "monomial") {
    need(2, 2);
    return monomial_func(ctx, elem(ps[0]), ps[1]);
  }
  if (spec.name == "inversion") {
    need(0, 0);
    return inversion_func(ctx);
  }
  if (spec.name == "carlitz") {
    std::vector<Elem> params;
    for (auto v : ps) params.push_back(elem(v));
    validate_carlitz_params(ctx, params);
    return carlitz_func(ctx, CarlitzCertificate{static_cast<std::uint32_t>(params.size() - 2), params});
  }
  if (spec.name == "subspace_poly" || spec.name == "indicator") {
    std::vector<Elem> gens;
    for (auto v : ps) gens.push_back(elem(v));
    const Subspace u = span(ctx, gens);
    if (spec.name == "indicator") return indicator_func(ctx, u);
    return to_func(ctx, subspace_poly(ctx, u));
  }
  if (spec.name == "dlog") {
    need(0, 0);
    return dlog_func(ctx);
  }
  if (spec.name == "cyclotomic") {
    if (ps.size() < 3) throw std::invalid_argument("family cyclotomic: needs ell, r and ell constants");
    const std::uint64_t ell = ps[0], r = ps[1];
    if (ell == 0 || (ctx.q() - 1) % ell != 0) throw std::invalid_argument("family cyclotomic: ell must divide q-1");
    if (r < 1) throw std::invalid_argument("family cyclotomic: r must be at least 1");
    if (ps.size() != 2 + ell) throw std::invalid_argument("family cyclotomic: expected ell branch constants");
    CyclotomicForm form{static_cast<std::uint32_t>(ell), static_cast<std::uint32_t>(r), {}};
    for (std::size_t i = 2; i < ps.size(); ++i) {
      if (ps[i] == 0) throw std::invalid_argument("family cyclotomic: branch constants must be nonzero");
      form.branch_constants.push_back(elem(ps[i]));
    }
    return cyclotomic_func(ctx, form);
  }
  if (spec.name == "random_func") return random_function(ctx, seed());
  if (spec.name == "random_perm") return random_permutation(ctx, seed());
  throw std::invalid_argument("unknown family '" + spec.name + "'");
}

}  // namespace ffm
