// Verdicts for the inequalities relating degree, weight, Carlitz rank,
// additive index and multiplicative index. Every comparison is exact.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffmeter/families.hpp"
#include "ffmeter/field.hpp"
#include "ffmeter/measures.hpp"
#include "ffmeter/poly.hpp"

namespace ffm {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Relation { kGe, kGt, kLe, kEq };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::kGe: return ">=";
    case Relation::kGt: return ">";
    case Relation::kLe: return "<=";
    case Relation::kEq: return "==";
  }
  return "?";
}

/// Outcome of one bound on one input. When not applicable, holds is true and
/// lhs/rhs are meaningless; `note` says why.
struct BoundVerdict {
  std::string id;
  bool applicable = false;
  bool holds = true;
  /// The right-hand side makes the inequality trivially true (e.g. a negative lower bound on a rank).
  bool vacuous = false;
  /// Violations of a provisional bound are reported as findings and do not fail a run.
  bool provisional = false;
  Rational lhs{0}, rhs{0};
  Relation relation = Relation::kGe;
  std::string note;

  /// lhs - rhs for lower bounds, rhs - lhs for upper bounds; negative iff violated (strict: <= 0).
  Rational slack() const { return relation == Relation::kLe ? rhs - lhs : lhs - rhs; }
};

inline BoundVerdict not_applicable(std::string id, std::string note) {
  BoundVerdict v;
  v.id = std::move(id);
  v.note = std::move(note);
  return v;
}

inline BoundVerdict compare(std::string id, Rational lhs, Relation rel, Rational rhs) {
  BoundVerdict v;
  v.id = std::move(id);
  v.applicable = true;
  v.relation = rel;
  switch (rel) {
    case Relation::kGe: v.holds = lhs >= rhs; break;
    case Relation::kGt: v.holds = lhs > rhs; break;
    case Relation::kLe: v.holds = lhs <= rhs; break;
    case Relation::kEq: v.holds = lhs == rhs; break;
  }
  v.lhs = std::move(lhs);
  v.rhs = std::move(rhs);
  return v;
}

namespace detail {

inline std::uint64_t isqrt(std::uint64_t v) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

/// Lower bound "Crk rel rhs" when only a lower bound on Crk may be known.
inline BoundVerdict crk_lower_bound(std::string id, const MeasureReport& r, Relation rel, Rational rhs) {
  const auto& crk = *r.carlitz_rank;
  auto v = compare(std::move(id), Rational(crk.value), rel, rhs);
  v.vacuous = rel == Relation::kGe ? rhs <= 0 : rhs < 0;
  if (!crk.exact) {
    if (v.holds) {
      v.note = "established from a lower bound on the Carlitz rank";
    } else {
      v = not_applicable(v.id, "exact Carlitz rank unavailable and the lower bound does not settle it");
    }
  }
  return v;
}

inline bool has_rank(const MeasureReport& r) { return r.permutation && r.carlitz_rank.has_value(); }

}  // namespace detail

/// f(x) = a + b x^{q-2} for some a and b != 0, by comparison against all q(q-1) candidates.
inline bool is_inversion_like(const FieldCtx& ctx, const Func& f) {
  const Elem q = ctx.q();
  for (Elem b = 1; b < q; ++b)
    for (Elem a = 0; a < q; ++a) {
      bool match = true;
      for (Elem x = 0; x < q && match; ++x) match = f[x] == ctx.add(a, ctx.mul(b, ctx.inv(x)));
      if (match) return true;
    }
  return false;
}

/// f(x) = a x^{p^j} with a != 0 and 0 <= j < n.
inline bool is_frobenius_monomial(const FieldCtx& ctx, const Func& f) {
  const Elem q = ctx.q();
  for (Elem a = 1; a < q; ++a) {
    std::uint64_t pj = 1;
    for (std::uint32_t j = 0; j < ctx.n(); ++j, pj *= ctx.p()) {
      bool match = true;
      for (Elem x = 0; x < q && match; ++x) match = f[x] == ctx.mul(a, ctx.pow(x, pj));
      if (match) return true;
    }
  }
  return false;
}

/// Crk >= q - deg - 1 for permutations of degree > 1.
inline BoundVerdict check_deg_crk(const MeasureReport& r, std::uint32_t q) {
  const std::string id = "deg_crk";
  if (!detail::has_rank(r)) return not_applicable(id, "not a permutation");
  if (!(r.degree > 1)) return not_applicable(id, "degree at most 1");
  return detail::crk_lower_bound(id, r, Relation::kGe,
                                 Rational(static_cast<std::int64_t>(q) - static_cast<std::int64_t>(*r.degree) - 1));
}

/// Crk > q/(w+2) unless f = a + b x^{q-2}; needs deg > 1 and Crk > 0.
inline BoundVerdict check_weight_crk(const MeasureReport& r, const FieldCtx& ctx, const Func& f) {
  const std::string id = "weight_crk";
  if (!detail::has_rank(r)) return not_applicable(id, "not a permutation");
  if (!(r.degree > 1)) return not_applicable(id, "degree at most 1");
  if (r.carlitz_rank->exact && r.carlitz_rank->value == 0) return not_applicable(id, "Carlitz rank 0");
  if (is_inversion_like(ctx, f)) return not_applicable(id, "of the form a + b x^(q-2)");
  return detail::crk_lower_bound(id, r, Relation::kGt,
                                 Rational(ctx.q()) / Rational(static_cast<std::int64_t>(r.weight) + 2));
}

/// AddInd > q/(Crk+1) - 1 for permutations of degree > 1.
inline BoundVerdict check_crk_addind(const MeasureReport& r, std::uint32_t q) {
  const std::string id = "crk_addind";
  if (!detail::has_rank(r)) return not_applicable(id, "not a permutation");
  if (!(r.degree > 1)) return not_applicable(id, "degree at most 1");
  if (!r.carlitz_rank->exact) return not_applicable(id, "exact Carlitz rank unavailable");
  return compare(id, Rational(r.add_index), Relation::kGt,
                 Rational(q) / Rational(r.carlitz_rank->value + 1) - 1);
}

/// AddInd >= min{q/r, (q-2r)/2} for permutations of Carlitz rank r >= 1. Provisional.
inline BoundVerdict check_crk_addind_min(const MeasureReport& r, std::uint32_t q) {
  const std::string id = "crk_addind_min";
  BoundVerdict v;
  if (!detail::has_rank(r)) {
    v = not_applicable(id, "not a permutation");
  } else if (!r.carlitz_rank->exact) {
    v = not_applicable(id, "exact Carlitz rank unavailable");
  } else if (r.carlitz_rank->value == 0) {
    v = not_applicable(id, "Carlitz rank 0");
  } else {
    const std::int64_t rank = r.carlitz_rank->value;
    const Rational a = Rational(q) / Rational(rank);
    const Rational b = Rational(static_cast<std::int64_t>(q) - 2 * rank, 2);
    v = compare(id, Rational(r.add_index), Relation::kGe, a < b ? a : b);
    v.vacuous = v.rhs <= 1;
  }
  v.provisional = true;
  return v;
}

/// q - (max Möbius agreement) <= Crk.
inline BoundVerdict check_mobius_crk(const MeasureReport& r) {
  const std::string id = "mobius_crk";
  if (!detail::has_rank(r) || !r.mobius_lower_bound) return not_applicable(id, "not a permutation");
  if (!r.carlitz_rank->exact) return not_applicable(id, "exact Carlitz rank unavailable");
  return compare(id, Rational(r.carlitz_rank->value), Relation::kGe, Rational(*r.mobius_lower_bound));
}

/// deg(f) AddInd(f) >= q when AddInd > 1.
inline BoundVerdict check_deg_addind(const MeasureReport& r, std::uint32_t q) {
  const std::string id = "deg_addind";
  if (r.add_index <= 1) return not_applicable(id, "additive index 1");
  return compare(id, Rational(static_cast<std::uint64_t>(*r.degree) * r.add_index), Relation::kGe, Rational(q));
}

/// The weight bound for additive index p^k: n+1 for k = 0,
/// (((n-k+1)^p - 1)/(n-k))^k for 1 <= k < n.
inline std::optional<BigInt> weight_addind_bound(std::uint32_t p, std::uint32_t n, std::uint32_t k) {
  if (k >= n) return std::nullopt;
  if (k == 0) return BigInt(n + 1);
  const BigInt base = n - k + 1;
  BigInt num = boost::multiprecision::pow(base, p) - 1;
  BigInt inner = num / (n - k);
  return boost::multiprecision::pow(inner, k);
}

inline BoundVerdict check_weight_addind(const MeasureReport& r, std::uint32_t p, std::uint32_t n) {
  const std::string id = "weight_addind";
  const auto bound = weight_addind_bound(p, n, r.codim);
  if (!bound) return not_applicable(id, "codimension equals n");
  return compare(id, Rational(r.weight), Relation::kLe, Rational(*bound));
}

/// deg >= (q-1)/Ind when Ind > 1.
inline BoundVerdict check_ind_deg(const MeasureReport& r, std::uint32_t q) {
  const std::string id = "ind_deg";
  if (!r.mult_index) return not_applicable(id, "multiplicative index undefined");
  if (*r.mult_index <= 1) return not_applicable(id, "multiplicative index 1");
  return compare(id, Rational(static_cast<std::uint64_t>(*r.degree)), Relation::kGe,
                 Rational(q - 1) / Rational(*r.mult_index));
}

/// w <= Ind for maps fixing 0 (cyclotomic mappings proper).
inline BoundVerdict check_ind_weight(const MeasureReport& r, const Func& f) {
  const std::string id = "ind_weight";
  if (!r.mult_index) return not_applicable(id, "multiplicative index undefined");
  if (f[0] != 0) return not_applicable(id, "f(0) != 0");
  return compare(id, Rational(r.weight), Relation::kLe, Rational(*r.mult_index));
}

/// Largest agreement of f with x -> a x or x -> a x^{q-2}, a != 0.
inline std::uint64_t line_hyperbola_agreement(const FieldCtx& ctx, const Func& f) {
  std::uint64_t best = 0;
  for (Elem a = 1; a < ctx.q(); ++a) {
    std::uint64_t line = 0, hyper = 0;
    for (Elem x = 0; x < ctx.q(); ++x) {
      line += f[x] == ctx.mul(a, x);
      hyper += f[x] == ctx.mul(a, ctx.inv(x));
    }
    best = std::max({best, line, hyper});
  }
  return best;
}

/// Crk >= q - 3 max{Ind, sqrt q} for permutations agreeing with every a x and
/// a x^{q-2} on at most 3 sqrt(q) points. As Crk is an integer the right side
/// is reported as its ceiling, q - max{3 Ind, floor(sqrt(9q))}.
inline BoundVerdict check_ind_crk(const FieldCtx& ctx, const Func& f, const MeasureReport& r) {
  const std::string id = "ind_crk";
  if (!detail::has_rank(r)) return not_applicable(id, "not a permutation");
  const std::uint64_t q = ctx.q();
  const std::uint64_t agreement = line_hyperbola_agreement(ctx, f);
  if (agreement * agreement > 9 * q) return not_applicable(id, "close to a line or a hyperbola");
  if (!r.mult_index) return not_applicable(id, "multiplicative index undefined");
  const std::uint64_t three_max = std::max<std::uint64_t>(3 * *r.mult_index, detail::isqrt(9 * q));
  auto v = detail::crk_lower_bound(id, r, Relation::kGe,
                                   Rational(static_cast<std::int64_t>(q) - static_cast<std::int64_t>(three_max)));
  return v;
}

/// For f(0) = 0 not of the form a x^{p^j}: Ind > p or AddInd >= p.
/// An undefined index counts as Ind > p.
inline BoundVerdict check_small_conjecture(const FieldCtx& ctx, const Func& f, const MeasureReport& r) {
  const std::string id = "small_conjecture";
  if (f[0] != 0) return not_applicable(id, "f(0) != 0");
  if (is_frobenius_monomial(ctx, f)) return not_applicable(id, "of the form a x^(p^j)");
  const bool ind_large = !r.mult_index || *r.mult_index > ctx.p();
  const bool add_large = r.add_index >= ctx.p();
  BoundVerdict v = compare(id, Rational(ind_large || add_large ? 1 : 0), Relation::kEq, Rational(1));
  v.note = "lhs is 1 when Ind > p or AddInd >= p";
  return v;
}

/// Runs every per-function bound that the report supports.
inline std::vector<BoundVerdict> check_function(const FieldCtx& ctx, const Func& f, const MeasureReport& r) {
  return {check_deg_crk(r, ctx.q()),      check_weight_crk(r, ctx, f),
          check_crk_addind(r, ctx.q()),   check_crk_addind_min(r, ctx.q()),
          check_mobius_crk(r),            check_deg_addind(r, ctx.q()),
          check_weight_addind(r, ctx.p(), ctx.n()), check_ind_deg(r, ctx.q()),
          check_ind_weight(r, f),         check_ind_crk(ctx, f, r),
          check_small_conjecture(ctx, f, r)};
}

inline const std::vector<std::string>& function_bound_ids() {
  static const std::vector<std::string> ids = {"deg_crk",   "weight_crk",   "crk_addind", "crk_addind_min",
                                               "mobius_crk", "deg_addind",  "weight_addind", "ind_deg",
                                               "ind_weight", "ind_crk",     "small_conjecture"};
  return ids;
}

// ---------------------------------------------------------------------------
// Field-level checks
// ---------------------------------------------------------------------------

/// AddInd(x^{q-2}) is 1 for q <= 4 and q otherwise; the same for random
/// Carlitz-rank-1 maps (a x + b)^{q-2} + c.
inline std::vector<BoundVerdict> check_inversion(const FieldCtx& ctx, std::uint64_t seed = 1, std::uint32_t samples = 32) {
  const std::uint64_t q = ctx.q();
  const std::uint64_t expected = q <= 4 ? 1 : q;
  std::vector<BoundVerdict> out;
  out.push_back(compare("inversion_addind", Rational(codimension(ctx, inversion_func(ctx)).add_index), Relation::kEq,
                        Rational(expected)));
  std::uint64_t mismatches = 0;
  for (std::uint32_t i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, i);
    const Elem a = static_cast<Elem>(1 + rng.below(q - 1));
    const Elem b = static_cast<Elem>(rng.below(q));
    const Elem c = static_cast<Elem>(rng.below(q));
    const Func f = carlitz_func(ctx, CarlitzCertificate{1, {a, b, c}});
    if (codimension(ctx, f).add_index != expected) ++mismatches;
  }
  auto v = compare("rank_one_addind", Rational(mismatches), Relation::kEq, Rational(0));
  v.note = "lhs counts sampled rank-1 maps whose additive index differs from the inversion's";
  out.push_back(std::move(v));
  return out;
}

/// codim(g∘h) <= codim g + codim h, and equality with the other factor when
/// one factor is a bijective F_p-affine map.
inline std::vector<BoundVerdict> check_compo(const FieldCtx& ctx, const Func& g, const Func& h) {
  const auto cg = codimension(ctx, g).codim, ch = codimension(ctx, h).codim;
  const auto cf = codimension(ctx, compose(g, h)).codim;
  std::vector<BoundVerdict> out;
  out.push_back(compare("compo_subadditive", Rational(cf), Relation::kLe, Rational(cg + ch)));
  const bool g_affine = cg == 0 && is_permutation(ctx, g);
  const bool h_affine = ch == 0 && is_permutation(ctx, h);
  if (g_affine || h_affine) {
    out.push_back(compare("compo_affine_invariance", Rational(cf), Relation::kEq, Rational(g_affine ? ch : cg)));
  } else {
    out.push_back(not_applicable("compo_affine_invariance", "neither factor is bijective F_p-affine"));
  }
  return out;
}

/// Degree, weight, additive index, Carlitz rank and multiplicative index of the
/// discrete-log permutation against their lower bounds.
inline std::vector<BoundVerdict> check_dlog(const FieldCtx& ctx, std::uint32_t exact_crk_max = 9) {
  const std::int64_t q = ctx.q(), p = ctx.p(), n = ctx.n();
  const Func f = dlog_func(ctx);
  MeasureOptions opts;
  opts.exact_crk_max = exact_crk_max;
  const MeasureReport r = measure_all(ctx, f, opts);
  std::vector<BoundVerdict> out;
  out.push_back(compare("dlog_deg", Rational(static_cast<std::int64_t>(*r.degree)), Relation::kGe,
                        Rational(q - q / p - 1)));
  out.push_back(compare("dlog_weight", Rational(r.weight), Relation::kGe, Rational(q - q / p)));
  out.push_back(compare("dlog_addind", Rational(r.add_index), Relation::kGe, Rational(q, n + 2)));

  if (p == 2) {
    out.push_back(not_applicable("dlog_crk", "the Carlitz rank bound needs p > 2"));
  } else {
    // p^n - 3 (2p)^{n/2}; Crk is an integer so compare against the ceiling q - floor(sqrt(9 (2p)^n)).
    std::uint64_t two_p_n = 1;
    for (std::int64_t i = 0; i < n; ++i) two_p_n *= static_cast<std::uint64_t>(2 * p);
    const std::int64_t rhs = q - static_cast<std::int64_t>(detail::isqrt(9 * two_p_n));
    auto v = detail::crk_lower_bound("dlog_crk", r, Relation::kGe, Rational(rhs));
    const std::string mobius = "Moebius lower bound " + std::to_string(*r.mobius_lower_bound);
    const std::string rank = r.carlitz_rank->exact ? "exact Carlitz rank " + std::to_string(r.carlitz_rank->value)
                                                   : "exact Carlitz rank not computed";
    if (!v.applicable) {
      v.note = "not desk-verifiable: the right side is positive, " + rank + ", " + mobius + " does not reach it";
    } else if (v.vacuous) {
      v.note = "holds vacuously: the right side is not positive; " + rank + "; " + mobius;
    } else if (!r.carlitz_rank->exact) {
      v.note = "established by the " + mobius + "; " + rank;
    } else {
      v.note = rank + "; " + mobius;
    }
    out.push_back(std::move(v));
  }
  out.push_back(compare("dlog_ind", Rational(static_cast<std::int64_t>(*r.mult_index)), Relation::kGe,
                        Rational(q - 1, 6)));
  return out;
}

/// The interpolation polynomial of a cyclotomic mapping has support only on
/// exponents congruent to r modulo (q-1)/ℓ. lhs counts exponents outside that class.
inline BoundVerdict check_intpol_form(const FieldCtx& ctx, const CyclotomicForm& form) {
  const Poly poly = interpolate(ctx, cyclotomic_func(ctx, form));
  const std::uint64_t modulus = (ctx.q() - 1) / form.ell;
  std::uint64_t stray = 0;
  for (std::uint64_t e = 0; e < poly.coeffs.size(); ++e)
    if (poly.coeffs[e] != 0 && (e == 0 || e % modulus != form.r % modulus)) ++stray;
  return compare("intpol_form", Rational(stray), Relation::kEq, Rational(0));
}

}  // namespace ffm
