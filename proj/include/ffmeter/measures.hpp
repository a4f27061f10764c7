// The five complexity measures of a self-map of GF(q): degree, weight,
// Carlitz rank, additive index and multiplicative index, together with the
// certificates that witness them.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ffmeter/field.hpp"
#include "ffmeter/linalg.hpp"
#include "ffmeter/poly.hpp"

namespace ffm {

inline std::uint64_t ipow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

inline DegreeWeight deg_weight(const FieldCtx& ctx, const Func& f) { return measure_poly(interpolate(ctx, f)); }

// ---------------------------------------------------------------------------
// Additive index
// ---------------------------------------------------------------------------

/// V_f = {u : x -> f(x+u) - f(x) is constant}. This set is closed under
/// addition, and f has codimension n - dim V_f.
inline Subspace period_subspace(const FieldCtx& ctx, const Func& f) {
  const Elem q = ctx.q();
  std::vector<Elem> periods;
  std::vector<bool> member(q, false);
  for (Elem u = 0; u < q; ++u) {
    const Elem c = ctx.sub(f[u], f[0]);
    bool ok = true;
    for (Elem x = 1; x < q && ok; ++x) ok = ctx.sub(f[ctx.add(x, u)], f[x]) == c;
    if (ok) {
      periods.push_back(u);
      member[u] = true;
    }
  }
  for (Elem a : periods)
    for (Elem b : periods)
      if (!member[ctx.add(a, b)]) throw std::logic_error("period_subspace: period set not closed under addition");
  Subspace v = span(ctx, periods);
  if (ipow(ctx.p(), v.dim()) != periods.size())
    throw std::logic_error("period_subspace: period set is not a subspace");
  return v;
}

struct Codimension {
  std::uint32_t codim = 0;
  std::uint64_t add_index = 1;
  friend bool operator==(const Codimension&, const Codimension&) = default;
};

inline Codimension codimension(const FieldCtx& ctx, const Func& f) {
  const auto v = period_subspace(ctx, f);
  const auto k = static_cast<std::uint32_t>(ctx.n() - v.dim());
  return {k, ipow(ctx.p(), k)};
}

/// Smallest k such that some subspace U of codimension k and some linearised M
/// make f - M constant on every coset of U. Searches subspaces directly.
inline std::uint32_t codimension_oracle(const FieldCtx& ctx, const Func& f) {
  if (ctx.n() > 4) throw std::invalid_argument("codimension_oracle: subspace enumeration needs n <= 4");
  const std::uint32_t n = ctx.n();
  for (std::uint32_t k = 0; k <= n; ++k) {
    for (const auto& u : all_subspaces(ctx, n - k)) {
      std::vector<Elem> values;
      for (Elem b : u.basis) values.push_back(ctx.sub(f[b], f[0]));
      const auto m = linear_extension(ctx, u, values);
      std::map<Elem, Elem> constant_on_coset;
      bool ok = true;
      for (Elem x = 0; x < ctx.q() && ok; ++x) {
        const Elem h = ctx.sub(f[x], evaluate(ctx, m, x));
        auto [it, fresh] = constant_on_coset.emplace(coset_rep(ctx, u, x), h);
        ok = fresh || it->second == h;
      }
      if (ok) return k;
    }
  }
  throw std::logic_error("codimension_oracle: no subspace matched, even the zero subspace");
}

/// f(x) = g(M(x)) + L(x) with M the subspace polynomial of the period subspace.
struct AdditiveDecomposition {
  std::uint32_t codim = 0;
  Subspace period_subspace;
  LinearisedPoly kernel_poly;  // M
  LinearisedPoly linear_part;  // L, degree <= p^{n-k-1}
  Poly outer;                  // g, degree <= p^k - 1
  std::map<Elem, Elem> coset_constants;
};

inline AdditiveDecomposition additive_decompose(const FieldCtx& ctx, const Func& f) {
  AdditiveDecomposition d;
  d.period_subspace = period_subspace(ctx, f);
  d.codim = static_cast<std::uint32_t>(ctx.n() - d.period_subspace.dim());
  std::vector<Elem> values;
  for (Elem b : d.period_subspace.basis) values.push_back(ctx.sub(f[b], f[0]));
  d.linear_part = linear_extension(ctx, d.period_subspace, values);
  d.kernel_poly = subspace_poly(ctx, d.period_subspace);

  std::map<Elem, Elem> by_m_value;  // M(x) -> f(x) - L(x); distinct per coset
  for (Elem x = 0; x < ctx.q(); ++x) {
    const Elem h = ctx.sub(f[x], evaluate(ctx, d.linear_part, x));
    const Elem rep = coset_rep(ctx, d.period_subspace, x);
    auto [it, fresh] = d.coset_constants.emplace(rep, h);
    if (!fresh && it->second != h) throw std::logic_error("additive_decompose: f - L not constant on a coset");
    const Elem mx = evaluate(ctx, d.kernel_poly, x);
    auto [jt, fresh_m] = by_m_value.emplace(mx, h);
    if (!fresh_m && jt->second != h) throw std::logic_error("additive_decompose: M merges two cosets");
  }
  if (by_m_value.size() != ipow(ctx.p(), d.codim))
    throw std::logic_error("additive_decompose: M does not separate the cosets");
  std::vector<Elem> xs, ys;
  for (const auto& [mx, h] : by_m_value) {
    xs.push_back(mx);
    ys.push_back(h);
  }
  d.outer = interpolate_nodes(ctx, xs, ys);

  for (Elem x = 0; x < ctx.q(); ++x) {
    const Elem lhs = ctx.add(evaluate(ctx, d.outer, evaluate(ctx, d.kernel_poly, x)), evaluate(ctx, d.linear_part, x));
    if (lhs != f[x]) throw std::logic_error("additive_decompose: recomposition failed");
  }
  return d;
}

inline Func recompose(const FieldCtx& ctx, const AdditiveDecomposition& d) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x)
    f[x] = ctx.add(evaluate(ctx, d.outer, evaluate(ctx, d.kernel_poly, x)), evaluate(ctx, d.linear_part, x));
  return f;
}

// ---------------------------------------------------------------------------
// Carlitz rank
// ---------------------------------------------------------------------------

/// Parameters of P_r(a_0, ..., a_{r+1}; x) =
/// (...((a_0 x + a_1)^{q-2} + a_2)^{q-2} + ... + a_r)^{q-2} + a_{r+1}.
struct CarlitzCertificate {
  std::uint32_t rank = 0;
  std::vector<Elem> params;
};

inline Elem evaluate_carlitz(const FieldCtx& ctx, const std::vector<Elem>& params, Elem x) {
  Elem y = ctx.add(ctx.mul(params[0], x), params[1]);
  for (std::size_t i = 2; i < params.size(); ++i) y = ctx.add(ctx.inv(y), params[i]);
  return y;
}

/// a_0 and a_2..a_r must be nonzero.
inline void validate_carlitz_params(const FieldCtx& ctx, const std::vector<Elem>& params) {
  if (params.size() < 2) throw std::invalid_argument("carlitz form needs at least a_0, a_1");
  for (Elem a : params)
    if (a >= ctx.q()) throw std::invalid_argument("carlitz parameter out of range");
  if (params[0] == 0) throw std::invalid_argument("carlitz form needs a_0 != 0");
  for (std::size_t i = 2; i + 1 < params.size(); ++i)
    if (params[i] == 0) throw std::invalid_argument("carlitz form needs a_2..a_r nonzero");
}

inline Func carlitz_func(const FieldCtx& ctx, const CarlitzCertificate& cert) {
  Func f{std::vector<Elem>(ctx.q())};
  for (Elem x = 0; x < ctx.q(); ++x) f[x] = evaluate_carlitz(ctx, cert.params, x);
  return f;
}

/// Breadth-first closure of the permutations reachable from the affine maps
/// by x -> g(x)^{q-2} + c. Level r holds exactly the permutations of Carlitz
/// rank r. Built once per field and shared read-only afterwards.
class CarlitzTable {
 public:
  /// Full closure when max_rank is empty (only sensible for q <= 9).
  static CarlitzTable build(const FieldCtx& ctx, std::optional<std::uint32_t> max_rank = std::nullopt,
                            std::size_t node_limit = 20'000'000) {
    if (ctx.q() > 256) throw std::invalid_argument("CarlitzTable: q must be at most 256");
    CarlitzTable t(ctx.q());
    const std::uint32_t q = ctx.q();
    std::vector<std::uint8_t> cand(q);
    for (Elem a0 = 1; a0 < q; ++a0)
      for (Elem a1 = 0; a1 < q; ++a1) {
        for (Elem x = 0; x < q; ++x) cand[x] = static_cast<std::uint8_t>(ctx.add(ctx.mul(a0, x), a1));
        t.try_insert(cand, Node{0, 0, 0, static_cast<std::uint8_t>(a0), static_cast<std::uint8_t>(a1)});
      }
    std::vector<Elem> inv_table(q);
    for (Elem x = 0; x < q; ++x) inv_table[x] = ctx.inv(x);
    std::size_t level_begin = 0, level_end = t.nodes_.size();
    std::uint32_t rank = 0;
    while (level_begin < level_end && (!max_rank || rank < *max_rank)) {
      ++rank;
      for (std::size_t i = level_begin; i < level_end; ++i) {
        for (Elem c = 0; c < q; ++c) {
          for (Elem x = 0; x < q; ++x)
            cand[x] = static_cast<std::uint8_t>(ctx.add(inv_table[t.storage_[i * q + x]], c));
          t.try_insert(cand, Node{static_cast<std::uint32_t>(i), static_cast<std::uint8_t>(c),
                                  static_cast<std::uint8_t>(rank), 0, 0});
        }
        if (t.nodes_.size() > node_limit) throw std::length_error("CarlitzTable: node limit exceeded");
      }
      level_begin = level_end;
      level_end = t.nodes_.size();
    }
    t.complete_ = level_begin == level_end;
    t.depth_ = t.nodes_.empty() ? 0 : t.nodes_.back().rank;
    return t;
  }

  /// True when the closure terminated, i.e. every permutation is present.
  bool complete() const { return complete_; }
  /// Highest rank present.
  std::uint32_t depth() const { return depth_; }
  std::size_t size() const { return nodes_.size(); }
  std::uint32_t q() const { return q_; }

  std::optional<CarlitzCertificate> find(const Func& f) const {
    if (f.size() != q_) return std::nullopt;
    std::vector<std::uint8_t> probe(q_);
    for (std::uint32_t x = 0; x < q_; ++x) {
      if (f[x] >= q_) return std::nullopt;
      probe[x] = static_cast<std::uint8_t>(f[x]);
    }
    const auto slot = lookup(probe.data());
    if (slots_[slot] == 0) return std::nullopt;
    std::uint32_t i = slots_[slot] - 1;
    CarlitzCertificate cert;
    cert.rank = nodes_[i].rank;
    std::vector<Elem> tail;
    while (nodes_[i].rank > 0) {
      tail.push_back(nodes_[i].c);
      i = nodes_[i].parent;
    }
    cert.params = {nodes_[i].a0, nodes_[i].a1};
    cert.params.insert(cert.params.end(), tail.rbegin(), tail.rend());
    return cert;
  }

  std::vector<std::size_t> level_sizes() const {
    std::vector<std::size_t> sizes;
    for (const auto& node : nodes_) {
      if (node.rank >= sizes.size()) sizes.resize(node.rank + 1, 0);
      ++sizes[node.rank];
    }
    return sizes;
  }

 private:
  struct Node {
    std::uint32_t parent;
    std::uint8_t c;
    std::uint8_t rank;
    std::uint8_t a0, a1;
  };

  explicit CarlitzTable(std::uint32_t q) : q_(q), slots_(1024, 0) {}

  std::uint64_t hash(const std::uint8_t* d) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t k = 0; k < q_; ++k) h = (h ^ d[k]) * 1099511628211ull;
    return h ^ (h >> 29);
  }

  // Slot holding the table, or the empty slot where it would go.
  std::size_t lookup(const std::uint8_t* d) const {
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hash(d) & mask;
    while (slots_[s] != 0) {
      const std::uint8_t* other = &storage_[std::size_t{slots_[s] - 1} * q_];
      if (std::equal(d, d + q_, other)) return s;
      s = (s + 1) & mask;
    }
    return s;
  }

  void try_insert(const std::vector<std::uint8_t>& table, Node node) {
    if (slots_[lookup(table.data())] != 0) return;
    storage_.insert(storage_.end(), table.begin(), table.end());
    nodes_.push_back(node);
    if (2 * nodes_.size() > slots_.size()) {
      slots_.assign(slots_.size() * 2, 0);
      for (std::uint32_t i = 0; i < nodes_.size(); ++i) slots_[lookup(&storage_[std::size_t{i} * q_])] = i + 1;
    } else {
      slots_[lookup(table.data())] = static_cast<std::uint32_t>(nodes_.size());
    }
  }

  std::uint32_t q_;
  bool complete_ = false;
  std::uint32_t depth_ = 0;
  std::vector<std::uint8_t> storage_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> slots_;  // 0 = empty, else node index + 1
};

/// Result of a Carlitz rank computation: an exact rank with certificate, or a lower bound.
struct CarlitzRank {
  bool exact = false;
  std::uint32_t value = 0;
  std::optional<CarlitzCertificate> certificate;
};

/// Rank 0 and rank 1 detection by direct table comparison, O(q^3).
inline std::optional<CarlitzCertificate> low_rank_probe(const FieldCtx& ctx, const Func& f) {
  const Elem q = ctx.q();
  {
    const Elem a1 = f[0], a0 = ctx.sub(f[1], f[0]);
    if (a0 != 0) {
      bool ok = true;
      for (Elem x = 0; x < q && ok; ++x) ok = f[x] == ctx.add(ctx.mul(a0, x), a1);
      if (ok) return CarlitzCertificate{0, {a0, a1}};
    }
  }
  for (Elem a0 = 1; a0 < q; ++a0)
    for (Elem a1 = 0; a1 < q; ++a1) {
      const Elem root = ctx.neg(ctx.mul(a1, ctx.inv(a0)));
      const Elem a2 = f[root];
      bool ok = true;
      for (Elem x = 0; x < q && ok; ++x) ok = f[x] == ctx.add(ctx.inv(ctx.add(ctx.mul(a0, x), a1)), a2);
      if (ok) return CarlitzCertificate{1, {a0, a1, a2}};
    }
  return std::nullopt;
}

/// Carlitz rank of a permutation by breadth-first search. If max_rank is given
/// and f is not found within it, a lower bound of max_rank + 1 is returned.
inline CarlitzRank carlitz_rank(const FieldCtx& ctx, const Func& f, std::optional<std::uint32_t> max_rank = std::nullopt) {
  validate(ctx, f);
  if (!is_permutation(ctx, f)) throw std::invalid_argument("carlitz_rank: input is not a permutation");
  const auto table = CarlitzTable::build(ctx, max_rank);
  if (auto cert = table.find(f)) return {true, cert->rank, cert};
  if (table.complete()) throw std::logic_error("carlitz_rank: permutation missing from a complete closure");
  return {false, table.depth() + 1, std::nullopt};
}

// ---------------------------------------------------------------------------
// Möbius agreement (rational interpolation)
// ---------------------------------------------------------------------------

/// x -> (αx+β)/(γx+δ), scaled so that (γ,δ) = (0,1) or γ = 1.
struct MobiusMap {
  Elem alpha = 1, beta = 0, gamma = 0, delta = 1;
  friend bool operator==(const MobiusMap&, const MobiusMap&) = default;
};

/// nullopt at the pole.
inline std::optional<Elem> evaluate(const FieldCtx& ctx, const MobiusMap& m, Elem x) {
  const Elem den = ctx.add(ctx.mul(m.gamma, x), m.delta);
  if (den == 0) return std::nullopt;
  return ctx.mul(ctx.add(ctx.mul(m.alpha, x), m.beta), ctx.inv(den));
}

struct MobiusAgreement {
  MobiusMap best;
  std::uint64_t agreement = 0;
  std::uint64_t crk_lower_bound = 0;
};

/// Maximum number of non-pole points where f agrees with a Möbius map.
/// For each (γ,δ,α) the best β comes from a histogram of f(x)(γx+δ) - αx.
inline MobiusAgreement mobius_agreement(const FieldCtx& ctx, const Func& f) {
  const Elem q = ctx.q();
  MobiusAgreement best;
  bool have = false;
  std::vector<std::uint32_t> hist(q);
  std::vector<Elem> y(q);
  auto scan = [&](Elem gamma, Elem delta) {
    for (Elem x = 0; x < q; ++x) y[x] = ctx.mul(f[x], ctx.add(ctx.mul(gamma, x), delta));
    const Elem pole = gamma == 0 ? q : ctx.neg(delta);  // q: no pole
    for (Elem alpha = 0; alpha < q; ++alpha) {
      if (gamma == 0 && alpha == 0) continue;
      std::fill(hist.begin(), hist.end(), 0);
      for (Elem x = 0; x < q; ++x)
        if (x != pole) ++hist[ctx.sub(y[x], ctx.mul(alpha, x))];
      const Elem forbidden_beta = ctx.mul(alpha, delta);  // αδ = βγ with γ = 1
      for (Elem beta = 0; beta < q; ++beta) {
        if (gamma == 1 && beta == forbidden_beta) continue;
        if (!have || hist[beta] > best.agreement) {
          have = true;
          best.agreement = hist[beta];
          best.best = MobiusMap{alpha, beta, gamma, delta};
        }
      }
    }
  };
  scan(0, 1);
  for (Elem delta = 0; delta < q; ++delta) scan(1, delta);
  best.crk_lower_bound = q - best.agreement;
  return best;
}

// ---------------------------------------------------------------------------
// Multiplicative index
// ---------------------------------------------------------------------------

/// f(0) = 0 and f(x) = a_i x^r on C_i = ζ^i C_0, C_0 the nonzero ℓ-th powers.
struct CyclotomicForm {
  std::uint32_t ell = 1;
  std::uint32_t r = 1;
  std::vector<Elem> branch_constants;
  friend bool operator==(const CyclotomicForm&, const CyclotomicForm&) = default;
};

inline Func cyclotomic_func(const FieldCtx& ctx, const CyclotomicForm& form) {
  Func f{std::vector<Elem>(ctx.q(), 0)};
  for (std::uint32_t e = 0; e + 1 < ctx.q(); ++e) {
    const Elem x = ctx.exp(e);
    f[x] = ctx.mul(form.branch_constants[e % form.ell], ctx.pow(x, form.r));
  }
  return f;
}

inline std::vector<std::uint32_t> divisors(std::uint32_t m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

/// Smallest ℓ | q-1 representing x -> f(x) - f(0) as a cyclotomic mapping, with
/// the smallest r ∈ [1, (q-1)/ℓ]. nullopt when the shifted map vanishes on F_q^*.
inline std::optional<CyclotomicForm> mult_index(const FieldCtx& ctx, const Func& f) {
  const std::uint32_t m = ctx.q() - 1;
  std::vector<std::uint32_t> logg(m);  // log of g(ζ^e), g = f - f(0)
  for (std::uint32_t e = 0; e < m; ++e) {
    const Elem g = ctx.sub(f[ctx.exp(e)], f[0]);
    if (g == 0) return std::nullopt;
    logg[e] = ctx.dlog(g);
  }
  for (std::uint32_t ell : divisors(m)) {
    const std::uint32_t per = m / ell;
    for (std::uint32_t r = 1; r <= per; ++r) {
      std::vector<Elem> consts(ell);
      bool ok = true;
      for (std::uint32_t i = 0; i < ell && ok; ++i) {
        auto branch_log = [&](std::uint32_t e) {
          return static_cast<std::uint32_t>((logg[e] + m - (std::uint64_t{r} * e) % m) % m);
        };
        const std::uint32_t base = branch_log(i);
        for (std::uint32_t j = 1; j < per && ok; ++j) ok = branch_log(i + j * ell) == base;
        consts[i] = ctx.exp(base);
      }
      if (ok) return CyclotomicForm{ell, r, std::move(consts)};
    }
  }
  throw std::logic_error("mult_index: ℓ = q-1 always succeeds for nonvanishing maps");
}

// ---------------------------------------------------------------------------
// Aggregate report
// ---------------------------------------------------------------------------

struct MeasureReport {
  Degree degree;
  std::uint64_t weight = 0;
  std::uint32_t codim = 0;
  std::uint64_t add_index = 1;
  bool permutation = false;
  std::optional<CarlitzRank> carlitz_rank;            // permutations only
  std::optional<std::uint64_t> mobius_lower_bound;    // permutations only
  std::optional<std::uint64_t> mult_index;            // nullopt: undefined
  std::optional<CyclotomicForm> cyclotomic;
};

struct MeasureOptions {
  /// Exact Carlitz rank by closure only when q is at most this.
  std::uint32_t exact_crk_max = 9;
  /// Shared closure for the field; built on demand when null.
  const CarlitzTable* carlitz = nullptr;
  /// Compute Carlitz rank and the Möbius bound (permutations only).
  bool with_carlitz = true;
  bool with_mult_index = true;
};

inline MeasureReport measure_all(const FieldCtx& ctx, const Func& f, const MeasureOptions& options = {}) {
  validate(ctx, f);
  MeasureReport r;
  const auto dw = deg_weight(ctx, f);
  r.degree = dw.degree;
  r.weight = dw.weight;
  const auto cd = codimension(ctx, f);
  r.codim = cd.codim;
  r.add_index = cd.add_index;
  r.permutation = is_permutation(ctx, f);
  if (options.with_mult_index) {
    if (auto form = mult_index(ctx, f)) {
      r.mult_index = form->ell;
      r.cyclotomic = std::move(form);
    }
  }
  if (!r.permutation || !options.with_carlitz) return r;

  const auto mob = mobius_agreement(ctx, f);
  r.mobius_lower_bound = mob.crk_lower_bound;
  if (ctx.q() <= options.exact_crk_max && ctx.q() <= 256) {
    std::optional<CarlitzTable> own;
    const CarlitzTable* table = options.carlitz;
    if (table == nullptr || table->q() != ctx.q() || !table->complete()) {
      own.emplace(CarlitzTable::build(ctx));
      table = &*own;
    }
    auto cert = table->find(f);
    if (!cert) throw std::logic_error("measure_all: permutation missing from the Carlitz closure");
    r.carlitz_rank = CarlitzRank{true, cert->rank, std::move(cert)};
  } else if (auto cert = low_rank_probe(ctx, f)) {
    r.carlitz_rank = CarlitzRank{true, cert->rank, std::move(cert)};
  } else {
    r.carlitz_rank = CarlitzRank{false, static_cast<std::uint32_t>(std::max<std::uint64_t>(2, mob.crk_lower_bound)),
                                 std::nullopt};
  }
  return r;
}

}  // namespace ffm
