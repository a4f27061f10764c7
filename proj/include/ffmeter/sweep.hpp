// Sweeps: run bound checks over a space of functions, partitioned across
// workers, with order-independent aggregation.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ffmeter/bounds.hpp"
#include "ffmeter/families.hpp"
#include "ffmeter/measures.hpp"

namespace ffm {

enum class SpaceKind {
  kAllFunctions,
  kAllPermutations,
  kZeroFixingFunctions,     // f(0) = 0
  kZeroFixingNonvanishing,  // f(0) = 0, f(x) != 0 for x != 0
  kZeroFixingPermutations,
  kSampleFunctions,
  kSamplePermutations,
};

struct SpaceSpec {
  SpaceKind kind = SpaceKind::kAllFunctions;
  std::uint64_t count = 0;  // samples only
  std::uint64_t seed = 0;   // samples only

  std::string to_string() const {
    switch (kind) {
      case SpaceKind::kAllFunctions: return "all-funcs";
      case SpaceKind::kAllPermutations: return "all-perms";
      case SpaceKind::kZeroFixingFunctions: return "zero-funcs";
      case SpaceKind::kZeroFixingNonvanishing: return "zero-nonvanishing";
      case SpaceKind::kZeroFixingPermutations: return "zero-perms";
      case SpaceKind::kSampleFunctions:
        return "sample:" + std::to_string(count) + ":" + std::to_string(seed);
      case SpaceKind::kSamplePermutations:
        return "sample-perms:" + std::to_string(count) + ":" + std::to_string(seed);
    }
    return "?";
  }
};

inline SpaceSpec parse_space(const std::string& s) {
  if (s == "all-funcs") return {SpaceKind::kAllFunctions};
  if (s == "all-perms") return {SpaceKind::kAllPermutations};
  if (s == "zero-funcs") return {SpaceKind::kZeroFixingFunctions};
  if (s == "zero-nonvanishing") return {SpaceKind::kZeroFixingNonvanishing};
  if (s == "zero-perms") return {SpaceKind::kZeroFixingPermutations};
  for (auto [prefix, kind] : {std::pair{"sample:", SpaceKind::kSampleFunctions},
                              std::pair{"sample-perms:", SpaceKind::kSamplePermutations}}) {
    const std::string pre = prefix;
    if (s.rfind(pre, 0) != 0) continue;
    const std::string rest = s.substr(pre.size());
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("space '" + s + "': expected " + pre + "COUNT:SEED");
    try {
      std::size_t used = 0;
      SpaceSpec spec{kind};
      spec.count = std::stoull(rest.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("");
      const std::string seed = rest.substr(colon + 1);
      spec.seed = std::stoull(seed, &used);
      if (used != seed.size()) throw std::invalid_argument("");
      return spec;
    } catch (const std::exception&) {
      throw std::invalid_argument("space '" + s + "': COUNT and SEED must be non-negative integers");
    }
  }
  throw std::invalid_argument("unknown space '" + s + "'");
}

/// Number of functions in the space, or nullopt if it does not fit 64 bits.
inline std::optional<std::uint64_t> space_size(const FieldCtx& ctx, const SpaceSpec& space) {
  const std::uint64_t q = ctx.q();
  auto power = [](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
      if (b != 0 && r > UINT64_MAX / b) return std::nullopt;
      r *= b;
    }
    return r;
  };
  auto factorial = [](std::uint64_t m) -> std::optional<std::uint64_t> {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= m; ++i) {
      if (r > UINT64_MAX / i) return std::nullopt;
      r *= i;
    }
    return r;
  };
  switch (space.kind) {
    case SpaceKind::kAllFunctions: return power(q, q);
    case SpaceKind::kAllPermutations: return factorial(q);
    case SpaceKind::kZeroFixingFunctions: return power(q, q - 1);
    case SpaceKind::kZeroFixingNonvanishing: return power(q - 1, q - 1);
    case SpaceKind::kZeroFixingPermutations: return factorial(q - 1);
    case SpaceKind::kSampleFunctions:
    case SpaceKind::kSamplePermutations: return space.count;
  }
  return std::nullopt;
}

/// Walks a contiguous index range of a space in a fixed order.
class SpaceCursor {
 public:
  SpaceCursor(const FieldCtx& ctx, const SpaceSpec& space, std::uint64_t index)
      : ctx_(ctx), space_(space), index_(index) {
    const Elem q = ctx.q();
    f_.table.assign(q, 0);
    switch (space.kind) {
      case SpaceKind::kAllFunctions:
      case SpaceKind::kZeroFixingFunctions:
      case SpaceKind::kZeroFixingNonvanishing: {
        const bool nonvanishing = space.kind == SpaceKind::kZeroFixingNonvanishing;
        const Elem first = space.kind == SpaceKind::kAllFunctions ? 0 : 1;
        const Elem radix = nonvanishing ? q - 1 : q;
        std::uint64_t t = index;
        for (Elem x = first; x < q; ++x) {
          f_[x] = static_cast<Elem>(t % radix) + (nonvanishing ? 1 : 0);
          t /= radix;
        }
        break;
      }
      case SpaceKind::kAllPermutations:
      case SpaceKind::kZeroFixingPermutations: {
        const Elem first = space.kind == SpaceKind::kAllPermutations ? 0 : 1;
        std::vector<Elem> pool;
        for (Elem v = first; v < q; ++v) pool.push_back(v);
        // factorial-base digits, most significant first (lexicographic rank)
        const std::size_t m = pool.size();
        std::vector<std::uint64_t> digits(m, 0);
        std::uint64_t t = index;
        for (std::size_t i = 1; i <= m; ++i) {
          digits[m - i] = t % i;
          t /= i;
        }
        for (std::size_t i = 0; i < m; ++i) {
          f_[first + i] = pool[digits[i]];
          pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
        }
        break;
      }
      case SpaceKind::kSampleFunctions:
      case SpaceKind::kSamplePermutations: load_sample(); break;
    }
  }

  const Func& current() const { return f_; }

  void next() {
    ++index_;
    const Elem q = ctx_.q();
    switch (space_.kind) {
      case SpaceKind::kAllFunctions:
      case SpaceKind::kZeroFixingFunctions:
        for (Elem x = space_.kind == SpaceKind::kAllFunctions ? 0 : 1; x < q; ++x) {
          if (++f_[x] < q) return;
          f_[x] = 0;
        }
        return;
      case SpaceKind::kZeroFixingNonvanishing:
        for (Elem x = 1; x < q; ++x) {
          if (++f_[x] < q) return;
          f_[x] = 1;
        }
        return;
      case SpaceKind::kAllPermutations: std::next_permutation(f_.table.begin(), f_.table.end()); return;
      case SpaceKind::kZeroFixingPermutations: std::next_permutation(f_.table.begin() + 1, f_.table.end()); return;
      case SpaceKind::kSampleFunctions:
      case SpaceKind::kSamplePermutations: load_sample(); return;
    }
  }

 private:
  void load_sample() {
    const std::uint64_t item_seed = detail::splitmix64(space_.seed) ^ detail::splitmix64(index_ + 0x2545f4914f6cdd1dull);
    f_ = space_.kind == SpaceKind::kSampleFunctions ? random_function(ctx_, item_seed)
                                                     : random_permutation(ctx_, item_seed);
  }

  const FieldCtx& ctx_;
  SpaceSpec space_;
  std::uint64_t index_;
  Func f_;
};

/// Smallest slack seen for a bound, with the lexicographically smallest witness.
struct Extremal {
  Rational slack;
  Func witness;
  Rational lhs, rhs;

  bool better_than(const Extremal& o) const {
    if (slack != o.slack) return slack < o.slack;
    return witness < o.witness;
  }
};

struct BoundTally {
  std::string id;
  bool provisional = false;
  std::uint64_t evaluated = 0;
  std::uint64_t applicable = 0;
  std::uint64_t holds = 0;
  std::uint64_t violations = 0;
  std::uint64_t vacuous = 0;
  std::optional<Extremal> tightest;
  std::optional<Func> first_violation;  // lexicographically smallest violating table
  std::map<std::string, std::uint64_t> notes;  // inapplicability reasons and other notes

  void add(const BoundVerdict& v, const Func& f) {
    ++evaluated;
    provisional = provisional || v.provisional;
    if (!v.note.empty()) ++notes[v.note];
    if (!v.applicable) return;
    ++applicable;
    if (v.vacuous) ++vacuous;
    if (v.holds) {
      ++holds;
    } else {
      ++violations;
      if (!first_violation || f < *first_violation) first_violation = f;
    }
    Extremal e{v.slack(), f, v.lhs, v.rhs};
    if (!tightest || e.better_than(*tightest)) tightest = std::move(e);
  }

  void merge(const BoundTally& o) {
    provisional = provisional || o.provisional;
    evaluated += o.evaluated;
    applicable += o.applicable;
    holds += o.holds;
    violations += o.violations;
    vacuous += o.vacuous;
    if (o.tightest && (!tightest || o.tightest->better_than(*tightest))) tightest = o.tightest;
    if (o.first_violation && (!first_violation || *o.first_violation < *first_violation))
      first_violation = o.first_violation;
    for (const auto& [k, c] : o.notes) notes[k] += c;
  }
};

/// Minimum of deg(f) AddInd(f) among maps of one codimension k > 0.
struct DegAddIndRecord {
  std::uint64_t min_product = 0;
  Func witness;
  std::uint64_t count = 0;
};

struct SweepStats {
  std::uint64_t functions = 0;
  std::uint64_t permutations = 0;
  BigInt weight_sum = 0;
  std::map<std::uint32_t, std::uint64_t> codim_histogram;
  std::map<std::uint64_t, std::uint64_t> weight_histogram;
  std::map<std::uint32_t, DegAddIndRecord> deg_addind_min;  // keyed by codimension
  std::uint64_t mult_index_undefined = 0;

  Rational mean_weight() const { return functions == 0 ? Rational(0) : Rational(weight_sum) / Rational(functions); }

  void merge(const SweepStats& o) {
    functions += o.functions;
    permutations += o.permutations;
    weight_sum += o.weight_sum;
    for (const auto& [k, c] : o.codim_histogram) codim_histogram[k] += c;
    for (const auto& [k, c] : o.weight_histogram) weight_histogram[k] += c;
    for (const auto& [k, rec] : o.deg_addind_min) record_deg_addind(k, rec.min_product, rec.witness, rec.count);
    mult_index_undefined += o.mult_index_undefined;
  }

  void record_deg_addind(std::uint32_t codim, std::uint64_t product, const Func& f, std::uint64_t count = 1) {
    auto [it, fresh] = deg_addind_min.try_emplace(codim, DegAddIndRecord{product, f, 0});
    auto& rec = it->second;
    rec.count += count;
    if (!fresh && (product < rec.min_product || (product == rec.min_product && f < rec.witness))) {
      rec.min_product = product;
      rec.witness = f;
    }
  }
};

struct SweepReport {
  std::string field;
  SpaceSpec space;
  std::vector<BoundTally> bounds;
  SweepStats stats;
  std::vector<std::string> notes;

  std::uint64_t total_violations(bool include_provisional = false) const {
    std::uint64_t v = 0;
    for (const auto& b : bounds)
      if (include_provisional || !b.provisional) v += b.violations;
    return v;
  }
  std::uint64_t total_applicable() const {
    std::uint64_t a = 0;
    for (const auto& b : bounds) a += b.applicable;
    return a;
  }
  const BoundTally* find(const std::string& id) const {
    for (const auto& b : bounds)
      if (b.id == id) return &b;
    return nullptr;
  }
};

/// Field-level groups accepted by the sweep alongside the per-function ids.
inline const std::vector<std::string>& field_bound_groups() {
  static const std::vector<std::string> groups = {"inversion", "dlog", "intpol_form", "compo"};
  return groups;
}

struct SweepOptions {
  std::vector<std::string> bound_ids;  // per-function ids and field-level groups
  unsigned workers = 1;
  std::uint32_t exact_crk_max = 9;
  std::uint64_t compo_pairs = 1000;
  std::uint64_t compo_seed = 0;
  std::uint64_t max_space = 100'000'000;
};

inline std::vector<std::string> expand_bound_ids(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  auto push = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& id : requested) {
    if (id == "all") {
      for (const auto& x : function_bound_ids()) push(x);
      for (const auto& x : field_bound_groups()) push(x);
      continue;
    }
    const auto& f = function_bound_ids();
    const auto& g = field_bound_groups();
    if (std::find(f.begin(), f.end(), id) == f.end() && std::find(g.begin(), g.end(), id) == g.end())
      throw std::invalid_argument("unknown bound id '" + id + "'");
    push(id);
  }
  return out;
}

namespace detail {

struct SweepPartial {
  std::map<std::string, BoundTally> tallies;
  SweepStats stats;
};

inline void sweep_range(const FieldCtx& ctx, const SpaceSpec& space, std::uint64_t begin, std::uint64_t end,
                        const std::set<std::string>& ids, const CarlitzTable* table, std::uint32_t exact_crk_max,
                        SweepPartial& out) {
  if (begin >= end) return;
  const bool want_carlitz = ids.count("deg_crk") || ids.count("weight_crk") || ids.count("crk_addind") ||
                            ids.count("crk_addind_min") || ids.count("mobius_crk") || ids.count("ind_crk");
  const bool want_ind = ids.count("ind_deg") || ids.count("ind_weight") || ids.count("ind_crk") ||
                        ids.count("small_conjecture");
  MeasureOptions opts;
  opts.carlitz = table;
  opts.exact_crk_max = exact_crk_max;
  opts.with_carlitz = want_carlitz;
  opts.with_mult_index = want_ind;
  SpaceCursor cursor(ctx, space, begin);
  for (std::uint64_t i = begin; i < end; ++i, cursor.next()) {
    const Func& f = cursor.current();
    const MeasureReport r = measure_all(ctx, f, opts);
    auto& st = out.stats;
    ++st.functions;
    if (r.permutation) ++st.permutations;
    st.weight_sum += r.weight;
    ++st.codim_histogram[r.codim];
    ++st.weight_histogram[r.weight];
    if (want_ind && !r.mult_index) ++st.mult_index_undefined;
    if (r.add_index > 1) st.record_deg_addind(r.codim, *r.degree * r.add_index, f);

    auto run = [&](const std::string& id, auto&& check) {
      if (ids.count(id)) out.tallies[id].add(check(), f);
    };
    run("deg_crk", [&] { return check_deg_crk(r, ctx.q()); });
    run("weight_crk", [&] { return check_weight_crk(r, ctx, f); });
    run("crk_addind", [&] { return check_crk_addind(r, ctx.q()); });
    run("crk_addind_min", [&] { return check_crk_addind_min(r, ctx.q()); });
    run("mobius_crk", [&] { return check_mobius_crk(r); });
    run("deg_addind", [&] { return check_deg_addind(r, ctx.q()); });
    run("weight_addind", [&] { return check_weight_addind(r, ctx.p(), ctx.n()); });
    run("ind_deg", [&] { return check_ind_deg(r, ctx.q()); });
    run("ind_weight", [&] { return check_ind_weight(r, f); });
    run("ind_crk", [&] { return check_ind_crk(ctx, f, r); });
    run("small_conjecture", [&] { return check_small_conjecture(ctx, f, r); });
  }
}

}  // namespace detail

/// Every per-function id in `options.bound_ids` runs on each function of the
/// space; field-level groups run once. The report does not depend on the
/// number of workers.
inline SweepReport sweep(const FieldCtx& ctx, const SpaceSpec& space, const SweepOptions& options) {
  const auto ids_list = expand_bound_ids(options.bound_ids);
  const std::set<std::string> ids(ids_list.begin(), ids_list.end());
  const auto total = space_size(ctx, space);
  if (!total || *total > options.max_space)
    throw std::invalid_argument("space " + space.to_string() + " is too large to enumerate");

  SweepReport report;
  report.field = ctx.describe();
  report.space = space;

  std::optional<CarlitzTable> table;
  const bool perms_possible = true;
  if (perms_possible && ctx.q() <= options.exact_crk_max && ctx.q() <= 256) {
    for (const auto& id : {"deg_crk", "weight_crk", "crk_addind", "crk_addind_min", "mobius_crk", "ind_crk"})
      if (ids.count(id)) {
        table.emplace(CarlitzTable::build(ctx));
        break;
      }
  }

  const unsigned workers = std::max(1u, options.workers);
  std::vector<detail::SweepPartial> partials(workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (*total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(*total, w * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(*total, begin + chunk);
    auto job = [&, w, begin, end] {
      detail::sweep_range(ctx, space, begin, end, ids, table ? &*table : nullptr, options.exact_crk_max, partials[w]);
    };
    if (workers == 1) {
      job();
    } else {
      threads.emplace_back(job);
    }
  }
  for (auto& t : threads) t.join();

  std::map<std::string, BoundTally> merged;
  for (const auto& part : partials) {
    report.stats.merge(part.stats);
    for (const auto& [id, tally] : part.tallies) merged[id].merge(tally);
  }
  for (const auto& id : function_bound_ids()) {
    if (!ids.count(id)) continue;
    BoundTally t = merged[id];
    t.id = id;
    if (id == "crk_addind_min") t.provisional = true;
    report.bounds.push_back(std::move(t));
  }

  // Field-level checks.
  auto add_field_verdicts = [&](const std::vector<BoundVerdict>& verdicts, const Func& witness) {
    for (const auto& v : verdicts) {
      auto it = std::find_if(report.bounds.begin(), report.bounds.end(), [&](const BoundTally& b) { return b.id == v.id; });
      if (it == report.bounds.end()) {
        BoundTally fresh;
        fresh.id = v.id;
        report.bounds.push_back(std::move(fresh));
        it = report.bounds.end() - 1;
      }
      it->add(v, witness);
    }
  };
  if (ids.count("inversion")) add_field_verdicts(check_inversion(ctx), inversion_func(ctx));
  if (ids.count("dlog")) add_field_verdicts(check_dlog(ctx, options.exact_crk_max), dlog_func(ctx));
  if (ids.count("intpol_form")) {
    for (std::uint32_t ell : divisors(ctx.q() - 1))
      for (std::uint32_t r = 1; r <= (ctx.q() - 1) / ell; ++r) {
        Rng rng = Rng::stream(options.compo_seed, std::uint64_t{ell} * ctx.q() + r);
        CyclotomicForm form{ell, r, {}};
        for (std::uint32_t i = 0; i < ell; ++i) form.branch_constants.push_back(static_cast<Elem>(1 + rng.below(ctx.q() - 1)));
        add_field_verdicts({check_intpol_form(ctx, form)}, cyclotomic_func(ctx, form));
      }
  }
  if (ids.count("compo")) {
    for (std::uint64_t i = 0; i < options.compo_pairs; ++i) {
      const std::uint64_t s = detail::splitmix64(options.compo_seed) + 2 * i;
      // alternate: random pairs, then affine pre- and post-composition
      const Func g = random_function(ctx, s);
      const Func h = random_function(ctx, s + 1);
      const Func a = random_fp_affine(ctx, s ^ 0x5bd1e995ull);
      add_field_verdicts(check_compo(ctx, g, h), compose(g, h));
      add_field_verdicts(check_compo(ctx, a, g), compose(a, g));
      add_field_verdicts(check_compo(ctx, g, a), compose(g, a));
    }
  }
  return report;
}

}  // namespace ffm
