#include <gtest/gtest.h>

#include <set>

#include "ffmeter/io.hpp"
#include "ffmeter/sweep.hpp"

using namespace ffm;

namespace {

std::vector<Func> collect(const FieldCtx& ctx, const SpaceSpec& space) {
  std::vector<Func> out;
  const auto total = *space_size(ctx, space);
  SpaceCursor c(ctx, space, 0);
  for (std::uint64_t i = 0; i < total; ++i, c.next()) out.push_back(c.current());
  return out;
}

}  // namespace

TEST(Sweep, ParseSpace) {
  EXPECT_EQ(parse_space("all-perms").kind, SpaceKind::kAllPermutations);
  const auto s = parse_space("sample:100:7");
  EXPECT_EQ(s.kind, SpaceKind::kSampleFunctions);
  EXPECT_EQ(s.count, 100u);
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(parse_space("sample-perms:5:1").to_string(), "sample-perms:5:1");
  EXPECT_THROW(parse_space("sample:10"), std::invalid_argument);
  EXPECT_THROW(parse_space("sample:x:1"), std::invalid_argument);
  EXPECT_THROW(parse_space("everything"), std::invalid_argument);
}

TEST(Sweep, SpacesEnumerateExactlyTheirMembers) {
  const auto ctx = make_field(3, 1);
  const auto funcs = collect(ctx, {SpaceKind::kAllFunctions});
  EXPECT_EQ(funcs.size(), 27u);
  EXPECT_EQ(std::set<Func>(funcs.begin(), funcs.end()).size(), 27u);

  const auto f5 = make_field(5, 1);
  const auto perms = collect(f5, {SpaceKind::kAllPermutations});
  EXPECT_EQ(perms.size(), 120u);
  EXPECT_TRUE(std::is_sorted(perms.begin(), perms.end()));
  for (const auto& f : perms) EXPECT_TRUE(is_permutation(f5, f));

  const auto zp = collect(f5, {SpaceKind::kZeroFixingPermutations});
  EXPECT_EQ(zp.size(), 24u);
  for (const auto& f : zp) EXPECT_TRUE(f[0] == 0 && is_permutation(f5, f));
  EXPECT_EQ(std::set<Func>(zp.begin(), zp.end()).size(), 24u);

  const auto zn = collect(f5, {SpaceKind::kZeroFixingNonvanishing});
  EXPECT_EQ(zn.size(), 256u);
  for (const auto& f : zn) {
    EXPECT_EQ(f[0], 0u);
    for (Elem x = 1; x < 5; ++x) EXPECT_NE(f[x], 0u);
  }
  EXPECT_EQ(std::set<Func>(zn.begin(), zn.end()).size(), 256u);

  const auto zf = collect(f5, {SpaceKind::kZeroFixingFunctions});
  EXPECT_EQ(zf.size(), 625u);
  EXPECT_EQ(std::set<Func>(zf.begin(), zf.end()).size(), 625u);
}

TEST(Sweep, CursorCanStartAnywhere) {
  const auto ctx = make_field(5, 1);
  for (auto kind : {SpaceKind::kAllPermutations, SpaceKind::kZeroFixingNonvanishing, SpaceKind::kSampleFunctions}) {
    const SpaceSpec space{kind, 50, 3};
    const auto all = collect(ctx, space);
    for (std::uint64_t start : {0u, 1u, 17u, 49u}) {
      SpaceCursor c(ctx, space, start);
      EXPECT_EQ(c.current(), all[start]);
    }
  }
}

TEST(Sweep, RejectsHugeSpaces) {
  const auto ctx = make_field(2, 4);
  SweepOptions o;
  o.bound_ids = {"deg_addind"};
  EXPECT_THROW(sweep(ctx, parse_space("all-funcs"), o), std::invalid_argument);
  o.bound_ids = {"nonesuch"};
  EXPECT_THROW(sweep(ctx, parse_space("sample:10:1"), o), std::invalid_argument);
}

TEST(Sweep, ApplicableDecomposesIntoHoldsAndViolations) {
  const auto ctx = make_field(5, 1);
  SweepOptions o;
  o.bound_ids = {"all"};
  o.compo_pairs = 20;
  const auto r = sweep(ctx, parse_space("all-perms"), o);
  for (const auto& b : r.bounds) EXPECT_EQ(b.applicable, b.holds + b.violations) << b.id;
  EXPECT_EQ(r.stats.functions, 120u);
  EXPECT_EQ(r.stats.permutations, 120u);
}

TEST(Sweep, MeanWeightIsExactOnSmallFields) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    const auto ctx = make_field(p, n);
    SweepOptions o;
    const auto r = sweep(ctx, parse_space("all-funcs"), o);
    EXPECT_EQ(r.stats.mean_weight(), Rational(ctx.q() - 1));
  }
}

TEST(Sweep, ReportDoesNotDependOnWorkers) {
  const auto ctx = make_field(7, 1);
  SweepOptions o;
  o.bound_ids = {"all"};
  o.compo_pairs = 50;
  o.workers = 1;
  const auto one = to_json(ctx, sweep(ctx, parse_space("all-perms"), o)).dump();
  for (unsigned w : {2u, 3u, 8u}) {
    o.workers = w;
    EXPECT_EQ(to_json(ctx, sweep(ctx, parse_space("all-perms"), o)).dump(), one) << w;
  }
  const auto f8 = make_field(2, 3);
  o.workers = 1;
  const auto s1 = to_json(f8, sweep(f8, parse_space("sample:997:4"), o)).dump();
  o.workers = 5;
  EXPECT_EQ(to_json(f8, sweep(f8, parse_space("sample:997:4"), o)).dump(), s1);
}

TEST(Sweep, ExtremaAreMonotoneInSweepLength) {
  const auto ctx = make_field(2, 3);
  SweepOptions o;
  o.bound_ids = {"deg_addind", "weight_addind"};
  std::optional<Rational> last;
  std::optional<std::uint64_t> last_product;
  for (std::uint64_t count : {100u, 400u, 1600u}) {
    const auto r = sweep(ctx, SpaceSpec{SpaceKind::kSampleFunctions, count, 9}, o);
    const auto* b = r.find("deg_addind");
    ASSERT_TRUE(b && b->tightest);
    if (last) {
      EXPECT_LE(b->tightest->slack, *last);
    }
    last = b->tightest->slack;
    const auto& mins = r.stats.deg_addind_min;
    ASSERT_TRUE(mins.count(3));
    if (last_product) {
      EXPECT_LE(mins.at(3).min_product, *last_product);
    }
    last_product = mins.at(3).min_product;
  }
}

TEST(Sweep, SharpnessAuditOnF4) {
  const auto ctx = make_field(2, 2);
  SweepOptions o;
  o.bound_ids = {"deg_addind"};
  const auto r = sweep(ctx, parse_space("all-funcs"), o);
  EXPECT_EQ(r.find("deg_addind")->violations, 0u);
  ASSERT_EQ(r.stats.deg_addind_min.size(), 1u);
  EXPECT_EQ(r.stats.deg_addind_min.begin()->first, 2u);
  EXPECT_EQ(r.stats.deg_addind_min.begin()->second.min_product, 12u);
}

TEST(Sweep, JsonCarriesFieldAndSchema) {
  const auto ctx = make_field(3, 1);
  SweepOptions o;
  o.bound_ids = {"deg_crk", "inversion"};
  const auto j = to_json(ctx, sweep(ctx, parse_space("all-perms"), o));
  EXPECT_EQ(j["field"]["p"], 3);
  EXPECT_EQ(j["field"]["modulus"], Json::array({0, 1}));
  EXPECT_EQ(j["space"], "all-perms");
  ASSERT_TRUE(j["bounds"].is_array());
  for (const auto& b : j["bounds"])
    for (const char* key : {"id", "applicable", "holds", "violations", "extremal"}) EXPECT_TRUE(b.contains(key));
  EXPECT_TRUE(j["stats"].contains("mean_weight"));
  EXPECT_TRUE(j["stats"].contains("codim_distribution"));
}
