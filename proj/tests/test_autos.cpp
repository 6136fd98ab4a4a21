#include <gtest/gtest.h>

#include <set>

#include "cpa/autos.hpp"
#include "cpa/constructions.hpp"

using namespace cpa;

namespace {

GroupPtr m27() {
  Class2Presentation p;
  p.prime = 3;
  p.orders = {3, 3, 3};
  p.powers = {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}};
  p.commutators = {{1, 0, {0, 0, 1}}};
  return build_group(p, "m27");
}

std::vector<GroupPtr> tiny_groups() {
  return {heisenberg(3), m27(), abelian_group(3, {2}), abelian_group(3, {1, 1}), abelian_group(3, {2, 1}),
          abelian_group(3, {1, 1, 1}), heisenberg_times_abelian(3, {1})};
}

}  // namespace

TEST(Autos, OracleAgreementOnTinyGroups) {
  for (const auto& g : tiny_groups()) {
    const GroupAnalysis a(g);
    const OracleCounts full = brute_force_aut(a, 1'000'000, OracleScope::Full);
    const OracleCounts central = brute_force_aut(a, 1'000'000, OracleScope::Central);
    EXPECT_EQ(full.autc, central.autc) << g->name();
    EXPECT_EQ(full.autcent, central.autcent) << g->name();
    EXPECT_EQ(autc_order(a).value(), full.autc) << g->name();
    if (a.center_in_frattini()) {
      EXPECT_EQ(autcent_order(a).value(), full.autcent) << g->name();
    }
  }
}

TEST(Autos, KnownOracleValues) {
  {
    const GroupAnalysis a(heisenberg(3));
    const auto o = brute_force_aut(a, 1'000'000, OracleScope::Full);
    EXPECT_EQ(*o.aut, 432u);
    EXPECT_EQ(o.autc, 9u);
    EXPECT_EQ(o.autcent, 9u);
  }
  {
    // |Aut(C9)| = 6, only the identity preserves classes
    const GroupAnalysis a(abelian_group(3, {2}));
    const auto o = brute_force_aut(a, 1'000'000, OracleScope::Full);
    EXPECT_EQ(*o.aut, 6u);
    EXPECT_EQ(o.autc, 1u);
    EXPECT_EQ(o.autcent, 6u);
  }
  {
    // |GL(2,3)| = 48
    const GroupAnalysis a(abelian_group(3, {1, 1}));
    EXPECT_EQ(*brute_force_aut(a, 1'000'000, OracleScope::Full).aut, 48u);
  }
  {
    const GroupAnalysis a(extraspecial(3, 2));
    const auto o = brute_force_aut(a, 1'000'000, OracleScope::Central);
    EXPECT_EQ(o.autc, 81u);
    EXPECT_EQ(o.autcent, 81u);
    try {
      brute_force_aut(a, 1'000'000, OracleScope::Full);
      FAIL() << "expected budget error";
    } catch (const BudgetExceeded& e) {
      EXPECT_EQ(e.required(), (PrimePower{3, 20}));
    }
  }
}

TEST(Autos, AutcentFormulaNeedsPurity) {
  const GroupAnalysis a(heisenberg_times_abelian(3, {1}));
  EXPECT_THROW(autcent_order(a), PreconditionFailed);
  EXPECT_EQ(autcent_order(GroupAnalysis(eq51_group(3))), (PrimePower{3, 12}));
  EXPECT_EQ(autcent_order(GroupAnalysis(example2_group(3))), (PrimePower{3, 16}));
}

TEST(Autos, InnerAutomorphismsAreClassPreserving) {
  for (GroupPtr g : {GroupPtr(heisenberg(3)), GroupPtr(m27()), GroupPtr(extraspecial(3, 2)), GroupPtr(eq51_group(3)),
                     GroupPtr(heisenberg_times_abelian(3, {1})), GroupPtr(heisenberg_times_abelian(3, {2}))}) {
    const GroupAnalysis a(g);
    const PrimePower autc = autc_order(a);
    EXPECT_LE(a.central_quotient().order().exponent, autc.exponent) << g->name();
    EXPECT_TRUE(autc.at_most(class_size_bound(a).to_u64())) << g->name();
    if (a.center_equals_derived() && a.center_in_frattini()) {
      EXPECT_LE(autc.exponent, autcent_order(a).exponent) << g->name();
    }
  }
}

TEST(Autos, PowerHeightImpliesEquality) {
  for (GroupPtr g : {GroupPtr(heisenberg(3)), GroupPtr(m27()), GroupPtr(extraspecial(3, 2)), GroupPtr(eq51_group(3)),
                     GroupPtr(extraspecial(5, 1))}) {
    const GroupAnalysis a(g);
    if (!power_height_criterion(a)) continue;
    EXPECT_EQ(autc_order(a), autcent_order(a)) << g->name();
  }
  EXPECT_TRUE(power_height_criterion(GroupAnalysis(eq51_group(3))));
  EXPECT_TRUE(power_height_criterion(GroupAnalysis(example2_group(3))));
  EXPECT_THROW(power_height_scan(GroupAnalysis(heisenberg_times_abelian(3, {1}))), PreconditionFailed);
}

TEST(Autos, DirectFilterOnEq51) {
  const GroupAnalysis a(eq51_group(3));
  EXPECT_EQ(autc_order(a, {1'000'000, 1}), (PrimePower{3, 12}));
  EXPECT_EQ(autc_order(a, {1'000'000, 4}), (PrimePower{3, 12}));
  try {
    autc_order(a, {1000});
    FAIL() << "expected budget error";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), (PrimePower{3, 12}));
  }
}

TEST(Autos, CentralAutomorphismsAreAutomorphisms) {
  for (GroupPtr g : {GroupPtr(heisenberg(3)), GroupPtr(m27())}) {
    const GroupAnalysis a(g);
    std::vector<GroupElement> all;
    g->for_each_element([&](const GroupElement& x) { return all.push_back(x), true; });
    std::set<std::vector<std::uint64_t>> distinct;
    const std::uint64_t n = enumerate_central_automorphisms(a, 1000, [&](const CentralAutomorphism& alpha) {
      std::set<std::uint64_t> image;
      std::vector<std::uint64_t> table;
      for (const auto& x : all) {
        const auto y = alpha.apply(a, x);
        image.insert(g->key(y));
        table.push_back(g->key(y));
        EXPECT_TRUE(a.center().contains(*g, g->multiply(g->inverse(x), y)));
        for (const auto& z : all)
          ASSERT_EQ(alpha.apply(a, g->multiply(x, z)), g->multiply(y, alpha.apply(a, z)));
      }
      EXPECT_EQ(image.size(), all.size());
      distinct.insert(table);
    });
    EXPECT_EQ(n, autcent_order(a).to_u64());
    EXPECT_EQ(distinct.size(), n);
  }
  const GroupAnalysis e(eq51_group(3));
  EXPECT_THROW(enumerate_central_automorphisms(e, 1000, [](const CentralAutomorphism&) {}), BudgetExceeded);
}
