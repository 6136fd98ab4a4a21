#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "cpa/analysis.hpp"
#include "cpa/constructions.hpp"
#include "cpa/pcgroup.hpp"

using namespace cpa;

namespace {

// Collection by rewriting words in single generator letters: swap out-of-order
// neighbours using g_b g_a = g_a g_b [g_b, g_a] and replace o_k equal letters
// by the power word of g_k.
class WordCollector {
 public:
  explicit WordCollector(Class2Presentation pres) : pres_(std::move(pres)) {
    const std::size_t n = pres_.orders.size();
    comm_.assign(n, std::vector<std::vector<int>>(n));
    for (const auto& c : pres_.commutators) comm_[c.i][c.j] = letters(c.value);
    power_.resize(n);
    for (std::size_t k = 0; k < pres_.powers.size(); ++k) power_[k] = letters(pres_.powers[k]);
  }

  std::vector<int> letters(const std::vector<std::uint32_t>& v) const {
    std::vector<int> w;
    for (std::size_t k = 0; k < v.size(); ++k) w.insert(w.end(), v[k], static_cast<int>(k));
    return w;
  }

  std::vector<std::uint32_t> collect(std::vector<int> w) const {
    while (true) {
      bool changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1]) {
          const int b = w[i], a = w[i + 1];
          std::vector<int> rep = {a, b};
          rep.insert(rep.end(), comm_[b][a].begin(), comm_[b][a].end());
          w.erase(w.begin() + i, w.begin() + i + 2);
          w.insert(w.begin() + i, rep.begin(), rep.end());
          changed = true;
          break;
        }
      if (changed) continue;
      for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        const auto o = pres_.orders[w[i]];
        if (j - i >= o) {
          const int k = w[i];
          w.erase(w.begin() + i, w.begin() + i + o);
          w.insert(w.begin() + i, power_[k].begin(), power_[k].end());
          changed = true;
          break;
        }
        i = j;
      }
      if (!changed) break;
    }
    std::vector<std::uint32_t> e(pres_.orders.size(), 0);
    for (int k : w) ++e[k];
    return e;
  }

 private:
  Class2Presentation pres_;
  std::vector<std::vector<std::vector<int>>> comm_;
  std::vector<std::vector<int>> power_;
};

Class2Presentation m27_presentation() {
  Class2Presentation p;
  p.prime = 3;
  p.orders = {3, 3, 3};
  p.powers = {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}};
  p.commutators = {{1, 0, {0, 0, 1}}};
  return p;
}

std::vector<std::shared_ptr<const PcGroup>> small_catalog() {
  return {heisenberg(3), extraspecial(3, 2), abelian_group(3, {2}), abelian_group(3, {2, 1}),
          heisenberg_times_abelian(3, {1}), build_group(m27_presentation(), "m27"), heisenberg(5)};
}

PresentationError::Kind error_kind(const Class2Presentation& p) {
  try {
    build_group(p);
  } catch (const PresentationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "presentation accepted";
  return PresentationError::Kind::Parse;
}

}  // namespace

TEST(PcGroup, CollectionMatchesWordRewriting) {
  for (const auto& g : small_catalog()) {
    if (!g->order().at_most(729)) continue;
    const WordCollector oracle(g->presentation());
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10'000; ++t) {
      const auto x = g->random_element(rng), y = g->random_element(rng);
      std::vector<int> w = oracle.letters(x.exps);
      const auto wy = oracle.letters(y.exps);
      w.insert(w.end(), wy.begin(), wy.end());
      ASSERT_EQ(g->multiply(x, y).exps, oracle.collect(w)) << g->name() << " " << g->format(x) << " * " << g->format(y);
    }
  }
}

TEST(PcGroup, Associativity) {
  for (const auto& g : small_catalog()) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 10'000; ++t) {
      const auto x = g->random_element(rng), y = g->random_element(rng), z = g->random_element(rng);
      ASSERT_EQ(g->multiply(g->multiply(x, y), z), g->multiply(x, g->multiply(y, z))) << g->name();
    }
  }
}

TEST(PcGroup, InverseAndIdentity) {
  for (const auto& g : small_catalog()) {
    g->for_each_element([&](const GroupElement& x) {
      EXPECT_TRUE(g->is_identity(g->multiply(x, g->inverse(x))));
      EXPECT_EQ(g->multiply(g->identity(), x), x);
      return true;
    });
  }
}

TEST(PcGroup, Class2Law) {
  for (const auto& g : {eq51_group(3), heisenberg(3), extraspecial(3, 2), heisenberg_times_abelian(3, {2})}) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 2000; ++t) {
      const auto x = g->random_element(rng), y = g->random_element(rng), z = g->random_element(rng);
      EXPECT_EQ(g->commutator(g->multiply(x, y), z), g->multiply(g->commutator(x, z), g->commutator(y, z)));
      EXPECT_TRUE(g->is_central(g->commutator(x, y)));
    }
  }
}

TEST(PcGroup, KeysAreABijection) {
  const auto g = eq51_group(3);
  std::set<std::uint64_t> keys;
  std::uint64_t prev = 0;
  bool first = true;
  g->for_each_element([&](const GroupElement& x) {
    const auto k = g->key(x);
    EXPECT_TRUE(first || k > prev);
    first = false;
    prev = k;
    keys.insert(k);
    EXPECT_EQ(g->from_key(k), x);
    return true;
  });
  EXPECT_EQ(keys.size(), 6561u);
}

TEST(PcGroup, PresentationJsonRoundTrip) {
  for (const auto& pres : {eq51_presentation(3), eq51_presentation(5), extraspecial_presentation(3, 2), m27_presentation()}) {
    const auto j = presentation_to_json(pres);
    EXPECT_EQ(presentation_from_json(j), pres);
    EXPECT_EQ(presentation_from_json(nlohmann::json::parse(j.dump())), pres);
  }
}

TEST(PcGroup, DataFileMatchesBuiltInPresentation) {
  EXPECT_EQ(load_presentation(std::string(CPA_SOURCE_DIR) + "/data/eq51_p3.json"), eq51_presentation(3));
}

TEST(PcGroup, FixtureErrors) {
  try {
    build_group(load_presentation(std::string(CPA_SOURCE_DIR) + "/tests/fixtures/corrupted_eq51.json"));
    FAIL() << "corrupted presentation accepted";
  } catch (const PresentationError& e) {
    EXPECT_NE(e.kind(), PresentationError::Kind::Parse);
  }
  try {
    load_presentation(std::string(CPA_SOURCE_DIR) + "/tests/fixtures/malformed.json");
    FAIL() << "malformed file accepted";
  } catch (const PresentationError& e) {
    EXPECT_EQ(e.kind(), PresentationError::Kind::Parse);
  }
  EXPECT_THROW(load_presentation("/nonexistent/file.json"), PresentationError);
}

TEST(PcGroup, FieldDiagnostics) {
  auto parse_error = [](const std::string& text) -> std::string {
    try {
      presentation_from_json(nlohmann::json::parse(text));
    } catch (const PresentationError& e) {
      EXPECT_EQ(e.kind(), PresentationError::Kind::Parse);
      return e.what();
    }
    return "";
  };
  EXPECT_NE(parse_error(R"({"prime": 3, "orders": [3, "x"]})").find("orders"), std::string::npos);
  EXPECT_NE(parse_error(R"({"orders": [3]})").find("prime"), std::string::npos);
  EXPECT_NE(parse_error(R"({"prime": 3, "orders": [3, 3], "commutators": [{"i": 2, "value": [0, 0]}]})").find("commutators"),
            std::string::npos);
}

TEST(PcGroup, RejectsInvalidPresentations) {
  Class2Presentation bad_order;
  bad_order.prime = 3;
  bad_order.orders = {6};
  EXPECT_EQ(error_kind(bad_order), PresentationError::Kind::Structure);

  // class 3: [g2,g1] = g3 and [g3,g1] = g4
  Class2Presentation class3;
  class3.prime = 3;
  class3.orders = {3, 3, 3, 3};
  class3.commutators = {{1, 0, {0, 0, 1, 0}}, {2, 0, {0, 0, 0, 1}}};
  EXPECT_EQ(error_kind(class3), PresentationError::Kind::Centrality);

  // [g2,g1] = g3 with g3 of order 9 and g2 of order 3
  Class2Presentation incompatible;
  incompatible.prime = 3;
  incompatible.orders = {3, 3, 9};
  incompatible.commutators = {{1, 0, {0, 0, 1}}};
  EXPECT_EQ(error_kind(incompatible), PresentationError::Kind::Compatibility);
}

TEST(Analysis, ExponentLaw) {
  for (GroupPtr g : {GroupPtr(eq51_group(3)), GroupPtr(example2_group(3)), GroupPtr(heisenberg(3)),
                     GroupPtr(extraspecial(3, 2)), GroupPtr(heisenberg_times_abelian(3, {1})),
                     GroupPtr(build_group(m27_presentation(), "m27")), GroupPtr(abelian_group(3, {2}))}) {
    const GroupAnalysis a(g);
    EXPECT_EQ(a.derived().view().exponent(), a.central_quotient().exponent()) << g->name();
  }
}

TEST(Analysis, CommutatorExponentIsCosetOrder) {
  for (GroupPtr g : {GroupPtr(eq51_group(3)), GroupPtr(heisenberg(3)), GroupPtr(extraspecial(3, 2)),
                     GroupPtr(heisenberg_times_abelian(3, {1})), GroupPtr(build_group(m27_presentation(), "m27"))}) {
    const GroupAnalysis a(g);
    g->for_each_element([&](const GroupElement& x) {
      const auto c = a.coset_coordinates(x);
      EXPECT_EQ(a.commutator_subgroup(x).exponent().exponent, a.coset_order_log(c));
      return true;
    });
  }
}

TEST(Analysis, CommutatorSubgroupMatchesRawCommutators) {
  for (GroupPtr g : {GroupPtr(heisenberg(3)), GroupPtr(extraspecial(3, 2)), GroupPtr(heisenberg_times_abelian(3, {1}))}) {
    const GroupAnalysis a(g);
    g->for_each_element([&](const GroupElement& x) {
      std::set<std::uint64_t> raw;
      g->for_each_element([&](const GroupElement& y) {
        raw.insert(g->key(g->commutator(x, y)));
        return true;
      });
      EXPECT_EQ(raw.size(), a.commutator_subgroup(x).order().to_u64());
      EXPECT_EQ(a.centralizer_order(x).to_u64() * raw.size(), g->order().to_u64());
      return true;
    });
  }
}

TEST(Analysis, ClassEquationAndBruteForceClasses) {
  for (GroupPtr g : {GroupPtr(heisenberg(3)), GroupPtr(extraspecial(3, 2)), GroupPtr(heisenberg_times_abelian(3, {1})),
                     GroupPtr(eq51_group(3))}) {
    const GroupAnalysis a(g);
    const auto inv = a.class_inventory();
    std::uint64_t total = 0;
    for (const auto& [size, count] : inv.sizes) total += size * count;
    EXPECT_EQ(total, g->order().to_u64());
    EXPECT_EQ(inv.sizes.at(1), a.center().order().to_u64());
    if (!g->order().at_most(243)) continue;
    // orbits of conjugation
    std::set<std::uint64_t> seen;
    std::uint64_t classes = 0;
    g->for_each_element([&](const GroupElement& x) {
      if (seen.count(g->key(x))) return true;
      ++classes;
      g->for_each_element([&](const GroupElement& y) {
        seen.insert(g->key(g->multiply(g->inverse(y), g->multiply(x, y))));
        return true;
      });
      return true;
    });
    EXPECT_EQ(classes, inv.class_count) << g->name();
  }
}

TEST(Analysis, SectionInvariantExamples) {
  {
    const GroupAnalysis a(eq51_group(3));
    EXPECT_EQ(a.central_quotient().invariants(), (std::vector<std::uint32_t>(6, 1)));
    EXPECT_EQ(a.derived().view().invariants(), (std::vector<std::uint32_t>{1, 1}));
  }
  {
    const GroupAnalysis a(example2_group(3));
    EXPECT_EQ(a.central_quotient().invariants(), (std::vector<std::uint32_t>(4, 2)));
    EXPECT_EQ(a.derived().view().invariants(), (std::vector<std::uint32_t>{2, 2}));
  }
  {
    const GroupAnalysis a(heisenberg(3));
    EXPECT_EQ(a.central_quotient().invariants(), (std::vector<std::uint32_t>{1, 1}));
    EXPECT_EQ(a.derived().view().invariants(), (std::vector<std::uint32_t>{1}));
  }
}

TEST(Analysis, DistinguishedGeneratingSet) {
  {
    const GroupAnalysis a(eq51_group(3));
    const auto xs = a.distinguished_generating_set();
    ASSERT_EQ(xs.size(), 6u);
    for (const auto& x : xs) EXPECT_EQ(a.coset_order_log(a.coset_coordinates(x)), 1u);
    EXPECT_EQ(closure(a.group(), xs).size(), 6561u);
  }
  {
    const GroupAnalysis a(example2_group(3));
    const auto xs = a.distinguished_generating_set();
    ASSERT_EQ(xs.size(), 4u);
    for (const auto& x : xs) EXPECT_EQ(a.coset_order_log(a.coset_coordinates(x)), 2u);
  }
  const GroupAnalysis bad(heisenberg_times_abelian(3, {1}));
  EXPECT_FALSE(bad.center_in_frattini());
  EXPECT_THROW(bad.distinguished_generating_set(), PreconditionFailed);
}

TEST(Analysis, ElementCap) {
  try {
    GroupAnalysis a(example2_group(3), {1000});
    FAIL() << "cap not enforced";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.required(), (PrimePower{3, 12}));
  }
}

TEST(Analysis, QuotientCenterOnExample2) {
  const GroupAnalysis a(example2_group(3));
  const auto& z = a.center();
  ASSERT_EQ(z.view().invariants(), (std::vector<std::uint32_t>{2, 2}));
  for (std::size_t i = 0; i < 2; ++i) {
    auto q = quotient_by_central(a, {z.basis()[1 - i]});
    const GroupAnalysis qa(q);
    EXPECT_EQ(qa.group().order(), (PrimePower{3, 10}));
    EXPECT_EQ(qa.center().view().invariants(), (std::vector<std::uint32_t>{2}));
    EXPECT_TRUE(qa.center_equals_derived());
    std::uint64_t n = 0;
    q->for_each_element([&](const GroupElement&) { return ++n, true; });
    EXPECT_EQ(n, 59049u);
  }
}
