#include <gtest/gtest.h>

#include <array>
#include <bitset>
#include <set>

#include "cpa/analysis.hpp"
#include "cpa/constructions.hpp"
#include "cpa/suite.hpp"

using namespace cpa;

namespace {

using Mat = std::array<std::array<RingElement, 3>, 3>;

// M(x,y,z) as the lower unitriangular matrix [[1,0,0],[x,1,0],[z,y,1]].
Mat as_matrix(const GaloisRing& r, const Example2Group& g, const GroupElement& e) {
  Mat m{};
  for (int i = 0; i < 3; ++i) m[i][i] = r.one();
  m[1][0] = g.x_of(e);
  m[2][0] = g.z_of(e);
  m[2][1] = g.y_of(e);
  return m;
}

Mat mat_mul(const GaloisRing& r, const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] = r.add(c[i][j], r.mul(a[i][k], b[k][j]));
  return c;
}

}  // namespace

TEST(GaloisRing, DefaultModulus) {
  EXPECT_EQ(GaloisRing(3).modulus(), (std::pair<std::uint64_t, std::uint64_t>{0, 1}));
  EXPECT_EQ(GaloisRing(5).modulus(), (std::pair<std::uint64_t, std::uint64_t>{0, 2}));
  EXPECT_THROW(GaloisRing(3, 0, 2), std::invalid_argument);  // t^2 + 2 = (t-1)(t+1) mod 3
  EXPECT_THROW(GaloisRing(2), std::invalid_argument);
}

TEST(GaloisRing, AxiomsAndResidueField) {
  for (std::uint64_t p : {3, 5, 7}) {
    const GaloisRing r(p);
    EXPECT_EQ(r.size(), p * p * p * p);
    EXPECT_EQ(r.check_axioms(10'000, 3), 0u);
    // units are exactly the elements with an inverse
    std::uint64_t units = 0;
    for (std::uint64_t i = 0; i < r.size(); ++i) {
      const auto x = r.from_index(i);
      bool inv = false;
      for (std::uint64_t j = 0; j < r.size() && !inv; ++j) inv = r.mul(x, r.from_index(j)) == r.one();
      EXPECT_EQ(inv, r.is_unit(x));
      units += inv;
    }
    // residue field of order p^2: units = p^4 - p^2
    EXPECT_EQ(units, p * p * p * p - p * p);
    if (p == 3) {
      // additive group C9 x C9
      std::set<std::uint64_t> orders;
      for (std::uint64_t i = 0; i < r.size(); ++i) {
        auto x = r.from_index(i), s = x;
        std::uint64_t n = 1;
        while (s != r.zero()) s = r.add(s, x), ++n;
        orders.insert(n);
      }
      EXPECT_EQ(orders, (std::set<std::uint64_t>{1, 3, 9}));
    }
  }
}

TEST(Example2, MultiplicationIsMatrixProduct) {
  const auto g = example2_group(3);
  const GaloisRing& r = g->ring();
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10'000; ++t) {
    const auto a = g->random_element(rng), b = g->random_element(rng);
    EXPECT_EQ(as_matrix(r, *g, g->multiply(a, b)), mat_mul(r, as_matrix(r, *g, a), as_matrix(r, *g, b)));
  }
}

TEST(Example2, ClosedFormCommutator) {
  const auto g = example2_group(3);
  auto generic = [&](const GroupElement& a, const GroupElement& b) {
    return g->multiply(g->multiply(g->inverse(a), g->inverse(b)), g->multiply(a, b));
  };
  std::mt19937_64 rng(22);
  for (int t = 0; t < 10'000; ++t) {
    const auto a = g->random_element(rng), b = g->random_element(rng);
    ASSERT_EQ(g->commutator(a, b), generic(a, b));
    ASSERT_TRUE(g->is_identity(g->multiply(a, g->inverse(a))));
  }
  // all pairs of basis elements M(e,0,0), M(0,e,0), M(0,0,e) for e in {1, t}
  const GaloisRing& r = g->ring();
  std::vector<GroupElement> basis;
  for (const auto& e : {r.one(), r.t()}) {
    basis.push_back(g->make(e, r.zero(), r.zero()));
    basis.push_back(g->make(r.zero(), e, r.zero()));
    basis.push_back(g->make(r.zero(), r.zero(), e));
  }
  for (const auto& a : basis)
    for (const auto& b : basis) EXPECT_EQ(g->commutator(a, b), generic(a, b));
}

TEST(Example2, IdealTrichotomy) {
  const auto g = example2_group(3);
  const GaloisRing& r = g->ring();
  const GroupAnalysis a(g);
  std::map<std::string, std::uint64_t> seen;
  for (std::uint64_t i = 0; i < r.size(); ++i)
    for (std::uint64_t j = 0; j < r.size(); ++j) {
      const RingElement x = r.from_index(i), y = r.from_index(j);
      const auto ideal = r.ideal_of(x, y);
      const std::uint64_t want = ideal == GaloisRing::Ideal::Whole ? 81 : ideal == GaloisRing::Ideal::Maximal ? 9 : 1;
      // raw commutator set {y x' - x y'}
      std::bitset<81> raw;
      for (std::uint64_t k = 0; k < r.size(); ++k)
        for (std::uint64_t l = 0; l < r.size(); ++l) {
          if (raw.all()) break;
          const RingElement xp = r.from_index(k), yp = r.from_index(l);
          raw.set(r.index_of(r.sub(r.mul(y, xp), r.mul(x, yp))));
        }
      ASSERT_EQ(raw.count(), want);
      ASSERT_EQ(a.commutator_subgroup(g->make(x, y, r.zero())).order().to_u64(), want);
      ++seen[GaloisRing::ideal_name(ideal)];
    }
  EXPECT_EQ(seen["R"], 6561u - 81u);
  EXPECT_EQ(seen["pR"], 80u);
  EXPECT_EQ(seen["0"], 1u);
}

TEST(Example2, Witnesses) {
  const auto g = example2_group(3);
  const GaloisRing& r = g->ring();
  const GroupAnalysis a(g);
  const auto& dv = a.derived().view();
  EXPECT_TRUE(a.center_equals_derived());
  EXPECT_EQ(a.commutator_subgroup(g->make({1, 0}, r.zero(), r.zero())).order().to_u64(), 81u);
  EXPECT_TRUE(a.commutator_subgroup(g->make({3, 0}, r.zero(), r.zero())).same_subgroup(mho(dv, 1)));
  EXPECT_EQ(g->format(g->make({3, 0}, r.zero(), r.zero())), "M(3,0,0)");
  const auto j = g->to_json(g->make({1, 2}, {3, 4}, {5, 6}));
  EXPECT_EQ(j, (nlohmann::json{{"x", {1, 2}}, {"y", {3, 4}}, {"z", {5, 6}}}));
}

TEST(Eq51, MatchesRelationTable) {
  // [x_a, x_b] = x_k^p, with x_1, x_2 of order p^2
  const std::vector<std::array<int, 3>> table = {
      {1, 2, 1}, {1, 3, 2}, {2, 3, 1}, {1, 4, 2}, {2, 4, 2}, {3, 4, 2}, {1, 5, 2}, {2, 5, 1},
      {3, 5, 2}, {4, 5, 1}, {1, 6, 2}, {2, 6, 2}, {3, 6, 1}, {4, 6, 1}, {5, 6, 2}};
  for (std::uint64_t p : {3, 5}) {
    const auto g = eq51_group(p);
    auto x = [&](int i) { return g->generator(static_cast<std::size_t>(i - 1)); };
    for (int i = 1; i <= 2; ++i) EXPECT_EQ(g->element_order_log(x(i)), 2u);
    for (int i = 3; i <= 6; ++i) EXPECT_EQ(g->element_order_log(x(i)), 1u);
    for (const auto& [a, b, k] : table)
      EXPECT_EQ(g->commutator(x(a), x(b)), g->power(x(k), static_cast<std::int64_t>(p))) << a << "," << b;
    EXPECT_EQ(closure(*g, {x(1), x(2), x(3), x(4), x(5), x(6)}, 1 << 20).size(), g->order().to_u64());
  }
}

TEST(Eq51, P3Structure) {
  const GroupAnalysis a(eq51_group(3));
  EXPECT_EQ(a.group().order(), (PrimePower{3, 8}));
  EXPECT_TRUE(a.is_special());
  EXPECT_EQ(a.center().order().to_u64(), 9u);
  const auto inv = a.class_inventory();
  EXPECT_EQ(inv.class_count, 737u);
  // 9 + 728 * 9 = 6561
  EXPECT_EQ(inv.sizes, (std::map<std::uint64_t, std::uint64_t>{{1, 9}, {9, 728}}));
}

TEST(Eq51, P5Structure) {
  const GroupAnalysis a(eq51_group(5));
  EXPECT_EQ(a.group().order(), (PrimePower{5, 8}));
  EXPECT_TRUE(a.is_special());
  EXPECT_EQ(a.center().order().to_u64(), 25u);
}

TEST(Catalog, EveryEntryMatchesDocumentedData) {
  std::vector<std::pair<std::string, CatalogParams>> cases = {
      {"heisenberg", {}},
      {"heisenberg", {{"p", "5"}}},
      {"extraspecial", {{"n", "2"}}},
      {"example2", {}},
      {"eq51", {}},
      {"abelian", {{"invariants", "2"}}},
      {"abelian", {{"invariants", "2,1,1"}}},
      {"direct_product", {}},
      {"direct_product", {{"invariants", "2"}}},
  };
  for (const auto& [name, params] : cases) {
    const CatalogEntry e = catalog(name, params);
    const GroupAnalysis a(e.group);
    EXPECT_NO_THROW(verify_catalog_entry(e, a)) << name;
  }
  for (const auto& n : catalog_names()) EXPECT_NO_THROW(catalog(n, {})) << n;
}

TEST(Catalog, Errors) {
  EXPECT_THROW(catalog("nope", {}), std::invalid_argument);
  EXPECT_THROW(catalog("heisenberg", {{"p", "4"}}), std::invalid_argument);
  EXPECT_THROW(catalog("heisenberg", {{"q", "3"}}), std::invalid_argument);
  EXPECT_THROW(catalog("abelian", {{"invariants", "1,2"}}), std::invalid_argument);
  EXPECT_THROW(catalog("abelian", {{"invariants", "x"}}), std::invalid_argument);
  EXPECT_THROW(catalog("eq51", {{"p", "2"}}), std::invalid_argument);
  // a wrong documented value is caught
  CatalogEntry e = catalog("heisenberg", {});
  e.expected.d = 3;
  EXPECT_THROW(verify_catalog_entry(e, GroupAnalysis(e.group)), std::logic_error);
}
