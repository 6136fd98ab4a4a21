#pragma once

// The reproduction table: each row compares a documented value with the
// computed one. Rows are grouped by criterion number 1..8.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cpa/abelian.hpp"
#include "cpa/analysis.hpp"
#include "cpa/autos.hpp"
#include "cpa/constructions.hpp"
#include "cpa/pcgroup.hpp"
#include "cpa/theorems.hpp"

namespace cpa {

// Re-check a catalog entry's documented order, |Z|, |gamma_2| and d(G).
inline void verify_catalog_entry(const CatalogEntry& e, const GroupAnalysis& a) {
  const auto& x = e.expected;
  auto check = [&](const char* what, std::uint32_t want, std::uint32_t got) {
    if (want != got)
      throw std::logic_error("catalog " + e.name + ": " + what + " is p^" + std::to_string(got) + ", documented p^" +
                             std::to_string(want));
  };
  check("|G|", x.order_log, a.group().order().exponent);
  check("|Z|", x.center_log, a.center().order().exponent);
  check("|gamma_2|", x.derived_log, a.derived().order().exponent);
  if (x.d != a.d())
    throw std::logic_error("catalog " + e.name + ": d(G) = " + std::to_string(a.d()) + ", documented " +
                           std::to_string(x.d));
}

// ---- abelian oracles ----

// Every non-increasing exponent sequence with sum <= max_log.
inline std::vector<AbelianPGroup> abelian_groups_up_to(std::uint64_t p, std::uint32_t max_log) {
  std::vector<AbelianPGroup> out;
  std::vector<std::uint32_t> part;
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t left, std::uint32_t cap) {
    out.emplace_back(p, part);
    for (std::uint32_t e = std::min(left, cap); e >= 1; --e) {
      part.push_back(e);
      rec(left - e, e);
      part.pop_back();
    }
  };
  rec(max_log, max_log);
  return out;
}

// Counts assignments of basis images that define a homomorphism, by trying
// every tuple in B^rank(A).
inline std::uint64_t brute_force_hom_count(const AbelianPGroup& a, const AbelianPGroup& b) {
  require_same_prime(a, b);
  const std::uint64_t nb = b.size();
  std::vector<std::uint32_t> ord(nb);
  for (std::uint64_t i = 0; i < nb; ++i) ord[i] = b.element_order_log(b.element_at(i));
  const std::size_t r = a.rank();
  std::vector<std::uint64_t> digit(r, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) ok = ord[digit[i]] <= a.invariants()[i];
    count += ok;
    std::size_t k = 0;
    while (k < r && ++digit[k] == nb) digit[k++] = 0;
    if (k == r) break;
  }
  return count;
}

// ---- the table ----

struct SuiteRow {
  int criterion = 0;
  std::string item;
  std::string expected;
  std::string computed;
  Verdict status = Verdict::Pass;
};

struct SuiteOptions {
  CheckOptions check;
  std::optional<std::string> eq51_file;  // replaces the built-in presentation
};

inline int suite_exit_code(const std::vector<SuiteRow>& rows) {
  bool other = false;
  for (const auto& r : rows) {
    if (r.status == Verdict::Fail) return 1;
    if (r.status != Verdict::Pass) other = true;
  }
  return other ? 2 : 0;
}

namespace detail {

inline std::string pp(const PrimePower& x) { return x.to_string(); }
inline std::string pp(std::uint64_t p, std::uint32_t k) { return PrimePower{p, k}.to_string(); }

inline std::string count_text(u128 v, std::uint64_t p) {
  if (v <= UINT64_MAX)
    if (auto k = exact_log(p, static_cast<std::uint64_t>(v))) return pp(p, *k);
  return u128_to_string(v);
}

inline std::string yes(bool b) { return b ? "true" : "false"; }

class SuiteRun {
 public:
  SuiteRun(const SuiteOptions& opts, std::function<void(const SuiteRow&)> on_row)
      : opts_(opts), on_row_(std::move(on_row)) {}

  std::vector<SuiteRow> run() {
    guarded(1, [&] { criterion1(); });
    guarded(2, [&] { criterion2(); });
    guarded(3, [&] { criterion3(); });
    guarded(4, [&] { criterion4(); });
    guarded(5, [&] { criterion5(); });
    guarded(6, [&] { criterion6(); });
    guarded(7, [&] { criterion7(); });
    guarded(8, [&] { criterion8(); });
    return rows_;
  }

 private:
  void add(int c, std::string item, std::string expected, std::string computed) {
    const Verdict v = expected == computed ? Verdict::Pass : Verdict::Fail;
    add(c, std::move(item), std::move(expected), std::move(computed), v);
  }
  void add(int c, std::string item, std::string expected, std::string computed, Verdict v) {
    rows_.push_back({c, std::move(item), std::move(expected), std::move(computed), v});
    if (on_row_) on_row_(rows_.back());
  }
  void add_time(int c, const std::string& what, double ms, double limit_ms) {
    std::ostringstream s;
    s << static_cast<std::uint64_t>(ms) << " ms";
    add(c, what + " runtime", "<= " + std::to_string(static_cast<std::uint64_t>(limit_ms)) + " ms", s.str(),
        ms <= limit_ms ? Verdict::Pass : Verdict::Fail);
  }

  template <class F>
  void guarded(int c, F&& f) {
    try {
      f();
    } catch (const cpa::BudgetExceeded& e) {
      add(c, "budget", "within budget", e.what(), Verdict::BudgetExceeded);
    } catch (const PresentationError& e) {
      const Verdict v = e.kind() == PresentationError::Kind::Parse ? Verdict::NotApplicable : Verdict::Fail;
      add(c, "presentation", "valid", std::string(PresentationError::kind_name(e.kind())) + ": " + e.what(), v);
    } catch (const std::exception& e) {
      add(c, "error", "no error", e.what(), Verdict::Fail);
    }
  }

  GroupAnalysis& analysis(const std::string& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    GroupPtr g;
    const BuildOptions bo{};
    if (key == "eq51") {
      g = opts_.eq51_file ? GroupPtr(build_group(load_presentation(*opts_.eq51_file), "eq51-file", bo)) : eq51_group(3, bo);
    } else if (key == "example2") {
      g = example2_group(3);
    } else if (key == "heisenberg") {
      g = heisenberg(3, bo);
    } else if (key == "extraspecial") {
      g = extraspecial(3, 2, bo);
    } else if (key == "c9") {
      g = abelian_group(3, {2}, bo);
    } else if (key == "heis_x_c3") {
      g = heisenberg_times_abelian(3, {1}, bo);
    } else {
      throw std::logic_error("suite: unknown group " + key);
    }
    auto a = std::make_unique<GroupAnalysis>(g, AnalysisOptions{opts_.check.element_cap});
    return *cache_.emplace(key, std::move(a)).first->second;
  }

  CheckOptions exhaustive_opts() const {
    CheckOptions o = opts_.check;
    if (o.mode == CheckMode::Auto) o.mode = CheckMode::Exhaustive;
    return o;
  }

  static double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const GroupAnalysis& a = analysis("eq51");
    add(1, "Eq51 |G|", pp(3, 8), pp(a.group().order()));
    add(1, "Eq51 special", "true", yes(a.is_special()));
    add(1, "Eq51 |Z(G)|", pp(3, 2), pp(a.center().order()));
    add(1, "Eq51 conjugacy classes", "737", std::to_string(a.class_inventory().class_count));
    add(1, "Eq51 Camina", "pass", verdict_name(check_camina(a, opts_.check).verdict));
    add(1, "Eq51 |Autcent| = |Hom(G/gamma2, Z)|", pp(3, 12), pp(autcent_order(a)));
    add(1, "Eq51 |Aut_c| by Hom_c filtering", pp(3, 12),
        pp(autc_order(a, {opts_.check.hom_budget, opts_.check.threads})));
    add_time(1, "Eq51", ms_since(t0), 300'000);
  }

  void criterion2() {
    const GroupAnalysis& a = analysis("example2");
    const auto& G = dynamic_cast<const Example2Group&>(a.group());
    const AbelianPGroup& dv = a.derived().view();
    add(2, "Example2 |G|", pp(3, 12), pp(G.order()));
    add(2, "Example2 Z(G) = gamma2(G)", "true", yes(a.center_equals_derived()));
    add(2, "Example2 Z(G)", "C9 x C9", a.center().view().describe());

    std::set<std::uint64_t> sizes;
    std::uint64_t cosets = 0;
    a.central_quotient().for_each_element([&](const AbelianElement& c) {
      ++cosets;
      sizes.insert(a.commutator_subgroup_of_coset(c).order().to_u64());
    });
    std::string got;
    for (auto s : sizes) got += (got.empty() ? "" : ",") + std::to_string(s);
    add(2, "Example2 cosets scanned", "6561", std::to_string(cosets));
    add(2, "Example2 |[x,G]| values", "1,9,81", got);

    const GroupElement m1 = G.make({1, 0}, {0, 0}, {0, 0}), m3 = G.make({3, 0}, {0, 0}, {0, 0});
    add(2, "Example2 [M(1,0,0),G] = Z(G)", "true", yes(a.commutator_subgroup(m1).same_subgroup(whole_group(dv))));
    add(2, "Example2 [M(3,0,0),G] = Z(G)^p", "true", yes(a.commutator_subgroup(m3).same_subgroup(mho(dv, 1))));
    // the same two subgroups as raw commutator sets over all of G
    std::set<std::uint64_t> s1, s3;
    G.for_each_element([&](const GroupElement& g) {
      s1.insert(G.key(G.commutator(m1, g)));
      s3.insert(G.key(G.commutator(m3, g)));
      return true;
    });
    add(2, "Example2 |{[M(1,0,0),g]}|", "81", std::to_string(s1.size()));
    add(2, "Example2 |{[M(3,0,0),g]}|", "9", std::to_string(s3.size()));

    const ClaimReport cam = check_camina(a, opts_.check);
    add(2, "Example2 Camina", "fail", verdict_name(cam.verdict));
    add(2, "Example2 Camina witness", "M(3,0,0)", cam.witness.value("element_text", std::string("-")));
    add(2, "Example2 power-height criterion", "true", yes(power_height_criterion(a)));
    const auto ev = evaluate_hypothesis_a(a, opts_.check);
    add(2, "Example2 Hypothesis A", "pass", verdict_name(ev.verdict));
    add(2, "Example2 |Autcent|", pp(3, 16), ev.autcent ? count_text(*ev.autcent, 3) : "-");
    add(2, "Example2 |Aut_c|", pp(3, 16), ev.autc ? count_text(*ev.autc, 3) : "-");
  }

  void criterion3() {
    for (const char* key : {"heisenberg", "extraspecial"}) {
      const GroupAnalysis& a = analysis(key);
      const std::string n = a.group().name();
      const OracleCounts o = brute_force_aut(a, opts_.check.oracle_budget, OracleScope::Central);
      const std::string formula =
          "(" + std::to_string(autc_order(a, {opts_.check.hom_budget, opts_.check.threads}).to_u64()) + ", " +
          std::to_string(autcent_order(a).to_u64()) + ")";
      const std::string oracle = "(" + std::to_string(o.autc) + ", " + std::to_string(o.autcent) + ")";
      add(3, n + " oracle (|Aut_c|, |Autcent|) = formulas", formula, oracle);
      if (std::string(key) == "heisenberg") add(3, n + " (|Aut_c|, |Autcent|)", "(9, 9)", oracle);
      add(3, n + " Hypothesis A", "pass", verdict_name(check_hypothesis_a(a, opts_.check).verdict));
    }
  }

  void criterion4() {
    for (const char* key : {"heisenberg", "extraspecial", "eq51", "example2"}) {
      const GroupAnalysis& a = analysis(key);
      const std::string n = a.group().name();
      const auto ev = evaluate_hypothesis_a(a, opts_.check);
      add(4, n + " Hypothesis A", "pass", verdict_name(ev.verdict));
      add(4, n + " Z(G) = gamma2(G)", "true", yes(a.center_equals_derived()));
      add(4, n + " |Aut_c| = prod |Omega_mi(gamma2)|", pp(omega_product(a)), ev.autc ? count_text(*ev.autc, 3) : "-");
      add(4, n + " Theorem A", "pass", verdict_name(check_theorem_a(a, opts_.check).verdict));
    }
    for (const char* key : {"c9", "heis_x_c3"}) {
      const GroupAnalysis& a = analysis(key);
      const std::string n = a.group().name();
      const ClaimReport r = check_theorem_a(a, opts_.check);
      add(4, n + " Hypothesis A", "fail", r.witness.value("hypothesis_a", std::string("-")));
      const bool right = r.witness.value("right_side", true);
      add(4, n + " right side", "false", yes(right));
      add(4, n + " Theorem A", "pass", verdict_name(r.verdict));
    }
  }

  void criterion5() {
    const std::vector<std::pair<const char*, int>> want = {
        {"heisenberg", 2}, {"example2", 4}, {"eq51", 6}, {"extraspecial", 4}};
    for (const auto& [key, d] : want) {
      const GroupAnalysis& a = analysis(key);
      const ClaimReport r = check_theorem_b(a, opts_.check);
      add(5, a.group().name() + " d(G), Theorem B", std::to_string(d) + " pass",
          std::to_string(a.d()) + " " + verdict_name(r.verdict));
    }
  }

  void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    const GroupAnalysis& a = analysis("example2");
    const ClaimReport r = check_central_factor(a, exhaustive_opts());
    add(6, "Example2 central factor claim", "pass", verdict_name(r.verdict));
    const auto& qs = r.witness.value("quotients", nlohmann::json::array());
    add(6, "Example2 quotients by Z_i*", "2", std::to_string(qs.size()));
    for (const auto& q : qs) {
      const std::string n = "G/Z" + std::to_string(q.at("factor").get<int>()) + "*";
      add(6, n + " order", pp(3, 10), pp(3, q.at("order").at("k").get<std::uint32_t>()));
      add(6, n + " center", "[2]", q.at("center").dump());
      add(6, n + " center = derived", "true", yes(q.at("center_equals_derived").get<bool>()));
      add(6, n + " Hypothesis A", "true", yes(q.at("hypothesis_a").get<bool>()));
    }
    add_time(6, "central factor", ms_since(t0), 120'000);
  }

  void criterion7() {
    const auto small = abelian_groups_up_to(3, 4);
    std::uint64_t agree = 0, pairs = 0;
    for (const auto& x : small)
      for (const auto& y : small) {
        ++pairs;
        agree += hom_count(x, y).value() == brute_force_hom_count(x, y);
      }
    add(7, "hom_count = brute force, |A|,|B| <= 81", std::to_string(pairs) + "/" + std::to_string(pairs),
        std::to_string(agree) + "/" + std::to_string(pairs));

    std::uint64_t comp = 0, comp_ok = 0;
    for (const auto& b : abelian_groups_up_to(3, 6))
      for (std::uint32_t m = 1; m <= 6; ++m) {
        const AbelianPGroup c(3, {m});
        ++comp;
        comp_ok += hom_count(c, b) == hom_count(c, omega(b, m).as_group());
      }
    add(7, "Omega-compression, |B| <= 3^6", std::to_string(comp) + "/" + std::to_string(comp),
        std::to_string(comp_ok) + "/" + std::to_string(comp));

    std::vector<std::pair<std::size_t, std::size_t>> proper;
    for (std::size_t i = 0; i < small.size(); ++i)
      for (std::size_t j = 0; j < small.size(); ++j)
        if (small[i].order_log() < small[j].order_log() && embeds_into(small[i], small[j])) proper.emplace_back(i, j);
    std::uint64_t mono = 0, mono_ok = 0;
    for (const auto& [ai, bi] : proper)
      for (const auto& [ci, di] : proper) {
        ++mono;
        mono_ok += hom_count(small[ai], small[ci]).value() < hom_count(small[bi], small[di]).value();
      }
    add(7, "strict monotonicity, orders <= 3^4", std::to_string(mono) + "/" + std::to_string(mono),
        std::to_string(mono_ok) + "/" + std::to_string(mono));
  }

  void criterion8() {
    for (const char* key : {"eq51", "example2"}) {
      const GroupAnalysis& a = analysis(key);
      const std::string n = a.group().name();
      const ClaimReport r = check_commutator_omega(a, exhaustive_opts());
      add(8, n + " [x,G] = Omega_m, |C(x)| formula", "pass", verdict_name(r.verdict));
      const std::uint64_t outside = a.group().order().to_u64() - a.frattini().size();
      add(8, n + " elements checked (G - Phi)", std::to_string(outside),
          std::to_string(r.witness.value("elements_checked", std::uint64_t{0})));
    }
  }

  const SuiteOptions& opts_;
  std::function<void(const SuiteRow&)> on_row_;
  std::vector<SuiteRow> rows_;
  std::map<std::string, std::unique_ptr<GroupAnalysis>> cache_;
};

}  // namespace detail

inline std::vector<SuiteRow> run_paper_suite(const SuiteOptions& opts,
                                             std::function<void(const SuiteRow&)> on_row = {}) {
  return detail::SuiteRun(opts, std::move(on_row)).run();
}

inline nlohmann::json suite_row_json(const SuiteRow& r) {
  return {{"criterion", r.criterion},
          {"item", r.item},
          {"expected", r.expected},
          {"computed", r.computed},
          {"status", verdict_name(r.status)}};
}

}  // namespace cpa
