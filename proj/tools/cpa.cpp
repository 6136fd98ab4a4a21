// cpa: invariants, claim checks and the reproduction table for class-2 p-groups.
//
// Exit codes: 0 pass, 1 fail or mismatch, 2 not-applicable, budget or bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cpa/cpa.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::string group;
  std::uint64_t p = 3;
  std::optional<std::uint64_t> n;
  std::vector<std::string> params;
  std::string file;
  std::string claim;
  std::uint64_t budget_homs = 1'000'000;
  std::uint64_t budget_elems = cpa::kDefaultElementCap;
  std::uint64_t budget_oracle = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::string mode;
  unsigned threads = 0;
  bool json_out = false;
  std::string json_path;
};

std::uint64_t env_or(const char* name, std::uint64_t dflt) {
  const char* v = std::getenv(name);
  if (!v || !*v) return dflt;
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw CLI::ValidationError(name, std::string("not an integer: ") + v);
  }
}

json pp_json(const cpa::PrimePower& x) { return cpa::prime_power_json(x); }

struct Input {
  cpa::GroupPtr group;
  std::optional<cpa::CatalogEntry> entry;
};

Input load_input(const RunConfig& cfg) {
  if (!cfg.file.empty()) {
    if (!cfg.group.empty()) throw CLI::ValidationError("--file", "give either --group or --file, not both");
    return {cpa::build_group(cpa::load_presentation(cfg.file), cfg.file), std::nullopt};
  }
  if (cfg.group.empty()) throw CLI::ValidationError("--group", "a group is required (--group or --file)");
  cpa::CatalogParams params;
  params["p"] = std::to_string(cfg.p);
  if (cfg.n) params["n"] = std::to_string(*cfg.n);
  for (const auto& kv : cfg.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  cpa::CatalogEntry e = cpa::catalog(cfg.group, params);
  return {e.group, e};
}

void emit_json(const RunConfig& cfg, const json& j) {
  if (cfg.json_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(cfg.json_path);
  if (!out) throw std::runtime_error("cannot write " + cfg.json_path);
  out << j.dump(2) << "\n";
}

json group_descriptor(const cpa::GroupAnalysis& a) {
  const auto s = a.section_invariants();
  return {{"name", a.group().name()},
          {"order", pp_json(s.order)},
          {"center", {{"order", pp_json(a.center().order())}, {"invariants", s.center}}},
          {"derived", {{"order", pp_json(a.derived().order())}, {"invariants", s.derived}}},
          {"frattini", pp_json(s.frattini_order)},
          {"central_quotient", {{"order", pp_json(a.central_quotient().order())}, {"invariants", s.central_quotient}}},
          {"abelianization", s.abelianization},
          {"d", s.d},
          {"exponent_central_quotient", pp_json(s.exponent_central_quotient)},
          {"exponent_derived", pp_json(s.exponent_derived)}};
}

std::string invariant_text(std::uint64_t p, const std::vector<std::uint32_t>& inv) {
  return cpa::AbelianPGroup(p, inv).describe();
}

int cmd_invariants(const RunConfig& cfg, const cpa::GroupAnalysis& a) {
  const auto s = a.section_invariants();
  const auto classes = a.class_inventory();
  if (cfg.json_out) {
    json j = group_descriptor(a);
    json sizes = json::object();
    for (const auto& [k, v] : classes.sizes) sizes[std::to_string(k)] = v;
    j["classes"] = {{"count", classes.class_count}, {"sizes", sizes}};
    j["center_in_frattini"] = a.center_in_frattini();
    j["special"] = a.is_special();
    emit_json(cfg, {{"command", "invariants"}, {"group", j}});
    return 0;
  }
  const std::uint64_t p = a.prime();
  std::cout << "group            " << a.group().name() << "\n"
            << "order            " << s.order.to_string() << "\n"
            << "|Z(G)|           " << a.center().order().to_string() << "  (" << invariant_text(p, s.center) << ")\n"
            << "|gamma2(G)|      " << a.derived().order().to_string() << "  (" << invariant_text(p, s.derived) << ")\n"
            << "|Phi(G)|         " << s.frattini_order.to_string() << "\n"
            << "d(G)             " << s.d << "\n"
            << "G/Z(G)           " << invariant_text(p, s.central_quotient) << "\n"
            << "G/gamma2(G)      " << invariant_text(p, s.abelianization) << "\n"
            << "exp(G/Z)         " << s.exponent_central_quotient.to_string() << "\n"
            << "exp(gamma2)      " << s.exponent_derived.to_string() << "\n"
            << "Z <= Phi         " << (a.center_in_frattini() ? "yes" : "no") << "\n"
            << "special          " << (a.is_special() ? "yes" : "no") << "\n"
            << "classes          " << classes.class_count << "\n";
  for (const auto& [size, count] : classes.sizes) std::cout << "  size " << size << ": " << count << "\n";
  return 0;
}

int verdict_exit(cpa::Verdict v) {
  switch (v) {
    case cpa::Verdict::Pass: return 0;
    case cpa::Verdict::Fail: return 1;
    default: return 2;
  }
}

int cmd_check(const RunConfig& cfg, const cpa::GroupAnalysis& a, const cpa::CheckOptions& opts) {
  std::vector<std::string> claims;
  if (cfg.claim == "all")
    claims = cpa::claim_names();
  else
    claims = {cfg.claim};
  std::vector<cpa::ClaimReport> reports;
  for (const auto& c : claims) reports.push_back(cpa::run_check(c, a, opts));

  int code = 0;
  for (const auto& r : reports) {
    const int c = verdict_exit(r.verdict);
    if (c == 1) code = 1;
    else if (c == 2 && code == 0) code = 2;
  }

  if (cfg.json_out) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(cpa::report_to_json(r));
    emit_json(cfg, {{"command", "check"}, {"group", group_descriptor(a)}, {"reports", arr}});
    return code;
  }
  for (const auto& r : reports) {
    std::cout << r.claim << " on " << r.subject << ": " << cpa::verdict_name(r.verdict) << " (" << r.mode;
    if (r.mode == "sampled") std::cout << ", seed " << r.seed;
    std::cout << ", " << static_cast<std::uint64_t>(r.elapsed_ms) << " ms)\n";
    std::cout << "  " << r.witness.dump() << "\n";
  }
  return code;
}

int cmd_verify_paper(const RunConfig& cfg, const cpa::CheckOptions& opts) {
  cpa::SuiteOptions so;
  so.check = opts;
  if (!cfg.file.empty()) so.eq51_file = cfg.file;
  const bool text = !cfg.json_out;
  if (text) std::cout << "crit | item | expected | computed | status\n";
  const auto rows = cpa::run_paper_suite(so, [&](const cpa::SuiteRow& r) {
    if (text)
      std::cout << r.criterion << " | " << r.item << " | " << r.expected << " | " << r.computed << " | "
                << cpa::verdict_name(r.status) << std::endl;
  });
  const int code = cpa::suite_exit_code(rows);
  if (cfg.json_out) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(cpa::suite_row_json(r));
    emit_json(cfg, {{"command", "verify-paper"}, {"rows", arr}, {"exit", code}});
  } else {
    for (const auto& r : rows)
      if (r.status != cpa::Verdict::Pass)
        std::cout << "NOT PASSING: [" << r.criterion << "] " << r.item << ": expected " << r.expected << ", got "
                  << r.computed << "\n";
    std::cout << (code == 0 ? "all rows pass" : code == 1 ? "mismatch" : "incomplete (budget or input)") << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central and class-preserving automorphisms of class-2 p-groups"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool group_input) {
    if (group_input) {
      sub->add_option("--group", cfg.group, "catalog group")
          ->check(CLI::IsMember(cpa::catalog_names()));
      sub->add_option("--p", cfg.p, "prime");
      sub->add_option("--n", cfg.n, "extraspecial: order p^(2n+1)");
      sub->add_option("--param", cfg.params, "extra catalog parameter key=value (e.g. invariants=2,1)");
    }
    sub->add_option("--file", cfg.file, group_input ? "presentation file" : "presentation replacing the built-in eq51 group");
    sub->add_option("--budget-homs", cfg.budget_homs, "max homomorphisms enumerated");
    sub->add_option("--budget-elems", cfg.budget_elems, "max group elements stored");
    sub->add_option("--budget-oracle", cfg.budget_oracle, "max brute-force automorphism candidates");
    sub->add_option("--seed", cfg.seed, "seed for sampled checks");
    sub->add_option("--mode", cfg.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    sub->add_option("--json", cfg.json_path, "emit JSON (to stdout, or to the given path)")->expected(0, 1);
  };

  auto* inv = app.add_subcommand("invariants", "section invariants and class count");
  add_common(inv, true);
  auto* chk = app.add_subcommand("check", "run one claim verifier");
  add_common(chk, true);
  std::vector<std::string> claim_choices = cpa::claim_names();
  claim_choices.push_back("all");
  chk->add_option("--claim", cfg.claim, "claim name")->required()->check(CLI::IsMember(claim_choices));
  auto* ver = app.add_subcommand("verify-paper", "reproduction table");
  add_common(ver, false);

  // environment first, flags override
  try {
    cfg.budget_homs = env_or("CPA_BUDGET_HOMS", cfg.budget_homs);
    cfg.budget_elems = env_or("CPA_BUDGET_ELEMS", cfg.budget_elems);
    cfg.budget_oracle = env_or("CPA_BUDGET_ORACLE", cfg.budget_oracle);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto* sub : {inv, chk, ver})
    if (sub->parsed()) {
      cfg.command = sub->get_name();
      cfg.json_out = sub->count("--json") > 0;
    }

  try {
    if (cfg.budget_homs == 0 || cfg.budget_elems == 0 || cfg.budget_oracle == 0)
      throw CLI::ValidationError("budget", "budgets must be positive");
    if (cfg.mode == "sampled" && !cfg.seed) throw CLI::ValidationError("--seed", "sampled mode requires --seed");

    cpa::CheckOptions opts;
    opts.hom_budget = cfg.budget_homs;
    opts.oracle_budget = cfg.budget_oracle;
    opts.element_cap = cfg.budget_elems;
    opts.seed = cfg.seed.value_or(1);
    opts.threads = cfg.threads;
    if (cfg.mode == "exhaustive") opts.mode = cpa::CheckMode::Exhaustive;
    if (cfg.mode == "sampled") opts.mode = cpa::CheckMode::Sampled;

    if (cfg.command == "verify-paper") return cmd_verify_paper(cfg, opts);

    const Input in = load_input(cfg);
    const cpa::GroupAnalysis a(in.group, {opts.element_cap});
    if (in.entry) cpa::verify_catalog_entry(*in.entry, a);
    if (cfg.command == "invariants") return cmd_invariants(cfg, a);
    return cmd_check(cfg, a, opts);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cpa::PresentationError& e) {
    std::cerr << "presentation error (" << cpa::PresentationError::kind_name(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const cpa::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
