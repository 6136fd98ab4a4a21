#pragma once

// Class-2 power-commutator presentations and their groups.
//
// Generators g_1..g_n have orders o_i = p^(e_i). Power tails t_i = g_i^(o_i)
// and commutators c_ij = [g_i, g_j] (i > j) are central, so multiplication is
// bilinear collection: moving g_k^e left past g_l^a (l > k) contributes
// c_lk^(a e), and an overflowing exponent contributes a power of t_k.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpa/arith.hpp"
#include "cpa/group.hpp"

namespace cpa {

struct CommutatorRelation {
  std::size_t i = 0;  // 0-based, i > j
  std::size_t j = 0;
  std::vector<std::uint32_t> value;
  friend bool operator==(const CommutatorRelation&, const CommutatorRelation&) = default;
};

struct Class2Presentation {
  std::uint64_t prime = 2;
  std::vector<std::uint64_t> orders;
  std::vector<std::vector<std::uint32_t>> powers;  // empty or one vector per generator
  std::vector<CommutatorRelation> commutators;
  friend bool operator==(const Class2Presentation&, const Class2Presentation&) = default;
};

class PresentationError : public std::runtime_error {
 public:
  enum class Kind { Parse, Structure, Centrality, Compatibility, Inconsistent, OrderMismatch };

  PresentationError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::Parse: return "parse";
      case Kind::Structure: return "structure";
      case Kind::Centrality: return "centrality";
      case Kind::Compatibility: return "compatibility";
      case Kind::Inconsistent: return "inconsistent";
      case Kind::OrderMismatch: return "order-mismatch";
    }
    return "unknown";
  }

 private:
  Kind kind_;
};

// File format: {"prime", "orders", "powers"?, "commutators"?: [{"i","j","value"}]}
// with 1-based generator indices.
inline Class2Presentation presentation_from_json(const nlohmann::json& doc) {
  using K = PresentationError::Kind;
  auto fail = [](const std::string& field, const std::string& why) -> PresentationError {
    return PresentationError(K::Parse, "field '" + field + "': " + why);
  };
  if (!doc.is_object()) throw PresentationError(K::Parse, "presentation must be a JSON object");
  auto as_uint = [&](const nlohmann::json& v, const std::string& field) -> std::uint64_t {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw fail(field, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  };
  auto as_vec = [&](const nlohmann::json& v, const std::string& field) {
    if (!v.is_array()) throw fail(field, "expected an array of integers");
    std::vector<std::uint32_t> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto x = as_uint(v[k], field + "[" + std::to_string(k) + "]");
      if (x > UINT32_MAX) throw fail(field, "exponent too large");
      out.push_back(static_cast<std::uint32_t>(x));
    }
    return out;
  };

  Class2Presentation pres;
  if (!doc.contains("prime")) throw fail("prime", "missing");
  pres.prime = as_uint(doc["prime"], "prime");
  if (!doc.contains("orders") || !doc["orders"].is_array()) throw fail("orders", "missing or not an array");
  for (std::size_t k = 0; k < doc["orders"].size(); ++k)
    pres.orders.push_back(as_uint(doc["orders"][k], "orders[" + std::to_string(k) + "]"));
  if (doc.contains("powers")) {
    if (!doc["powers"].is_array()) throw fail("powers", "expected an array");
    for (std::size_t k = 0; k < doc["powers"].size(); ++k)
      pres.powers.push_back(as_vec(doc["powers"][k], "powers[" + std::to_string(k) + "]"));
  }
  if (doc.contains("commutators")) {
    if (!doc["commutators"].is_array()) throw fail("commutators", "expected an array");
    for (std::size_t k = 0; k < doc["commutators"].size(); ++k) {
      const auto& c = doc["commutators"][k];
      const std::string f = "commutators[" + std::to_string(k) + "]";
      if (!c.is_object() || !c.contains("i") || !c.contains("j") || !c.contains("value"))
        throw fail(f, "expected an object with i, j, value");
      const auto i = as_uint(c["i"], f + ".i"), j = as_uint(c["j"], f + ".j");
      if (i == 0 || j == 0) throw fail(f, "generator indices are 1-based");
      pres.commutators.push_back({i - 1, j - 1, as_vec(c["value"], f + ".value")});
    }
  }
  return pres;
}

inline nlohmann::json presentation_to_json(const Class2Presentation& pres) {
  nlohmann::json doc;
  doc["prime"] = pres.prime;
  doc["orders"] = pres.orders;
  if (!pres.powers.empty()) doc["powers"] = pres.powers;
  nlohmann::json comms = nlohmann::json::array();
  for (const auto& c : pres.commutators) comms.push_back({{"i", c.i + 1}, {"j", c.j + 1}, {"value", c.value}});
  doc["commutators"] = comms;
  return doc;
}

inline Class2Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PresentationError(PresentationError::Kind::Parse, "cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw PresentationError(PresentationError::Kind::Parse, path + ": " + e.what());
  }
  return presentation_from_json(doc);
}

struct BuildOptions {
  std::uint64_t closure_check_limit = 1u << 17;
  std::uint64_t associativity_samples = 10000;
  std::uint64_t seed = 1;
};

class PcGroup : public Group {
 public:
  PcGroup(Class2Presentation pres, std::string label, const BuildOptions& opts = {})
      : pres_(std::move(pres)), label_(std::move(label)) {
    check_structure();
    const std::size_t n = pres_.orders.size();
    tails_.assign(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < pres_.powers.size(); ++i) tails_[i] = pres_.powers[i];
    comm_.assign(n * n, std::vector<std::uint32_t>());
    for (const auto& c : pres_.commutators) comm_[c.i * n + c.j] = c.value;
    order_log_ = 0;
    for (auto o : pres_.orders) order_log_ += *exact_log(pres_.prime, o);
    if (order().at_most(1ULL << 30)) reduce_bound_ = order().to_u64();
    noncentral_.assign(n, false);
    for (const auto& c : pres_.commutators)
      if (std::any_of(c.value.begin(), c.value.end(), [](auto x) { return x != 0; }))
        noncentral_[c.i] = noncentral_[c.j] = true;
    check_triangular();
    check_centrality();
    check_compatibility();
    check_consistency();
    check_associativity(opts);
    check_closure(opts);
  }

  const Class2Presentation& presentation() const { return pres_; }
  std::size_t rank() const { return pres_.orders.size(); }

  std::string name() const override { return label_; }
  std::uint64_t prime() const override { return pres_.prime; }
  PrimePower order() const override { return {pres_.prime, order_log_}; }
  GroupElement identity() const override { return {std::vector<std::uint32_t>(rank(), 0)}; }

  GroupElement generator(std::size_t k, std::uint32_t e = 1) const {
    GroupElement g = identity();
    g.exps.at(k) = static_cast<std::uint32_t>(e % pres_.orders[k]);
    return g;
  }
  std::vector<GroupElement> generators() const override {
    std::vector<GroupElement> out;
    for (std::size_t k = 0; k < rank(); ++k) out.push_back(generator(k));
    return out;
  }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    GroupElement r = a;
    for (std::size_t k = 0; k < rank(); ++k)
      if (b.exps[k]) append(r, k, b.exps[k]);
    return r;
  }

  GroupElement inverse(const GroupElement& a) const override {
    GroupElement z = a, y = identity();
    for (std::size_t k = 0; k < rank(); ++k) {
      if (z.exps[k] == 0) continue;
      const std::uint64_t e = pres_.orders[k] - z.exps[k];
      append(y, k, e);
      append(z, k, e);
    }
    return y;
  }

  std::uint64_t key(const GroupElement& a) const override {
    std::uint64_t key = 0, radix = 1;
    for (std::size_t k = 0; k < rank(); ++k) {
      key += a.exps[k] * radix;
      radix *= pres_.orders[k];
    }
    return key;
  }

  GroupElement from_key(std::uint64_t key) const {
    GroupElement g = identity();
    for (std::size_t k = 0; k < rank(); ++k) {
      g.exps[k] = static_cast<std::uint32_t>(key % pres_.orders[k]);
      key /= pres_.orders[k];
    }
    return g;
  }

  void for_each_element(const std::function<bool(const GroupElement&)>& f) const override {
    const std::uint64_t n = order().to_u64();
    GroupElement g = identity();
    for (std::uint64_t k = 0; k < n; ++k) {
      if (!f(g)) return;
      for (std::size_t i = 0; i < rank(); ++i) {
        if (++g.exps[i] < pres_.orders[i]) break;
        g.exps[i] = 0;
      }
    }
  }

  GroupElement random_element(std::mt19937_64& rng) const override {
    GroupElement g = identity();
    for (std::size_t k = 0; k < rank(); ++k)
      g.exps[k] = static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint64_t>(0, pres_.orders[k] - 1)(rng));
    return g;
  }

  std::string format(const GroupElement& a) const override {
    std::string s;
    for (std::size_t k = 0; k < rank(); ++k) {
      if (!a.exps[k]) continue;
      if (!s.empty()) s += "*";
      s += "g" + std::to_string(k + 1);
      if (a.exps[k] != 1) s += "^" + std::to_string(a.exps[k]);
    }
    return s.empty() ? "1" : s;
  }

  nlohmann::json to_json(const GroupElement& a) const override { return a.exps; }

 private:
  using K = PresentationError::Kind;

  const std::vector<std::uint32_t>& comm(std::size_t i, std::size_t j) const { return comm_[i * rank() + j]; }

  // r <- r * g_k^e
  void append(GroupElement& r, std::size_t k, std::uint64_t e) const {
    const std::size_t n = rank();
    const std::uint64_t o = pres_.orders[k];
    if (reduce_bound_) e %= o * reduce_bound_;
    if (e == 0) return;
    std::vector<std::pair<const std::vector<std::uint32_t>*, std::uint64_t>> factors;
    for (std::size_t l = k + 1; l < n; ++l) {
      if (!r.exps[l]) continue;
      const auto& c = comm(l, k);
      if (!c.empty()) factors.push_back({&c, static_cast<std::uint64_t>(r.exps[l]) * e});
    }
    const std::uint64_t total = r.exps[k] + e;
    r.exps[k] = static_cast<std::uint32_t>(total % o);
    if (total >= o) factors.push_back({&tails_[k], total / o});
    for (const auto& [vec, mult] : factors) append_central(r, *vec, mult);
  }

  // r <- r * x^mult for the central element x with normal-form vector v
  void append_central(GroupElement& r, const std::vector<std::uint32_t>& v, std::uint64_t mult) const {
    if (mult == 0) return;
    bool commuting = true;
    for (std::size_t m = 0; m < rank(); ++m)
      if (v[m] && noncentral_[m]) commuting = false;
    if (commuting) {
      for (std::size_t m = 0; m < rank(); ++m)
        if (v[m]) append(r, m, static_cast<std::uint64_t>(v[m]) * mult);
      return;
    }
    r = multiply(r, power(vector_element(v), static_cast<std::int64_t>(mult % (1ULL << 62))));
  }

  GroupElement vector_element(const std::vector<std::uint32_t>& v) const {
    GroupElement g = identity();
    for (std::size_t m = 0; m < rank(); ++m)
      if (v[m]) append(g, m, v[m]);
    return g;
  }

  std::string gen_name(std::size_t k) const { return "g" + std::to_string(k + 1); }
  std::string comm_name(std::size_t i, std::size_t j) const {
    return "[" + gen_name(i) + "," + gen_name(j) + "]";
  }

  void check_structure() const {
    const std::uint64_t p = pres_.prime;
    if (!is_prime(p)) throw PresentationError(K::Structure, "prime " + std::to_string(p) + " is not prime");
    const std::size_t n = pres_.orders.size();
    if (n == 0) throw PresentationError(K::Structure, "presentation has no generators");
    for (std::size_t k = 0; k < n; ++k) {
      auto e = exact_log(p, pres_.orders[k]);
      if (!e || *e == 0)
        throw PresentationError(K::Structure, "order of " + gen_name(k) + " is not a positive power of " + std::to_string(p));
    }
    auto check_vec = [&](const std::vector<std::uint32_t>& v, const std::string& what) {
      if (v.size() != n) throw PresentationError(K::Structure, what + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
      for (std::size_t m = 0; m < n; ++m)
        if (v[m] >= pres_.orders[m]) throw PresentationError(K::Structure, what + ": exponent of " + gen_name(m) + " out of range");
    };
    if (!pres_.powers.empty() && pres_.powers.size() != n)
      throw PresentationError(K::Structure, "powers must list one vector per generator");
    for (std::size_t k = 0; k < pres_.powers.size(); ++k) check_vec(pres_.powers[k], "power tail of " + gen_name(k));
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    for (const auto& c : pres_.commutators) {
      if (c.i >= n || c.j >= n) throw PresentationError(K::Structure, "commutator index out of range");
      if (c.i <= c.j) throw PresentationError(K::Structure, "commutator " + comm_name(c.i, c.j) + " must have i > j");
      if (seen[{c.i, c.j}]) throw PresentationError(K::Structure, "duplicate commutator " + comm_name(c.i, c.j));
      seen[{c.i, c.j}] = true;
      check_vec(c.value, "commutator " + comm_name(c.i, c.j));
    }
  }

  // Values must only involve later generators; otherwise collection is not
  // well-founded. A value that involves a generator occurring in some
  // nontrivial commutator cannot be central.
  void check_triangular() const {
    const std::size_t n = rank();
    auto check = [&](const std::vector<std::uint32_t>& v, std::size_t after, const std::string& what) {
      for (std::size_t m = 0; m <= after && m < n; ++m) {
        if (!v[m]) continue;
        if (noncentral_[m])
          throw PresentationError(K::Centrality, what + " involves " + gen_name(m) + ", which is not central");
        throw PresentationError(K::Structure, what + " involves " + gen_name(m) + ", not a later generator");
      }
    };
    for (std::size_t k = 0; k < n; ++k) check(tails_[k], k, "power tail of " + gen_name(k));
    for (const auto& c : pres_.commutators) check(c.value, c.j, "commutator " + comm_name(c.i, c.j));
  }

  void check_centrality() const {
    auto check = [&](const std::vector<std::uint32_t>& v, const std::string& what) {
      const GroupElement x = vector_element(v);
      for (std::size_t l = 0; l < rank(); ++l)
        if (!is_identity(commutator(x, generator(l))))
          throw PresentationError(K::Centrality, what + " = " + format(x) + " does not commute with " + gen_name(l));
    };
    for (std::size_t k = 0; k < rank(); ++k) check(tails_[k], "power tail of " + gen_name(k));
    for (const auto& c : pres_.commutators) check(c.value, "commutator " + comm_name(c.i, c.j));
  }

  void check_compatibility() const {
    for (const auto& c : pres_.commutators) {
      const GroupElement x = vector_element(c.value);
      for (std::size_t k : {c.i, c.j})
        if (!is_identity(power(x, static_cast<std::int64_t>(pres_.orders[k]))))
          throw PresentationError(K::Compatibility, "commutator " + comm_name(c.i, c.j) + " raised to the order of " +
                                                        gen_name(k) + " is not trivial");
    }
  }

  // Standard overlap words for power-commutator presentations.
  void check_consistency() const {
    const std::size_t n = rank();
    auto fail = [&](const std::string& w) {
      throw PresentationError(K::Inconsistent, "overlap " + w + " collects to different normal forms");
    };
    for (std::size_t k = 0; k < n; ++k) {
      const GroupElement gk = generator(k);
      const GroupElement pw = power(gk, static_cast<std::int64_t>(pres_.orders[k] - 1));
      if (multiply(pw, gk) != multiply(gk, pw)) fail(gen_name(k) + "^" + std::to_string(pres_.orders[k] + 1));
      for (std::size_t j = 0; j < k; ++j) {
        const GroupElement gj = generator(j);
        for (std::size_t i = 0; i < j; ++i) {
          const GroupElement gi = generator(i);
          if (multiply(multiply(gk, gj), gi) != multiply(gk, multiply(gj, gi)))
            fail(gen_name(k) + gen_name(j) + gen_name(i));
        }
        const GroupElement pj = power(gj, static_cast<std::int64_t>(pres_.orders[j] - 1));
        if (multiply(multiply(gk, pj), gj) != multiply(gk, multiply(pj, gj)))
          fail(gen_name(k) + gen_name(j) + "^" + std::to_string(pres_.orders[j]));
        const GroupElement pk = power(gk, static_cast<std::int64_t>(pres_.orders[k] - 1));
        if (multiply(multiply(pk, gk), gj) != multiply(pk, multiply(gk, gj)))
          fail(gen_name(k) + "^" + std::to_string(pres_.orders[k]) + gen_name(j));
      }
    }
  }

  void check_associativity(const BuildOptions& opts) const {
    std::mt19937_64 rng(opts.seed);
    for (std::uint64_t s = 0; s < opts.associativity_samples; ++s) {
      const GroupElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
      if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
        throw PresentationError(K::Inconsistent, "multiplication is not associative on (" + format(a) + ", " +
                                                     format(b) + ", " + format(c) + ")");
    }
  }

  void check_closure(const BuildOptions& opts) const {
    if (!order().at_most(opts.closure_check_limit)) return;
    const Subgroup s = closure(*this, generators(), opts.closure_check_limit);
    if (s.size() != order().to_u64())
      throw PresentationError(K::OrderMismatch, "generators close to " + std::to_string(s.size()) +
                                                    " elements, expected " + order().to_string());
  }

  Class2Presentation pres_;
  std::string label_;
  std::vector<std::vector<std::uint32_t>> tails_;
  std::vector<std::vector<std::uint32_t>> comm_;
  std::uint32_t order_log_ = 0;
  std::vector<bool> noncentral_;
  std::uint64_t reduce_bound_ = 0;  // |G| when small, else 0
};

inline std::shared_ptr<const PcGroup> build_group(Class2Presentation pres, std::string label = "presented",
                                                  const BuildOptions& opts = {}) {
  return std::make_shared<const PcGroup>(std::move(pres), std::move(label), opts);
}

}  // namespace cpa
