#pragma once

// Common interface for finite p-groups of class <= 2, plus generic subgroup
// machinery that only needs multiplication and an injective element key.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpa/abelian.hpp"
#include "cpa/arith.hpp"

namespace cpa {

inline constexpr std::uint64_t kDefaultElementCap = 2'000'000;

struct GroupElement {
  std::vector<std::uint32_t> exps;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class Group {
 public:
  virtual ~Group() = default;

  virtual std::string name() const = 0;
  virtual std::uint64_t prime() const = 0;
  virtual PrimePower order() const = 0;
  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement inverse(const GroupElement& a) const = 0;
  virtual std::vector<GroupElement> generators() const = 0;
  // Injective on elements.
  virtual std::uint64_t key(const GroupElement& a) const = 0;
  // Visits every element once, in increasing key order; stop by returning false.
  virtual void for_each_element(const std::function<bool(const GroupElement&)>& f) const = 0;
  virtual GroupElement random_element(std::mt19937_64& rng) const = 0;
  virtual std::string format(const GroupElement& a) const = 0;
  virtual nlohmann::json to_json(const GroupElement& a) const = 0;

  // [a, b] = a^-1 b^-1 a b
  virtual GroupElement commutator(const GroupElement& a, const GroupElement& b) const {
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
  }

  virtual GroupElement power(const GroupElement& a, std::int64_t k) const {
    GroupElement base = k < 0 ? inverse(a) : a;
    std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    GroupElement r = identity();
    while (n > 0) {
      if (n & 1) r = multiply(r, base);
      n >>= 1;
      if (n) base = multiply(base, base);
    }
    return r;
  }

  bool is_identity(const GroupElement& a) const { return a == identity(); }

  bool is_central(const GroupElement& a) const {
    for (const auto& g : generators())
      if (!is_identity(commutator(a, g))) return false;
    return true;
  }

  // Order of a as an exponent of p.
  std::uint32_t element_order_log(const GroupElement& a) const {
    std::uint32_t k = 0;
    GroupElement x = a;
    while (!is_identity(x)) {
      x = power(x, static_cast<std::int64_t>(prime()));
      ++k;
      if (k > 64) throw std::logic_error("element_order_log: element of non-p-power order");
    }
    return k;
  }

  void require_enumerable(const std::string& op, std::uint64_t cap) const {
    if (!order().at_most(cap)) throw CapExceeded(op, order(), cap);
  }
};

using GroupPtr = std::shared_ptr<const Group>;

/// An explicitly stored subgroup.
struct Subgroup {
  std::vector<GroupElement> elements;
  std::unordered_set<std::uint64_t> keys;

  std::size_t size() const { return elements.size(); }
  bool contains(const Group& g, const GroupElement& x) const { return keys.count(g.key(x)) > 0; }
};

inline Subgroup closure(const Group& g, const std::vector<GroupElement>& gens, std::uint64_t cap = kDefaultElementCap) {
  Subgroup s;
  std::deque<std::size_t> queue;
  auto add = [&](const GroupElement& x) {
    if (s.keys.insert(g.key(x)).second) {
      s.elements.push_back(x);
      queue.push_back(s.elements.size() - 1);
      if (s.elements.size() > cap) throw CapExceeded("closure", g.order(), cap);
    }
  };
  add(g.identity());
  while (!queue.empty()) {
    const GroupElement x = s.elements[queue.front()];
    queue.pop_front();
    for (const auto& y : gens) add(g.multiply(x, y));
  }
  return s;
}

/// An abelian subgroup with an explicit basis and coordinate map.
///
/// elements()[i] is the product of basis powers given by view().element_at(i).
class AbelianSubgroup {
 public:
  AbelianSubgroup() = default;

  // Basis by repeated extension: take y of largest order p^c modulo the
  // current subgroup K, find k in K with k^(p^c) = y^(p^c), and adjoin y/k,
  // which has order p^c and meets K trivially.
  AbelianSubgroup(const Group& g, const std::vector<GroupElement>& gens, std::uint64_t cap = kDefaultElementCap) {
    const std::uint64_t p = g.prime();
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!g.is_identity(g.commutator(gens[i], gens[j])))
          throw std::invalid_argument("AbelianSubgroup: generators do not commute");
    Subgroup all = closure(g, gens, cap);
    std::sort(all.elements.begin(), all.elements.end(),
              [&](const GroupElement& a, const GroupElement& b) { return g.key(a) < g.key(b); });

    elements_ = {g.identity()};
    index_[g.key(g.identity())] = 0;
    std::vector<std::uint32_t> inv;
    while (elements_.size() < all.size()) {
      const GroupElement* best = nullptr;
      std::uint32_t best_c = 0;
      for (const auto& y : all.elements) {
        if (index_.count(g.key(y))) continue;
        std::uint32_t c = 0;
        GroupElement z = y;
        while (!index_.count(g.key(z))) {
          z = g.power(z, static_cast<std::int64_t>(p));
          ++c;
        }
        if (c > best_c) {
          best_c = c;
          best = &y;
        }
      }
      const std::int64_t pc = static_cast<std::int64_t>(checked_pow(p, best_c));
      const GroupElement target = g.power(*best, pc);
      const GroupElement* root = nullptr;
      for (const auto& k : elements_)
        if (g.power(k, pc) == target) {
          root = &k;
          break;
        }
      if (!root) throw std::logic_error("AbelianSubgroup: basis extension failed");
      const GroupElement y = g.multiply(*best, g.inverse(*root));
      basis_.push_back(y);
      inv.push_back(best_c);

      const std::size_t old = elements_.size();
      GroupElement ya = y;
      for (std::int64_t a = 1; a < pc; ++a) {
        for (std::size_t i = 0; i < old; ++i) {
          GroupElement e = g.multiply(elements_[i], ya);
          index_[g.key(e)] = elements_.size();
          elements_.push_back(std::move(e));
        }
        ya = g.multiply(ya, y);
      }
    }
    // invariants come out non-increasing by construction
    view_ = AbelianPGroup(p, inv);
  }

  const AbelianPGroup& view() const { return view_; }
  const std::vector<GroupElement>& basis() const { return basis_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  PrimePower order() const { return view_.order(); }
  std::size_t size() const { return elements_.size(); }

  bool contains(const Group& g, const GroupElement& x) const { return index_.count(g.key(x)) > 0; }

  std::optional<AbelianElement> coordinates(const Group& g, const GroupElement& x) const {
    auto it = index_.find(g.key(x));
    if (it == index_.end()) return std::nullopt;
    return view_.element_at(it->second);
  }

  const GroupElement& element(const AbelianElement& c) const { return elements_.at(view_.index_of(c)); }

  // Subgroup of view() generated by the coordinates of the given members.
  SubgroupBasis subgroup(const Group& g, const std::vector<GroupElement>& members) const {
    std::vector<AbelianElement> cs;
    for (const auto& m : members) {
      auto c = coordinates(g, m);
      if (!c) throw std::invalid_argument("AbelianSubgroup::subgroup: element outside subgroup");
      cs.push_back(*c);
    }
    return SubgroupBasis(view_, cs);
  }

  bool is_subgroup_of(const Group& g, const AbelianSubgroup& other) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const auto& b) { return other.contains(g, b); });
  }

 private:
  AbelianPGroup view_;
  std::vector<GroupElement> basis_;
  std::vector<GroupElement> elements_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// A subgroup of the center, carried with its abelian basis.
class CentralSubgroup : public AbelianSubgroup {
 public:
  CentralSubgroup() = default;
  CentralSubgroup(const Group& g, const std::vector<GroupElement>& gens, std::uint64_t cap = kDefaultElementCap)
      : AbelianSubgroup(g, gens, cap) {
    for (const auto& b : basis())
      if (!g.is_central(b)) throw std::invalid_argument("CentralSubgroup: " + g.format(b) + " is not central");
  }
};

/// G/N for a central subgroup N, with minimal-key coset representatives.
class QuotientGroup : public Group {
 public:
  QuotientGroup(GroupPtr parent, CentralSubgroup n, std::string label = {})
      : parent_(std::move(parent)), n_(std::move(n)), label_(std::move(label)) {
    for (const auto& b : n_.basis())
      if (!parent_->is_central(b)) throw std::invalid_argument("QuotientGroup: subgroup is not central");
  }

  const Group& parent() const { return *parent_; }
  const CentralSubgroup& kernel() const { return n_; }

  GroupElement canonical(const GroupElement& x) const {
    GroupElement best = x;
    std::uint64_t best_key = parent_->key(x);
    for (const auto& m : n_.elements()) {
      GroupElement y = parent_->multiply(x, m);
      const std::uint64_t k = parent_->key(y);
      if (k < best_key) {
        best_key = k;
        best = std::move(y);
      }
    }
    return best;
  }

  bool is_canonical(const GroupElement& x) const {
    const std::uint64_t k = parent_->key(x);
    for (const auto& m : n_.elements())
      if (parent_->key(parent_->multiply(x, m)) < k) return false;
    return true;
  }

  std::string name() const override {
    return label_.empty() ? parent_->name() + "/N" : label_;
  }
  std::uint64_t prime() const override { return parent_->prime(); }
  PrimePower order() const override {
    return {prime(), parent_->order().exponent - n_.order().exponent};
  }
  GroupElement identity() const override { return parent_->identity(); }
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    return canonical(parent_->multiply(a, b));
  }
  GroupElement inverse(const GroupElement& a) const override { return canonical(parent_->inverse(a)); }
  GroupElement commutator(const GroupElement& a, const GroupElement& b) const override {
    return canonical(parent_->commutator(a, b));
  }
  GroupElement power(const GroupElement& a, std::int64_t k) const override {
    return canonical(parent_->power(a, k));
  }
  std::vector<GroupElement> generators() const override {
    std::vector<GroupElement> out;
    for (const auto& g : parent_->generators()) out.push_back(canonical(g));
    return out;
  }
  std::uint64_t key(const GroupElement& a) const override { return parent_->key(a); }
  void for_each_element(const std::function<bool(const GroupElement&)>& f) const override {
    parent_->for_each_element([&](const GroupElement& x) { return is_canonical(x) ? f(x) : true; });
  }
  GroupElement random_element(std::mt19937_64& rng) const override {
    return canonical(parent_->random_element(rng));
  }
  std::string format(const GroupElement& a) const override { return parent_->format(a) + "N"; }
  nlohmann::json to_json(const GroupElement& a) const override { return {{"coset_rep", parent_->to_json(a)}}; }

 private:
  GroupPtr parent_;
  CentralSubgroup n_;
  std::string label_;
};

}  // namespace cpa
