#pragma once

// Structural data of a class-2 group: Z, gamma_2, Phi, d, the sections G/Z and
// G/gamma_2, commutator subgroups [x,G] and the class inventory.
//
// In class 2 the map x -> ([x,g_1], ..., [x,g_n]) is a homomorphism into
// gamma_2^n with kernel Z, so G/Z is computed as the span of the images of the
// generators, and [x,G] depends only on the coset xZ.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpa/abelian.hpp"
#include "cpa/arith.hpp"
#include "cpa/detail/module_span.hpp"
#include "cpa/group.hpp"

namespace cpa {

struct AnalysisOptions {
  std::uint64_t element_cap = kDefaultElementCap;
};

struct ClassInventory {
  std::uint64_t class_count = 0;
  std::map<std::uint64_t, std::uint64_t> sizes;  // class size -> number of classes
};

struct SectionInvariants {
  PrimePower order;
  std::vector<std::uint32_t> central_quotient;  // G/Z
  std::vector<std::uint32_t> derived;           // gamma_2
  std::vector<std::uint32_t> center;            // Z
  std::vector<std::uint32_t> abelianization;    // G/gamma_2
  PrimePower frattini_order;
  std::uint32_t d = 0;
  PrimePower exponent_central_quotient;
  PrimePower exponent_derived;
};

class GroupAnalysis {
 public:
  explicit GroupAnalysis(GroupPtr g, AnalysisOptions opts = {}) : g_(std::move(g)), opts_(opts) {
    const Group& G = *g_;
    G.require_enumerable("group analysis", opts_.element_cap);
    gens_ = G.generators();

    std::vector<GroupElement> comms;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        GroupElement c = G.commutator(gens_[i], gens_[j]);
        if (!G.is_identity(c)) comms.push_back(std::move(c));
      }
    derived_ = CentralSubgroup(G, comms, opts_.element_cap);

    std::vector<GroupElement> central;
    G.for_each_element([&](const GroupElement& x) {
      if (G.is_central(x)) central.push_back(x);
      return true;
    });
    center_ = CentralSubgroup(G, central, opts_.element_cap);

    std::vector<GroupElement> phi_gens = comms;
    for (const auto& g : gens_) phi_gens.push_back(G.power(g, static_cast<std::int64_t>(G.prime())));
    frattini_ = closure(G, phi_gens, opts_.element_cap);
    d_ = G.order().exponent - *exact_log(G.prime(), frattini_.size());
    center_in_frattini_ = true;
    for (const auto& b : center_.basis())
      if (!frattini_.contains(G, b)) center_in_frattini_ = false;

    build_central_quotient();
    build_abelianization();
  }

  const Group& group() const { return *g_; }
  GroupPtr group_ptr() const { return g_; }
  const AnalysisOptions& options() const { return opts_; }
  std::uint64_t prime() const { return g_->prime(); }
  const std::vector<GroupElement>& generators() const { return gens_; }

  const CentralSubgroup& center() const { return center_; }
  const CentralSubgroup& derived() const { return derived_; }
  const Subgroup& frattini() const { return frattini_; }
  PrimePower frattini_order() const { return {prime(), *exact_log(prime(), frattini_.size())}; }
  std::uint32_t d() const { return d_; }
  bool center_in_frattini() const { return center_in_frattini_; }
  bool center_equals_derived() const { return center_.order() == derived_.order(); }
  bool is_abelian() const { return derived_.order().exponent == 0; }

  // Special: Z = gamma_2 = Phi, elementary abelian.
  bool is_special() const {
    if (is_abelian() || !center_equals_derived()) return false;
    if (frattini_order() != center_.order()) return false;
    for (auto e : center_.view().invariants())
      if (e != 1) return false;
    return true;
  }

  // ---- G/Z ----
  const AbelianPGroup& central_quotient() const { return central_quotient_; }
  const std::vector<GroupElement>& central_quotient_lifts() const { return cq_lifts_; }

  // gamma_2 coordinates of [x, g_1], ..., [x, g_n], concatenated.
  std::vector<std::uint64_t> signature(const GroupElement& x) const {
    std::vector<std::uint64_t> sig;
    sig.reserve(gens_.size() * derived_.view().rank());
    for (const auto& g : gens_) {
      const auto c = derived_.coordinates(*g_, g_->commutator(x, g));
      if (!c) throw std::logic_error("commutator outside gamma_2");
      sig.insert(sig.end(), c->coords.begin(), c->coords.end());
    }
    return sig;
  }

  AbelianElement coset_coordinates(const GroupElement& x) const {
    auto c = cq_span_.coordinates(signature(x));
    if (!c) throw std::logic_error("signature outside span");
    return {*c};
  }

  // Order of xZ as an exponent of p.
  std::uint32_t coset_order_log(const AbelianElement& c) const { return central_quotient_.element_order_log(c); }

  // [x, G] as a subgroup of derived().view(), for a coset given by coordinates.
  SubgroupBasis commutator_subgroup_of_coset(const AbelianElement& c) const {
    const auto& dv = derived_.view();
    const std::size_t r = dv.rank();
    std::vector<std::uint64_t> sig(gens_.size() * r, 0);
    for (std::size_t t = 0; t < c.coords.size(); ++t) {
      if (!c.coords[t]) continue;
      const auto& b = cq_span_.basis()[t];
      for (std::size_t i = 0; i < sig.size(); ++i) sig[i] += c.coords[t] * b[i];
    }
    std::vector<AbelianElement> parts;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      AbelianElement e = dv.zero();
      for (std::size_t k = 0; k < r; ++k) e.coords[k] = sig[g * r + k] % dv.modulus(k);
      parts.push_back(std::move(e));
    }
    return SubgroupBasis(dv, parts);
  }

  SubgroupBasis commutator_subgroup(const GroupElement& x) const {
    const auto& dv = derived_.view();
    const std::size_t r = dv.rank();
    const auto sig = signature(x);
    std::vector<AbelianElement> parts;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      parts.push_back({std::vector<std::uint64_t>(sig.begin() + g * r, sig.begin() + (g + 1) * r)});
    return SubgroupBasis(dv, parts);
  }

  // |C_G(x)| = |G| / |[x, G]|
  PrimePower centralizer_order(const GroupElement& x) const {
    return {prime(), g_->order().exponent - commutator_subgroup(x).order().exponent};
  }

  // Conjugacy classes: the coset xZ splits into |Z| / |[x,G]| classes of size |[x,G]|.
  ClassInventory class_inventory() const {
    ClassInventory inv;
    const std::uint32_t z = center_.order().exponent;
    central_quotient_.for_each_element([&](const AbelianElement& c) {
      const std::uint32_t s = commutator_subgroup_of_coset(c).order().exponent;
      const std::uint64_t n = checked_pow(prime(), z - s);
      inv.class_count += n;
      inv.sizes[checked_pow(prime(), s)] += n;
    });
    return inv;
  }

  // ---- G/gamma_2 ----
  const AbelianPGroup& abelianization() const { return abelianization_; }
  // Lifts of the basis of G/gamma_2; a minimal generating set of G.
  const std::vector<GroupElement>& abelianization_lifts() const { return ab_lifts_; }

  AbelianElement abelianization_coordinates(const GroupElement& x) const {
    if (ab_quotient_) {
      auto c = ab_section_.coordinates(*ab_quotient_, ab_quotient_->canonical(x));
      if (!c) throw std::logic_error("element outside G/gamma_2 section");
      return *c;
    }
    return coset_coordinates(x);
  }

  SectionInvariants section_invariants() const {
    SectionInvariants s;
    s.order = g_->order();
    s.central_quotient = central_quotient_.invariants();
    s.derived = derived_.view().invariants();
    s.center = center_.view().invariants();
    s.abelianization = abelianization_.invariants();
    s.frattini_order = frattini_order();
    s.d = d_;
    s.exponent_central_quotient = central_quotient_.exponent();
    s.exponent_derived = derived_.view().exponent();
    return s;
  }

  // Lifts x_1..x_d of the basis of G/Z, each the least-key element of its
  // coset; they minimally generate G when Z <= Phi.
  std::vector<GroupElement> distinguished_generating_set() const {
    if (!center_in_frattini_)
      throw PreconditionFailed("distinguished_generating_set: Z(G) is not contained in Phi(G)");
    std::vector<GroupElement> out;
    for (const auto& x : cq_lifts_) {
      GroupElement best = x;
      for (const auto& z : center_.elements()) {
        GroupElement y = g_->multiply(x, z);
        if (g_->key(y) < g_->key(best)) best = std::move(y);
      }
      out.push_back(std::move(best));
    }
    // images in (G/Z)/p(G/Z) = G/Phi must be independent
    std::vector<detail::ModuleSpan::Vec> rows;
    for (const auto& x : out) rows.push_back(coset_coordinates(x).coords);
    const detail::ModuleSpan mod_p(prime(), std::vector<std::uint32_t>(central_quotient_.rank(), 1), rows);
    if (out.size() != d_ || mod_p.rank() != d_)
      throw std::logic_error("distinguished_generating_set: lifts do not minimally generate G");
    return out;
  }

 private:
  void build_central_quotient() {
    const auto& dv = derived_.view();
    std::vector<std::uint32_t> exps;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      for (auto e : dv.invariants()) exps.push_back(e);
    std::vector<detail::ModuleSpan::Vec> rows;
    for (const auto& g : gens_) rows.push_back(signature(g));
    cq_span_ = detail::ModuleSpan(prime(), exps, rows);
    central_quotient_ = AbelianPGroup(prime(), cq_span_.invariants());
    for (const auto& comb : cq_span_.combinations()) {
      GroupElement x = g_->identity();
      for (std::size_t j = 0; j < gens_.size(); ++j)
        if (comb[j]) x = g_->multiply(x, g_->power(gens_[j], static_cast<std::int64_t>(comb[j])));
      cq_lifts_.push_back(std::move(x));
    }
    if (central_quotient_.order().exponent + center_.order().exponent != g_->order().exponent)
      throw std::logic_error("|G/Z| * |Z| != |G|");
  }

  void build_abelianization() {
    if (center_equals_derived()) {
      abelianization_ = central_quotient_;
      ab_lifts_ = cq_lifts_;
      return;
    }
    ab_quotient_ = std::make_shared<QuotientGroup>(g_, derived_, g_->name() + "/gamma2");
    ab_section_ = AbelianSubgroup(*ab_quotient_, ab_quotient_->generators(), opts_.element_cap);
    abelianization_ = ab_section_.view();
    ab_lifts_ = ab_section_.basis();
  }

  GroupPtr g_;
  AnalysisOptions opts_;
  std::vector<GroupElement> gens_;
  CentralSubgroup center_, derived_;
  Subgroup frattini_;
  std::uint32_t d_ = 0;
  bool center_in_frattini_ = false;

  detail::ModuleSpan cq_span_;
  AbelianPGroup central_quotient_;
  std::vector<GroupElement> cq_lifts_;

  std::shared_ptr<QuotientGroup> ab_quotient_;
  AbelianSubgroup ab_section_;
  AbelianPGroup abelianization_;
  std::vector<GroupElement> ab_lifts_;
};

// G/N for N <= Z(G) given by a basis of central elements.
inline std::shared_ptr<const QuotientGroup> quotient_by_central(const GroupAnalysis& a,
                                                                const std::vector<GroupElement>& n_gens,
                                                                std::string label = {}) {
  for (const auto& x : n_gens)
    if (!a.center().contains(a.group(), x))
      throw PreconditionFailed("quotient_by_central: " + a.group().format(x) + " is not central");
  CentralSubgroup n(a.group(), n_gens, a.options().element_cap);
  return std::make_shared<const QuotientGroup>(a.group_ptr(), std::move(n), std::move(label));
}

}  // namespace cpa
