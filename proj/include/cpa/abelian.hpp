#pragma once

// Finite abelian p-groups in invariant-factor form.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpa/arith.hpp"
#include "cpa/detail/module_span.hpp"

namespace cpa {

struct AbelianElement {
  std::vector<std::uint64_t> coords;
  friend bool operator==(const AbelianElement&, const AbelianElement&) = default;
};

/// C_{p^e1} x ... x C_{p^ek} with e1 >= ... >= ek >= 1.
class AbelianPGroup {
 public:
  AbelianPGroup() = default;

  AbelianPGroup(std::uint64_t p, std::vector<std::uint32_t> invariants) : p_(p), inv_(std::move(invariants)) {
    if (!is_prime(p_)) throw std::invalid_argument("AbelianPGroup: " + std::to_string(p_) + " is not prime");
    for (std::size_t i = 0; i < inv_.size(); ++i) {
      if (inv_[i] == 0) throw std::invalid_argument("AbelianPGroup: invariants must be positive");
      if (i > 0 && inv_[i] > inv_[i - 1]) throw std::invalid_argument("AbelianPGroup: invariants must be non-increasing");
    }
    for (auto e : inv_) mod_.push_back(checked_pow(p_, e));
  }

  std::uint64_t prime() const { return p_; }
  const std::vector<std::uint32_t>& invariants() const { return inv_; }
  std::size_t rank() const { return inv_.size(); }
  std::uint64_t modulus(std::size_t i) const { return mod_[i]; }

  std::uint32_t order_log() const {
    std::uint32_t s = 0;
    for (auto e : inv_) s += e;
    return s;
  }
  PrimePower order() const { return {p_, order_log()}; }
  PrimePower exponent() const { return {p_, inv_.empty() ? 0u : inv_.front()}; }

  // Number of elements, for groups small enough to enumerate.
  std::uint64_t size() const { return order().to_u64(); }

  AbelianElement zero() const { return {std::vector<std::uint64_t>(rank(), 0)}; }
  AbelianElement unit(std::size_t i) const {
    auto z = zero();
    z.coords.at(i) = 1;
    return z;
  }

  bool is_member(const AbelianElement& a) const {
    if (a.coords.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
      if (a.coords[i] >= mod_[i]) return false;
    return true;
  }

  AbelianElement add(const AbelianElement& a, const AbelianElement& b) const {
    AbelianElement r = zero();
    for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % mod_[i];
    return r;
  }
  AbelianElement neg(const AbelianElement& a) const {
    AbelianElement r = zero();
    for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = (mod_[i] - a.coords[i] % mod_[i]) % mod_[i];
    return r;
  }
  AbelianElement scale(const AbelianElement& a, std::uint64_t k) const {
    AbelianElement r = zero();
    for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mul_mod(a.coords[i], k % mod_[i], mod_[i]);
    return r;
  }

  // Order of a as an exponent of p.
  std::uint32_t element_order_log(const AbelianElement& a) const {
    std::uint32_t best = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (a.coords[i] == 0) continue;
      best = std::max(best, inv_[i] - valuation(a.coords[i], p_, inv_[i]));
    }
    return best;
  }

  // Little-endian mixed radix: coordinate 0 varies fastest.
  std::uint64_t index_of(const AbelianElement& a) const {
    std::uint64_t idx = 0, radix = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      idx += a.coords[i] * radix;
      radix *= mod_[i];
    }
    return idx;
  }
  AbelianElement element_at(std::uint64_t idx) const {
    AbelianElement a = zero();
    for (std::size_t i = 0; i < rank(); ++i) {
      a.coords[i] = idx % mod_[i];
      idx /= mod_[i];
    }
    return a;
  }

  void for_each_element(const std::function<void(const AbelianElement&)>& f) const {
    const std::uint64_t n = size();
    for (std::uint64_t i = 0; i < n; ++i) f(element_at(i));
  }

  std::string describe() const {
    if (inv_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < inv_.size(); ++i) {
      if (i) s += " x ";
      s += "C" + std::to_string(mod_[i]);
    }
    return s;
  }

  friend bool operator==(const AbelianPGroup& a, const AbelianPGroup& b) {
    return a.p_ == b.p_ && a.inv_ == b.inv_;
  }

 private:
  std::uint64_t p_ = 2;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint64_t> mod_;
};

/// An independent basis of a subgroup of an AbelianPGroup.
class SubgroupBasis {
 public:
  SubgroupBasis() = default;

  SubgroupBasis(AbelianPGroup parent, const std::vector<AbelianElement>& gens) : parent_(std::move(parent)) {
    std::vector<detail::ModuleSpan::Vec> rows;
    for (const auto& g : gens) {
      if (!parent_.is_member(g)) throw std::invalid_argument("SubgroupBasis: generator not in parent group");
      rows.push_back(g.coords);
    }
    span_ = detail::ModuleSpan(parent_.prime(), parent_.invariants(), rows);
    for (const auto& b : span_.basis()) basis_.push_back({b});
  }

  const AbelianPGroup& parent() const { return parent_; }
  const std::vector<AbelianElement>& basis() const { return basis_; }
  const std::vector<std::uint32_t>& invariants() const { return span_.invariants(); }
  std::size_t rank() const { return basis_.size(); }
  PrimePower order() const { return {parent_.prime(), span_.order_log()}; }
  PrimePower exponent() const { return {parent_.prime(), invariants().empty() ? 0u : invariants().front()}; }
  AbelianPGroup as_group() const { return AbelianPGroup(parent_.prime(), invariants()); }

  bool contains(const AbelianElement& a) const { return span_.contains(a.coords); }

  // Coordinates of a with respect to basis(), as an element of as_group().
  std::optional<AbelianElement> coordinates(const AbelianElement& a) const {
    auto c = span_.coordinates(a.coords);
    if (!c) return std::nullopt;
    return AbelianElement{*c};
  }

  AbelianElement element(const AbelianElement& c) const {
    AbelianElement r = parent_.zero();
    for (std::size_t t = 0; t < rank(); ++t) r = parent_.add(r, parent_.scale(basis_[t], c.coords[t]));
    return r;
  }

  // Every member, in as_group() index order.
  std::vector<AbelianElement> members() const {
    std::vector<AbelianElement> out;
    as_group().for_each_element([&](const AbelianElement& c) { out.push_back(element(c)); });
    return out;
  }

  bool is_subgroup_of(const SubgroupBasis& other) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const auto& b) { return other.contains(b); });
  }
  bool same_subgroup(const SubgroupBasis& other) const {
    return order() == other.order() && is_subgroup_of(other);
  }

 private:
  AbelianPGroup parent_;
  detail::ModuleSpan span_;
  std::vector<AbelianElement> basis_;
};

inline SubgroupBasis subgroup_invariants(const AbelianPGroup& a, const std::vector<AbelianElement>& gens) {
  return SubgroupBasis(a, gens);
}

inline SubgroupBasis whole_group(const AbelianPGroup& a) {
  std::vector<AbelianElement> gens;
  for (std::size_t i = 0; i < a.rank(); ++i) gens.push_back(a.unit(i));
  return SubgroupBasis(a, gens);
}

// {x : p^m x = 0}
inline SubgroupBasis omega(const AbelianPGroup& a, std::uint32_t m) {
  std::vector<AbelianElement> gens;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    const std::uint32_t e = a.invariants()[i];
    gens.push_back(a.scale(a.unit(i), checked_pow(a.prime(), e > m ? e - m : 0)));
  }
  return SubgroupBasis(a, gens);
}

// p^m A
inline SubgroupBasis mho(const AbelianPGroup& a, std::uint32_t m) {
  std::vector<AbelianElement> gens;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (m >= a.invariants()[i]) continue;
    gens.push_back(a.scale(a.unit(i), checked_pow(a.prime(), m)));
  }
  return SubgroupBasis(a, gens);
}

inline void require_same_prime(const AbelianPGroup& a, const AbelianPGroup& b) {
  if (a.prime() != b.prime() && a.rank() > 0 && b.rank() > 0)
    throw std::invalid_argument("abelian groups have different primes");
}

// |Hom(A, B)| = prod_{i,j} p^min(a_i, b_j)
inline PrimePower hom_count(const AbelianPGroup& a, const AbelianPGroup& b) {
  require_same_prime(a, b);
  std::uint32_t k = 0;
  for (auto ai : a.invariants())
    for (auto bj : b.invariants()) k += std::min(ai, bj);
  return {a.rank() ? a.prime() : b.prime(), k};
}

struct AbelianHom {
  AbelianPGroup domain;
  AbelianPGroup codomain;
  std::vector<AbelianElement> images;

  AbelianElement apply(const AbelianElement& x) const {
    AbelianElement r = codomain.zero();
    for (std::size_t i = 0; i < images.size(); ++i) r = codomain.add(r, codomain.scale(images[i], x.coords[i]));
    return r;
  }

  bool is_well_defined() const {
    if (images.size() != domain.rank()) return false;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!codomain.is_member(images[i])) return false;
      if (codomain.scale(images[i], domain.modulus(i)) != codomain.zero()) return false;
    }
    return true;
  }

  bool is_zero() const {
    return std::all_of(images.begin(), images.end(), [&](const auto& y) { return y == codomain.zero(); });
  }
};

/// Hom(A, B) laid out as a mixed-radix index space.
///
/// Digit (i, j) is the j-th coordinate of the image of the i-th basis element
/// of A; it ranges over multiples of p^(b_j - min(a_i, b_j)). Digits are
/// ordered row-major with the first digit most significant, so index order is
/// lexicographic in image coordinates and index 0 is the zero map.
class HomSpace {
 public:
  HomSpace(AbelianPGroup a, AbelianPGroup b) : a_(std::move(a)), b_(std::move(b)) {
    require_same_prime(a_, b_);
    for (std::size_t i = 0; i < a_.rank(); ++i)
      for (std::size_t j = 0; j < b_.rank(); ++j) {
        const std::uint32_t m = std::min(a_.invariants()[i], b_.invariants()[j]);
        radix_.push_back(checked_pow(b_.prime(), m));
        step_.push_back(checked_pow(b_.prime(), b_.invariants()[j] - m));
      }
  }

  const AbelianPGroup& domain() const { return a_; }
  const AbelianPGroup& codomain() const { return b_; }
  PrimePower count() const { return hom_count(a_, b_); }
  std::uint64_t size() const { return count().to_u64(); }

  AbelianHom at(std::uint64_t index) const {
    AbelianHom h{a_, b_, std::vector<AbelianElement>(a_.rank(), b_.zero())};
    const std::size_t k = b_.rank();
    for (std::size_t d = radix_.size(); d-- > 0;) {
      h.images[d / k].coords[d % k] = (index % radix_[d]) * step_[d];
      index /= radix_[d];
    }
    return h;
  }

  void for_each(const std::function<void(const AbelianHom&)>& f) const { for_range(0, size(), f); }

  void for_range(std::uint64_t begin, std::uint64_t end, const std::function<void(const AbelianHom&)>& f) const {
    if (begin >= end) return;
    AbelianHom h = at(begin);
    const std::size_t k = b_.rank();
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      f(h);
      for (std::size_t d = radix_.size(); d-- > 0;) {
        auto& c = h.images[d / k].coords[d % k];
        c += step_[d];
        if (c < radix_[d] * step_[d]) break;
        c = 0;
      }
    }
  }

 private:
  AbelianPGroup a_, b_;
  std::vector<std::uint64_t> radix_, step_;
};

inline HomSpace enumerate_homs(const AbelianPGroup& a, const AbelianPGroup& b, std::uint64_t budget) {
  const PrimePower n = hom_count(a, b);
  if (!n.at_most(budget)) throw BudgetExceeded("enumerate_homs", n, budget);
  return HomSpace(a, b);
}

inline bool embeds_into(const AbelianPGroup& a, const AbelianPGroup& b) {
  require_same_prime(a, b);
  if (a.rank() > b.rank()) return false;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (a.invariants()[i] > b.invariants()[i]) return false;
  return true;
}

struct MaximalSplit {
  SubgroupBasis complement;          // H
  AbelianElement cyclic_generator;   // x with A = H x <x>, M = H x <px>
  std::uint32_t i = 0;               // |<x>| = p^(i+1)
};

// For an index-p subgroup M of A, returns H <= M and i with A = H x C_{p^(i+1)}
// and M = H x C_{p^i}. M is the kernel of a functional A -> Z/p; a basis
// vector u_t outside M of least order splits off, and the remaining basis
// vectors corrected by multiples of u_t span H.
inline MaximalSplit maximal_split(const AbelianPGroup& a, const SubgroupBasis& m) {
  const std::uint64_t p = a.prime();
  if (!(m.parent() == a) || m.order().exponent + 1 != a.order_log())
    throw std::invalid_argument("maximal_split: M is not a subgroup of index p");
  const std::size_t k = a.rank();

  // Row-reduce the basis of M modulo p and read off the one-dimensional
  // space of functionals vanishing on it.
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& b : m.basis()) {
    std::vector<std::uint64_t> r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = b.coords[i] % p;
    rows.push_back(r);
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < k && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const std::uint64_t inv = inverse_mod(rows[rank][c], p);
    for (auto& x : rows[rank]) x = mul_mod(x, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint64_t f = rows[r][c];
      for (std::size_t j = 0; j < k; ++j) rows[r][j] = (rows[r][j] + p - mul_mod(f, rows[rank][j], p)) % p;
    }
    pivot_col.push_back(static_cast<int>(c));
    ++rank;
  }
  if (rank + 1 != k) throw std::logic_error("maximal_split: unexpected rank modulo p");
  std::size_t free_col = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free_col)) != pivot_col.end()) ++free_col;
  std::vector<std::uint64_t> c(k, 0);
  c[free_col] = 1;
  for (std::size_t r = 0; r < rank; ++r) c[pivot_col[r]] = (p - rows[r][free_col]) % p;

  // invariants are non-increasing, so the last support index has least order
  std::size_t t = k;
  while (c[t - 1] == 0) --t;
  --t;

  const std::uint64_t ct_inv = inverse_mod(c[t], p);
  std::vector<AbelianElement> hgens;
  for (std::size_t j = 0; j < k; ++j) {
    if (j == t) continue;
    const std::uint64_t q = mul_mod(c[j], ct_inv, p);
    hgens.push_back(a.add(a.unit(j), a.neg(a.scale(a.unit(t), q))));
  }
  MaximalSplit out{SubgroupBasis(a, hgens), a.unit(t), a.invariants()[t] - 1};

  const auto& h = out.complement;
  auto with_x = hgens;
  with_x.push_back(out.cyclic_generator);
  auto with_px = hgens;
  with_px.push_back(a.scale(out.cyclic_generator, p));
  const bool ok = h.is_subgroup_of(m) && m.contains(with_px.back()) &&
                  h.order().exponent + out.i + 1 == a.order_log() &&
                  SubgroupBasis(a, with_x).order() == a.order() &&
                  SubgroupBasis(a, with_px).same_subgroup(m) &&
                  h.order().exponent + out.i == m.order().exponent;
  if (!ok) throw std::logic_error("maximal_split: decomposition failed verification");
  return out;
}

}  // namespace cpa
