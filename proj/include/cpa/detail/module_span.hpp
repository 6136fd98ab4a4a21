#pragma once

// Smith normal form over the local ring Z/p^E.
//
// A finite abelian p-group with coordinate exponents e_1..e_k embeds in
// (Z/p^E)^k (E = max e_i) by scaling coordinate i by p^(E - e_i). Every
// subgroup is then the row space of an integer matrix, and over Z/p^E the
// entry of least valuation divides all others, so elimination never needs
// gcd steps. Row operations are mirrored on an untouched copy of the
// generator matrix: row t of that copy equals d_t times row t of V^-1, which
// gives an independent basis together with its expression in the inputs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cpa/arith.hpp"

namespace cpa::detail {

class ModuleSpan {
 public:
  using Vec = std::vector<std::uint64_t>;

  ModuleSpan() = default;

  // `exps` are the ambient coordinate exponents (any order, all >= 1);
  // `gens` are vectors in ambient coordinates.
  ModuleSpan(std::uint64_t p, std::vector<std::uint32_t> exps, const std::vector<Vec>& gens)
      : p_(p), exps_(std::move(exps)) {
    const std::size_t k = exps_.size();
    top_ = 0;
    for (auto e : exps_) top_ = std::max(top_, e);
    modulus_ = checked_pow(p_, top_);
    if (modulus_ > (UINT64_MAX >> 2)) throw std::overflow_error("ModuleSpan: exponent too large");
    scale_.resize(k);
    for (std::size_t i = 0; i < k; ++i) scale_[i] = checked_pow(p_, top_ - exps_[i]);

    const std::size_t r = gens.size();
    std::vector<Vec> m(r, Vec(k, 0));
    for (std::size_t j = 0; j < r; ++j) {
      if (gens[j].size() != k) throw std::invalid_argument("ModuleSpan: generator has wrong length");
      for (std::size_t i = 0; i < k; ++i) m[j][i] = mul_mod(gens[j][i] % modulus_, scale_[i], modulus_);
    }
    std::vector<Vec> rows = m;  // row operations only
    std::vector<Vec> u(r, Vec(r, 0));
    for (std::size_t j = 0; j < r; ++j) u[j][j] = 1;
    v_.assign(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) v_[i][i] = 1;

    std::size_t t = 0;
    while (t < std::min(r, k)) {
      std::size_t bi = r, bj = k;
      std::uint32_t best = top_;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < k; ++j) {
          std::uint32_t val = valuation(m[i][j], p_, top_);
          if (val < best) {
            best = val;
            bi = i;
            bj = j;
          }
        }
      if (bi == r) break;
      std::swap(m[t], m[bi]);
      std::swap(rows[t], rows[bi]);
      std::swap(u[t], u[bi]);
      if (bj != t) {
        for (auto& row : m) std::swap(row[t], row[bj]);
        for (auto& row : v_) std::swap(row[t], row[bj]);
      }
      const std::uint64_t pv = checked_pow(p_, best);
      const std::uint64_t unit = m[t][t] / pv;
      const std::uint64_t unit_inv = inverse_mod(unit % modulus_, modulus_);
      scale_row(m[t], unit_inv);
      scale_row(rows[t], unit_inv);
      scale_row(u[t], unit_inv);
      for (std::size_t i = t + 1; i < r; ++i) {
        if (m[i][t] == 0) continue;
        const std::uint64_t q = m[i][t] / pv;
        sub_row(m[i], m[t], q);
        sub_row(rows[i], rows[t], q);
        sub_row(u[i], u[t], q);
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (m[t][j] == 0) continue;
        const std::uint64_t q = m[t][j] / pv;
        for (std::size_t i = 0; i < r; ++i) m[i][j] = sub_mod(m[i][j], mul_mod(q, m[i][t], modulus_));
        for (std::size_t i = 0; i < k; ++i) v_[i][j] = sub_mod(v_[i][j], mul_mod(q, v_[i][t], modulus_));
      }
      valuations_.push_back(best);
      ++t;
    }

    for (std::size_t s = 0; s < valuations_.size(); ++s) {
      Vec b(k);
      for (std::size_t i = 0; i < k; ++i) b[i] = rows[s][i] / scale_[i];
      basis_.push_back(std::move(b));
      combinations_.push_back(std::move(u[s]));
      invariants_.push_back(top_ - valuations_[s]);
    }
  }

  std::uint64_t prime() const { return p_; }
  const std::vector<std::uint32_t>& ambient_exponents() const { return exps_; }
  std::size_t rank() const { return invariants_.size(); }
  // Non-increasing; basis()[t] has order p^invariants()[t].
  const std::vector<std::uint32_t>& invariants() const { return invariants_; }
  const std::vector<Vec>& basis() const { return basis_; }
  // basis()[t] = sum_j combinations()[t][j] * gens[j].
  const std::vector<Vec>& combinations() const { return combinations_; }

  std::uint32_t order_log() const {
    std::uint32_t s = 0;
    for (auto e : invariants_) s += e;
    return s;
  }

  // Coefficients of w in basis(), each reduced mod p^invariants()[t]; nullopt
  // if w is not in the span.
  std::optional<Vec> coordinates(std::span<const std::uint64_t> w) const {
    const std::size_t k = exps_.size();
    if (w.size() != k) throw std::invalid_argument("ModuleSpan::coordinates: wrong length");
    Vec embedded(k);
    for (std::size_t i = 0; i < k; ++i) embedded[i] = mul_mod(w[i] % modulus_, scale_[i], modulus_);
    Vec c(rank());
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t y = 0;
      for (std::size_t i = 0; i < k; ++i) y = (y + mul_mod(embedded[i], v_[i][j], modulus_)) % modulus_;
      if (j < rank()) {
        const std::uint64_t pv = checked_pow(p_, valuations_[j]);
        if (y % pv != 0) return std::nullopt;
        c[j] = (y / pv) % checked_pow(p_, invariants_[j]);
      } else if (y != 0) {
        return std::nullopt;
      }
    }
    return c;
  }

  bool contains(std::span<const std::uint64_t> w) const { return coordinates(w).has_value(); }

 private:
  std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) const { return (a + modulus_ - b % modulus_) % modulus_; }

  void scale_row(Vec& row, std::uint64_t f) const {
    for (auto& x : row) x = mul_mod(x, f, modulus_);
  }
  void sub_row(Vec& row, const Vec& pivot, std::uint64_t q) const {
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = sub_mod(row[i], mul_mod(q, pivot[i], modulus_));
  }

  std::uint64_t p_ = 2;
  std::vector<std::uint32_t> exps_;
  std::uint32_t top_ = 0;
  std::uint64_t modulus_ = 1;
  Vec scale_;
  std::vector<Vec> v_;
  std::vector<std::uint32_t> valuations_;
  std::vector<std::uint32_t> invariants_;
  std::vector<Vec> basis_;
  std::vector<Vec> combinations_;
};

}  // namespace cpa::detail
