#pragma once

// Central and class-preserving automorphisms.
//
// Autcent(G) corresponds to Hom(G/gamma_2, Z) via f -> (x -> x f(xgamma_2)),
// and Aut_c(G) to the homs f: G/Z -> gamma_2 with f(gZ) in [g,G] for every g.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "cpa/abelian.hpp"
#include "cpa/analysis.hpp"
#include "cpa/arith.hpp"
#include "cpa/detail/module_span.hpp"
#include "cpa/group.hpp"

namespace cpa {

inline PrimePower autcent_order(const GroupAnalysis& a) {
  if (!a.center_in_frattini())
    throw PreconditionFailed("autcent_order: no purity certificate, Z(G) is not contained in Phi(G)");
  return hom_count(a.abelianization(), a.center().view());
}

struct CentralAutomorphism {
  AbelianHom f;  // G/gamma_2 -> Z

  GroupElement apply(const GroupAnalysis& a, const GroupElement& x) const {
    const AbelianElement z = f.apply(a.abelianization_coordinates(x));
    return a.group().multiply(x, a.center().element(z));
  }
};

// Emits every central automorphism; returns how many were emitted.
inline std::uint64_t enumerate_central_automorphisms(const GroupAnalysis& a, std::uint64_t budget,
                                                     const std::function<void(const CentralAutomorphism&)>& emit) {
  const PrimePower n = autcent_order(a);
  if (!n.at_most(budget)) throw BudgetExceeded("enumerate_central_automorphisms", n, budget);
  const HomSpace homs(a.abelianization(), a.center().view());
  const std::uint64_t p = a.prime();
  const std::size_t d = a.abelianization().rank();
  const std::vector<std::uint32_t> ones(d, 1);
  // images of the basis of Z in G/gamma_2
  std::vector<AbelianElement> zbar;
  for (const auto& z : a.center().basis()) zbar.push_back(a.abelianization_coordinates(z));
  std::uint64_t count = 0;
  homs.for_each([&](const AbelianHom& f) {
    // alpha is an endomorphism; it is onto iff the images of the basis lifts,
    // x_t f(e_t), stay independent modulo Phi.
    std::vector<detail::ModuleSpan::Vec> rows(d, detail::ModuleSpan::Vec(d, 0));
    for (std::size_t t = 0; t < d; ++t) {
      rows[t][t] = 1;
      for (std::size_t k = 0; k < zbar.size(); ++k)
        for (std::size_t j = 0; j < d; ++j) rows[t][j] += f.images[t].coords[k] * zbar[k].coords[j];
      for (auto& v : rows[t]) v %= p;
    }
    if (detail::ModuleSpan(p, ones, rows).rank() != a.d())
      throw std::logic_error("central endomorphism is not bijective; purity certificate is wrong");
    emit(CentralAutomorphism{f});
    ++count;
  });
  return count;
}

struct AutcOptions {
  std::uint64_t budget = 1'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t table_cap = 100'000'000;
};

/// Table of [g,G] membership per coset of Z, indexed by (coset index, gamma_2 index).
class CosetMembership {
 public:
  explicit CosetMembership(const GroupAnalysis& a, std::uint64_t cap) {
    const AbelianPGroup& q = a.central_quotient();
    const AbelianPGroup& gam = a.derived().view();
    cosets_ = q.size();
    gsize_ = gam.size();
    if (cosets_ * gsize_ > cap) throw CapExceeded("coset membership table", q.order() * gam.order(), cap);
    bits_.assign(cosets_ * gsize_, 0);
    for (std::uint64_t c = 0; c < cosets_; ++c) {
      const SubgroupBasis s = a.commutator_subgroup_of_coset(q.element_at(c));
      for (const auto& m : s.members()) bits_[c * gsize_ + gam.index_of(m)] = 1;
    }
  }
  bool contains(std::uint64_t coset, std::uint64_t g) const { return bits_[coset * gsize_ + g]; }
  std::uint64_t cosets() const { return cosets_; }

 private:
  std::uint64_t cosets_ = 0, gsize_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// |Aut_c(G)| by filtering Hom(G/Z, gamma_2) coset by coset.
inline PrimePower autc_order(const GroupAnalysis& a, const AutcOptions& opts = {}) {
  const AbelianPGroup& q = a.central_quotient();
  const AbelianPGroup& gam = a.derived().view();
  const std::uint64_t p = a.prime();
  const PrimePower total = hom_count(q, gam);
  if (!total.at_most(opts.budget)) throw BudgetExceeded("autc_order", total, opts.budget);
  if (q.rank() == 0 || gam.rank() == 0) return {p, 0};
  if (gam.size() > 4096) throw CapExceeded("autc_order addition table", gam.order(), 4096);

  const CosetMembership member(a, opts.table_cap);
  const std::uint64_t gs = gam.size();
  std::vector<std::uint32_t> add(gs * gs);
  for (std::uint64_t i = 0; i < gs; ++i)
    for (std::uint64_t j = 0; j < gs; ++j)
      add[i * gs + j] = static_cast<std::uint32_t>(gam.index_of(gam.add(gam.element_at(i), gam.element_at(j))));

  // Image choices for each basis element of G/Z: Omega_{m_t}(gamma_2).
  const std::size_t d = q.rank();
  std::vector<std::vector<std::uint32_t>> choices(d);
  for (std::size_t t = 0; t < d; ++t)
    for (const auto& y : omega(gam, q.invariants()[t]).members())
      choices[t].push_back(static_cast<std::uint32_t>(gam.index_of(y)));
  std::vector<std::uint64_t> radix(d);
  for (std::size_t t = 0; t < d; ++t) radix[t] = q.modulus(t);

  auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> digit(d);
    {
      std::uint64_t idx = begin;
      for (std::size_t t = d; t-- > 0;) {
        digit[t] = idx % choices[t].size();
        idx /= choices[t].size();
      }
    }
    // multiples[t][c] = gamma_2 index of c * f(e_t)
    std::vector<std::vector<std::uint32_t>> multiples(d);
    auto refresh = [&](std::size_t t) {
      multiples[t].assign(radix[t], 0);
      const std::uint32_t y = choices[t][digit[t]];
      for (std::uint64_t c = 1; c < radix[t]; ++c) multiples[t][c] = add[multiples[t][c - 1] * gs + y];
    };
    for (std::size_t t = 0; t < d; ++t) refresh(t);

    std::uint64_t good = 0;
    std::vector<std::uint64_t> cdig(d);
    std::vector<std::uint32_t> partial(d + 1);  // partial[t] = sum over s >= t
    for (std::uint64_t h = begin; h < end; ++h) {
      // walk all cosets in index order (coordinate 0 fastest)
      std::fill(cdig.begin(), cdig.end(), 0);
      std::fill(partial.begin(), partial.end(), 0);
      bool ok = true;
      std::uint64_t coset = 0;
      const auto& m0 = multiples[0];
      while (ok) {
        const std::uint32_t base = partial[1];
        const std::uint64_t r0 = radix[0];
        for (std::uint64_t c0 = 0; c0 < r0; ++c0) {
          if (!member.contains(coset + c0, add[base * gs + m0[c0]])) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        coset += r0;
        std::size_t t = 1;
        while (t < d && ++cdig[t] == radix[t]) {
          cdig[t] = 0;
          ++t;
        }
        if (t == d) break;
        partial[t] = add[partial[t + 1] * gs + multiples[t][cdig[t]]];
        for (std::size_t s = t; s-- > 1;) partial[s] = partial[t];
      }
      if (ok) ++good;
      // next hom: last digit fastest
      for (std::size_t t = d; t-- > 0;) {
        if (++digit[t] < choices[t].size()) {
          refresh(t);
          break;
        }
        digit[t] = 0;
        refresh(t);
      }
    }
    return good;
  };

  const std::uint64_t n = total.to_u64();
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, n / 64)));
  std::vector<std::uint64_t> partial_counts(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t b = n * w / threads, e = n * (w + 1) / threads;
    pool.emplace_back([&, w, b, e] { partial_counts[w] = count_range(b, e); });
  }
  for (auto& th : pool) th.join();
  const std::uint64_t good = std::accumulate(partial_counts.begin(), partial_counts.end(), std::uint64_t{0});
  auto k = exact_log(p, good);
  if (!k) throw std::logic_error("autc_order: count " + std::to_string(good) + " is not a power of p");
  return {p, *k};
}

// Upper bound prod |x_i^G| over a minimal generating set: an automorphism
// preserving classes is determined by the images x_i -> x_i^G.
inline PrimePower class_size_bound(const GroupAnalysis& a) {
  std::uint32_t k = 0;
  for (const auto& x : a.abelianization_lifts()) k += a.commutator_subgroup(x).order().exponent;
  return {a.prime(), k};
}

/// Sufficient criterion for Aut_c = Autcent when Z = gamma_2 <= Phi: for every
/// nontrivial coset c of Z with height h (c in p^h(G/Z)), p^h gamma_2 <= [c,G].
struct PowerHeightResult {
  bool holds = false;
  std::optional<AbelianElement> failing_coset;
  std::uint64_t cosets_checked = 0;
};

inline PowerHeightResult power_height_scan(const GroupAnalysis& a) {
  if (!a.center_equals_derived() || !a.center_in_frattini())
    throw PreconditionFailed("power_height_criterion: requires Z(G) = gamma_2(G) <= Phi(G)");
  const AbelianPGroup& q = a.central_quotient();
  const AbelianPGroup& gam = a.derived().view();
  std::vector<SubgroupBasis> mhos;
  for (std::uint32_t h = 0; h <= (q.rank() ? q.invariants().front() : 0); ++h) mhos.push_back(mho(gam, h));
  PowerHeightResult r{true, std::nullopt, 0};
  const std::uint64_t n = q.size();
  for (std::uint64_t i = 1; i < n; ++i) {
    const AbelianElement c = q.element_at(i);
    std::uint32_t h = UINT32_MAX;
    for (std::size_t t = 0; t < q.rank(); ++t)
      if (c.coords[t]) h = std::min(h, valuation(c.coords[t], a.prime(), q.invariants()[t]));
    ++r.cosets_checked;
    if (!mhos[h].is_subgroup_of(a.commutator_subgroup_of_coset(c))) {
      r.holds = false;
      r.failing_coset = c;
      return r;
    }
  }
  return r;
}

inline bool power_height_criterion(const GroupAnalysis& a) { return power_height_scan(a).holds; }

enum class OracleScope { Full, Central };

struct OracleCounts {
  // Plain counts: Aut and, without a purity certificate, Autcent need not be p-groups.
  std::optional<std::uint64_t> aut;  // only in Full scope
  std::uint64_t autc = 0;
  std::uint64_t autcent = 0;
  std::uint64_t candidates = 0;
};

/// Brute-force automorphism counts by trying every assignment of images to a
/// minimal generating set. Central scope only tries images x_i Z, which
/// contains every central and every class-preserving automorphism.
inline OracleCounts brute_force_aut(const GroupAnalysis& a, std::uint64_t budget,
                                    OracleScope scope = OracleScope::Full) {
  const Group& G = a.group();
  const std::uint64_t p = a.prime();
  if (!G.order().at_most(2048)) throw CapExceeded("brute_force_aut", G.order(), 2048);
  const auto& gens = a.abelianization_lifts();
  const std::size_t d = gens.size();
  const PrimePower per = scope == OracleScope::Full ? G.order() : a.center().order();
  const PrimePower cand{p, per.exponent * static_cast<std::uint32_t>(d)};
  if (!cand.at_most(budget)) throw BudgetExceeded("brute_force_aut", cand, budget);

  std::vector<GroupElement> elems;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  G.for_each_element([&](const GroupElement& x) {
    index[G.key(x)] = static_cast<std::uint32_t>(elems.size());
    elems.push_back(x);
    return true;
  });
  const std::size_t n = elems.size();
  auto idx = [&](const GroupElement& x) { return index.at(G.key(x)); };
  std::vector<std::uint32_t> mul(n * n), inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv[i] = idx(G.inverse(elems[i]));
    for (std::size_t j = 0; j < n; ++j) mul[i * n + j] = idx(G.multiply(elems[i], elems[j]));
  }
  const std::uint32_t e = idx(G.identity());
  std::vector<std::uint32_t> gidx;
  for (const auto& g : gens) gidx.push_back(idx(g));

  // spanning tree of the Cayley graph
  std::vector<std::uint32_t> order{e}, parent(n, UINT32_MAX), via(n, 0);
  std::vector<bool> seen(n, false);
  seen[e] = true;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (std::size_t j = 0; j < d; ++j) {
      const std::uint32_t w = mul[order[h] * n + gidx[j]];
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = order[h];
        via[w] = static_cast<std::uint32_t>(j);
        order.push_back(w);
      }
    }
  if (order.size() != n) throw std::logic_error("brute_force_aut: lifts do not generate G");

  // conjugacy classes by union-find over conjugation by generators
  std::vector<std::uint32_t> cls(n);
  std::iota(cls.begin(), cls.end(), 0);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (cls[x] != x) x = cls[x] = cls[cls[x]];
    return x;
  };
  for (const auto& g : G.generators()) {
    const std::uint32_t gi = idx(g);
    for (std::size_t x = 0; x < n; ++x) {
      const std::uint32_t c = mul[mul[inv[gi] * n + x] * n + gi];
      cls[find(static_cast<std::uint32_t>(x))] = find(c);
    }
  }
  for (std::size_t x = 0; x < n; ++x) cls[x] = find(static_cast<std::uint32_t>(x));
  std::vector<bool> central(n, false);
  for (const auto& z : a.center().elements()) central[idx(z)] = true;

  std::vector<std::vector<std::uint32_t>> options(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (scope == OracleScope::Full) {
      for (std::size_t x = 0; x < n; ++x) options[j].push_back(static_cast<std::uint32_t>(x));
    } else {
      for (const auto& z : a.center().elements()) options[j].push_back(mul[gidx[j] * n + idx(z)]);
    }
  }

  std::uint64_t aut = 0, autc = 0, autcent = 0, tried = 0;
  std::vector<std::size_t> choice(d, 0);
  std::vector<std::uint32_t> phi(n);
  std::vector<std::uint8_t> hit(n);
  while (true) {
    ++tried;
    phi[e] = e;
    for (std::size_t h = 1; h < n; ++h) {
      const std::uint32_t w = order[h];
      phi[w] = mul[phi[parent[w]] * n + options[via[w]][choice[via[w]]]];
    }
    bool hom = true;
    for (std::size_t w = 0; w < n && hom; ++w)
      for (std::size_t j = 0; j < d; ++j)
        if (phi[mul[w * n + gidx[j]]] != mul[phi[w] * n + options[j][choice[j]]]) {
          hom = false;
          break;
        }
    if (hom) {
      std::fill(hit.begin(), hit.end(), 0);
      std::size_t image = 0;
      for (std::size_t w = 0; w < n; ++w)
        if (!hit[phi[w]]) {
          hit[phi[w]] = 1;
          ++image;
        }
      if (image == n) {
        ++aut;
        bool is_central = true, preserving = true;
        for (std::size_t w = 0; w < n; ++w) {
          if (!central[mul[inv[w] * n + phi[w]]]) is_central = false;
          if (cls[phi[w]] != cls[w]) preserving = false;
        }
        autcent += is_central;
        autc += preserving;
      }
    }
    std::size_t t = d;
    while (t-- > 0) {
      if (++choice[t] < options[t].size()) break;
      choice[t] = 0;
    }
    if (t == static_cast<std::size_t>(-1)) break;
  }

  OracleCounts out;
  out.autc = autc;
  out.autcent = autcent;
  out.candidates = tried;
  if (scope == OracleScope::Full) out.aut = aut;
  return out;
}

}  // namespace cpa
