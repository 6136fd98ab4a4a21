#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpa/arith.hpp"
#include "cpa/group.hpp"
#include "cpa/pcgroup.hpp"

namespace cpa {

struct RingElement {
  std::uint64_t a = 0;  // a + b t
  std::uint64_t b = 0;
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

/// Z/p^2 [t] / (t^2 + c1 t + c0) with the quadratic irreducible mod p.
class GaloisRing {
 public:
  enum class Ideal { Whole, Maximal, Zero };

  explicit GaloisRing(std::uint64_t p) : p_(p), q_(p * p) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("GaloisRing: p must be an odd prime");
    for (std::uint64_t c1 = 0; c1 < p && !found_; ++c1)
      for (std::uint64_t c0 = 0; c0 < p && !found_; ++c0)
        if (irreducible(c1, c0)) {
          c1_ = c1;
          c0_ = c0;
          found_ = true;
        }
  }

  GaloisRing(std::uint64_t p, std::uint64_t c1, std::uint64_t c0) : p_(p), q_(p * p), c1_(c1 % q_), c0_(c0 % q_) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("GaloisRing: p must be an odd prime");
    if (!irreducible(c1_ % p, c0_ % p)) throw std::invalid_argument("GaloisRing: modulus is reducible mod p");
    found_ = true;
  }

  std::uint64_t prime() const { return p_; }
  std::uint64_t characteristic() const { return q_; }
  std::pair<std::uint64_t, std::uint64_t> modulus() const { return {c1_, c0_}; }
  std::string modulus_string() const {
    std::string s = "t^2";
    if (c1_) s += " + " + std::to_string(c1_) + "t";
    if (c0_) s += " + " + std::to_string(c0_);
    return s;
  }
  std::uint64_t size() const { return q_ * q_; }

  RingElement zero() const { return {}; }
  RingElement one() const { return {1, 0}; }
  RingElement t() const { return {0, 1}; }
  RingElement from_index(std::uint64_t i) const { return {i % q_, (i / q_) % q_}; }
  std::uint64_t index_of(const RingElement& x) const { return x.a + x.b * q_; }

  RingElement add(const RingElement& x, const RingElement& y) const { return {(x.a + y.a) % q_, (x.b + y.b) % q_}; }
  RingElement neg(const RingElement& x) const { return {(q_ - x.a) % q_, (q_ - x.b) % q_}; }
  RingElement sub(const RingElement& x, const RingElement& y) const { return add(x, neg(y)); }
  RingElement mul(const RingElement& x, const RingElement& y) const {
    // (a + b t)(c + d t) = ac + (ad + bc) t + bd t^2, with t^2 = -c1 t - c0
    const std::uint64_t bd = x.b * y.b % q_;
    const std::uint64_t a = (x.a * y.a + q_ * q_ - bd * c0_ % q_) % q_;
    const std::uint64_t b = (x.a * y.b + x.b * y.a + q_ * q_ - bd * c1_ % q_) % q_;
    return {a, b};
  }

  bool is_unit(const RingElement& x) const { return x.a % p_ != 0 || x.b % p_ != 0; }

  // Rx + Ry is R, pR or 0.
  Ideal ideal_of(const RingElement& x, const RingElement& y) const {
    if (is_unit(x) || is_unit(y)) return Ideal::Whole;
    if (x != zero() || y != zero()) return Ideal::Maximal;
    return Ideal::Zero;
  }

  static const char* ideal_name(Ideal i) {
    switch (i) {
      case Ideal::Whole: return "R";
      case Ideal::Maximal: return "pR";
      case Ideal::Zero: return "0";
    }
    return "?";
  }

  RingElement random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> d(0, q_ - 1);
    const std::uint64_t a = d(rng);
    return {a, d(rng)};
  }

  // Sampled ring axioms; returns the number of violations.
  std::uint64_t check_axioms(std::uint64_t samples, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uint64_t bad = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
      const RingElement x = random(rng), y = random(rng), z = random(rng);
      if (mul(mul(x, y), z) != mul(x, mul(y, z))) ++bad;
      if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) ++bad;
      if (mul(x, y) != mul(y, x)) ++bad;
      if (mul(one(), x) != x) ++bad;
    }
    return bad;
  }

  nlohmann::json to_json(const RingElement& x) const { return {x.a, x.b}; }
  std::string format(const RingElement& x) const {
    if (x.b == 0) return std::to_string(x.a);
    std::string s = x.a ? std::to_string(x.a) + "+" : "";
    s += (x.b == 1 ? "" : std::to_string(x.b)) + "t";
    return s;
  }

 private:
  bool irreducible(std::uint64_t c1, std::uint64_t c0) const {
    for (std::uint64_t r = 0; r < p_; ++r)
      if ((r * r + c1 * r + c0) % p_ == 0) return false;
    return true;
  }

  std::uint64_t p_, q_;
  std::uint64_t c1_ = 0, c0_ = 0;
  bool found_ = false;
};

/// The unitriangular group of matrices M(x, y, z) over a Galois ring, with
/// M(x,y,z) M(x',y',z') = M(x+x', y+y', z+z'+yx').
/// Elements are stored as [x.a, x.b, y.a, y.b, z.a, z.b].
class Example2Group : public Group {
 public:
  explicit Example2Group(GaloisRing ring) : ring_(std::move(ring)) {}
  explicit Example2Group(std::uint64_t p) : ring_(p) {}

  const GaloisRing& ring() const { return ring_; }

  GroupElement make(const RingElement& x, const RingElement& y, const RingElement& z) const {
    auto c = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    return {{c(x.a), c(x.b), c(y.a), c(y.b), c(z.a), c(z.b)}};
  }
  RingElement x_of(const GroupElement& g) const { return {g.exps[0], g.exps[1]}; }
  RingElement y_of(const GroupElement& g) const { return {g.exps[2], g.exps[3]}; }
  RingElement z_of(const GroupElement& g) const { return {g.exps[4], g.exps[5]}; }

  std::string name() const override { return "example2(p=" + std::to_string(prime()) + ")"; }
  std::uint64_t prime() const override { return ring_.prime(); }
  PrimePower order() const override { return {prime(), 12}; }
  GroupElement identity() const override { return {std::vector<std::uint32_t>(6, 0)}; }

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const override {
    const RingElement z = ring_.add(ring_.add(z_of(g), z_of(h)), ring_.mul(y_of(g), x_of(h)));
    return make(ring_.add(x_of(g), x_of(h)), ring_.add(y_of(g), y_of(h)), z);
  }

  GroupElement inverse(const GroupElement& g) const override {
    const RingElement x = x_of(g), y = y_of(g);
    return make(ring_.neg(x), ring_.neg(y), ring_.add(ring_.neg(z_of(g)), ring_.mul(y, x)));
  }

  // Closed form M(0, 0, yx' - xy').
  GroupElement commutator(const GroupElement& g, const GroupElement& h) const override {
    const RingElement z = ring_.sub(ring_.mul(y_of(g), x_of(h)), ring_.mul(x_of(g), y_of(h)));
    return make(ring_.zero(), ring_.zero(), z);
  }

  std::vector<GroupElement> generators() const override {
    const RingElement o = ring_.zero();
    return {make(ring_.one(), o, o), make(ring_.t(), o, o), make(o, ring_.one(), o), make(o, ring_.t(), o)};
  }

  std::uint64_t key(const GroupElement& g) const override {
    const std::uint64_t q = ring_.characteristic();
    std::uint64_t k = 0;
    for (std::size_t i = 6; i-- > 0;) k = k * q + g.exps[i];
    return k;
  }

  GroupElement from_key(std::uint64_t k) const {
    const std::uint64_t q = ring_.characteristic();
    GroupElement g = identity();
    for (std::size_t i = 0; i < 6; ++i) {
      g.exps[i] = static_cast<std::uint32_t>(k % q);
      k /= q;
    }
    return g;
  }

  void for_each_element(const std::function<bool(const GroupElement&)>& f) const override {
    const std::uint32_t q = static_cast<std::uint32_t>(ring_.characteristic());
    const std::uint64_t n = order().to_u64();
    GroupElement g = identity();
    for (std::uint64_t k = 0; k < n; ++k) {
      if (!f(g)) return;
      for (std::size_t i = 0; i < 6; ++i) {
        if (++g.exps[i] < q) break;
        g.exps[i] = 0;
      }
    }
  }

  GroupElement random_element(std::mt19937_64& rng) const override {
    return make(ring_.random(rng), ring_.random(rng), ring_.random(rng));
  }

  std::string format(const GroupElement& g) const override {
    return "M(" + ring_.format(x_of(g)) + "," + ring_.format(y_of(g)) + "," + ring_.format(z_of(g)) + ")";
  }

  nlohmann::json to_json(const GroupElement& g) const override {
    return {{"x", ring_.to_json(x_of(g))}, {"y", ring_.to_json(y_of(g))}, {"z", ring_.to_json(z_of(g))}};
  }

 private:
  GaloisRing ring_;
};

inline std::shared_ptr<const Example2Group> example2_group(std::uint64_t p) {
  return std::make_shared<const Example2Group>(p);
}

// a_1, b_1, ..., a_n, b_n, c with [b_i, a_i] = c.
inline Class2Presentation extraspecial_presentation(std::uint64_t p, std::size_t n) {
  if (n == 0) throw std::invalid_argument("extraspecial: n must be positive");
  Class2Presentation pres;
  pres.prime = p;
  pres.orders.assign(2 * n + 1, p);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> c(2 * n + 1, 0);
    c[2 * n] = 1;
    pres.commutators.push_back({2 * i + 1, 2 * i, c});
  }
  return pres;
}

inline std::shared_ptr<const PcGroup> extraspecial(std::uint64_t p, std::size_t n, const BuildOptions& opts = {}) {
  if (p == 2) throw std::invalid_argument("extraspecial: p must be odd");
  return build_group(extraspecial_presentation(p, n),
                     "extraspecial(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ")", opts);
}

inline std::shared_ptr<const PcGroup> heisenberg(std::uint64_t p, const BuildOptions& opts = {}) {
  if (p == 2) throw std::invalid_argument("heisenberg: p must be odd");
  return build_group(extraspecial_presentation(p, 1), "heisenberg(p=" + std::to_string(p) + ")", opts);
}

// x_1, x_2 of order p^2 and x_3..x_6 of order p, refined to eight generators
// x_1, ..., x_6, x_1^p, x_2^p.
inline Class2Presentation eq51_presentation(std::uint64_t p) {
  // [x_a, x_b] = x_r^p for a < b
  static const int rel[6][6] = {
      {0, 1, 2, 2, 2, 2},
      {0, 0, 1, 2, 1, 2},
      {0, 0, 0, 2, 2, 1},
      {0, 0, 0, 0, 1, 1},
      {0, 0, 0, 0, 0, 2},
      {0, 0, 0, 0, 0, 0},
  };
  Class2Presentation pres;
  pres.prime = p;
  pres.orders.assign(8, p);
  pres.powers.assign(8, std::vector<std::uint32_t>(8, 0));
  pres.powers[0][6] = 1;
  pres.powers[1][7] = 1;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b) {
      std::vector<std::uint32_t> v(8, 0);
      // [x_b, x_a] = (x_r^p)^-1
      v[5 + rel[a][b]] = static_cast<std::uint32_t>(p - 1);
      pres.commutators.push_back({b, a, v});
    }
  return pres;
}

inline std::shared_ptr<const PcGroup> eq51_group(std::uint64_t p, const BuildOptions& opts = {}) {
  if (p == 2) throw std::invalid_argument("eq51: p must be odd");
  return build_group(eq51_presentation(p), "eq51(p=" + std::to_string(p) + ")", opts);
}

inline Class2Presentation abelian_presentation(std::uint64_t p, const std::vector<std::uint32_t>& invariants) {
  Class2Presentation pres;
  pres.prime = p;
  for (auto e : invariants) pres.orders.push_back(checked_pow(p, e));
  return pres;
}

inline std::string invariants_string(const std::vector<std::uint32_t>& inv) {
  std::string s;
  for (std::size_t i = 0; i < inv.size(); ++i) s += (i ? "," : "") + std::to_string(inv[i]);
  return s;
}

inline std::shared_ptr<const PcGroup> abelian_group(std::uint64_t p, const std::vector<std::uint32_t>& invariants,
                                                    const BuildOptions& opts = {}) {
  AbelianPGroup check(p, invariants);
  return build_group(abelian_presentation(p, invariants),
                     "abelian(p=" + std::to_string(p) + ",[" + invariants_string(invariants) + "])", opts);
}

// Heisenberg group times an abelian group, as one presentation.
inline std::shared_ptr<const PcGroup> heisenberg_times_abelian(std::uint64_t p,
                                                               const std::vector<std::uint32_t>& invariants,
                                                               const BuildOptions& opts = {}) {
  Class2Presentation pres = extraspecial_presentation(p, 1);
  const std::size_t n = 3 + invariants.size();
  for (auto e : invariants) pres.orders.push_back(checked_pow(p, e));
  for (auto& c : pres.commutators) c.value.resize(n, 0);
  return build_group(pres, "heisenberg(p=" + std::to_string(p) + ") x abelian([" + invariants_string(invariants) + "])",
                     opts);
}

/// Catalog parameters are flat key=value pairs.
using CatalogParams = std::map<std::string, std::string>;

struct CatalogExpectation {
  std::uint32_t order_log = 0;
  std::uint32_t center_log = 0;
  std::uint32_t derived_log = 0;
  std::uint32_t d = 0;
};

struct CatalogEntry {
  std::string name;
  CatalogParams params;
  GroupPtr group;
  CatalogExpectation expected;
};

inline std::vector<std::uint32_t> parse_invariants(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad invariants list '" + s + "'");
    out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"heisenberg", "extraspecial", "example2",
                                                 "eq51",       "abelian",      "direct_product"};
  return names;
}

// Parameters: p (default 3); n for extraspecial; invariants for abelian and
// direct_product (the abelian factor, default "1").
inline CatalogEntry catalog(const std::string& name, const CatalogParams& params, const BuildOptions& opts = {}) {
  auto get = [&](const std::string& k, const std::string& dflt) {
    auto it = params.find(k);
    return it == params.end() ? dflt : it->second;
  };
  auto get_uint = [&](const std::string& k, const std::string& dflt) -> std::uint64_t {
    const std::string v = get(k, dflt);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("catalog parameter " + k + "='" + v + "' is not a non-negative integer");
    return std::stoull(v);
  };
  for (const auto& [k, v] : params)
    if (k != "p" && k != "n" && k != "invariants") throw std::invalid_argument("unknown catalog parameter '" + k + "'");

  const std::uint64_t p = get_uint("p", "3");
  if (!is_prime(p)) throw std::invalid_argument("catalog: p=" + std::to_string(p) + " is not prime");
  CatalogEntry e{name, params, nullptr, {}};
  e.params["p"] = std::to_string(p);
  if (name == "heisenberg") {
    e.group = heisenberg(p, opts);
    e.expected = {3, 1, 1, 2};
  } else if (name == "extraspecial") {
    const std::uint64_t n = get_uint("n", "1");
    e.params["n"] = std::to_string(n);
    e.group = extraspecial(p, n, opts);
    const auto k = static_cast<std::uint32_t>(n);
    e.expected = {2 * k + 1, 1, 1, 2 * k};
  } else if (name == "example2") {
    e.group = example2_group(p);
    e.expected = {12, 4, 4, 4};
  } else if (name == "eq51") {
    e.group = eq51_group(p, opts);
    e.expected = {8, 2, 2, 6};
  } else if (name == "abelian") {
    const std::string inv_s = get("invariants", "1");
    auto inv = parse_invariants(inv_s);
    e.params["invariants"] = inv_s;
    e.group = abelian_group(p, inv, opts);
    const AbelianPGroup a(p, inv);
    std::uint32_t d = 0;
    for (auto x : inv) d += x > 0;
    e.expected = {a.order_log(), a.order_log(), 0, d};
  } else if (name == "direct_product") {
    const std::string inv_s = get("invariants", "1");
    auto inv = parse_invariants(inv_s);
    e.params["invariants"] = inv_s;
    e.group = heisenberg_times_abelian(p, inv, opts);
    const AbelianPGroup a(p, inv);
    e.expected = {3 + a.order_log(), 1 + a.order_log(), 1, 2 + static_cast<std::uint32_t>(a.rank())};
  } else {
    throw std::invalid_argument("unknown catalog group '" + name + "'");
  }
  return e;
}

}  // namespace cpa
