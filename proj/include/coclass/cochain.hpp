#pragma once

#include <bit>
#include <limits>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coclass/finite_group.hpp"
#include "coclass/group_model.hpp"

namespace coclass {

// ---------------------------------------------------------------------------
// Exterior algebra on Y = Hom(K_0, F_p), dim Y = p - 1. Monomials are
// bitmasks over the generators y_0 < y_1 < ...; zero differential.

class ExteriorAlgebra {
 public:
  explicit ExteriorAlgebra(unsigned p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (p > 21) throw std::invalid_argument("ExteriorAlgebra: p too large for a dense basis");
  }

  unsigned p() const { return p_; }
  std::size_t generators() const { return p_ - 1; }
  std::size_t dimension() const { return std::size_t{1} << generators(); }

  std::vector<unsigned> basis(std::size_t grade) const {
    std::vector<unsigned> out;
    for (unsigned mask = 0; mask < dimension(); ++mask)
      if (static_cast<std::size_t>(std::popcount(mask)) == grade) out.push_back(mask);
    return out;
  }

  std::vector<std::size_t> graded_dimensions() const {
    std::vector<std::size_t> dims(generators() + 1, 0);
    for (unsigned mask = 0; mask < dimension(); ++mask) ++dims[static_cast<std::size_t>(std::popcount(mask))];
    return dims;
  }

  /// y_a * y_b as (coefficient, monomial), or nullopt when it vanishes.
  std::optional<std::pair<unsigned, unsigned>> multiply(unsigned a, unsigned b) const {
    if (a & b) return std::nullopt;
    // Sign of the shuffle: pairs (i in a, j in b) with i > j.
    unsigned inversions = 0;
    for (unsigned j = 0; j < generators(); ++j)
      if (b >> j & 1u) inversions += static_cast<unsigned>(std::popcount(a >> (j + 1)));
    const unsigned coeff = (inversions & 1u) ? p_ - 1 : 1 % p_;
    return std::make_pair(coeff, a | b);
  }

  /// Product of general elements given as coefficient vectors indexed by monomial.
  std::vector<unsigned> multiply(const std::vector<unsigned>& x, const std::vector<unsigned>& y) const {
    std::vector<unsigned> z(dimension(), 0);
    for (unsigned a = 0; a < dimension(); ++a) {
      if (!x[a]) continue;
      for (unsigned b = 0; b < dimension(); ++b) {
        if (!y[b]) continue;
        if (auto term = multiply(a, b)) z[term->second] = (z[term->second] + x[a] * y[b] % p_ * term->first) % p_;
      }
    }
    return z;
  }

 private:
  unsigned p_;
};

inline std::vector<std::size_t> exterior_dims(unsigned p) { return ExteriorAlgebra(p).graded_dimensions(); }

// ---------------------------------------------------------------------------
// Normalized cochains on an elementary abelian group F_p^dim.

using Vec = std::vector<long long>;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline bool is_zero_vec(std::span<const long long> v) {
  for (long long c : v)
    if (c) return false;
  return true;
}

}  // namespace detail

/// f : (F_p^dim)^degree -> F_p, zero whenever some argument is 0, optionally
/// precomposed with a linear map applied to every argument. Values come from
/// a dense table or, for large shapes, a seeded hash evaluated on demand.
class Cochain {
 public:
  static constexpr std::size_t kDenseLimit = std::size_t{1} << 20;

  static Cochain constant(unsigned p, std::size_t dim, unsigned value) {
    Cochain c(p, dim, 0);
    c.table_ = {static_cast<std::uint8_t>(value % p)};
    return c;
  }

  /// Dense table indexed by sum_k code(z_k) * (p^dim)^k, code little-endian base p.
  static Cochain from_table(unsigned p, std::size_t dim, std::size_t degree, std::vector<std::uint8_t> values) {
    Cochain c(p, dim, degree);
    if (values.size() != c.table_size()) throw std::invalid_argument("Cochain: table size mismatch");
    c.table_ = std::move(values);
    c.normalize();
    return c;
  }

  static Cochain hashed(unsigned p, std::size_t dim, std::size_t degree, std::uint64_t seed) {
    Cochain c(p, dim, degree);
    c.seed_ = seed;
    return c;
  }

  /// Indicator of a single argument tuple (a basis cochain when non-degenerate).
  static Cochain delta(unsigned p, std::size_t dim, std::size_t degree, std::size_t code) {
    Cochain c(p, dim, degree);
    c.table_.assign(c.table_size(), 0);
    c.table_.at(code) = 1;
    c.normalize();
    return c;
  }

  template <class Rng>
  static Cochain random(unsigned p, std::size_t dim, std::size_t degree, Rng& rng) {
    Cochain c(p, dim, degree);
    if (!c.dense_fits()) return hashed(p, dim, degree, rng());
    c.table_.resize(c.table_size());
    for (auto& v : c.table_) v = static_cast<std::uint8_t>(rng() % p);
    c.normalize();
    return c;
  }

  unsigned p() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  bool is_dense() const { return !seed_; }

  unsigned operator()(std::span<const Vec> args) const {
    if (args.size() != degree_) throw std::invalid_argument("Cochain: degree mismatch");
    if (degree_ == 0) return table_.front();
    std::vector<Vec> twisted;
    twisted.reserve(args.size());
    for (const Vec& z : args) {
      if (z.size() != dim_) throw std::invalid_argument("Cochain: argument dimension mismatch");
      twisted.push_back(twist_.empty() ? z : small_apply_mod(twist_, z, p_));
      if (detail::is_zero_vec(twisted.back())) return 0;
    }
    if (seed_) {
      std::uint64_t h = *seed_;
      for (const Vec& z : twisted)
        for (long long c : z) h = detail::splitmix64(h ^ static_cast<std::uint64_t>(c + 1));
      return static_cast<unsigned>(h % p_);
    }
    return table_[code(twisted)];
  }

  /// (f o m)(z_1, ..., z_k) = f(m z_1, ..., m z_k); m is invertible mod p.
  Cochain precomposed(const SmallMatrix& m) const {
    Cochain c = *this;
    if (degree_ == 0) return c;
    if (twist_.empty()) {
      c.twist_ = m;
      return c;
    }
    // f(T (m z)) with T the current twist.
    SmallMatrix prod(dim_, std::vector<long long>(dim_, 0));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k)
        for (std::size_t j = 0; j < dim_; ++j) prod[i][j] = (prod[i][j] + twist_[i][k] * m[k][j]) % p_;
    c.twist_ = std::move(prod);
    return c;
  }

  std::size_t table_size() const {
    std::size_t n = 1;
    for (std::size_t k = 0; k < dim_ * degree_; ++k) n *= p_;
    return n;
  }

  std::size_t code(std::span<const Vec> args) const {
    std::size_t c = 0, scale = 1;
    for (const Vec& z : args)
      for (long long v : z) {
        c += static_cast<std::size_t>(v) * scale;
        scale *= p_;
      }
    return c;
  }

 private:
  Cochain(unsigned p, std::size_t dim, std::size_t degree) : p_(p), dim_(dim), degree_(degree) {}

  bool dense_fits() const {
    double size = 1;
    for (std::size_t k = 0; k < dim_ * degree_; ++k) size *= p_;
    return size <= static_cast<double>(kDenseLimit);
  }

  void normalize() {
    const std::size_t block = table_size() == 1 ? 1 : [&] {
      std::size_t b = 1;
      for (std::size_t k = 0; k < dim_; ++k) b *= p_;
      return b;
    }();
    for (std::size_t c = 0; c < table_.size(); ++c) {
      std::size_t rest = c;
      for (std::size_t k = 0; k < degree_; ++k, rest /= block)
        if (rest % block == 0) {
          table_[c] = 0;
          break;
        }
    }
  }

  unsigned p_;
  std::size_t dim_;
  std::size_t degree_;
  std::vector<std::uint8_t> table_;
  std::optional<std::uint64_t> seed_;
  SmallMatrix twist_;
};

/// f_1 (x) ... (x) f_n with f_j a cochain on the j-th copy of K_0.
struct ElementaryTensor {
  std::vector<Cochain> slots;

  std::size_t total_degree() const {
    std::size_t m = 0;
    for (const Cochain& f : slots) m += f.degree();
    return m;
  }
};

/// Cross product: factor j reads its own consecutive slice of argument
/// positions (front to back in slot order) on block j of each argument.
inline unsigned cross_product_eval(const SpaceGroupParams& params, const ElementaryTensor& t,
                                   std::span<const Vec> z) {
  const std::size_t b = params.p - 1;
  if (t.slots.size() != params.blocks()) throw std::invalid_argument("cross_product_eval: slot count mismatch");
  if (z.size() != t.total_degree()) throw std::invalid_argument("cross_product_eval: degree mismatch");
  unsigned value = 1;
  std::size_t position = 0;
  std::vector<Vec> slice;
  for (std::size_t j = 0; j < t.slots.size(); ++j) {
    const Cochain& f = t.slots[j];
    slice.clear();
    for (std::size_t k = 0; k < f.degree(); ++k) {
      const Vec& arg = z[position + k];
      if (arg.size() != params.dimension()) throw std::invalid_argument("cross_product_eval: argument length");
      slice.emplace_back(arg.begin() + static_cast<long>(j * b), arg.begin() + static_cast<long>((j + 1) * b));
    }
    position += f.degree();
    value = value * f(slice) % params.p;
    if (!value) return 0;
  }
  return value;
}

/// Slot sigma(i) of q.t is t_i precomposed with A^(-a_sigma(i)).
inline ElementaryTensor act_on_cochain(const SpaceGroupParams& params, const WreathElement& q,
                                       const ElementaryTensor& t) {
  const std::size_t n = params.blocks();
  if (t.slots.size() != n) throw std::invalid_argument("act_on_cochain: slot count mismatch");
  const SmallMatrix a = block_generator_matrix(params.p);
  ElementaryTensor out{std::vector<Cochain>(t.slots)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(q.top[i]);
    const unsigned long long back = (params.p - static_cast<unsigned long long>(q.base[j]) % params.p) % params.p;
    out.slots[j] = t.slots[i].precomposed(small_power_mod(a, back, params.p));
  }
  return out;
}

struct EquivarianceReport {
  std::string identity;
  unsigned p = 0;
  unsigned x = 0;
  std::size_t degree = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  nlohmann::json first_counterexample = nullptr;
  std::uint64_t seed = 0;
  nlohmann::json extra = nlohmann::json::object();

  bool passed() const { return failures == 0 && trials > 0; }

  nlohmann::json to_json() const {
    nlohmann::json j = {{"identity", identity}, {"p", p},         {"x", x},
                        {"degree", degree},     {"trials", trials}, {"failures", failures},
                        {"firstCounterexample", first_counterexample}, {"seed", seed}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
  }
};

namespace detail {

inline Vec random_vec(std::size_t n, unsigned p, std::mt19937_64& rng) {
  Vec v(n);
  for (auto& c : v) c = static_cast<long long>(rng() % p);
  return v;
}

inline nlohmann::json wreath_json(const WreathElement& q) { return {{"base", q.base}, {"top", q.top}}; }

// Both sides of q . eta(t)(z) = eta(q . t)(z), left action (q.F)(z) = F(q^-1 z).
inline std::pair<unsigned, unsigned> eta_sides(const SpaceGroupParams& params, const WreathModel& w,
                                               const WreathElement& q, const ElementaryTensor& t,
                                               std::span<const Vec> z) {
  const WreathElement q_inv = w.invert(q);
  std::vector<Vec> moved;
  for (const Vec& arg : z) moved.push_back(wreath_act(params, q_inv, arg));
  return {cross_product_eval(params, t, moved), cross_product_eval(params, act_on_cochain(params, q, t), z)};
}

}  // namespace detail

/// Tensor 1 (x) ... (x) f (x) ... (x) 1 with f in slot `slot`.
inline ElementaryTensor single_slot_tensor(const SpaceGroupParams& params, std::size_t slot, Cochain f) {
  ElementaryTensor t;
  for (std::size_t j = 0; j < params.blocks(); ++j)
    t.slots.push_back(j == slot ? std::move(f) : Cochain::constant(params.p, params.p - 1, 1));
  return t;
}

inline WreathElement random_wreath_element(const WreathModel& w, const std::vector<Element>& gens,
                                           std::mt19937_64& rng) {
  WreathElement q = w.identity_element();
  const std::size_t steps = 8 * gens.size() + 8;
  for (std::size_t k = 0; k < steps; ++k)
    q = w.compose(q, WreathElement::decode(gens[rng() % gens.size()]));
  for (auto& a : q.base) a = static_cast<long long>(rng() % w.params().p);
  return q;
}

/// Samples (q, single-slot elementary tensor, z) and compares both sides exactly.
inline EquivarianceReport check_eta_equivariance(const SpaceGroupParams& params, std::size_t degree,
                                                 std::size_t trials, std::uint64_t seed) {
  EquivarianceReport report{"eta-equivariance", params.p, params.x, degree, trials};
  report.seed = seed;
  std::mt19937_64 rng(seed);
  const WreathModel w(params);
  const FiniteGroup group = wreath_group(params);
  std::vector<WreathElement> pool;
  if (w.order() <= Integer(1u << 16)) {
    const ElementTable table = enumerate(group);
    for (const Element& e : table.elements()) pool.push_back(WreathElement::decode(e));
  }
  const std::vector<Element> gens = group.generators();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const WreathElement q = pool.empty() ? random_wreath_element(w, gens, rng) : pool[rng() % pool.size()];
    const std::size_t slot = rng() % params.blocks();
    const ElementaryTensor t =
        single_slot_tensor(params, slot, Cochain::random(params.p, params.p - 1, degree, rng));
    std::vector<Vec> z;
    for (std::size_t k = 0; k < degree; ++k) z.push_back(detail::random_vec(params.dimension(), params.p, rng));
    const auto [lhs, rhs] = detail::eta_sides(params, w, q, t, z);
    if (lhs != rhs && report.failures++ == 0)
      report.first_counterexample = {{"trial", trial}, {"q", detail::wreath_json(q)}, {"slot", slot},
                                     {"z", z}, {"lhs", lhs}, {"rhs", rhs}};
  }
  return report;
}

/// Every q in W(x), every basis single-slot tensor, every argument tuple.
inline EquivarianceReport check_eta_equivariance_exhaustive(const SpaceGroupParams& params, std::size_t degree,
                                                            std::size_t budget = 1'000'000) {
  EquivarianceReport report{"eta-equivariance", params.p, params.x, degree, 0};
  const WreathModel w(params);
  const ElementTable table = enumerate(wreath_group(params));
  const std::size_t b = params.p - 1;
  std::size_t arg_count = 1;
  for (std::size_t k = 0; k < params.dimension() * degree; ++k) arg_count *= params.p;
  std::size_t basis = 1, block = 1;
  for (std::size_t k = 0; k < b; ++k) block *= params.p;
  for (std::size_t k = 0; k < degree; ++k) basis *= block;
  const std::size_t total = table.size() * params.blocks() * basis * arg_count;
  if (total > budget) throw BudgetExceeded("exhaustive eta check: " + std::to_string(total) + " cases");

  for (const Element& e : table.elements()) {
    const WreathElement q = WreathElement::decode(e);
    for (std::size_t slot = 0; slot < params.blocks(); ++slot)
      for (std::size_t code = 0; code < basis; ++code) {
        const ElementaryTensor t = single_slot_tensor(params, slot, Cochain::delta(params.p, b, degree, code));
        for (std::size_t zc = 0; zc < arg_count; ++zc) {
          std::vector<Vec> z(degree, Vec(params.dimension()));
          std::size_t rest = zc;
          for (auto& arg : z)
            for (auto& c : arg) {
              c = static_cast<long long>(rest % params.p);
              rest /= params.p;
            }
          const auto [lhs, rhs] = detail::eta_sides(params, w, q, t, z);
          ++report.trials;
          if (lhs != rhs && report.failures++ == 0)
            report.first_counterexample = {{"q", detail::wreath_json(q)}, {"slot", slot}, {"code", code},
                                           {"z", z}, {"lhs", lhs}, {"rhs", rhs}};
        }
      }
  }
  report.extra["exhaustive"] = true;
  return report;
}

// ---------------------------------------------------------------------------
// Inflation along pi_i : T_i -> T_0 = T / pT.

/// Reduction mod p of a lift of the Smith coordinates u of T / N_i.
inline Vec project_to_frattini_quotient(const TranslationQuotient& quotient, const Vec& u, unsigned p) {
  const std::vector<Integer> v = quotient.lift(u);
  Vec out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = detail::floor_mod(v[k], p).convert_to<long long>();
  return out;
}

/// inf(f)(z_1, ..., z_m) = f(pi(z_1), ..., pi(z_m)), f a cochain on F_p^d.
inline unsigned inflate_eval(const Cochain& f, const TranslationQuotient& quotient, std::span<const Vec> z) {
  std::vector<Vec> projected;
  for (const Vec& u : z) projected.push_back(project_to_frattini_quotient(quotient, u, f.p()));
  return f(projected);
}

/// theta . inf(f) = inf(theta . f) on random degree-m cochains and arguments in T_i.
inline EquivarianceReport check_inflation_equivariance(const SpaceGroupParams& params, std::size_t level,
                                                       std::size_t degree, std::size_t trials, std::uint64_t seed) {
  EquivarianceReport report{"inflation-equivariance", params.p, params.x, degree, trials};
  report.seed = seed;
  report.extra["i"] = level;
  std::mt19937_64 rng(seed);
  const FiniteGroup group = quotient_group(params, level, std::numeric_limits<std::size_t>::max());
  const AffineCyclicModel& model = *group.affine();
  const TranslationQuotient& quotient = *group.translations();
  const unsigned p = params.p;
  const std::size_t d = params.dimension();

  // theta^-1 on T_0 is C^(p^x - 1) mod p.
  const IntMatrix c_inv = companion_cyclotomic(params).c.power(params.point_order() - 1);
  SmallMatrix c_inv_mod(d, std::vector<long long>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t col = 0; col < d; ++col) c_inv_mod[r][col] = detail::floor_mod(c_inv(r, col), p).convert_to<long long>();

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Cochain f = Cochain::random(p, d, degree, rng);
    std::vector<Vec> z, moved;
    for (std::size_t k = 0; k < degree; ++k) {
      Vec u(model.rank());
      for (std::size_t j = 0; j < u.size(); ++j) u[j] = static_cast<long long>(rng() % static_cast<std::uint64_t>(model.moduli()[j]));
      moved.push_back(model.act(model.top_order() - 1, u));
      z.push_back(std::move(u));
    }
    const unsigned lhs = inflate_eval(f, quotient, moved);
    const unsigned rhs = inflate_eval(f.precomposed(c_inv_mod), quotient, z);
    if (lhs != rhs && report.failures++ == 0)
      report.first_counterexample = {{"trial", trial}, {"z", z}, {"lhs", lhs}, {"rhs", rhs}};
  }
  return report;
}

}  // namespace coclass
