#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "coclass/errors.hpp"
#include "coclass/fp_matrix.hpp"
#include "coclass/space_group.hpp"

namespace coclass {

using Element = std::vector<long long>;
using SmallMatrix = std::vector<std::vector<long long>>;

/// Split extension (Z/m_1 x ... x Z/m_r) : C_n where the generator of C_n
/// acts by a fixed matrix. Elements are (u_1, ..., u_r, s).
class AffineCyclicModel {
 public:
  AffineCyclicModel() = default;
  AffineCyclicModel(std::vector<long long> moduli, const SmallMatrix& action,
                    unsigned long long top_order)
      : moduli_(std::move(moduli)), top_order_(top_order) {
    const std::size_t r = moduli_.size();
    SmallMatrix current(r, std::vector<long long>(r, 0));
    for (std::size_t k = 0; k < r; ++k) current[k][k] = 1 % moduli_[k];
    powers_.reserve(top_order_);
    for (unsigned long long s = 0; s < top_order_; ++s) {
      powers_.push_back(current);
      current = product(action, current);
    }
    if (current != powers_.front())
      throw std::invalid_argument("AffineCyclicModel: action order does not divide top order");
  }

  std::size_t rank() const { return moduli_.size(); }
  const std::vector<long long>& moduli() const { return moduli_; }
  unsigned long long top_order() const { return top_order_; }
  const SmallMatrix& action_power(unsigned long long s) const { return powers_[s % top_order_]; }

  Integer order() const {
    Integer n = top_order_;
    for (long long m : moduli_) n *= m;
    return n;
  }

  Element identity() const { return Element(rank() + 1, 0); }

  std::vector<long long> act(unsigned long long s, const std::vector<long long>& w) const {
    const SmallMatrix& a = action_power(s);
    std::vector<long long> out(rank());
    for (std::size_t k = 0; k < rank(); ++k) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < rank(); ++j) acc += static_cast<__int128>(a[k][j]) * w[j];
      out[k] = static_cast<long long>(acc % moduli_[k]);
    }
    return out;
  }

  Element multiply(const Element& a, const Element& b) const {
    const std::size_t r = rank();
    const auto s = static_cast<unsigned long long>(a[r]);
    std::vector<long long> w(b.begin(), b.begin() + static_cast<long>(r));
    std::vector<long long> aw = act(s, w);
    Element out(r + 1);
    for (std::size_t k = 0; k < r; ++k) out[k] = (a[k] + aw[k]) % moduli_[k];
    out[r] = static_cast<long long>((s + static_cast<unsigned long long>(b[r])) % top_order_);
    return out;
  }

  Element inverse(const Element& a) const {
    const std::size_t r = rank();
    const unsigned long long back = (top_order_ - static_cast<unsigned long long>(a[r]) % top_order_) % top_order_;
    std::vector<long long> u(a.begin(), a.begin() + static_cast<long>(r));
    std::vector<long long> au = act(back, u);
    Element out(r + 1);
    for (std::size_t k = 0; k < r; ++k) out[k] = (moduli_[k] - au[k]) % moduli_[k];
    out[r] = static_cast<long long>(back);
    return out;
  }

  std::vector<Element> generators() const {
    std::vector<Element> gens;
    for (std::size_t k = 0; k < rank(); ++k) {
      Element e = identity();
      e[k] = 1;
      gens.push_back(std::move(e));
    }
    if (top_order_ > 1) {
      Element t = identity();
      t[rank()] = 1;
      gens.push_back(std::move(t));
    }
    return gens;
  }

 private:
  SmallMatrix product(const SmallMatrix& a, const SmallMatrix& b) const {
    const std::size_t r = rank();
    SmallMatrix c(r, std::vector<long long>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        __int128 acc = 0;
        for (std::size_t k = 0; k < r; ++k) acc += static_cast<__int128>(a[i][k]) * b[k][j];
        long long v = static_cast<long long>(acc % moduli_[i]);
        c[i][j] = v < 0 ? v + moduli_[i] : v;
      }
    return c;
  }

  std::vector<long long> moduli_;
  unsigned long long top_order_ = 1;
  std::vector<SmallMatrix> powers_;
};

/// Element (a_1, ..., a_n; sigma) of C_p wr P with P the Sylow p-subgroup of
/// Sym(n), n = p^(x-1). Encoded as a_0..a_{n-1} followed by sigma(0..n-1).
struct WreathElement {
  std::vector<long long> base;
  std::vector<long long> top;

  Element encode() const {
    Element e = base;
    e.insert(e.end(), top.begin(), top.end());
    return e;
  }

  static WreathElement decode(const Element& e) {
    const std::size_t n = e.size() / 2;
    return {Element(e.begin(), e.begin() + static_cast<long>(n)),
            Element(e.begin() + static_cast<long>(n), e.end())};
  }

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

class WreathModel {
 public:
  WreathModel() = default;
  explicit WreathModel(const SpaceGroupParams& params) : params_(params) {}

  const SpaceGroupParams& params() const { return params_; }
  std::size_t blocks() const { return params_.blocks(); }

  /// p^(1 + p + ... + p^(x-1)).
  Integer order() const {
    Integer n = 1;
    const unsigned long long e = (params_.point_order() - 1) / (params_.p - 1);
    for (unsigned long long k = 0; k < e; ++k) n *= params_.p;
    return n;
  }

  WreathElement identity_element() const {
    WreathElement e{std::vector<long long>(blocks(), 0), std::vector<long long>(blocks())};
    std::iota(e.top.begin(), e.top.end(), 0);
    return e;
  }

  // (a, s)(b, t) = (a + s.b, s t) with (s.b)_j = b_{s^-1(j)}.
  WreathElement compose(const WreathElement& q1, const WreathElement& q2) const {
    const std::size_t n = blocks();
    WreathElement out{std::vector<long long>(n), std::vector<long long>(n)};
    for (std::size_t j = 0; j < n; ++j) {
      out.base[static_cast<std::size_t>(q1.top[j])] = q2.base[j];
      out.top[j] = q1.top[static_cast<std::size_t>(q2.top[j])];
    }
    for (std::size_t j = 0; j < n; ++j) out.base[j] = (out.base[j] + q1.base[j]) % params_.p;
    return out;
  }

  WreathElement invert(const WreathElement& q) const {
    const std::size_t n = blocks();
    WreathElement out{std::vector<long long>(n), std::vector<long long>(n)};
    for (std::size_t j = 0; j < n; ++j) out.top[static_cast<std::size_t>(q.top[j])] = static_cast<long long>(j);
    // -(s^-1 . a)_j = -a_{s(j)}
    for (std::size_t j = 0; j < n; ++j)
      out.base[j] = (params_.p - q.base[static_cast<std::size_t>(q.top[j])]) % params_.p;
    return out;
  }

  Element identity() const { return identity_element().encode(); }
  Element multiply(const Element& a, const Element& b) const {
    return compose(WreathElement::decode(a), WreathElement::decode(b)).encode();
  }
  Element inverse(const Element& a) const { return invert(WreathElement::decode(a)).encode(); }

  /// Base generator in slot 0 and, for each level l < x-1, the p-cycle
  /// shifting the p consecutive sub-blocks of size p^l inside [0, p^(l+1)).
  std::vector<Element> generators() const {
    std::vector<Element> gens;
    WreathElement base = identity_element();
    base.base[0] = 1;
    gens.push_back(base.encode());
    unsigned long long size = 1;
    for (unsigned l = 0; l + 1 < params_.x; ++l, size *= params_.p) {
      WreathElement g = identity_element();
      for (unsigned long long j = 0; j < size * params_.p; ++j) {
        const unsigned long long q = j / size, r = j % size;
        g.top[j] = static_cast<long long>(((q + 1) % params_.p) * size + r);
      }
      gens.push_back(g.encode());
    }
    return gens;
  }

 private:
  SpaceGroupParams params_;
};

/// A concrete finite group with integer-vector elements, plus the metadata
/// that identifies it in reports and cache keys.
class FiniteGroup {
 public:
  using Model = std::variant<AffineCyclicModel, WreathModel>;

  FiniteGroup(Model model, unsigned p, nlohmann::json descriptor,
              std::shared_ptr<const TranslationQuotient> translations = nullptr)
      : model_(std::move(model)),
        p_(p),
        descriptor_(std::move(descriptor)),
        translations_(std::move(translations)) {}

  unsigned prime() const { return p_; }
  const nlohmann::json& descriptor() const { return descriptor_; }
  const Model& model() const { return model_; }
  const AffineCyclicModel* affine() const { return std::get_if<AffineCyclicModel>(&model_); }
  const WreathModel* wreath() const { return std::get_if<WreathModel>(&model_); }
  const TranslationQuotient* translations() const { return translations_.get(); }

  Integer order() const {
    return std::visit([](const auto& m) { return m.order(); }, model_);
  }
  Element identity() const {
    return std::visit([](const auto& m) { return m.identity(); }, model_);
  }
  Element multiply(const Element& a, const Element& b) const {
    return std::visit([&](const auto& m) { return m.multiply(a, b); }, model_);
  }
  Element inverse(const Element& a) const {
    return std::visit([&](const auto& m) { return m.inverse(a); }, model_);
  }
  std::vector<Element> generators() const {
    return std::visit([](const auto& m) { return m.generators(); }, model_);
  }

  Element power(const Element& a, unsigned long long e) const {
    Element result = identity(), base = a;
    while (e) {
      if (e & 1) result = multiply(result, base);
      e >>= 1;
      if (e) base = multiply(base, base);
    }
    return result;
  }

  Element commutator(const Element& a, const Element& b) const {
    return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
  }

 private:
  Model model_;
  unsigned p_;
  nlohmann::json descriptor_;
  std::shared_ptr<const TranslationQuotient> translations_;
};

namespace detail {

inline nlohmann::json integer_json(const Integer& v) {
  if (v <= Integer(std::numeric_limits<long long>::max()) &&
      v >= Integer(std::numeric_limits<long long>::min()))
    return v.convert_to<long long>();
  return v.str();
}

inline nlohmann::json integer_json_vector(const std::vector<Integer>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const Integer& c : v) out.push_back(integer_json(c));
  return out;
}

inline nlohmann::json matrix_json(const IntMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void check_budget(const Integer& order, std::size_t budget) {
  if (order > Integer(budget))
    throw BudgetExceeded("group order " + order.str() + " exceeds budget " + std::to_string(budget));
}

// T / L semidirect C_n with theta acting by c.
inline FiniteGroup semidirect_quotient(const IntMatrix& c, unsigned p, unsigned long long top_order,
                                       const Lattice& lattice, nlohmann::json descriptor,
                                       std::size_t budget) {
  auto quotient = std::make_shared<const TranslationQuotient>(lattice);
  Integer order = lattice.determinant() * top_order;
  check_budget(order, budget);
  AffineCyclicModel model(quotient->moduli(), quotient->induced(c, *quotient), top_order);
  nlohmann::json snf_json = nlohmann::json::array();
  std::vector<long long> moduli = quotient->moduli();
  std::sort(moduli.begin(), moduli.end());
  for (long long m : moduli) snf_json.push_back(m);
  descriptor["order"] = integer_json(order);
  descriptor["snf"] = std::move(snf_json);
  descriptor["matrixC"] = matrix_json(c);
  return FiniteGroup(std::move(model), p, std::move(descriptor), std::move(quotient));
}

}  // namespace detail

/// R_i = (T / N_i) : <theta> with theta acting by the cyclotomic companion matrix.
inline FiniteGroup quotient_group(const SpaceGroupParams& params, std::size_t level,
                                  std::size_t budget = kEnumerationBudget) {
  const ThetaAction action = companion_cyclotomic(params);
  // Order p^(d + x + i) is known before any lattice work.
  Integer order = 1;
  for (std::size_t k = 0; k < params.dimension() + params.x + level; ++k) order *= params.p;
  detail::check_budget(order, budget);
  nlohmann::json desc = {{"model", "quotient"}, {"p", params.p}, {"x", params.x}, {"i", level}};
  return detail::semidirect_quotient(action.c, params.p, params.point_order(),
                                     filtration(action, level).lattice, std::move(desc), budget);
}

/// The maximal class 3-group of order 3^r built from M = [[1,-3],[1,-2]].
inline FiniteGroup b3r(unsigned r, std::size_t budget = kEnumerationBudget) {
  if (r < 3) throw std::invalid_argument("B(3,r) requires r >= 3");
  Integer order = 1;
  for (unsigned k = 0; k < r; ++k) order *= 3;
  detail::check_budget(order, budget);
  const IntMatrix m = maximal_class_matrix(3);
  nlohmann::json desc = {{"model", "b3r"}, {"p", 3}, {"x", 1}, {"i", r - 3}, {"r", r}};
  return detail::semidirect_quotient(m, 3, 3, filtration(m, 3, r - 3).lattice, std::move(desc), budget);
}

/// Split metacyclic/abelian test groups: (Z/m_1 x ... ) : C_top with a given action.
inline FiniteGroup explicit_group(const std::string& name, unsigned p, std::vector<long long> moduli,
                                  const SmallMatrix& action, unsigned long long top_order) {
  AffineCyclicModel model(std::move(moduli), action, top_order);
  nlohmann::json desc = {{"model", "explicit"}, {"name", name}, {"p", p}, {"order", detail::integer_json(model.order())}};
  return FiniteGroup(std::move(model), p, std::move(desc));
}

inline FiniteGroup cyclic_group(unsigned p, unsigned long long n) {
  return explicit_group("C" + std::to_string(n), p, {}, {}, n);
}

inline FiniteGroup elementary_abelian(unsigned p, std::size_t rank) {
  SmallMatrix id(rank, std::vector<long long>(rank, 0));
  for (std::size_t k = 0; k < rank; ++k) id[k][k] = 1;
  return explicit_group("C" + std::to_string(p) + "^" + std::to_string(rank), p,
                        std::vector<long long>(rank, p), id, 1);
}

inline FiniteGroup wreath_group(const SpaceGroupParams& params, std::size_t budget = kEnumerationBudget) {
  WreathModel model(params);
  nlohmann::json desc = {{"model", "wreath"}, {"p", params.p}, {"x", params.x},
                         {"order", detail::integer_json(model.order())}};
  if (model.order() > Integer(budget)) desc["enumerable"] = false;
  return FiniteGroup(std::move(model), params.p, std::move(desc));
}

/// Companion matrix of 1 + y + ... + y^(p-1), reduced mod p, as a small matrix.
inline SmallMatrix block_generator_matrix(unsigned p) {
  const IntMatrix a = companion_cyclotomic(SpaceGroupParams(p, 1)).c;
  SmallMatrix out(p - 1, std::vector<long long>(p - 1));
  for (std::size_t r = 0; r + 1 < p; ++r)
    for (std::size_t c = 0; c + 1 < p; ++c)
      out[r][c] = detail::floor_mod(a(r, c), p).convert_to<long long>();
  return out;
}

inline SmallMatrix small_power_mod(const SmallMatrix& a, unsigned long long e, unsigned p) {
  const std::size_t n = a.size();
  SmallMatrix result(n, std::vector<long long>(n, 0)), base = a;
  for (std::size_t k = 0; k < n; ++k) result[k][k] = 1;
  auto mul = [&](const SmallMatrix& x, const SmallMatrix& y) {
    SmallMatrix z(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (x[i][k])
          for (std::size_t j = 0; j < n; ++j) z[i][j] = (z[i][j] + x[i][k] * y[k][j]) % p;
    return z;
  };
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

inline std::vector<long long> small_apply_mod(const SmallMatrix& a, std::span<const long long> v, unsigned p) {
  std::vector<long long> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    long long acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += a[i][j] * v[j];
    out[i] = ((acc % p) + p) % p;
  }
  return out;
}

/// Block j of q.v is A^(a_j) applied to block sigma^-1(j) of v.
inline std::vector<long long> wreath_act(const SpaceGroupParams& params, const WreathElement& q,
                                         std::span<const long long> v) {
  const std::size_t n = params.blocks(), b = params.p - 1;
  if (v.size() != params.dimension() || q.base.size() != n || q.top.size() != n)
    throw std::invalid_argument("wreath_act: length mismatch");
  const SmallMatrix a = block_generator_matrix(params.p);
  std::vector<long long> out(v.size());
  for (std::size_t src = 0; src < n; ++src) {
    const auto dst = static_cast<std::size_t>(q.top[src]);
    const SmallMatrix m = small_power_mod(a, static_cast<unsigned long long>(q.base[dst]), params.p);
    const auto block = small_apply_mod(m, v.subspan(src * b, b), params.p);
    std::copy(block.begin(), block.end(), out.begin() + static_cast<long>(dst * b));
  }
  return out;
}

/// Matrix (columns = images of unit vectors) of the action of q mod p.
inline IntMatrix wreath_action_matrix(const SpaceGroupParams& params, const WreathElement& q) {
  const std::size_t d = params.dimension();
  IntMatrix m(d, d);
  std::vector<long long> e(d, 0);
  for (std::size_t c = 0; c < d; ++c) {
    e.assign(d, 0);
    e[c] = 1;
    const auto img = wreath_act(params, q, e);
    for (std::size_t r = 0; r < d; ++r) m(r, c) = img[r];
  }
  return m;
}

/// theta as (e_0; standard n-cycle j -> j+1).
inline WreathElement embed_theta(const SpaceGroupParams& params) {
  const std::size_t n = params.blocks();
  WreathElement t{std::vector<long long>(n, 0), std::vector<long long>(n)};
  t.base[0] = 1;
  for (std::size_t j = 0; j < n; ++j) t.top[j] = static_cast<long long>((j + 1) % n);
  return t;
}

inline unsigned long long wreath_element_order(const WreathModel& w, const WreathElement& q) {
  const WreathElement id = w.identity_element();
  WreathElement cur = q;
  unsigned long long k = 1;
  while (!(cur == id)) {
    cur = w.compose(cur, q);
    ++k;
  }
  return k;
}

}  // namespace coclass
