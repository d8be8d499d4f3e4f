#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coclass/errors.hpp"
#include "coclass/finite_group.hpp"

namespace coclass {

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (long long v : e) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Canonically ordered list of all elements of a finite group.
///
/// Ordering: identity first, then breadth-first layers of right
/// multiplication by the generators, each layer sorted lexicographically.
/// Resolution cache keys rely on this order.
class ElementTable {
 public:
  static constexpr std::size_t kTableLimit = 4096;

  static ElementTable enumerate(const FiniteGroup& group, std::size_t budget = kEnumerationBudget) {
    detail::check_budget(group.order(), budget);
    ElementTable t;
    t.group_ = std::make_shared<const FiniteGroup>(group);
    const std::vector<Element> gens = group.generators();
    std::vector<Element> layer{group.identity()};
    t.add(layer.front());
    while (!layer.empty()) {
      std::vector<Element> next;
      for (const Element& g : layer)
        for (const Element& s : gens) {
          Element h = group.multiply(g, s);
          if (!t.index_.count(h)) next.push_back(std::move(h));
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (const Element& h : next) t.add(h);
      layer = std::move(next);
    }
    if (Integer(t.size()) != group.order())
      throw std::logic_error("enumerate: closure size does not match group order");
    for (const Element& s : gens) t.generators_.push_back(t.index_.at(s));
    t.build_table();
    return t;
  }

  std::size_t size() const { return elements_.size(); }
  const FiniteGroup& group() const { return *group_; }
  const Element& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<std::size_t>& generators() const { return generators_; }
  std::size_t identity_index() const { return index_.at(group_->identity()); }

  std::optional<std::size_t> index_of(const Element& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t multiply(std::size_t a, std::size_t b) const {
    if (!table_.empty()) return table_[a * size() + b];
    return index_.at(group_->multiply(elements_[a], elements_[b]));
  }

  std::size_t inverse(std::size_t a) const { return index_.at(group_->inverse(elements_[a])); }

  std::size_t power(std::size_t a, unsigned long long e) const {
    std::size_t r = identity_index();
    while (e--) r = multiply(r, a);
    return r;
  }

  bool has_table() const { return !table_.empty(); }

  /// Same group, elements relabelled so that old index k becomes perm[k].
  ElementTable permuted(const std::vector<std::size_t>& perm) const {
    ElementTable t;
    t.group_ = group_;
    t.elements_.resize(size());
    for (std::size_t k = 0; k < size(); ++k) t.elements_[perm[k]] = elements_[k];
    for (std::size_t k = 0; k < size(); ++k) t.index_.emplace(t.elements_[k], k);
    for (std::size_t g : generators_) t.generators_.push_back(perm[g]);
    t.build_table();
    return t;
  }

 private:
  void add(const Element& e) {
    index_.emplace(e, elements_.size());
    elements_.push_back(e);
  }

  void build_table() {
    if (size() > kTableLimit) return;
    table_.resize(size() * size());
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        table_[a * size() + b] = static_cast<std::uint32_t>(index_.at(group_->multiply(elements_[a], elements_[b])));
  }

  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Element> elements_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
  std::vector<std::size_t> generators_;
  std::vector<std::uint32_t> table_;
};

inline ElementTable enumerate(const FiniteGroup& group, std::size_t budget = kEnumerationBudget) {
  return ElementTable::enumerate(group, budget);
}

/// Smallest subgroup containing `gens`, as a sorted index list.
inline std::vector<std::size_t> subgroup_closure(const ElementTable& table,
                                                 const std::vector<std::size_t>& gens) {
  std::vector<char> seen(table.size(), 0);
  std::vector<std::size_t> members{table.identity_index()};
  seen[members.front()] = 1;
  for (std::size_t k = 0; k < members.size(); ++k)
    for (std::size_t s : gens) {
      const std::size_t h = table.multiply(members[k], s);
      if (!seen[h]) {
        seen[h] = 1;
        members.push_back(h);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

/// Smallest normal subgroup containing `gens`.
inline std::vector<std::size_t> normal_closure(const ElementTable& table, std::vector<std::size_t> gens) {
  for (;;) {
    std::vector<std::size_t> members = subgroup_closure(table, gens);
    std::vector<char> in(table.size(), 0);
    for (std::size_t m : members) in[m] = 1;
    bool grew = false;
    for (std::size_t s : table.generators()) {
      const std::size_t s_inv = table.inverse(s);
      for (std::size_t m : members) {
        const std::size_t c = table.multiply(table.multiply(s_inv, m), s);
        if (!in[c]) {
          gens.push_back(c);
          in[c] = 1;
          grew = true;
        }
      }
    }
    if (!grew) return members;
  }
}

/// Frattini subgroup G^p [G, G] of a finite p-group.
inline std::vector<std::size_t> frattini_subgroup(const ElementTable& table) {
  const unsigned p = table.group().prime();
  std::vector<std::size_t> gens;
  std::vector<char> used(table.size(), 0);
  for (std::size_t g = 0; g < table.size(); ++g) {
    const std::size_t h = table.power(g, p);
    if (!used[h]) {
      used[h] = 1;
      gens.push_back(h);
    }
  }
  const auto& s = table.generators();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const std::size_t c = table.multiply(table.multiply(s[a], s[b]),
                                           table.multiply(table.inverse(s[a]), table.inverse(s[b])));
      if (!used[c]) {
        used[c] = 1;
        gens.push_back(c);
      }
    }
  return normal_closure(table, std::move(gens));
}

inline std::size_t log_base(std::size_t n, unsigned p) {
  std::size_t k = 0;
  while (n > 1) {
    if (n % p != 0) throw std::invalid_argument("order is not a power of p");
    n /= p;
    ++k;
  }
  return k;
}

/// Rank of G / Phi(G), i.e. the minimal number of generators of a p-group.
inline std::size_t frattini_rank(const ElementTable& table) {
  const std::size_t phi = frattini_subgroup(table).size();
  return log_base(table.size() / phi, table.group().prime());
}

/// A minimal generating set: generators not already in Phi(G) * <chosen>.
inline std::vector<std::size_t> minimal_generators(const ElementTable& table) {
  std::vector<std::size_t> span = frattini_subgroup(table);
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> base = span;
  for (std::size_t s : table.generators()) {
    if (std::binary_search(span.begin(), span.end(), s)) continue;
    chosen.push_back(s);
    base.push_back(s);
    span = subgroup_closure(table, base);
  }
  return chosen;
}

inline unsigned long long element_order(const ElementTable& table, std::size_t g) {
  const std::size_t e = table.identity_index();
  std::size_t cur = g;
  unsigned long long k = 1;
  while (cur != e) {
    cur = table.multiply(cur, g);
    ++k;
  }
  return k;
}

inline std::map<unsigned long long, std::size_t> order_census(const ElementTable& table) {
  std::map<unsigned long long, std::size_t> census;
  for (std::size_t g = 0; g < table.size(); ++g) ++census[element_order(table, g)];
  return census;
}

inline bool is_abelian(const ElementTable& table) {
  for (std::size_t a : table.generators())
    for (std::size_t b : table.generators())
      if (table.multiply(a, b) != table.multiply(b, a)) return false;
  return true;
}

}  // namespace coclass
