#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "coclass/errors.hpp"
#include "coclass/fp_matrix.hpp"
#include "coclass/group_model.hpp"

// Low-degree cohomology of a finite group with trivial F_p coefficients from
// the normalized bar complex. Over a field dim H^n = dim H_n, and the chain
// side is used: C_n has basis [g_1|...|g_n] with all g_i != 1 and
//   d[g|h]   = [h] - [gh] + [g]
//   d[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]
// with degenerate symbols read as zero. d_1 = 0 for trivial coefficients.

namespace coclass {

namespace detail {

struct BarIndex {
  std::size_t identity;
  std::size_t n;
  std::vector<std::size_t> pos;  // element -> position among non-identity, or npos

  explicit BarIndex(const ElementTable& t) : identity(t.identity_index()), n(t.size()), pos(t.size()) {
    std::size_t k = 0;
    for (std::size_t g = 0; g < n; ++g) pos[g] = g == identity ? FpMatrix::npos : k++;
  }
  std::size_t m() const { return n - 1; }
};

// d_2 as rows [g|h] -> C_1.
inline FpMatrix bar_d2(const ElementTable& t, const BarIndex& ix) {
  const unsigned p = t.group().prime();
  FpMatrix d(p, ix.m() * ix.m(), ix.m());
  for (std::size_t g = 0; g < ix.n; ++g) {
    if (g == ix.identity) continue;
    for (std::size_t h = 0; h < ix.n; ++h) {
      if (h == ix.identity) continue;
      const std::size_t row = ix.pos[g] * ix.m() + ix.pos[h];
      const std::size_t gh = t.multiply(g, h);
      auto bump = [&](std::size_t e, unsigned c) {
        if (e == ix.identity) return;
        d.set(row, ix.pos[e], (d.get(row, ix.pos[e]) + c) % p);
      };
      bump(h, 1);
      bump(gh, p - 1);
      bump(g, 1);
    }
  }
  return d;
}

}  // namespace detail

/// dim H^2 using the explicit matrix of d_3 : C_3 -> C_2.
inline std::size_t bar_h2_explicit(const ElementTable& t) {
  const detail::BarIndex ix(t);
  const unsigned p = t.group().prime();
  const std::size_t m = ix.m();
  const std::size_t rank_d2 = fp_rank(detail::bar_d2(t, ix));
  EchelonBasis span(p, m * m);
  FpMatrix row(p, 1, m * m);
  std::uint64_t* r = row.row_data(0);
  for (std::size_t g = 0; g < ix.n; ++g) {
    if (g == ix.identity) continue;
    for (std::size_t h = 0; h < ix.n; ++h) {
      if (h == ix.identity) continue;
      const std::size_t gh = t.multiply(g, h);
      for (std::size_t k = 0; k < ix.n; ++k) {
        if (k == ix.identity) continue;
        const std::size_t hk = t.multiply(h, k);
        std::fill(r, r + row.row_words(), 0);
        auto bump = [&](std::size_t a, std::size_t b, unsigned c) {
          if (a == ix.identity || b == ix.identity) return;
          const std::size_t col = ix.pos[a] * m + ix.pos[b];
          row.set_in(r, col, (row.get_in(r, col) + c) % p);
        };
        bump(h, k, 1);
        bump(gh, k, p - 1);
        bump(g, hk, 1);
        bump(g, h, p - 1);
        span.insert_reduced(r);
      }
    }
  }
  return m * m - span.rank() - rank_d2;
}

/// dim H^2 after rewriting C_2 onto the symbols [s|k], s a generator.
///
/// Writing a = h s with h one BFS layer closer to the identity, the relation
/// d[h|s|k] = 0 gives [a|k] = [s|k] + [h|sk] - [h|s]. This defines a
/// projection pi of C_2 onto W = span{[s|k]} congruent to the identity
/// modulo im d_3, so C_2 / im d_3 = W / pi(im d_3).
inline std::size_t bar_h2_reduced(const ElementTable& t) {
  const detail::BarIndex ix(t);
  const unsigned p = t.group().prime();
  const std::size_t m = ix.m();
  if (m == 0) return 0;

  std::vector<std::size_t> gens;
  for (std::size_t s : t.generators())
    if (s != ix.identity && std::find(gens.begin(), gens.end(), s) == gens.end()) gens.push_back(s);
  std::vector<std::size_t> gen_slot(ix.n, FpMatrix::npos);
  for (std::size_t k = 0; k < gens.size(); ++k) gen_slot[gens[k]] = k;
  const std::size_t width = gens.size() * m;

  // Breadth-first spanning tree: a = parent[a] * via[a].
  std::vector<std::size_t> parent(ix.n, FpMatrix::npos), via(ix.n, FpMatrix::npos), order{ix.identity};
  std::vector<char> seen(ix.n, 0);
  seen[ix.identity] = 1;
  for (std::size_t q = 0; q < order.size(); ++q)
    for (std::size_t s : gens) {
      const std::size_t a = t.multiply(order[q], s);
      if (seen[a]) continue;
      seen[a] = 1;
      parent[a] = order[q];
      via[a] = s;
      order.push_back(a);
    }

  FpMatrix pi(p, m * m, width);
  auto sym = [&](std::size_t a, std::size_t b) { return ix.pos[a] * m + ix.pos[b]; };
  for (std::size_t q = 1; q < order.size(); ++q) {
    const std::size_t a = order[q];
    for (std::size_t k = 0; k < ix.n; ++k) {
      if (k == ix.identity) continue;
      std::uint64_t* row = pi.row_data(sym(a, k));
      if (gen_slot[a] != FpMatrix::npos) {
        pi.set_in(row, gen_slot[a] * m + ix.pos[k], 1);
        continue;
      }
      const std::size_t h = parent[a], s = via[a];
      pi.add_row_multiple(row, pi.row_data(sym(s, k)), 1);
      const std::size_t sk = t.multiply(s, k);
      if (sk != ix.identity) pi.add_row_multiple(row, pi.row_data(sym(h, sk)), 1);
      pi.add_row_multiple(row, pi.row_data(sym(h, s)), p - 1);
    }
  }

  EchelonBasis span(p, width);
  FpMatrix work(p, 1, width);
  std::uint64_t* r = work.row_data(0);
  for (std::size_t g = 0; g < ix.n && span.rank() < width; ++g) {
    if (g == ix.identity) continue;
    for (std::size_t h = 0; h < ix.n; ++h) {
      if (h == ix.identity) continue;
      const std::size_t gh = t.multiply(g, h);
      for (std::size_t k = 0; k < ix.n; ++k) {
        if (k == ix.identity) continue;
        const std::size_t hk = t.multiply(h, k);
        std::fill(r, r + work.row_words(), 0);
        work.add_row_multiple(r, pi.row_data(sym(h, k)), 1);
        if (gh != ix.identity) work.add_row_multiple(r, pi.row_data(sym(gh, k)), p - 1);
        if (hk != ix.identity) work.add_row_multiple(r, pi.row_data(sym(g, hk)), 1);
        work.add_row_multiple(r, pi.row_data(sym(g, h)), p - 1);
        span.insert_reduced(r);
      }
    }
  }
  const std::size_t rank_d2 = fp_rank(detail::bar_d2(t, ix));
  return width - span.rank() - rank_d2;
}

/// dim H^n(G; F_p) for n <= 2 from the normalized bar complex.
/// `budget` bounds the number of degree-(n+1) bar symbols examined.
inline std::size_t bar_cohomology_dim(const ElementTable& t, std::size_t degree,
                                      std::size_t budget = 1'000'000) {
  const std::size_t m = t.size() - 1;
  switch (degree) {
    case 0: return 1;
    case 1: {
      if (m * m > budget) throw BudgetExceeded("bar complex: too many 2-cells");
      const detail::BarIndex ix(t);
      return m - fp_rank(detail::bar_d2(t, ix));
    }
    case 2:
      if (m * m * m > budget) throw BudgetExceeded("bar complex: too many 3-cells");
      if (m * m * m <= 20000) return bar_h2_explicit(t);
      return bar_h2_reduced(t);
    default: throw std::invalid_argument("bar_cohomology_dim: degree must be at most 2");
  }
}

}  // namespace coclass
