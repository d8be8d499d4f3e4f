#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "coclass/errors.hpp"
#include "coclass/fp_matrix.hpp"
#include "coclass/group_model.hpp"

namespace coclass {

struct ResolutionBudget {
  std::size_t max_order = 729;
  std::size_t max_degree = 8;
  std::size_t max_matrix = 20000;
};

/// F_p[G] for a p-group G, acting on free modules F_p[G]^k from the right.
///
/// A vector of F_p[G]^k has k blocks of |G| coefficients; coordinate
/// b*|G| + h holds the coefficient of e_b * h.
class GroupAlgebraContext {
 public:
  explicit GroupAlgebraContext(const ElementTable& table)
      : table_(&table), p_(table.group().prime()), n_(table.size()) {
    log_base(n_, p_);  // throws unless |G| is a power of p
    generators_ = minimal_generators(table);
    if (n_ > 1 && generators_.empty()) throw std::logic_error("GroupAlgebraContext: no generators");
    right_.resize(n_ * n_);
    for (std::size_t h = 0; h < n_; ++h)
      for (std::size_t g = 0; g < n_; ++g) right_[g * n_ + h] = static_cast<std::uint32_t>(table.multiply(h, g));
  }

  const ElementTable& table() const { return *table_; }
  unsigned p() const { return p_; }
  std::size_t order() const { return n_; }
  std::size_t identity() const { return table_->identity_index(); }
  const std::vector<std::size_t>& generators() const { return generators_; }

  /// out = v * g for v in F_p[G]^blocks; layout is any FpMatrix of that width.
  void right_multiply(const FpMatrix& layout, const std::uint64_t* v, std::size_t blocks, std::size_t g,
                      std::uint64_t* out) const {
    std::fill(out, out + layout.row_words(), 0);
    const std::uint32_t* perm = right_.data() + g * n_;
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t off = b * n_;
      for (std::size_t h = 0; h < n_; ++h)
        if (unsigned c = layout.get_in(v, off + h)) layout.set_in(out, off + perm[h], c);
    }
  }

 private:
  const ElementTable* table_;
  unsigned p_;
  std::size_t n_;
  std::vector<std::size_t> generators_;
  std::vector<std::uint32_t> right_;
};

/// Minimal free resolution of the trivial module through degree max_degree.
///
/// images[n-1] holds d_n on the free generators of F_n: row j is d_n(e_j),
/// a vector of F_{n-1} = F_p[G]^(betti[n-1]).
struct Resolution {
  nlohmann::json descriptor;
  unsigned p = 2;
  std::size_t group_order = 1;
  std::size_t max_degree = 0;
  std::vector<std::size_t> betti;
  std::vector<FpMatrix> images;
};

namespace detail {

inline void check_side(std::size_t side, const ResolutionBudget& budget, std::size_t degree) {
  if (side > budget.max_matrix)
    throw BudgetExceeded("matrix side " + std::to_string(side) + " in degree " + std::to_string(degree) +
                         " exceeds budget " + std::to_string(budget.max_matrix));
}

// Rows (j, g) -> d(e_j) * g, i.e. the F_p-matrix of d_n acting on row vectors.
inline FpMatrix expand_boundary(const FpMatrix& images, const GroupAlgebraContext& ctx) {
  const std::size_t n = ctx.order();
  const std::size_t target_blocks = images.cols() / n;
  FpMatrix m(ctx.p(), images.rows() * n, images.cols());
  for (std::size_t j = 0; j < images.rows(); ++j)
    for (std::size_t g = 0; g < n; ++g)
      ctx.right_multiply(m, images.row_data(j), target_blocks, g, m.row_data(j * n + g));
  return m;
}

inline FpMatrix augmentation_kernel(const GroupAlgebraContext& ctx) {
  const std::size_t n = ctx.order(), e = ctx.identity();
  FpMatrix k(ctx.p(), 0, n);
  FpVector v(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    if (g == e) continue;
    std::fill(v.begin(), v.end(), 0);
    v[g] = 1;
    v[e] = static_cast<std::uint8_t>(ctx.p() - 1);
    k.append_row(v);
  }
  return k;
}

// Lifts of a basis of K / K.I where I is the augmentation ideal; since
// K.F_p[G] = K, K.I is spanned by k (s - 1) for s in a generating set.
inline FpMatrix minimal_generators_of(const FpMatrix& kernel, std::size_t blocks, const GroupAlgebraContext& ctx) {
  const unsigned p = ctx.p();
  EchelonBasis span(p, kernel.cols());
  FpMatrix work(p, 1, kernel.cols());
  std::uint64_t* row = work.row_data(0);
  for (std::size_t r = 0; r < kernel.rows(); ++r)
    for (std::size_t s : ctx.generators()) {
      ctx.right_multiply(work, kernel.row_data(r), blocks, s, row);
      work.add_row_multiple(row, kernel.row_data(r), p - 1);
      span.insert_reduced(row);
    }
  const std::size_t target = kernel.rows() - span.rank();
  FpMatrix chosen(p, 0, kernel.cols());
  for (std::size_t r = 0; r < kernel.rows() && chosen.rows() < target; ++r) {
    std::copy(kernel.row_data(r), kernel.row_data(r) + work.row_words(), row);
    if (span.insert_reduced(row)) chosen.append_row(kernel.row_data(r));
  }
  return chosen;
}

}  // namespace detail

/// Computes (or extends `resume`) a minimal resolution through degree N.
inline Resolution minimal_resolution(const ElementTable& table, std::size_t max_degree,
                                     const ResolutionBudget& budget = {}, const Resolution* resume = nullptr) {
  if (Integer(table.size()) > Integer(budget.max_order))
    throw BudgetExceeded("group order " + std::to_string(table.size()) + " exceeds budget " +
                         std::to_string(budget.max_order));
  if (max_degree > budget.max_degree)
    throw BudgetExceeded("degree " + std::to_string(max_degree) + " exceeds budget " +
                         std::to_string(budget.max_degree));
  const GroupAlgebraContext ctx(table);
  const std::size_t n = ctx.order();

  Resolution res;
  res.descriptor = table.group().descriptor();
  res.p = ctx.p();
  res.group_order = n;
  res.betti = {1};
  if (resume) {
    const std::size_t keep = std::min(resume->max_degree, max_degree);
    res.betti.assign(resume->betti.begin(), resume->betti.begin() + static_cast<long>(keep + 1));
    res.images.assign(resume->images.begin(), resume->images.begin() + static_cast<long>(keep));
  }
  std::size_t degree = res.images.size();
  if (degree >= max_degree) {
    res.max_degree = max_degree;
    return res;
  }

  FpMatrix kernel = degree == 0 ? detail::augmentation_kernel(ctx) : left_kernel(detail::expand_boundary(res.images.back(), ctx));
  for (;;) {
    const std::size_t blocks = res.betti[degree];
    FpMatrix gens = detail::minimal_generators_of(kernel, blocks, ctx);
    res.betti.push_back(gens.rows());
    res.images.push_back(std::move(gens));
    ++degree;
    if (degree == max_degree) break;

    const std::size_t side = res.betti[degree] * n;
    detail::check_side(side, budget, degree);
    const std::size_t previous_dim = kernel.rows();
    kernel = left_kernel(detail::expand_boundary(res.images.back(), ctx));
    // Exactness: rank d_degree = dim ker d_(degree-1).
    if (kernel.rows() + previous_dim != side)
      throw std::logic_error("minimal_resolution: exactness check failed in degree " + std::to_string(degree));
  }
  res.max_degree = max_degree;
  return res;
}

/// The full F_p-matrix of d_n with shape betti[n-1]|G| x betti[n]|G|; column
/// (j, g) is d_n(e_j * g).
inline FpMatrix boundary_matrix(const Resolution& res, const GroupAlgebraContext& ctx, std::size_t degree) {
  return detail::expand_boundary(res.images.at(degree - 1), ctx).transpose();
}

/// Inverse of boundary_matrix: recover generator images from a full matrix.
inline FpMatrix images_from_boundary(const FpMatrix& full, const GroupAlgebraContext& ctx) {
  const std::size_t n = ctx.order(), e = ctx.identity();
  const std::size_t gens = full.cols() / n;
  FpMatrix images(full.p(), gens, full.rows());
  for (std::size_t j = 0; j < gens; ++j)
    for (std::size_t r = 0; r < full.rows(); ++r)
      if (unsigned v = full.get(r, j * n + e)) images.set(j, r, v);
  return images;
}

/// Applies d_n (given by its generator images) to a vector of F_n.
inline FpVector apply_boundary(const FpMatrix& images, const GroupAlgebraContext& ctx,
                               std::span<const std::uint8_t> v) {
  const std::size_t n = ctx.order(), p = ctx.p();
  const std::size_t target_blocks = images.cols() / n;
  FpMatrix acc(ctx.p(), 1, images.cols());
  FpMatrix tmp(ctx.p(), 1, images.cols());
  for (std::size_t j = 0; j < images.rows(); ++j)
    for (std::size_t g = 0; g < n; ++g) {
      const unsigned c = v[j * n + g];
      if (!c) continue;
      ctx.right_multiply(tmp, images.row_data(j), target_blocks, g, tmp.row_data(0));
      acc.add_row_multiple(acc.row_data(0), tmp.row_data(0), c % p);
    }
  return acc.row(0);
}

/// d_(n) o d_(n+1) = 0 for all stored boundaries, including the augmentation.
inline bool boundaries_compose_to_zero(const Resolution& res, const GroupAlgebraContext& ctx) {
  for (std::size_t k = 0; k < res.images.size(); ++k) {
    const FpMatrix& upper = res.images[k];
    for (std::size_t j = 0; j < upper.rows(); ++j) {
      const FpVector y = upper.row(j);
      if (k == 0) {
        unsigned sum = 0;
        for (auto c : y) sum = (sum + c) % res.p;
        if (sum) return false;
        continue;
      }
      const FpVector z = apply_boundary(res.images[k - 1], ctx, y);
      for (auto c : z)
        if (c) return false;
    }
  }
  return true;
}

/// Every group-algebra entry of every boundary lies in the augmentation ideal.
inline bool is_minimal(const Resolution& res) {
  const std::size_t n = res.group_order;
  for (const FpMatrix& img : res.images)
    for (std::size_t j = 0; j < img.rows(); ++j)
      for (std::size_t b = 0; b < img.cols() / n; ++b) {
        unsigned sum = 0;
        for (std::size_t h = 0; h < n; ++h) sum += img.get(j, b * n + h);
        if (sum % res.p) return false;
      }
  return true;
}

}  // namespace coclass
