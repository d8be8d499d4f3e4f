#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "coclass/fp_matrix.hpp"
#include "coclass/int_matrix.hpp"
#include "coclass/lattice.hpp"

namespace coclass {

inline unsigned long long ipow(unsigned long long base, unsigned e) {
  unsigned long long r = 1;
  while (e--) r *= base;
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

/// Prime p and wreath depth x of the space group; the translation lattice
/// has rank d_x = (p-1) p^(x-1).
struct SpaceGroupParams {
  unsigned p = 2;
  unsigned x = 1;

  SpaceGroupParams() = default;
  SpaceGroupParams(unsigned prime, unsigned depth) : p(prime), x(depth) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (p > 251) throw std::invalid_argument("p must be at most 251");
    if (x < 1) throw std::invalid_argument("x must be positive");
  }

  std::size_t dimension() const { return (p - 1) * blocks(); }
  std::size_t blocks() const { return ipow(p, x - 1); }
  unsigned long long point_order() const { return ipow(p, x); }
};

/// Companion matrix of the monic polynomial with coefficients `c` (low degree
/// first, leading 1 included): ones on the subdiagonal, last column -c_k.
inline IntMatrix companion_matrix(const std::vector<Integer>& c) {
  const std::size_t n = c.size() - 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k < n; ++k) m(k, k - 1) = 1;
  for (std::size_t k = 0; k < n; ++k) m(k, n - 1) = -c[k];
  return m;
}

/// Coefficients of the p^x-th cyclotomic polynomial, sum_{k<p} y^(k p^(x-1)).
inline std::vector<Integer> cyclotomic_coefficients(const SpaceGroupParams& params) {
  const std::size_t step = params.blocks();
  std::vector<Integer> c(params.dimension() + 1);
  for (unsigned k = 0; k < params.p; ++k) c[k * step] = 1;
  return c;
}

/// Matrix C of the generator theta acting on T = Z^(d_x).
struct ThetaAction {
  SpaceGroupParams params;
  IntMatrix c;

  std::size_t dimension() const { return c.rows(); }
  IntMatrix minus_identity() const { return c - IntMatrix::identity(dimension()); }
};

inline ThetaAction companion_cyclotomic(const SpaceGroupParams& params) {
  return {params, companion_matrix(cyclotomic_coefficients(params))};
}

/// The (p-1)x(p-1) matrix I + companion((X+1)^p - 1)/X) giving theta in the
/// basis adapted to the powers of (theta - 1).
inline IntMatrix maximal_class_matrix(unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  std::vector<Integer> c(p);
  for (unsigned j = 0; j + 1 < p; ++j) c[j] = binomial(p, j + 1);
  c[p - 1] = 1;
  return companion_matrix(c) + IntMatrix::identity(p - 1);
}

/// delta(a) = [a, theta] = a theta a^-1 theta^-1 = (I - C) a on translations.
inline IntMatrix delta(const ThetaAction& action) {
  return IntMatrix::identity(action.dimension()) - action.c;
}

struct FiltrationLattice {
  std::size_t level = 0;
  Lattice lattice;
};

/// N_i = p (C - I)^i Z^d.
inline FiltrationLattice filtration(const IntMatrix& c, unsigned p, std::size_t level) {
  const IntMatrix step = c - IntMatrix::identity(c.rows());
  return {level, Lattice::from_columns(Integer(p) * step.power(level))};
}

inline FiltrationLattice filtration(const ThetaAction& action, std::size_t level) {
  return filtration(action.c, action.params.p, level);
}

/// The finite abelian group Z^d / L in Smith coordinates.
///
/// With D = S B T for the lattice basis B, the coordinates of v are
/// (S v)_k mod d_k, kept only for invariant factors d_k > 1.
class TranslationQuotient {
 public:
  explicit TranslationQuotient(Lattice lattice) : lattice_(std::move(lattice)) {
    SmithForm form = snf(lattice_.basis());
    s_ = std::move(form.s);
    s_inv_ = std::move(form.s_inv);
    for (std::size_t k = 0; k < lattice_.dimension(); ++k) {
      if (form.d(k, k) == 1) continue;
      active_.push_back(k);
      moduli_.push_back(form.d(k, k).convert_to<long long>());
    }
  }

  const Lattice& lattice() const { return lattice_; }
  std::size_t dimension() const { return lattice_.dimension(); }
  const std::vector<long long>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }

  std::vector<long long> coordinates(const std::vector<Integer>& v) const {
    const std::vector<Integer> sv = s_.apply(v);
    std::vector<long long> out(active_.size());
    for (std::size_t k = 0; k < active_.size(); ++k)
      out[k] = detail::floor_mod(sv[active_[k]], moduli_[k]).convert_to<long long>();
    return out;
  }

  /// A representative in Z^d of the class with the given coordinates.
  std::vector<Integer> lift(const std::vector<long long>& u) const {
    std::vector<Integer> full(dimension());
    for (std::size_t k = 0; k < active_.size(); ++k) full[active_[k]] = u[k];
    return s_inv_.apply(full);
  }

  /// Matrix of v -> m v from this quotient to `target` in Smith coordinates;
  /// requires m(lattice) inside target.lattice(). Row k is reduced mod the
  /// k-th target modulus.
  std::vector<std::vector<long long>> induced(const IntMatrix& m,
                                              const TranslationQuotient& target) const {
    const IntMatrix full = target.s_ * m * s_inv_;
    std::vector<std::vector<long long>> out(target.rank(), std::vector<long long>(rank()));
    for (std::size_t r = 0; r < target.rank(); ++r)
      for (std::size_t c = 0; c < rank(); ++c)
        out[r][c] = detail::floor_mod(full(target.active_[r], active_[c]), target.moduli_[r])
                        .convert_to<long long>();
    return out;
  }

 private:
  Lattice lattice_;
  IntMatrix s_;
  IntMatrix s_inv_;
  std::vector<std::size_t> active_;
  std::vector<long long> moduli_;
};

}  // namespace coclass
