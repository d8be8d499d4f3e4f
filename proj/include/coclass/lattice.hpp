#pragma once

#include <stdexcept>
#include <vector>

#include "coclass/int_matrix.hpp"

namespace coclass {

/// Full-rank sublattice of Z^d, stored by its canonical column HNF basis.
/// Two lattices are equal iff their bases are identical.
class Lattice {
 public:
  static Lattice from_columns(const IntMatrix& generators) {
    const std::size_t d = generators.rows();
    const std::size_t n = generators.cols();
    if (n < d) throw std::invalid_argument("not full rank");
    HermiteForm form = hnf(generators);
    IntMatrix basis(d, d);
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) basis(r, c) = form.h(r, n - d + c);
    Integer det = 1;
    for (std::size_t k = 0; k < d; ++k) {
      if (basis(k, k) == 0) throw std::invalid_argument("not full rank");
      det *= basis(k, k);
    }
    return Lattice(std::move(basis), std::move(det));
  }

  static Lattice standard(std::size_t d) { return from_columns(IntMatrix::identity(d)); }

  std::size_t dimension() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  const Integer& determinant() const { return determinant_; }

  /// Solves basis * c = v by back substitution; true iff c is integral.
  bool contains(const std::vector<Integer>& v) const {
    const std::size_t d = dimension();
    if (v.size() != d) throw std::invalid_argument("lattice_contains: dimension mismatch");
    std::vector<Integer> rest = v;
    for (std::size_t k = d; k-- > 0;) {
      if (rest[k] % basis_(k, k) != 0) return false;
      const Integer coeff = rest[k] / basis_(k, k);
      if (coeff == 0) continue;
      for (std::size_t r = 0; r <= k; ++r) rest[r] -= coeff * basis_(r, k);
    }
    return true;
  }

  bool contains(const Lattice& other) const {
    for (std::size_t c = 0; c < other.dimension(); ++c)
      if (!contains(other.basis_.column(c))) return false;
    return true;
  }

  /// Lattice spanned by the columns of m * basis; m must be nonsingular.
  Lattice image(const IntMatrix& m) const { return from_columns(m * basis_); }

  Lattice scaled(const Integer& k) const { return from_columns(k * basis_); }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }

 private:
  Lattice(IntMatrix basis, Integer det) : basis_(std::move(basis)), determinant_(std::move(det)) {}

  IntMatrix basis_;
  Integer determinant_;
};

inline Lattice lattice_from_columns(const IntMatrix& a) { return Lattice::from_columns(a); }

inline bool lattice_contains(const Lattice& l, const std::vector<Integer>& v) { return l.contains(v); }

/// Index [big : small].
inline Integer lattice_index(const Lattice& big, const Lattice& small) {
  if (big.dimension() != small.dimension())
    throw std::invalid_argument("lattice_index: dimension mismatch");
  if (!big.contains(small)) throw std::invalid_argument("not a sublattice");
  return small.determinant() / big.determinant();
}

}  // namespace coclass
