#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace coclass {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Integer>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> column(std::size_t c) const {
    std::vector<Integer> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void set_column(std::size_t c, const std::vector<Integer>& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    a.check_same_shape(b);
    IntMatrix s = a;
    for (std::size_t k = 0; k < s.data_.size(); ++k) s.data_[k] += b.data_[k];
    return s;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    a.check_same_shape(b);
    IntMatrix s = a;
    for (std::size_t k = 0; k < s.data_.size(); ++k) s.data_[k] -= b.data_[k];
    return s;
  }

  friend IntMatrix operator*(const Integer& k, const IntMatrix& a) {
    IntMatrix s = a;
    for (auto& v : s.data_) v *= k;
    return s;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  std::vector<Integer> apply(const std::vector<Integer>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in apply");
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
  }

  IntMatrix power(unsigned long long e) const {
    if (rows_ != cols_) throw std::invalid_argument("IntMatrix: power of non-square matrix");
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  // col[dst] += k * col[src]
  void add_column_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }

  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }

  void negate_column(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
  }

  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  // Replace columns (a, b) by (s*a + t*b, u*a + v*b).
  void combine_columns(std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                       const Integer& u, const Integer& v) {
    for (std::size_t r = 0; r < rows_; ++r) {
      Integer x = (*this)(r, a), y = (*this)(r, b);
      (*this)(r, a) = s * x + t * y;
      (*this)(r, b) = u * x + v * y;
    }
  }

  void combine_rows(std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                    const Integer& u, const Integer& v) {
    for (std::size_t c = 0; c < cols_; ++c) {
      Integer x = (*this)(a, c), y = (*this)(b, c);
      (*this)(a, c) = s * x + t * y;
      (*this)(b, c) = u * x + v * y;
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? ",[" : "[");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? "," : "") << m(r, c);
      os << ']';
    }
    return os << ']';
  }

 private:
  void check_same_shape(const IntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument("IntMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

namespace detail {

struct ExtendedGcd {
  Integer g, s, t;  // s*a + t*b = g >= 0
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer floor_mod(const Integer& a, const Integer& m) { return a - floor_div(a, m) * m; }

}  // namespace detail

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Characteristic polynomial det(yI - A), coefficients low degree first (monic).
/// Faddeev-LeVerrier; every division is exact for integer input.
inline std::vector<Integer> characteristic_polynomial(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("characteristic_polynomial: non-square");
  const std::size_t n = a.rows();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    IntMatrix am = a * m;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<long long>(k);
  }
  return c;
}

/// Evaluates sum_k coeffs[k] * A^k by Horner's rule.
inline IntMatrix evaluate_polynomial(const std::vector<Integer>& coeffs, const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix result(n, n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    result = result * a;
    for (std::size_t i = 0; i < n; ++i) result(i, i) += *it;
  }
  return result;
}

struct HermiteForm {
  IntMatrix h;  // canonical column HNF
  IntMatrix u;  // unimodular, h = a * u
};

/// Column Hermite normal form.
///
/// Rows are processed bottom-up; each nonzero row gets a pivot column placed
/// as far right as possible, so a full-rank square input yields an upper
/// triangular H with positive diagonal. Entries to the right of a pivot are
/// reduced into [0, pivot). Zero columns collect on the left.
inline HermiteForm hnf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(n);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t remaining = n;  // columns [0, remaining) are unassigned

  for (std::size_t rr = m; rr-- > 0 && remaining > 0;) {
    const std::size_t slot = remaining - 1;
    std::size_t first = n;
    for (std::size_t c = 0; c < remaining; ++c)
      if (h(rr, c) != 0) {
        first = c;
        break;
      }
    if (first == n) continue;
    h.swap_columns(first, slot);
    u.swap_columns(first, slot);
    for (std::size_t c = 0; c < slot; ++c) {
      if (h(rr, c) == 0) continue;
      const Integer x = h(rr, slot), y = h(rr, c);
      auto [g, s, t] = detail::extended_gcd(x, y);
      const Integer yg = y / g, xg = x / g;
      h.combine_columns(slot, c, s, t, -yg, xg);
      u.combine_columns(slot, c, s, t, -yg, xg);
    }
    if (h(rr, slot) < 0) {
      h.negate_column(slot);
      u.negate_column(slot);
    }
    pivots.emplace_back(rr, slot);
    remaining = slot;
  }

  for (auto [r, c] : pivots) {
    const Integer d = h(r, c);
    for (std::size_t c2 = c + 1; c2 < n; ++c2) {
      const Integer q = detail::floor_div(h(r, c2), d);
      if (q == 0) continue;
      h.add_column_multiple(c2, c, -q);
      u.add_column_multiple(c2, c, -q);
    }
  }
  return {std::move(h), std::move(u)};
}

struct SmithForm {
  IntMatrix d;  // diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix s;      // unimodular row transform
  IntMatrix t;      // unimodular column transform, d = s * a * t
  IntMatrix s_inv;  // inverse of s
};

/// Smith normal form with transforms.
inline SmithForm snf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix d = a;
  IntMatrix s = IntMatrix::identity(m);
  IntMatrix t = IntMatrix::identity(n);
  IntMatrix s_inv = IntMatrix::identity(m);
  const std::size_t steps = std::min(m, n);

  for (std::size_t k = 0; k < steps; ++k) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (k, k).
      std::size_t br = m, bc = n;
      for (std::size_t r = k; r < m; ++r)
        for (std::size_t c = k; c < n; ++c)
          if (d(r, c) != 0 && (br == m || abs(d(r, c)) < abs(d(br, bc)))) {
            br = r;
            bc = c;
          }
      if (br == m) break;
      d.swap_rows(k, br);
      s.swap_rows(k, br);
      s_inv.swap_columns(k, br);
      d.swap_columns(k, bc);
      t.swap_columns(k, bc);

      bool clean = true;
      for (std::size_t r = k + 1; r < m; ++r) {
        if (d(r, k) == 0) continue;
        const Integer q = d(r, k) / d(k, k);
        d.add_row_multiple(r, k, -q);
        s.add_row_multiple(r, k, -q);
        s_inv.add_column_multiple(k, r, q);
        if (d(r, k) != 0) clean = false;
      }
      for (std::size_t c = k + 1; c < n; ++c) {
        if (d(k, c) == 0) continue;
        const Integer q = d(k, c) / d(k, k);
        d.add_column_multiple(c, k, -q);
        t.add_column_multiple(c, k, -q);
        if (d(k, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = m;
      for (std::size_t r = k + 1; r < m && bad == m; ++r)
        for (std::size_t c = k + 1; c < n; ++c)
          if (d(r, c) % d(k, k) != 0) {
            bad = r;
            break;
          }
      if (bad == m) break;
      d.add_row_multiple(k, bad, 1);
      s.add_row_multiple(k, bad, 1);
      s_inv.add_column_multiple(bad, k, -1);
    }
    if (d(k, k) < 0) {
      d.negate_row(k);
      s.negate_row(k);
      s_inv.negate_column(k);
    }
  }
  return {std::move(d), std::move(s), std::move(t), std::move(s_inv)};
}

}  // namespace coclass
