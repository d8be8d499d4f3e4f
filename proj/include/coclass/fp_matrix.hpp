#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coclass {

using FpVector = std::vector<std::uint8_t>;

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline unsigned inverse_mod(unsigned a, unsigned p) {
  // p is prime and small, Fermat is fine.
  unsigned result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

namespace detail {

inline void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) dst[k] ^= src[k];
}

template <unsigned P>
void axpy_fixed(std::uint8_t* dst, const std::uint8_t* src, unsigned c, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    dst[k] = static_cast<std::uint8_t>(static_cast<std::uint16_t>(dst[k] + c * src[k]) % P);
}

inline void axpy_generic(std::uint8_t* dst, const std::uint8_t* src, unsigned c, unsigned p,
                         std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) dst[k] = static_cast<std::uint8_t>((dst[k] + c * src[k]) % p);
}

// dst += c * src over F_p, byte-packed rows.
inline void axpy_bytes(std::uint8_t* dst, const std::uint8_t* src, unsigned c, unsigned p,
                       std::size_t n) {
  switch (p) {
    case 3: axpy_fixed<3>(dst, src, c, n); break;
    case 5: axpy_fixed<5>(dst, src, c, n); break;
    case 7: axpy_fixed<7>(dst, src, c, n); break;
    default: axpy_generic(dst, src, c, p, n); break;
  }
}

inline void scale_bytes(std::uint8_t* row, unsigned c, unsigned p, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) row[k] = static_cast<std::uint8_t>(row[k] * c % p);
}

}  // namespace detail

/// Dense matrix over F_p, p prime and at most 251.
///
/// Rows are padded to whole 64-bit words. For p = 2 each word holds 64
/// entries (bit j of a row lives in word j/64, bit j%64); for odd p each
/// entry is one byte and rows are padded to 32 bytes.
class FpMatrix {
 public:
  FpMatrix() = default;

  FpMatrix(unsigned p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols) {
    if (!is_prime(p) || p > 251) throw std::invalid_argument("FpMatrix: modulus must be a prime <= 251");
    stride_ = words_for(p, cols);
    data_.assign(rows_ * stride_, 0);
  }

  static std::size_t words_for(unsigned p, std::size_t cols) {
    return p == 2 ? (cols + 63) / 64 : ((cols + 31) / 32) * 4;
  }

  static FpMatrix identity(unsigned p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  template <class Rng>
  static FpMatrix random(unsigned p, std::size_t rows, std::size_t cols, Rng& rng) {
    FpMatrix m(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<unsigned>(rng() % p));
    return m;
  }

  unsigned p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t row_words() const { return stride_; }

  std::uint64_t* row_data(std::size_t r) { return data_.data() + r * stride_; }
  const std::uint64_t* row_data(std::size_t r) const { return data_.data() + r * stride_; }

  unsigned get(std::size_t r, std::size_t c) const { return get_in(row_data(r), c); }
  void set(std::size_t r, std::size_t c, unsigned v) { set_in(row_data(r), c, v % p_); }

  unsigned get_in(const std::uint64_t* row, std::size_t c) const {
    if (p_ == 2) return static_cast<unsigned>((row[c >> 6] >> (c & 63)) & 1u);
    return reinterpret_cast<const std::uint8_t*>(row)[c];
  }

  void set_in(std::uint64_t* row, std::size_t c, unsigned v) const {
    if (p_ == 2) {
      const std::uint64_t bit = std::uint64_t{1} << (c & 63);
      if (v) row[c >> 6] |= bit;
      else row[c >> 6] &= ~bit;
    } else {
      reinterpret_cast<std::uint8_t*>(row)[c] = static_cast<std::uint8_t>(v);
    }
  }

  FpVector row(std::size_t r) const {
    FpVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = static_cast<std::uint8_t>(get(r, c));
    return v;
  }

  void set_row(std::size_t r, std::span<const std::uint8_t> v) {
    if (v.size() != cols_) throw std::invalid_argument("FpMatrix: row length mismatch");
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, v[c]);
  }

  /// Appends a row copied from packed storage of the same width.
  void append_row(const std::uint64_t* words) {
    data_.insert(data_.end(), words, words + stride_);
    ++rows_;
  }

  void append_row(std::span<const std::uint8_t> v) {
    data_.resize(data_.size() + stride_, 0);
    ++rows_;
    set_row(rows_ - 1, v);
  }

  // row[dst] += c * row[src], starting at column `from`.
  void add_row_multiple(std::uint64_t* dst, const std::uint64_t* src, unsigned c,
                        std::size_t from = 0) const {
    if (c == 0) return;
    if (p_ == 2) {
      const std::size_t w = from >> 6;
      detail::xor_words(dst + w, src + w, stride_ - w);
    } else {
      const std::size_t b = from & ~std::size_t{31};
      detail::axpy_bytes(reinterpret_cast<std::uint8_t*>(dst) + b,
                         reinterpret_cast<const std::uint8_t*>(src) + b, c, p_, stride_ * 8 - b);
    }
  }

  void scale_row(std::uint64_t* row, unsigned c) const {
    if (p_ == 2 || c == 1) return;
    detail::scale_bytes(reinterpret_cast<std::uint8_t*>(row), c, p_, stride_ * 8);
  }

  /// First nonzero column in [from, limit) or `npos`.
  std::size_t first_nonzero(const std::uint64_t* row, std::size_t limit, std::size_t from = 0) const {
    if (p_ == 2) {
      for (std::size_t w = from >> 6; w * 64 < limit; ++w) {
        std::uint64_t word = row[w];
        if (w == (from >> 6)) word &= ~std::uint64_t{0} << (from & 63);
        if (word) {
          const std::size_t c = w * 64 + static_cast<std::size_t>(__builtin_ctzll(word));
          return c < limit ? c : npos;
        }
      }
      return npos;
    }
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(row);
    for (std::size_t c = from; c < limit; ++c)
      if (bytes[c]) return c;
    return npos;
  }

  bool row_is_zero(std::size_t r) const { return first_nonzero(row_data(r), cols_) == npos; }

  bool is_zero() const {
    for (std::size_t r = 0; r < rows_; ++r)
      if (!row_is_zero(r)) return false;
    return true;
  }

  FpMatrix transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (unsigned v = get(r, c)) t.set(c, r, v);
    return t;
  }

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.p_ != b.p_ || a.cols_ != b.rows_) throw std::invalid_argument("FpMatrix: dimension mismatch");
    FpMatrix c(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (unsigned v = a.get(i, k)) c.add_row_multiple(c.row_data(i), b.row_data(k), v);
    return c;
  }

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  unsigned p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Incrementally built semi-echelon basis of a row space.
///
/// Stored row k has a 1 at its pivot column c_k, zeros before c_k, and zeros
/// at c_1..c_{k-1}. Pivots are searched only in columns [0, pivot_limit),
/// which lets callers carry a tracking block to the right of the image.
class EchelonBasis {
 public:
  EchelonBasis(unsigned p, std::size_t width, std::size_t pivot_limit)
      : rows_(p, 0, width), limit_(pivot_limit) {}
  EchelonBasis(unsigned p, std::size_t width) : EchelonBasis(p, width, width) {}

  std::size_t rank() const { return pivots_.size(); }
  std::size_t width() const { return rows_.cols(); }
  const FpMatrix& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces `row` (packed with this basis' layout) to zero at every pivot.
  void reduce(std::uint64_t* row) const {
    const unsigned p = rows_.p();
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const unsigned v = rows_.get_in(row, pivots_[k]);
      if (v) rows_.add_row_multiple(row, rows_.row_data(k), p - v, pivots_[k]);
    }
  }

  /// Reduces `row` in place and inserts it if independent. Returns true if the rank grew.
  bool insert_reduced(std::uint64_t* row) {
    reduce(row);
    const std::size_t c = rows_.first_nonzero(row, limit_);
    if (c == FpMatrix::npos) return false;
    const unsigned v = rows_.get_in(row, c);
    rows_.scale_row(row, inverse_mod(v, rows_.p()));
    rows_.append_row(row);
    pivots_.push_back(c);
    return true;
  }

  bool insert(std::span<const std::uint64_t> row) {
    scratch_.assign(row.begin(), row.end());
    return insert_reduced(scratch_.data());
  }

  bool contains(std::span<const std::uint64_t> row) const {
    std::vector<std::uint64_t> tmp(row.begin(), row.end());
    reduce(tmp.data());
    return rows_.first_nonzero(tmp.data(), limit_) == FpMatrix::npos;
  }

 private:
  FpMatrix rows_;
  std::size_t limit_;
  std::vector<std::size_t> pivots_;
  std::vector<std::uint64_t> scratch_;
};

/// Rows x with x * m = 0, as the rows of the returned matrix.
inline FpMatrix left_kernel(const FpMatrix& m) {
  const unsigned p = m.p();
  const std::size_t n = m.rows(), w = m.cols();
  EchelonBasis basis(p, w + n, w);
  FpMatrix kernel(p, 0, n);
  FpMatrix work(p, 1, w + n);
  std::uint64_t* row = work.row_data(0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row, row + work.row_words(), 0);
    for (std::size_t c = 0; c < w; ++c)
      if (unsigned v = m.get(i, c)) work.set_in(row, c, v);
    work.set_in(row, w + i, 1);
    if (basis.insert_reduced(row)) continue;
    FpVector combo(n);
    for (std::size_t j = 0; j < n; ++j) combo[j] = static_cast<std::uint8_t>(work.get_in(row, w + j));
    kernel.append_row(combo);
  }
  return kernel;
}

inline std::size_t fp_rank(const FpMatrix& a) {
  EchelonBasis basis(a.p(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    basis.insert(std::span<const std::uint64_t>(a.row_data(r), a.row_words()));
  return basis.rank();
}

/// Right kernel {x : A x = 0}; the columns of the result form a basis.
inline FpMatrix fp_kernel(const FpMatrix& a) { return left_kernel(a.transpose()).transpose(); }

/// Some x with A x = b, or nullopt if the system is inconsistent.
inline std::optional<FpVector> fp_solve(const FpMatrix& a, std::span<const std::uint8_t> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("fp_solve: dimension mismatch");
  const unsigned p = a.p();
  const std::size_t m = a.rows(), n = a.cols();
  EchelonBasis basis(p, m + n, m);
  FpMatrix work(p, 1, m + n);
  std::uint64_t* row = work.row_data(0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(row, row + work.row_words(), 0);
    for (std::size_t i = 0; i < m; ++i)
      if (unsigned v = a.get(i, j)) work.set_in(row, i, v);
    work.set_in(row, m + j, 1);
    basis.insert_reduced(row);
  }
  std::fill(row, row + work.row_words(), 0);
  for (std::size_t i = 0; i < m; ++i) work.set_in(row, i, b[i] % p);
  basis.reduce(row);
  if (work.first_nonzero(row, m) != FpMatrix::npos) return std::nullopt;
  FpVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<std::uint8_t>((p - work.get_in(row, m + j)) % p);
  return x;
}

// ---------------------------------------------------------------------------
// FPMX binary format: "FPMX", version u8, p u8, rows u64, cols u64, then each
// row padded to a multiple of 8 bytes. p = 2 packs bits LSB-first into
// little-endian 64-bit words; odd p stores one byte per entry.

inline constexpr std::uint8_t kFpmxVersion = 1;

namespace detail {

inline void write_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  os.write(b.data(), 8);
}

inline std::uint64_t read_u64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), 8);
  if (!is) throw std::runtime_error("FPMX: truncated header");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= std::uint64_t{b[k]} << (8 * k);
  return v;
}

inline std::size_t fpmx_row_bytes(unsigned p, std::size_t cols) {
  return p == 2 ? ((cols + 63) / 64) * 8 : ((cols + 7) / 8) * 8;
}

}  // namespace detail

inline void write_fpmx(std::ostream& os, const FpMatrix& m) {
  os.write("FPMX", 4);
  os.put(static_cast<char>(kFpmxVersion));
  os.put(static_cast<char>(m.p()));
  detail::write_u64(os, m.rows());
  detail::write_u64(os, m.cols());
  const std::size_t row_bytes = detail::fpmx_row_bytes(m.p(), m.cols());
  std::vector<char> buf(row_bytes);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::fill(buf.begin(), buf.end(), 0);
    if (m.p() == 2) {
      const std::uint64_t* words = m.row_data(r);
      for (std::size_t w = 0; w < row_bytes / 8; ++w)
        for (int k = 0; k < 8; ++k) buf[w * 8 + k] = static_cast<char>((words[w] >> (8 * k)) & 0xff);
    } else {
      for (std::size_t c = 0; c < m.cols(); ++c) buf[c] = static_cast<char>(m.get(r, c));
    }
    os.write(buf.data(), static_cast<std::streamsize>(row_bytes));
  }
}

inline FpMatrix read_fpmx(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != "FPMX") throw std::runtime_error("FPMX: bad magic");
  const int version = is.get();
  const int p = is.get();
  if (version != kFpmxVersion) throw std::runtime_error("FPMX: unsupported version");
  if (!is_prime(p) || p > 251) throw std::runtime_error("FPMX: bad modulus");
  const std::uint64_t rows = detail::read_u64(is);
  const std::uint64_t cols = detail::read_u64(is);
  FpMatrix m(static_cast<unsigned>(p), rows, cols);
  const std::size_t row_bytes = detail::fpmx_row_bytes(m.p(), cols);
  std::vector<unsigned char> buf(row_bytes);
  for (std::size_t r = 0; r < rows; ++r) {
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(row_bytes));
    if (!is) throw std::runtime_error("FPMX: truncated payload");
    if (m.p() == 2) {
      std::uint64_t* words = m.row_data(r);
      for (std::size_t w = 0; w < row_bytes / 8; ++w) {
        std::uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= std::uint64_t{buf[w * 8 + k]} << (8 * k);
        words[w] = v;
      }
    } else {
      for (std::size_t c = 0; c < cols; ++c) {
        if (buf[c] >= m.p()) throw std::runtime_error("FPMX: residue out of range");
        m.set(r, c, buf[c]);
      }
    }
  }
  return m;
}

}  // namespace coclass
