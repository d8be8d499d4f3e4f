#pragma once

#include <vector>

#include "coclass/fp_matrix.hpp"

namespace coclass::oracle {

// Textbook elimination on unpacked rows.
struct NaiveResult {
  std::size_t rank;
  std::vector<std::vector<unsigned>> kernel;  // right kernel vectors
};

inline NaiveResult naive_eliminate(const std::vector<std::vector<unsigned>>& a, std::size_t cols, unsigned p) {
  auto m = a;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    unsigned inv = 1;
    while (m[row][c] * inv % p != 1) ++inv;
    for (auto& e : m[row]) e = e * inv % p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const unsigned f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = (m[r][k] + (p - f) * m[row][k]) % p;
    }
    pivots.push_back(c);
    ++row;
  }
  NaiveResult out{pivots.size(), {}};
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<unsigned> v(cols, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = (p - m[k][f]) % p;
    out.kernel.push_back(v);
  }
  return out;
}

inline std::vector<std::vector<unsigned>> unpack(const FpMatrix& m) {
  std::vector<std::vector<unsigned>> out(m.rows(), std::vector<unsigned>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c);
  return out;
}

// fp_kernel and fp_rank against naive_eliminate: same rank, same kernel span.
inline bool kernel_matches_naive(const FpMatrix& a) {
  const FpMatrix k = fp_kernel(a);
  const NaiveResult naive = naive_eliminate(unpack(a), a.cols(), a.p());
  if (fp_rank(a) != naive.rank || k.cols() != naive.kernel.size()) return false;
  if (!(a * k).is_zero()) return false;
  FpMatrix both = k.transpose();
  for (const auto& v : naive.kernel) both.append_row(FpVector(v.begin(), v.end()));
  return fp_rank(both) == k.cols();
}

// Random matrix with a forced dependency on every third draw.
template <class Rng>
FpMatrix random_test_matrix(unsigned p, int trial, Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 70);
  const std::size_t rows = dim(rng), cols = dim(rng);
  FpMatrix a = FpMatrix::random(p, rows, cols, rng);
  if (trial % 3 == 0 && rows > 2)
    for (std::size_t c = 0; c < cols; ++c) a.set(rows - 1, c, (a.get(0, c) + 2 * a.get(1, c)) % p);
  return a;
}

}  // namespace coclass::oracle
