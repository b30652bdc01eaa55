#pragma once

// Linear algebra over ℤ/2^M: Smith form, spans and left kernels.

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "rosq/error.hpp"

namespace rosq::zmod {

using Vec = std::vector<std::uint64_t>;
using Mat = std::vector<Vec>;  // row vectors

class Ring {
 public:
  explicit Ring(int precision) : m_(precision) {
    if (precision < 1 || precision > 62) throw ArgumentError("modulus exponent out of range");
  }

  int precision() const { return m_; }
  std::uint64_t mask() const { return (std::uint64_t{1} << m_) - 1; }
  std::uint64_t reduce(std::uint64_t x) const { return x & mask(); }
  int valuation(std::uint64_t x) const { return (x & mask()) == 0 ? m_ : std::countr_zero(x & mask()); }

  /// Inverse of an odd element.
  std::uint64_t inverse_odd(std::uint64_t u) const {
    std::uint64_t x = u;
    for (int i = 0; i < 6; ++i) x *= 2 - u * x;
    return x & mask();
  }

  void axpy(Vec& y, std::uint64_t a, const Vec& x) const {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] - a * x[i]) & mask();
  }

  Vec scaled(const Vec& x, std::uint64_t a) const {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (a * x[i]) & mask();
    return out;
  }

 private:
  int m_;
};

struct Smith {
  std::vector<int> valuations;  // diagonal entries 2^v, v < M
  Mat row_transform;            // U with U·A·V diagonal
};

/// Smith form of `a` (rows × cols), tracking the row transform.
inline Smith smith(const Ring& R, Mat a, int cols) {
  const std::size_t rows = a.size();
  Mat u(rows, Vec(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
  std::vector<int> vals;
  for (std::size_t t = 0; t < rows && static_cast<int>(t) < cols; ++t) {
    int best = R.precision();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < static_cast<std::size_t>(cols); ++j) {
        int v = R.valuation(a[i][j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == R.precision()) break;
    std::swap(a[t], a[bi]);
    std::swap(u[t], u[bi]);
    for (auto& row : a) std::swap(row[t], row[bj]);
    const std::uint64_t inv = R.inverse_odd(a[t][t] >> best);
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (R.reduce(a[i][t]) == 0) continue;
      const std::uint64_t f = R.reduce((a[i][t] >> best) * inv);
      R.axpy(a[i], f, a[t]);
      R.axpy(u[i], f, u[t]);
    }
    for (std::size_t j = t + 1; j < static_cast<std::size_t>(cols); ++j) {
      if (R.reduce(a[t][j]) == 0) continue;
      const std::uint64_t f = R.reduce((a[t][j] >> best) * inv);
      for (auto& row : a) row[j] = (row[j] - f * row[t]) & R.mask();
    }
    vals.push_back(best);
  }
  return {vals, u};
}

/// log₂ of the order of the subgroup spanned by the rows.
inline long long span_log2(const Ring& R, const Mat& rows, int cols) {
  if (rows.empty()) return 0;
  long long total = 0;
  for (int v : smith(R, rows, cols).valuations) total += R.precision() - v;
  return total;
}

/// Generators of {y : y·A = 0}, as coefficient vectors on the rows of A.
inline Mat left_kernel(const Ring& R, const Mat& a, int cols) {
  Mat out;
  if (a.empty()) return out;
  auto s = smith(R, a, cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i < s.valuations.size()) {
      if (s.valuations[i] == 0) continue;
      out.push_back(R.scaled(s.row_transform[i], std::uint64_t{1} << (R.precision() - s.valuations[i])));
    } else {
      out.push_back(s.row_transform[i]);
    }
  }
  return out;
}

/// A generating set of the same span with at most `cols` rows.
inline Mat reduce_generators(const Ring& R, Mat a, int cols) {
  std::size_t top = 0;
  for (int j = 0; j < cols && top < a.size(); ++j) {
    int best = R.precision();
    std::size_t bi = top;
    for (std::size_t i = top; i < a.size(); ++i) {
      int v = R.valuation(a[i][j]);
      if (v < best) {
        best = v;
        bi = i;
      }
    }
    if (best == R.precision()) continue;
    std::swap(a[top], a[bi]);
    const std::uint64_t inv = R.inverse_odd(a[top][j] >> best);
    for (std::size_t i = top + 1; i < a.size(); ++i) {
      if (R.reduce(a[i][j]) == 0) continue;
      R.axpy(a[i], R.reduce((a[i][j] >> best) * inv), a[top]);
    }
    ++top;
  }
  Mat out;
  for (auto& row : a) {
    bool nonzero = false;
    for (auto x : row) nonzero = nonzero || R.reduce(x) != 0;
    if (nonzero) out.push_back(std::move(row));
  }
  return out;
}

}  // namespace rosq::zmod
