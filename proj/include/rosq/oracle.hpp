#pragma once

// Brute-force page homology. Every (tri-degree, ū-monomial) cell carries an
// explicit cycle and boundary subgroup of (ℤ/2^M)^rank, and each page is
// computed by linear algebra, with no use of module descriptors.

#include <map>
#include <vector>

#include "rosq/coefficients.hpp"
#include "rosq/engine.hpp"
#include "rosq/zmod.hpp"

namespace rosq {

struct OracleReport {
  std::vector<int> pages;  // r_1, ..., r_K, then the E∞ label r_K + 1
  std::map<TriDegree, std::vector<long long>> log2_orders;  // window points, one entry per page
};

namespace detail {

struct OracleCell {
  zmod::Mat cycles;
  zmod::Mat boundaries;
};

struct OraclePoint {
  int u2sigma = 0;
  int weight = 0;
  std::map<std::vector<int>, OracleCell> cells;
};

}  // namespace detail

/// Orders of every window point on every page, from linear algebra on the
/// padded window. The series truncation is widened by a guard band of
/// `height` degrees, and only monomials of degree < D are reported.
inline OracleReport oracle_page_homology(const CoefficientContext& ctx, const Window& window, const Window& padded,
                                         int up_to_page = 0) {
  ctx.validate();
  window.validate();
  padded.validate();
  const zmod::Ring ring(ctx.witt_precision);
  const int M = ctx.witt_precision;
  const int rank = ctx.coefficient_rank();
  const int guard = ctx.theory == Theory::en ? ctx.series_degree + ctx.height : ctx.series_degree;
  const std::uint64_t half = std::uint64_t{1} << (M - 1);

  std::map<TriDegree, detail::OraclePoint> points;
  for (int b = padded.b_min; b <= padded.b_max; ++b)
    for (int a = padded.a_min; a <= padded.a_max; ++a)
      for (int s = padded.s_min; s <= padded.s_max; ++s) {
        // admissibility straight from the exponent equations
        const int d = a - b - s;
        if (d % 4 != 0) continue;
        const int x = (a + b + s) / 2;
        if (ctx.theory == Theory::bpr && x < 0) continue;
        detail::OraclePoint p;
        p.u2sigma = d / 4;
        p.weight = ctx.theory == Theory::bpr ? x : 0;
        for (auto& alpha : ctx.basis_with_degree_bound(p.weight, guard)) {
          detail::OracleCell c;
          for (int i = 0; i < rank; ++i) {
            zmod::Vec v(rank, 0);
            v[i] = s == 0 ? 1 : half;
            c.cycles.push_back(std::move(v));
          }
          p.cells.emplace(std::move(alpha), std::move(c));
        }
        points.emplace(TriDegree{{a, b}, s}, std::move(p));
      }

  OracleReport report;
  auto record = [&](int label) {
    report.pages.push_back(label);
    for (const auto& [t, p] : points) {
      if (!window.contains(t)) continue;
      long long total = 0;
      for (const auto& [alpha, c] : p.cells) {
        int deg = 0;
        for (int e : alpha) deg += e;
        if (ctx.theory == Theory::en && deg >= ctx.series_degree) continue;
        total += zmod::span_log2(ring, c.cycles, rank) - zmod::span_log2(ring, c.boundaries, rank);
      }
      report.log2_orders[t].push_back(total);
    }
  };

  // d_r(u_{2σ}^j) = (j / 2^{k-1}) u_{2σ}^{j - 2^{k-1}} d_r(u_{2σ}^{2^{k-1}}) when 2^{k-1} | j
  auto image_of = [&](const zmod::Vec& z, bool from_filtration_zero, std::uint64_t coefficient) {
    zmod::Vec out(rank, 0);
    if (ctx.theory == Theory::en && from_filtration_zero) {
      WittElement w(ctx.height, M);
      for (int i = 0; i < rank; ++i) w.set_coordinate(i, z[i]);
      GfElement g = witt_reduce(w);
      for (int i = 0; i < rank; ++i) out[i] = ring.reduce(coefficient * half * g.coordinate(i));
      return out;
    }
    for (int i = 0; i < rank; ++i)
      out[i] = ring.reduce(coefficient * (from_filtration_zero ? half * (z[i] & 1u) : z[i]));
    return out;
  };

  const int families = family_count(ctx);
  for (int k = 1; k <= families; ++k) {
    const int r = family_page(k);
    if (up_to_page > 0 && r > up_to_page) break;
    record(r);
    const int step = 1 << (k - 1);
    const int var = ctx.theory == Theory::en && k == ctx.height ? 0 : k;

    std::map<std::pair<TriDegree, std::vector<int>>, zmod::Mat> new_cycles, new_boundaries;
    for (auto& [t, p] : points) {
      if (p.u2sigma % step != 0) continue;
      const std::uint64_t coefficient = static_cast<std::uint64_t>((p.u2sigma >> (k - 1)) & 1);
      auto target = points.find(TriDegree{t.stem - kTrivial, t.s + r});
      for (auto& [alpha, cell] : p.cells) {
        std::vector<int> beta = alpha;
        if (var > 0) ++beta[var - 1];
        detail::OracleCell* tc = nullptr;
        if (coefficient != 0 && target != points.end()) {
          auto it = target->second.cells.find(beta);
          if (it != target->second.cells.end()) tc = &it->second;
        }
        if (!tc) continue;
        zmod::Mat images;
        for (const auto& z : cell.cycles) images.push_back(image_of(z, t.s == 0, coefficient));
        zmod::Mat stacked = images;
        stacked.insert(stacked.end(), tc->boundaries.begin(), tc->boundaries.end());
        zmod::Mat kept;
        for (const auto& y : zmod::left_kernel(ring, stacked, rank)) {
          zmod::Vec z(rank, 0);
          for (std::size_t i = 0; i < cell.cycles.size(); ++i)
            for (int c = 0; c < rank; ++c) z[c] = ring.reduce(z[c] + y[i] * cell.cycles[i][c]);
          kept.push_back(std::move(z));
        }
        new_cycles[{t, alpha}] = zmod::reduce_generators(ring, std::move(kept), rank);
        zmod::Mat grown = tc->boundaries;
        grown.insert(grown.end(), images.begin(), images.end());
        new_boundaries[{target->first, beta}] = zmod::reduce_generators(ring, std::move(grown), rank);
      }
    }
    for (auto& [key, z] : new_cycles) points[key.first].cells[key.second].cycles = std::move(z);
    for (auto& [key, b] : new_boundaries) points[key.first].cells[key.second].boundaries = std::move(b);

    for (const auto& [t, p] : points)
      for (const auto& [alpha, c] : p.cells) {
        zmod::Mat both = c.cycles;
        both.insert(both.end(), c.boundaries.begin(), c.boundaries.end());
        if (zmod::span_log2(ring, both, rank) != zmod::span_log2(ring, c.cycles, rank))
          throw PatternViolation("oracle: boundaries are not cycles at " + to_string(t));
      }
  }
  if (up_to_page <= 0 || up_to_page > family_page(families)) record(family_page(families) + 1);
  return report;
}

}  // namespace rosq
