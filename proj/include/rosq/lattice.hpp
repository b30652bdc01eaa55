#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rosq/descriptor.hpp"
#include "rosq/grading.hpp"

namespace rosq {

inline constexpr long long kMaxLatticeCells = 20'000'000;

/// Closed box of tri-degrees: a ∈ [a_min, a_max], b ∈ [b_min, b_max],
/// s ∈ [s_min, s_max].
struct Window {
  int a_min = -8;
  int a_max = 40;
  int b_min = 0;
  int b_max = 0;
  int s_min = 0;
  int s_max = 48;

  bool contains(TriDegree t) const {
    return t.stem.a >= a_min && t.stem.a <= a_max && t.stem.b >= b_min && t.stem.b <= b_max && t.s >= s_min &&
           t.s <= s_max;
  }

  void validate() const {
    if (a_min > a_max || b_min > b_max || s_min > s_max) throw ArgumentError("empty window");
    if (s_min < 0) throw ArgumentError("window filtration must be non-negative");
    const int limit = 10000;
    for (int v : {a_min, a_max, b_min, b_max, s_max})
      if (v < -limit || v > limit) throw ArgumentError("window coordinates must stay within ±10^4");
  }

  /// Differentials preserve b, so only a and s are padded.
  Window padded(int pad_a, int pad_s) const {
    return {a_min - pad_a, a_max + pad_a, b_min, b_max, std::max(0, s_min - pad_s), s_max + pad_s};
  }

  friend bool operator==(const Window&, const Window&) = default;
};

struct LatticePoint {
  TriDegree degree;
  Monomial generator;  // cyclic generator of the point's module
  int weight = 0;      // ρ-weight of the polynomial part (BP_ℝ)
  ModuleDescriptor descriptor;
  bool exact = true;   // false when the value depends on data outside the lattice
  int death_page = 0;  // r of the differential that zeroed the point, 0 if alive
};

/// The r-th page of one spectral sequence on a finite window. Every
/// admissible tri-degree of the padded window has a point; tri-degrees
/// beyond the padded window are unknown, never zero.
class PageLattice {
 public:
  enum class Presence { none, unknown, present };

  PageLattice() = default;

  PageLattice(CoefficientContext ctx, Window window, Window padded, int page)
      : ctx_(ctx), window_(window), padded_(padded), page_(page) {
    ctx_.validate();
    window_.validate();
    padded_.validate();
    da_ = padded_.a_max - padded_.a_min + 1;
    db_ = padded_.b_max - padded_.b_min + 1;
    ds_ = padded_.s_max - padded_.s_min + 1;
    if (static_cast<long long>(da_) * db_ * ds_ > kMaxLatticeCells)
      throw ResourceError("padded window has more than " + std::to_string(kMaxLatticeCells) + " tri-degrees");
    index_.assign(static_cast<std::size_t>(da_) * db_ * ds_, -1);
    for (int b = padded_.b_min; b <= padded_.b_max; ++b) {
      for (int a = padded_.a_min; a <= padded_.a_max; ++a) {
        for (int s = padded_.s_min; s <= padded_.s_max; ++s) {
          TriDegree t{{a, b}, s};
          auto sol = solve_point(ctx_.theory, t);
          if (!sol) continue;
          index_[slot(t)] = static_cast<int>(points_.size());
          points_.push_back(LatticePoint{t, sol->generator, sol->weight, ModuleDescriptor::zero(), true, 0});
        }
      }
    }
  }

  const CoefficientContext& context() const { return ctx_; }
  Theory theory() const { return ctx_.theory; }
  int height() const { return ctx_.height; }
  const Window& window() const { return window_; }
  const Window& padded() const { return padded_; }

  /// The page on which the next differential acts; after the last family it
  /// is r_last + 1 and `is_final()` is set.
  int page() const { return page_; }
  void set_page(int page) { page_ = page; }
  bool is_final() const { return final_; }
  void set_final(bool f) { final_ = f; }

  std::vector<LatticePoint>& points() { return points_; }
  const std::vector<LatticePoint>& points() const { return points_; }

  Presence presence(TriDegree t) const {
    if (!solve_point(ctx_.theory, t)) return Presence::none;
    if (!padded_.contains(t)) return Presence::unknown;
    return Presence::present;
  }

  const LatticePoint* find(TriDegree t) const {
    if (!padded_.contains(t)) return nullptr;
    int i = index_[slot(t)];
    return i < 0 ? nullptr : &points_[i];
  }

  LatticePoint* find(TriDegree t) {
    return const_cast<LatticePoint*>(static_cast<const PageLattice*>(this)->find(t));
  }

  /// Window points, in (b, a, s) order.
  std::vector<const LatticePoint*> window_points() const {
    std::vector<const LatticePoint*> out;
    for (const auto& p : points_)
      if (window_.contains(p.degree)) out.push_back(&p);
    return out;
  }

  std::size_t count_nonzero(bool window_only = true) const {
    std::size_t n = 0;
    for (const auto& p : points_)
      if (!p.descriptor.is_zero() && (!window_only || window_.contains(p.degree))) ++n;
    return n;
  }

  /// Invariants of the data model; throws PatternViolation on failure.
  void check_invariants() const {
    for (const auto& p : points_) {
      TriDegree d = degree_of_monomial(p.generator, ctx_.theory == Theory::en ? ctx_.height : 1);
      d.stem = d.stem + p.weight * kRho;
      if (d != p.degree) throw PatternViolation("generator degree mismatch at " + to_string(p.degree));
      const auto shape = p.descriptor.shape();
      if (shape == ModuleDescriptor::Shape::witt && p.generator.asigma != 0)
        throw PatternViolation("Witt descriptor in positive filtration at " + to_string(p.degree));
      if (shape == ModuleDescriptor::Shape::tors && p.generator.asigma == 0)
        throw PatternViolation("torsion descriptor in filtration 0 at " + to_string(p.degree));
    }
  }

 private:
  std::size_t slot(TriDegree t) const {
    return (static_cast<std::size_t>(t.stem.b - padded_.b_min) * da_ + (t.stem.a - padded_.a_min)) * ds_ +
           (t.s - padded_.s_min);
  }

  CoefficientContext ctx_;
  Window window_;
  Window padded_;
  int page_ = 2;
  bool final_ = false;
  int da_ = 0, db_ = 0, ds_ = 0;
  std::vector<int> index_;
  std::vector<LatticePoint> points_;
};

/// Padding that keeps every arrow touching the window inside the lattice.
inline int default_padding(const CoefficientContext& ctx) { return 1 << (ctx.height + 1); }

/// Number of v̄-generators a BP_ℝ window needs: enough families for every
/// window point that could support or receive a differential.
inline int suggested_bpr_generators(const Window& w) {
  int k_max = 1;
  while (family_page(k_max + 1) <= w.s_max) ++k_max;
  for (int b = w.b_min; b <= w.b_max; ++b)
    for (int a = w.a_min; a <= w.a_max; ++a)
      for (int s = w.s_min; s <= w.s_max; ++s) {
        auto sol = solve_point(Theory::bpr, {{a, b}, s});
        if (!sol || sol->generator.u2sigma == 0) continue;
        k_max = std::max(k_max, two_adic_valuation(sol->generator.u2sigma) + 1);
      }
  return std::min(k_max, 16);
}

namespace detail {
inline PageLattice build_e2(CoefficientContext ctx, const Window& window) {
  ctx.validate();
  window.validate();
  const int pad = default_padding(ctx);
  PageLattice lattice(ctx, window, window.padded(pad, pad), 2);
  const int nv = ctx.nvars();
  for (auto& p : lattice.points()) {
    p.descriptor = p.degree.s == 0 ? ModuleDescriptor::witt_level(nv, 0) : ModuleDescriptor::tors_level(nv, 1);
  }
  return lattice;
}
}  // namespace detail

/// E₂ page of the homotopy fixed point spectral sequence of Eₙ:
/// WittLevel(0) in filtration 0, TorsLevel(1) above, on every tri-degree the
/// monomial equations solve.
inline PageLattice build_e2_en(int n, const Window& window, int series_degree, int witt_precision) {
  if (n < 1 || n > 8) throw ArgumentError("height must be in 1..8");
  return detail::build_e2({Theory::en, n, series_degree, witt_precision}, window);
}

/// E₂ page for BP_ℝ with v̄₁..v̄_V retained. Coefficients are ℤ (counted at
/// 2-adic precision M) in filtration 0 and 𝔽₂ above.
inline PageLattice build_e2_bpr(const Window& window, int vbar_generators, int witt_precision = 5) {
  if (vbar_generators < 1) throw ArgumentError("need at least one v-generator");
  return detail::build_e2({Theory::bpr, vbar_generators, 1, witt_precision}, window);
}

/// The b = 0 part, as (stem a, filtration s) chart data. No recomputation.
inline PageLattice restrict_to_integer_stems(const PageLattice& lattice) {
  const Window& w = lattice.window();
  if (w.b_min > 0 || w.b_max < 0) throw WindowError("window does not contain integer stems");
  Window iw = w;
  iw.b_min = iw.b_max = 0;
  Window ip = lattice.padded();
  ip.b_min = ip.b_max = 0;
  PageLattice out(lattice.context(), iw, ip, lattice.page());
  out.set_final(lattice.is_final());
  for (auto& p : out.points()) p = *lattice.find(p.degree);
  return out;
}

}  // namespace rosq
