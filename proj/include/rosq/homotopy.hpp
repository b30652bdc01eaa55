#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rosq/engine.hpp"

namespace rosq {

struct StemEntry {
  int s = 0;
  Monomial generator;
  ModuleDescriptor descriptor;
  long long log2_order = 0;  // at the series truncation and Witt precision
};

/// The E∞ column of one stem, i.e. the associated graded of π_★.
struct StemReport {
  RODegree stem;
  std::vector<StemEntry> entries;  // nonzero filtrations, ascending
  long long log2_order = 0;
  bool extensions_resolved = true;
  std::string group;
};

namespace detail {

inline std::string entry_label(const StemEntry& e, const CoefficientContext& ctx) {
  const bool cyclic = ctx.theory == Theory::en && ctx.height == 1;
  const std::string annot = e.descriptor.annotation(ctx.theory == Theory::en ? "u" : "v");
  if (e.descriptor.shape() == ModuleDescriptor::Shape::witt) {
    if (cyclic) return annot == "W" ? "Z2" : "Z2{" + annot + "}";
    return (ctx.theory == Theory::en ? "W[[u]]{" : "Z2[v]{") + annot + "}";
  }
  if (cyclic) return "Z/2";
  return "(Z/2)^" + std::to_string(e.log2_order) + "{" + annot + "}";
}

inline void require_filtration_support(const PageLattice& einfty) {
  if (einfty.theory() != Theory::en) return;
  const Window& w = einfty.window();
  if (w.s_min > 0 || w.s_max < family_page(einfty.height()) - 1)
    throw WindowError("filtration window must cover 0.." + std::to_string(family_page(einfty.height()) - 1));
}

inline void require_final(const PageLattice& einfty) {
  if (!einfty.is_final()) throw ArgumentError("expected an E-infinity lattice");
}

}  // namespace detail

/// Associated graded of π_{a+bσ} for a in [a_min, a_max]. A stem with more
/// than one nonzero filtration is reported with unresolved extensions.
inline std::vector<StemReport> homotopy_groups(const PageLattice& einfty, int a_min, int a_max, int b = 0) {
  detail::require_final(einfty);
  detail::require_filtration_support(einfty);
  const Window& w = einfty.window();
  if (a_min > a_max || a_min < w.a_min || a_max > w.a_max || b < w.b_min || b > w.b_max)
    throw WindowError("requested stems are outside the computed window");
  const auto& ctx = einfty.context();
  std::vector<StemReport> out;
  for (int a = a_min; a <= a_max; ++a) {
    StemReport rep;
    rep.stem = {a, b};
    for (int s = w.s_min; s <= w.s_max; ++s) {
      const LatticePoint* p = einfty.find({{a, b}, s});
      if (!p || p->descriptor.is_zero()) continue;
      if (!p->exact) throw WindowError("stem value is not determined at " + to_string(p->degree));
      StemEntry e{s, p->generator, p->descriptor, expand(p->descriptor, ctx, p->weight).log2_order()};
      rep.log2_order += e.log2_order;
      rep.entries.push_back(std::move(e));
    }
    rep.extensions_resolved = rep.entries.size() <= 1;
    if (rep.entries.empty()) {
      rep.group = "0";
    } else {
      for (const auto& e : rep.entries) {
        if (!rep.group.empty()) rep.group += " | ";
        rep.group += detail::entry_label(e, ctx);
      }
      if (!rep.extensions_resolved) rep.group = "ext(" + rep.group + ")";
    }
    out.push_back(std::move(rep));
  }
  return out;
}

struct VanishingPoint {
  TriDegree degree;
  int death_page = 0;      // 0 if still alive at E∞
  int predicted_page = 0;  // from the 2-adic valuation of ℓ = (s+1)/4
};

struct VanishingVerdict {
  int k = 0;
  bool passed = false;
  std::vector<VanishingPoint> points;
  std::string detail;
};

/// The point of stem kρ-1 in filtration 4ℓ-1 is ū^{k+2ℓ-1} u_{2σ}^{-ℓ} a_σ^{4ℓ-1}.
/// It supports d_{r_{v+1}} when v = v₂(ℓ) < n and is hit by d_{r_n} otherwise.
inline int predicted_death_page(int height, int s) {
  const int ell = (s + 1) / 4;
  return family_page(std::min(two_adic_valuation(ell) + 1, height));
}

/// Checks π_{kρ-1} = 0 on the window: every point of the stem must be zero at
/// E∞, and each must die on the page the ℓ-valuation predicts.
inline std::vector<VanishingVerdict> check_vanishing_krho_minus_1(const SpectralSequenceRun& run, int k_min,
                                                                  int k_max) {
  const PageLattice& einfty = run.einfty;
  detail::require_final(einfty);
  detail::require_filtration_support(einfty);
  if (einfty.theory() != Theory::en) throw ArgumentError("the vanishing check applies to E_n");
  const Window& w = einfty.window();
  std::vector<VanishingVerdict> out;
  for (int k = k_min; k <= k_max; ++k) {
    if (k < w.b_min || k > w.b_max || k - 1 < w.a_min || k - 1 > w.a_max)
      throw WindowError("stem " + std::to_string(k) + "rho-1 is outside the window");
    VanishingVerdict v;
    v.k = k;
    v.passed = true;
    for (int s = w.s_min; s <= w.s_max; ++s) {
      const LatticePoint* p = einfty.find({{k - 1, k}, s});
      if (!p) continue;
      VanishingPoint vp{p->degree, p->death_page, predicted_death_page(einfty.height(), s)};
      if (!p->descriptor.is_zero()) {
        v.passed = false;
        v.detail += "survivor at " + to_string(p->degree) + "; ";
      } else if (vp.death_page != vp.predicted_page) {
        v.passed = false;
        v.detail += "death page " + std::to_string(vp.death_page) + " at " + to_string(p->degree) + ", expected " +
                    std::to_string(vp.predicted_page) + "; ";
      }
      v.points.push_back(vp);
    }
    if (v.points.empty()) {
      v.passed = false;
      v.detail = "no points in the window";
    }
    out.push_back(std::move(v));
  }
  return out;
}

struct StronglyEvenVerdict {
  int k = 0;
  bool passed = false;
  std::string detail;
};

/// Restriction to the underlying E_n sends ū_i ↦ u_i and ū ↦ u. On a point
/// of stem kρ it is a bijection onto W[[u_1..u_{n-1}]]·u^k exactly when every
/// basis monomial survives with full 2-adic order.
inline bool restriction_is_bijective(const LatticePoint& p, const CoefficientContext& ctx) {
  if (p.descriptor.shape() != ModuleDescriptor::Shape::witt) return false;
  const ExpandedPoint e = expand(p.descriptor, ctx, p.weight);
  if (e.basis != ctx.basis(p.weight)) return false;
  for (int bits : e.factor_log2)
    if (bits != ctx.witt_precision) return false;
  return true;
}

inline std::vector<StronglyEvenVerdict> check_strongly_even(const SpectralSequenceRun& run, int k_min, int k_max) {
  const PageLattice& einfty = run.einfty;
  detail::require_final(einfty);
  detail::require_filtration_support(einfty);
  if (einfty.theory() != Theory::en) throw ArgumentError("the strongly even check applies to E_n");
  const Window& w = einfty.window();
  const auto vanishing = check_vanishing_krho_minus_1(run, k_min, k_max);
  std::vector<StronglyEvenVerdict> out;
  for (int k = k_min; k <= k_max; ++k) {
    if (k > w.a_max || k < w.a_min) throw WindowError("stem " + std::to_string(k) + "rho is outside the window");
    StronglyEvenVerdict v{k, true, ""};
    int survivors = 0;
    for (int s = w.s_min; s <= w.s_max; ++s) {
      const LatticePoint* p = einfty.find({{k, k}, s});
      if (!p || p->descriptor.is_zero()) continue;
      ++survivors;
      if (s != 0) {
        v.passed = false;
        v.detail += "torsion survivor at " + to_string(p->degree) + "; ";
        continue;
      }
      if (p->descriptor.kind() != DescriptorKind::witt_level || *p->descriptor.witt_index() != 0) {
        v.passed = false;
        v.detail += "filtration 0 is " + p->descriptor.annotation() + "; ";
      }
      if (!(p->generator == Monomial{Theory::en, {}, k, 0, 0})) {
        v.passed = false;
        v.detail += "generator is " + p->generator.str() + "; ";
      }
      if (!restriction_is_bijective(*p, einfty.context())) {
        v.passed = false;
        v.detail += "restriction is not bijective; ";
      }
    }
    if (survivors != 1) {
      v.passed = false;
      v.detail += std::to_string(survivors) + " nonzero filtrations; ";
    }
    const auto& van = vanishing[k - k_min];
    if (!van.passed) {
      v.passed = false;
      v.detail += "stem " + std::to_string(k) + "rho-1: " + van.detail;
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Smallest d such that every pair of integer-stem columns d apart in the
/// window agree descriptor for descriptor, provided the window holds at
/// least two full periods.
inline std::optional<int> periodicity(const PageLattice& einfty, int b = 0) {
  detail::require_final(einfty);
  detail::require_filtration_support(einfty);
  const Window& w = einfty.window();
  if (b < w.b_min || b > w.b_max) throw WindowError("σ-coordinate outside the window");
  std::vector<std::vector<std::pair<int, ModuleDescriptor>>> columns;
  for (int a = w.a_min; a <= w.a_max; ++a) {
    std::vector<std::pair<int, ModuleDescriptor>> col;
    for (int s = w.s_min; s <= w.s_max; ++s) {
      const LatticePoint* p = einfty.find({{a, b}, s});
      if (p && !p->descriptor.is_zero()) col.emplace_back(s, p->descriptor);
    }
    columns.push_back(std::move(col));
  }
  const int span = static_cast<int>(columns.size());
  for (int d = 1; 2 * d <= span; ++d) {
    bool ok = true;
    for (int i = 0; i + d < span && ok; ++i) ok = columns[i] == columns[i + d];
    if (ok) return d;
  }
  return std::nullopt;
}

/// Multiplication by ū is invertible on E∞, so (a, b, s) and (a+1, b+1, s)
/// must carry equal descriptors. Returns the window points that disagree.
inline std::vector<TriDegree> ubar_shift_mismatches(const PageLattice& einfty) {
  std::vector<TriDegree> bad;
  for (const auto* p : einfty.window_points()) {
    const TriDegree q{p->degree.stem + kRho, p->degree.s};
    if (!einfty.window().contains(q)) continue;
    const LatticePoint* lq = einfty.find(q);
    if (!(lq->descriptor == p->descriptor)) bad.push_back(p->degree);
  }
  return bad;
}

}  // namespace rosq
