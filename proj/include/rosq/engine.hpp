#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rosq/lattice.hpp"

namespace rosq {

/// d_{r_k}(u_{2σ}^{2^{k-1}}) = target, for the k-th family.
struct GeneratorRule {
  Theory theory = Theory::en;
  int k = 1;
  int page = 3;
  Monomial source;
  Monomial target;
};

/// Number of differential families: n for Eₙ, V for BP_ℝ.
inline int family_count(const CoefficientContext& ctx) { return ctx.height; }

inline GeneratorRule generator_differential(Theory theory, int height, int k) {
  if (k < 1 || k > height) throw ArgumentError("family index out of range");
  GeneratorRule rule{theory, k, family_page(k), {}, {}};
  rule.source = Monomial{theory, {}, 0, 1 << (k - 1), 0};
  rule.target = Monomial{theory, {}, 0, 0, family_page(k)};
  if (theory == Theory::en) {
    rule.target.ubar = (1 << k) - 1;
    if (k < height) rule.target.set_var(k, 1);
  } else {
    rule.target.set_var(k, 1);
  }
  return rule;
}

enum class MapKind : std::uint8_t {
  zero,      // the valuation rule gives no arrow
  multiply,  // multiplication by the variable x_k
  unit,      // the identity on coefficients (top family of Eₙ)
};

struct Differential {
  int page = 0;
  TriDegree source;
  TriDegree target;
  MapKind map = MapKind::zero;
  int variable = 0;           // k for multiply, 0 otherwise
  bool reduces_mod2 = false;  // filtration-0 source: reduce mod 2 first
  bool effective = false;     // nonzero on the page it acts on
};

namespace detail {

inline int family_of_page(const CoefficientContext& ctx, int page) {
  for (int k = 1; k <= family_count(ctx); ++k)
    if (family_page(k) == page) return k;
  return 0;
}

inline bool supports_family(int u2sigma, int k) { return u2sigma != 0 && two_adic_valuation(u2sigma) == k - 1; }

inline int multiplier(const CoefficientContext& ctx, int k) {
  return ctx.theory == Theory::en && k == ctx.height ? 0 : k;
}

/// Z for tors, J for witt, pushed forward by the map.
inline MonomialIdeal image_ideal(const ModuleDescriptor& src, int m) { return src.cycles().times(m); }

/// BP_ℝ points hold one weight; drop descriptors with nothing left there.
inline ModuleDescriptor normalize(ModuleDescriptor d, const CoefficientContext& ctx, int weight) {
  if (d.is_zero() || ctx.theory == Theory::en || d.shape() == ModuleDescriptor::Shape::witt) return d;
  for (const auto& alpha : ctx.basis(weight))
    if (d.element_nonzero(alpha)) return d;
  return ModuleDescriptor::zero();
}

}  // namespace detail

/// The arrow the Leibniz rule and the family-k generator rule give out of
/// `source` on the page r_k of `lattice`.
inline Differential leibniz_arrow(const PageLattice& lattice, TriDegree source, int k) {
  const auto& ctx = lattice.context();
  if (k < 1 || k > family_count(ctx)) throw ArgumentError("family index out of range");
  const LatticePoint* p = lattice.find(source);
  if (!p) throw ArgumentError("no lattice point at " + to_string(source));
  const int r = family_page(k);
  Differential d{r, source, differential_target(source, r), MapKind::zero, 0, source.s == 0, false};
  if (!detail::supports_family(p->generator.u2sigma, k)) return d;
  const int m = detail::multiplier(ctx, k);
  d.map = m == 0 ? MapKind::unit : MapKind::multiply;
  d.variable = m;
  const LatticePoint* t = lattice.find(d.target);
  if (t && !p->descriptor.is_zero() && !t->descriptor.is_zero())
    d.effective = !detail::image_ideal(p->descriptor, m).subset_of(t->descriptor.boundaries());
  return d;
}

/// All arrows of the page `lattice` sits on whose source and target are
/// both in the lattice and nonzero.
inline std::vector<Differential> arrows_for_page(const PageLattice& lattice) {
  std::vector<Differential> out;
  const int k = detail::family_of_page(lattice.context(), lattice.page());
  if (k == 0 || lattice.is_final()) return out;
  for (const auto& p : lattice.points()) {
    if (p.descriptor.is_zero() || !detail::supports_family(p.generator.u2sigma, k)) continue;
    const LatticePoint* t = lattice.find(differential_target(p.degree, family_page(k)));
    if (!t || t->descriptor.is_zero()) continue;
    out.push_back(leibniz_arrow(lattice, p.degree, k));
  }
  return out;
}

/// E_r → E_{r+1} for the family acting on page r. Points whose value depends
/// on tri-degrees outside the lattice are marked inexact.
inline PageLattice turn_page(const PageLattice& in, std::vector<Differential>* arrows = nullptr) {
  const auto& ctx = in.context();
  const int k = in.is_final() ? 0 : detail::family_of_page(ctx, in.page());
  if (k == 0) throw ArgumentError("no differential acts on page " + std::to_string(in.page()));
  const int r = family_page(k);
  const int m = detail::multiplier(ctx, k);
  const auto& pts = in.points();
  const std::size_t npts = pts.size();

  std::vector<std::optional<MonomialIdeal>> new_cycles(npts), new_boundaries(npts);
  std::vector<bool> inexact(npts, false);
  auto index_of = [&](const LatticePoint* p) { return static_cast<std::size_t>(p - pts.data()); };

  for (std::size_t i = 0; i < npts; ++i) {
    const LatticePoint& p = pts[i];
    // as a target: the source one stem up, r filtrations down
    const TriDegree from{p.degree.stem + kTrivial, p.degree.s - r};
    if (from.s >= 0 && detail::supports_family(p.generator.u2sigma + (1 << (k - 1)), k)) {
      const LatticePoint* q = in.find(from);
      if (!q || !q->exact) inexact[i] = true;
    }

    if (!detail::supports_family(p.generator.u2sigma, k)) continue;
    const TriDegree to = differential_target(p.degree, r);
    const LatticePoint* t = in.find(to);
    if (!t || !t->exact) {
      inexact[i] = true;
      if (!t) continue;
    }
    if (p.descriptor.is_zero() || t->descriptor.is_zero()) continue;
    if (t->descriptor.shape() != ModuleDescriptor::Shape::tors)
      throw PatternViolation("differential into filtration 0 at " + to_string(to));

    const MonomialIdeal& zt = t->descriptor.cycles();
    const MonomialIdeal& bt = t->descriptor.boundaries();
    const MonomialIdeal image = detail::image_ideal(p.descriptor, m);
    if (!image.subset_of(zt))
      throw PatternViolation("d_" + std::to_string(r) + " from " + to_string(p.degree) + " leaves the cycles of " +
                             to_string(to));
    if (!p.descriptor.boundaries().times(m).subset_of(bt))
      throw PatternViolation("d_" + std::to_string(r) + " from " + to_string(p.degree) +
                             " is not defined on the quotient");
    new_cycles[i] = p.descriptor.cycles().intersect(bt.colon(m));
    new_boundaries[index_of(t)] = bt + image;
    if (arrows) arrows->push_back(leibniz_arrow(in, p.degree, k));
  }

  PageLattice out = in;
  auto& opts = out.points();
  for (std::size_t i = 0; i < npts; ++i) {
    const ModuleDescriptor& old = pts[i].descriptor;
    ModuleDescriptor next = old;
    if (old.shape() == ModuleDescriptor::Shape::witt) {
      if (new_cycles[i]) next = ModuleDescriptor::witt(*new_cycles[i]);
    } else if (old.shape() == ModuleDescriptor::Shape::tors) {
      if (new_cycles[i] || new_boundaries[i])
        next = ModuleDescriptor::tors(new_cycles[i].value_or(old.cycles()), new_boundaries[i].value_or(old.boundaries()));
    }
    next = detail::normalize(std::move(next), ctx, pts[i].weight);
    if (!old.is_zero() && next.is_zero()) opts[i].death_page = r;
    opts[i].descriptor = std::move(next);
    if (inexact[i]) opts[i].exact = false;
  }

  if (k < family_count(ctx)) {
    out.set_page(family_page(k + 1));
    return out;
  }
  out.set_page(r + 1);
  out.set_final(true);
  if (ctx.theory == Theory::bpr) {
    // families beyond V are not modelled
    const int v = ctx.height;
    for (auto& p : opts) {
      const int j = p.generator.u2sigma;
      const bool later_source = j != 0 && two_adic_valuation(j) >= v;
      const bool later_target = p.degree.s >= family_page(v + 1) && (j == 0 || two_adic_valuation(j) >= v + 1);
      if (later_source || later_target) p.exact = false;
    }
  }
  return out;
}

/// Eₙ at E∞ vanishes in filtration ≥ 2^{n+1} - 1: no longer differential
/// can be nonzero. Throws PatternViolation at the first exact offender.
inline void audit_convergence(const PageLattice& einfty) {
  if (einfty.theory() != Theory::en) return;
  const int line = family_page(einfty.height());
  for (const auto& p : einfty.points())
    if (p.exact && p.degree.s >= line && !p.descriptor.is_zero())
      throw PatternViolation("class above the vanishing line survives at " + to_string(p.degree));
}

/// Every page of one spectral sequence, with the arrows acting on each.
struct SpectralSequenceRun {
  std::vector<PageLattice> pages;                 // E_{r_1}, ..., E_{r_K}
  std::vector<std::vector<Differential>> arrows;  // arrows[i] acts on pages[i]
  PageLattice einfty;                             // labelled r_K + 1

  const CoefficientContext& context() const { return einfty.context(); }

  /// E_r for any r ≥ 2; r ≤ 0 means E∞. Between two families the page does
  /// not change, so E_r is the stored page with the smallest label ≥ r.
  const PageLattice& page(int r) const {
    if (r <= 0) return einfty;
    if (r < 2) throw ArgumentError("pages start at 2");
    for (const auto& p : pages)
      if (p.page() >= r) return p;
    return einfty;
  }

  const std::vector<Differential>& arrows_on(int r) const {
    static const std::vector<Differential> none;
    for (std::size_t i = 0; i < pages.size(); ++i)
      if (pages[i].page() == r) return arrows[i];
    return none;
  }
};

/// Turns pages until no family is left, then checks that the window is
/// fully determined and that the E∞ page respects the vanishing line.
inline SpectralSequenceRun run_to_einfty(const PageLattice& e2) {
  if (e2.is_final()) throw ArgumentError("lattice is already at E-infinity");
  SpectralSequenceRun run;
  PageLattice current = e2;
  if (current.page() == 2) current.set_page(family_page(1));
  while (!current.is_final()) {
    current.check_invariants();
    std::vector<Differential> arrows;
    PageLattice next = turn_page(current, &arrows);
    run.pages.push_back(std::move(current));
    run.arrows.push_back(std::move(arrows));
    current = std::move(next);
  }
  current.check_invariants();
  for (const auto* p : current.window_points())
    if (!p->exact)
      throw WindowError("window leak: " + to_string(p->degree) +
                        " depends on tri-degrees outside the padded window");
  audit_convergence(current);
  run.einfty = std::move(current);
  return run;
}

}  // namespace rosq
