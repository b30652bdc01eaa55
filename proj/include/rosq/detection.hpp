#pragma once

#include <cctype>
#include <optional>
#include <string>

#include "rosq/engine.hpp"

namespace rosq {

enum class DetectionFamily : std::uint8_t { h, h_squared, g };

/// A member of the h_i, h_j², g_k families with its images in the two
/// spectral sequences. g_k is stored through the monomial of h_{2k}⁴.
struct DetectionClass {
  DetectionFamily family = DetectionFamily::h;
  int index = 1;

  /// Accepts "h3", "h2^2", "g1" (an underscore after the letter is allowed).
  static DetectionClass parse(std::string_view name) {
    auto fail = [&]() -> DetectionClass { throw ArgumentError("unknown class '" + std::string(name) + "'"); };
    if (name.size() < 2) return fail();
    const char letter = name[0];
    std::string_view rest = name.substr(1);
    if (!rest.empty() && rest[0] == '_') rest.remove_prefix(1);
    bool squared = false;
    if (rest.size() > 2 && rest.substr(rest.size() - 2) == "^2") {
      squared = true;
      rest.remove_suffix(2);
    }
    if (rest.empty() || rest.size() > 3) return fail();
    for (char c : rest)
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    const int index = std::stoi(std::string(rest));
    if (index < 1 || index > 20) return fail();
    if (letter == 'h') return {squared ? DetectionFamily::h_squared : DetectionFamily::h, index};
    if (letter == 'g' && !squared) return {DetectionFamily::g, index};
    return fail();
  }

  std::string family_name() const {
    switch (family) {
      case DetectionFamily::h: return "h";
      case DetectionFamily::h_squared: return "h^2";
      case DetectionFamily::g: return "g";
    }
    return "?";
  }

  std::string label() const {
    switch (family) {
      case DetectionFamily::h: return "h" + std::to_string(index);
      case DetectionFamily::h_squared: return "h" + std::to_string(index) + "^2";
      case DetectionFamily::g: return "g" + std::to_string(index);
    }
    return "?";
  }

  /// Alternative name of the stored monomial, if any.
  std::string alias() const { return family == DetectionFamily::g ? "h" + std::to_string(2 * index) + "^4" : ""; }

  /// Adams E₂ bidegree (s, t).
  std::pair<int, int> adams_bidegree() const {
    switch (family) {
      case DetectionFamily::h: return {1, 1 << index};
      case DetectionFamily::h_squared: return {2, 1 << (index + 1)};
      case DetectionFamily::g: return {4, (1 << (index + 3)) + (1 << (index + 2))};
    }
    return {0, 0};
  }

  int expected_stem() const {
    auto [s, t] = adams_bidegree();
    return t - s;
  }
};

inline Monomial bpr_image(const DetectionClass& c) {
  if (c.index < 1 || c.index > 20) throw ArgumentError("class index must be in 1..20");
  const int i = c.index;
  Monomial m{Theory::bpr, {}, 0, 0, 0};
  switch (c.family) {
    case DetectionFamily::h:
      m.set_var(i, 1);
      m.asigma = (1 << i) - 1;
      break;
    case DetectionFamily::h_squared:
      m.set_var(i, 2);
      m.asigma = 2 * ((1 << i) - 1);
      break;
    case DetectionFamily::g:
      m.set_var(i + 1, 4);
      m.u2sigma = 1 << (i + 1);
      m.asigma = 4 * ((1 << i) - 1);
      break;
  }
  return m;
}

/// Tri-degree of a BP_ℝ monomial.
inline TriDegree bpr_degree(const Monomial& m) { return degree_of_monomial(m, 1); }

/// v̄_i ↦ ū_i ū^{2^i-1} (i < n), ū^{2^n-1} (i = n), 0 (i > n); u_{2σ} and a_σ
/// map to themselves. nullopt is the zero image.
inline std::optional<Monomial> comparison_map(const Monomial& m, int n) {
  if (m.theory != Theory::bpr) throw ArgumentError("comparison_map takes a BP_R monomial");
  if (n < 1 || n > 8) throw ArgumentError("height must be in 1..8");
  Monomial out{Theory::en, {}, 0, m.u2sigma, m.asigma};
  for (int i = 1; i <= static_cast<int>(m.vars.size()); ++i) {
    const int e = m.var(i);
    if (e == 0) continue;
    if (i > n) return std::nullopt;
    out.ubar += e * ((1 << i) - 1);
    if (i < n) out.set_var(i, out.var(i) + e);
  }
  return out;
}

enum class DetectionVerdict : std::uint8_t { detected, zero_image, killed };

inline std::string_view verdict_name(DetectionVerdict v) {
  switch (v) {
    case DetectionVerdict::detected: return "detected";
    case DetectionVerdict::zero_image: return "zero-image";
    case DetectionVerdict::killed: return "killed";
  }
  return "?";
}

struct DetectionResult {
  DetectionClass cls;
  int height = 0;
  Monomial bpr_monomial;
  std::optional<Monomial> image;  // in Eₙ
  std::optional<TriDegree> degree;
  DetectionVerdict verdict = DetectionVerdict::zero_image;
  int death_page = 0;  // only for killed
};

/// A window around the image tri-degree that also covers every page.
inline Window detection_window(const DetectionClass& c, int n) {
  const TriDegree t = bpr_degree(bpr_image(c));
  return {t.stem.a - 1, t.stem.a + 1, t.stem.b, t.stem.b, 0, std::max(t.s, family_page(n))};
}

/// Whether the theorem's range says the class is detected at height n.
inline bool detection_expected(const DetectionClass& c, int n) {
  return c.family == DetectionFamily::g ? c.index <= n - 1 : c.index <= n;
}

inline DetectionResult certify_detection(const DetectionClass& c, int n, const SpectralSequenceRun& run) {
  const auto& ctx = run.context();
  if (ctx.theory != Theory::en || ctx.height != n) throw ArgumentError("run is not for E_n at this height");
  DetectionResult res{c, n, bpr_image(c), std::nullopt, std::nullopt, DetectionVerdict::zero_image, 0};
  res.image = comparison_map(res.bpr_monomial, n);
  if (res.image) {
    const TriDegree t = degree_of_monomial(*res.image, n);
    res.degree = t;
    if (!run.einfty.window().contains(t)) throw WindowError("window does not cover " + to_string(t));
    std::vector<int> alpha(ctx.nvars(), 0);
    int deg = 0;
    for (int i = 1; i <= ctx.nvars(); ++i) deg += (alpha[i - 1] = res.image->var(i));
    if (deg >= ctx.series_degree)
      throw WindowError("series degree " + std::to_string(ctx.series_degree) + " cannot hold " + res.image->str());
    const LatticePoint* p = run.einfty.find(t);
    Monomial base = *res.image;
    base.vars.clear();
    if (!p || !(p->generator == base)) throw PatternViolation("image monomial does not sit at its lattice point");
    if (p->descriptor.element_nonzero(alpha)) {
      res.verdict = DetectionVerdict::detected;
    } else {
      res.verdict = DetectionVerdict::killed;
      for (std::size_t i = 0; i < run.pages.size(); ++i) {
        const PageLattice& next = i + 1 < run.pages.size() ? run.pages[i + 1] : run.einfty;
        if (run.pages[i].find(t)->descriptor.element_nonzero(alpha) && !next.find(t)->descriptor.element_nonzero(alpha))
          res.death_page = run.pages[i].page();
      }
    }
  }
  const bool expected = detection_expected(c, n);
  if (res.verdict == DetectionVerdict::killed)
    throw PatternViolation(c.label() + " is killed at height " + std::to_string(n) + " on page " +
                           std::to_string(res.death_page));
  if (expected != (res.verdict == DetectionVerdict::detected))
    throw PatternViolation(c.label() + " at height " + std::to_string(n) + " is " +
                           std::string(verdict_name(res.verdict)) + " outside the detection range");
  return res;
}

/// Runs the spectral sequence on a window fitted to the class.
inline DetectionResult certify_detection(const DetectionClass& c, int n, int series_degree = 6,
                                         int witt_precision = 0) {
  if (witt_precision <= 0) witt_precision = n + 3;
  if (!comparison_map(bpr_image(c), n)) {
    if (detection_expected(c, n))
      throw PatternViolation(c.label() + " has zero image inside the detection range");
    return {c, n, bpr_image(c), std::nullopt, std::nullopt, DetectionVerdict::zero_image, 0};
  }
  const auto run = run_to_einfty(build_e2_en(n, detection_window(c, n), series_degree, witt_precision));
  return certify_detection(c, n, run);
}

}  // namespace rosq
