#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rosq/grading.hpp"
#include "rosq/monomial_ideal.hpp"

namespace rosq {

/// Which coefficient ring a lattice point is a module over, and the
/// truncations used when counting.
///
/// Eₙ: W(𝔽_{2ⁿ})[[ū₁..ū_{n-1}]], counted on ū-monomials of total degree < D.
/// BP_ℝ: ℤ[v̄₁..v̄_V], the point holding the monomials of one exact ρ-weight.
struct CoefficientContext {
  using Exponents = std::vector<int>;

  Theory theory = Theory::en;
  int height = 2;
  int series_degree = 6;
  int witt_precision = 5;

  int nvars() const { return theory == Theory::en ? height - 1 : height; }
  int coefficient_rank() const { return theory == Theory::en ? height : 1; }
  int variable_weight(int i) const { return theory == Theory::en ? 0 : vbar_weight(i); }

  int weight_of(const Exponents& e) const {
    int w = 0;
    for (int i = 0; i < static_cast<int>(e.size()); ++i) w += e[i] * variable_weight(i + 1);
    return w;
  }

  /// Basis monomials in graded-lex order. For Eₙ every monomial of total
  /// degree < D (the weight argument is ignored); for BP_ℝ the monomials of
  /// exactly the given weight.
  std::vector<Exponents> basis(int weight) const { return basis_with_degree_bound(weight, series_degree); }

  std::vector<Exponents> basis_with_degree_bound(int weight, int degree_bound) const {
    std::vector<Exponents> out;
    const int n = nvars();
    if (theory == Theory::en) {
      for (int d = 0; d < degree_bound; ++d) {
        Exponents e(n, 0);
        enumerate_degree(out, e, 0, d);
      }
      return out;
    }
    if (weight < 0) return out;
    Exponents e(n, 0);
    enumerate_weight(out, e, n - 1, weight);
    std::sort(out.begin(), out.end(), [](const Exponents& x, const Exponents& y) {
      int dx = std::accumulate(x.begin(), x.end(), 0);
      int dy = std::accumulate(y.begin(), y.end(), 0);
      return dx != dy ? dx < dy : x > y;
    });
    return out;
  }

  void validate() const {
    if (theory == Theory::en && (height < 1 || height > 8)) throw ArgumentError("height must be in 1..8");
    if (theory == Theory::bpr && (height < 1 || height > 16))
      throw ArgumentError("number of v-generators must be in 1..16");
    if (series_degree < 1) throw ArgumentError("series degree must be >= 1");
    if (witt_precision < 2 || witt_precision > 62) throw ArgumentError("Witt precision must be in 2..62");
  }

  friend bool operator==(const CoefficientContext&, const CoefficientContext&) = default;

 private:
  // graded-lex within a degree: larger exponent on earlier variables first.
  static void enumerate_degree(std::vector<Exponents>& out, Exponents& e, int i, int remaining) {
    const int n = static_cast<int>(e.size());
    if (i == n) {
      if (remaining == 0) out.push_back(e);
      return;
    }
    if (i == n - 1) {
      e[i] = remaining;
      out.push_back(e);
      e[i] = 0;
      return;
    }
    for (int x = remaining; x >= 0; --x) {
      e[i] = x;
      enumerate_degree(out, e, i + 1, remaining - x);
    }
    e[i] = 0;
  }

  void enumerate_weight(std::vector<Exponents>& out, Exponents& e, int i, int remaining) const {
    if (i < 0) {
      if (remaining == 0) out.push_back(e);
      return;
    }
    const int w = variable_weight(i + 1);
    for (int x = 0; x * w <= remaining; ++x) {
      e[i] = x;
      enumerate_weight(out, e, i - 1, remaining - x * w);
    }
    e[i] = 0;
  }
};

enum class DescriptorKind : std::uint8_t { zero, witt_level, tors_level, general };

/// The module at one lattice point on some page.
///
/// * `witt`: filtration 0. The elements z with (z mod 2) ∈ J, a submodule of
///   the free rank-one module. J = (1) is WittLevel(0); J = 0 is WittLevel(1),
///   i.e. 2·W[[ū]].
/// * `tors`: positive filtration. The subquotient Z/B of the 2-torsion
///   cyclic module 𝔽[[ū]]. Z = (1), B = (x_1..x_{k0-1}) is TorsLevel(k0).
///
/// The general forms occur at low filtration for n ≥ 2, where a source only
/// partly maps onto an already-quotiented target.
class ModuleDescriptor {
 public:
  enum class Shape : std::uint8_t { zero = 0, witt = 1, tors = 2 };

  ModuleDescriptor() = default;

  static ModuleDescriptor zero() { return {}; }

  static ModuleDescriptor witt(MonomialIdeal reduction_ideal) {
    ModuleDescriptor d;
    d.shape_ = Shape::witt;
    d.cycles_ = std::move(reduction_ideal);
    d.boundaries_ = MonomialIdeal::zero(d.cycles_.nvars());
    return d;
  }

  static ModuleDescriptor tors(MonomialIdeal cycles, MonomialIdeal boundaries) {
    if (cycles.nvars() != boundaries.nvars()) throw ArgumentError("cycle and boundary ideals disagree");
    ModuleDescriptor d;
    d.shape_ = Shape::tors;
    d.cycles_ = std::move(cycles);
    d.boundaries_ = std::move(boundaries);
    if (d.cycles_.subset_of(d.boundaries_)) return zero();
    return d;
  }

  static ModuleDescriptor witt_level(int nvars, int e) {
    if (e == 0) return witt(MonomialIdeal::unit(nvars));
    if (e == 1) return witt(MonomialIdeal::zero(nvars));
    throw ArgumentError("WittLevel index must be 0 or 1");
  }

  static ModuleDescriptor tors_level(int nvars, int k0) {
    if (k0 < 1 || k0 > nvars + 1) throw ArgumentError("TorsLevel index out of range");
    return tors(MonomialIdeal::unit(nvars), MonomialIdeal::variables(nvars, 1, k0 - 1));
  }

  Shape shape() const { return shape_; }
  bool is_zero() const { return shape_ == Shape::zero; }
  /// J for witt, Z for tors.
  const MonomialIdeal& cycles() const { return cycles_; }
  const MonomialIdeal& boundaries() const { return boundaries_; }

  std::optional<int> witt_index() const {
    if (shape_ != Shape::witt) return std::nullopt;
    if (cycles_.is_unit()) return 0;
    if (cycles_.is_zero()) return 1;
    return std::nullopt;
  }

  std::optional<int> tors_level() const {
    if (shape_ != Shape::tors || !cycles_.is_unit()) return std::nullopt;
    const int n = boundaries_.nvars();
    for (int k0 = 1; k0 <= n + 1; ++k0)
      if (boundaries_ == MonomialIdeal::variables(n, 1, k0 - 1)) return k0;
    return std::nullopt;
  }

  DescriptorKind kind() const {
    if (shape_ == Shape::zero) return DescriptorKind::zero;
    if (witt_index()) return DescriptorKind::witt_level;
    if (tors_level()) return DescriptorKind::tors_level;
    return DescriptorKind::general;
  }

  /// Is x^α · (point generator) a nonzero element of this module?
  bool element_nonzero(const std::vector<int>& alpha) const {
    switch (shape_) {
      case Shape::zero: return false;
      case Shape::witt: return true;
      case Shape::tors: return cycles_.contains(alpha) && !boundaries_.contains(alpha);
    }
    return false;
  }

  /// Is x^α · (point generator) in the module at all (a cycle)?
  bool element_is_cycle(const std::vector<int>& alpha) const {
    switch (shape_) {
      case Shape::zero: return false;
      case Shape::witt: return true;
      case Shape::tors: return cycles_.contains(alpha);
    }
    return false;
  }

  /// Short label used in charts and reports: "W", "2W", "W[J]", "T1", "T2",
  /// or "Z/B" for the general torsion shape.
  std::string annotation(std::string_view prefix = "u") const {
    switch (shape_) {
      case Shape::zero: return "0";
      case Shape::witt:
        if (auto e = witt_index()) return *e == 0 ? "W" : "2W";
        return "W[" + cycles_.str(prefix) + "]";
      case Shape::tors:
        if (auto k = tors_level()) return "T" + std::to_string(*k);
        return cycles_.str(prefix) + "/" + boundaries_.str(prefix);
    }
    return "?";
  }

  std::string_view kind_name() const {
    switch (kind()) {
      case DescriptorKind::zero: return "zero";
      case DescriptorKind::witt_level: return "witt";
      case DescriptorKind::tors_level: return "tors";
      case DescriptorKind::general: return shape_ == Shape::witt ? "witt-general" : "tors-general";
    }
    return "?";
  }

  friend bool operator==(const ModuleDescriptor&, const ModuleDescriptor&) = default;

 private:
  Shape shape_ = Shape::zero;
  MonomialIdeal cycles_;
  MonomialIdeal boundaries_;
};

/// A descriptor spelled out on an explicit basis: one cyclic factor of order
/// 2^{log2} per (basis monomial, coefficient coordinate).
struct ExpandedPoint {
  std::vector<std::vector<int>> basis;
  std::vector<int> factor_log2;  // per basis monomial
  int coefficient_rank = 1;

  long long log2_order() const {
    long long total = 0;
    for (int f : factor_log2) total += f;
    return total * coefficient_rank;
  }
};

inline ExpandedPoint expand(const ModuleDescriptor& d, const CoefficientContext& ctx, int weight = 0) {
  ExpandedPoint p;
  p.coefficient_rank = ctx.coefficient_rank();
  if (d.is_zero()) return p;
  for (auto& alpha : ctx.basis(weight)) {
    int bits = 0;
    if (d.shape() == ModuleDescriptor::Shape::witt) {
      bits = d.cycles().contains(alpha) ? ctx.witt_precision : ctx.witt_precision - 1;
    } else if (d.element_nonzero(alpha)) {
      bits = 1;
    }
    if (bits == 0) continue;
    p.basis.push_back(alpha);
    p.factor_log2.push_back(bits);
  }
  return p;
}

}  // namespace rosq
