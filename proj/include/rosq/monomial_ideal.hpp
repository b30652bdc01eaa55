#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "rosq/error.hpp"

namespace rosq {

/// Monomial ideal in `nvars` commuting variables x_1..x_N, stored by its
/// minimal generators in sorted order (so equal ideals compare equal).
///
/// Every kernel and image arising from multiplication by a single variable
/// between cyclic modules over F[x_1..x_N] is a monomial ideal, which is why
/// this type carries the page-turning bookkeeping.
class MonomialIdeal {
 public:
  using Exponents = std::vector<int>;

  MonomialIdeal() = default;

  static MonomialIdeal zero(int nvars) {
    MonomialIdeal I;
    I.nvars_ = nvars;
    return I;
  }

  static MonomialIdeal unit(int nvars) { return generated_by(nvars, {Exponents(nvars, 0)}); }

  /// (x_first, ..., x_last), 1-based; empty range gives the zero ideal.
  static MonomialIdeal variables(int nvars, int first, int last) {
    std::vector<Exponents> gens;
    for (int i = std::max(first, 1); i <= std::min(last, nvars); ++i) {
      Exponents e(nvars, 0);
      e[i - 1] = 1;
      gens.push_back(std::move(e));
    }
    return generated_by(nvars, std::move(gens));
  }

  static MonomialIdeal generated_by(int nvars, std::vector<Exponents> gens) {
    MonomialIdeal I;
    I.nvars_ = nvars;
    for (auto& g : gens) {
      if (static_cast<int>(g.size()) != nvars) throw ArgumentError("generator has wrong number of variables");
      for (int e : g)
        if (e < 0) throw ArgumentError("negative exponent in ideal generator");
    }
    I.gens_ = std::move(gens);
    I.minimize();
    return I;
  }

  int nvars() const { return nvars_; }
  const std::vector<Exponents>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const {
    return gens_.size() == 1 && std::all_of(gens_[0].begin(), gens_[0].end(), [](int e) { return e == 0; });
  }

  bool contains(const Exponents& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Exponents& g) { return divides(g, m); });
  }

  bool subset_of(const MonomialIdeal& J) const {
    return std::all_of(gens_.begin(), gens_.end(), [&](const Exponents& g) { return J.contains(g); });
  }

  friend MonomialIdeal operator+(const MonomialIdeal& I, const MonomialIdeal& J) {
    check_same(I, J);
    auto gens = I.gens_;
    gens.insert(gens.end(), J.gens_.begin(), J.gens_.end());
    return generated_by(I.nvars_, std::move(gens));
  }

  MonomialIdeal intersect(const MonomialIdeal& J) const {
    check_same(*this, J);
    std::vector<Exponents> gens;
    for (const auto& g : gens_) {
      for (const auto& h : J.gens_) {
        Exponents l(nvars_);
        for (int i = 0; i < nvars_; ++i) l[i] = std::max(g[i], h[i]);
        gens.push_back(std::move(l));
      }
    }
    return generated_by(nvars_, std::move(gens));
  }

  /// (I : x_k). `k == 0` stands for the unit multiplier and returns I.
  MonomialIdeal colon(int k) const {
    if (k == 0) return *this;
    check_var(k);
    auto gens = gens_;
    for (auto& g : gens) g[k - 1] = std::max(0, g[k - 1] - 1);
    return generated_by(nvars_, std::move(gens));
  }

  /// x_k · I. `k == 0` stands for the unit multiplier.
  MonomialIdeal times(int k) const {
    if (k == 0) return *this;
    check_var(k);
    auto gens = gens_;
    for (auto& g : gens) ++g[k - 1];
    return generated_by(nvars_, std::move(gens));
  }

  std::string str(std::string_view prefix = "u") const {
    if (is_zero()) return "0";
    if (is_unit()) return "1";
    std::string out;
    for (const auto& g : gens_) {
      if (!out.empty()) out += ",";
      std::string mono;
      for (int i = 0; i < nvars_; ++i) {
        if (g[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += std::string(prefix) + std::to_string(i + 1);
        if (g[i] > 1) mono += "^" + std::to_string(g[i]);
      }
      out += mono;
    }
    return "(" + out + ")";
  }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  static bool divides(const Exponents& g, const Exponents& m) {
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] > (i < m.size() ? m[i] : 0)) return false;
    return true;
  }

  static void check_same(const MonomialIdeal& I, const MonomialIdeal& J) {
    if (I.nvars_ != J.nvars_) throw ArgumentError("ideals in different rings");
  }

  void check_var(int k) const {
    if (k < 1 || k > nvars_) throw ArgumentError("variable index out of range");
  }

  void minimize() {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    std::vector<Exponents> kept;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < gens_.size() && !redundant; ++j)
        redundant = j != i && divides(gens_[j], gens_[i]);
      if (!redundant) kept.push_back(gens_[i]);
    }
    gens_ = std::move(kept);
  }

  int nvars_ = 0;
  std::vector<Exponents> gens_;
};

}  // namespace rosq
