#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rosq/error.hpp"

namespace rosq {

/// A stem a + bσ in RO(C₂): `a` copies of the trivial representation and
/// `b` copies of the sign representation.
struct RODegree {
  int a = 0;
  int b = 0;

  constexpr int total() const { return a + b; }

  friend constexpr RODegree operator+(RODegree x, RODegree y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr RODegree operator-(RODegree x, RODegree y) { return {x.a - y.a, x.b - y.b}; }
  friend constexpr RODegree operator*(int k, RODegree x) { return {k * x.a, k * x.b}; }
  friend constexpr bool operator==(RODegree, RODegree) = default;
  friend constexpr auto operator<=>(RODegree, RODegree) = default;
};

inline constexpr RODegree kRho{1, 1};
inline constexpr RODegree kSigma{0, 1};
inline constexpr RODegree kTrivial{1, 0};

/// Stem plus cohomological filtration.
struct TriDegree {
  RODegree stem;
  int s = 0;

  friend constexpr TriDegree operator+(TriDegree x, TriDegree y) { return {x.stem + y.stem, x.s + y.s}; }
  friend constexpr TriDegree operator*(int k, TriDegree x) { return {k * x.stem, k * x.s}; }
  friend constexpr bool operator==(TriDegree, TriDegree) = default;
  friend constexpr auto operator<=>(TriDegree, TriDegree) = default;
};

inline std::string to_string(TriDegree t) {
  return "(" + std::to_string(t.stem.a) + "," + std::to_string(t.stem.b) + "," + std::to_string(t.s) + ")";
}

/// Target of d_r from `source`: one trivial stem down, r filtrations up.
constexpr TriDegree differential_target(TriDegree source, int r) {
  return {source.stem - kTrivial, source.s + r};
}

enum class Theory : std::uint8_t { en = 0, bpr = 1 };

inline std::string_view theory_name(Theory t) { return t == Theory::en ? "en" : "bpr"; }

inline Theory parse_theory(std::string_view s) {
  if (s == "en") return Theory::en;
  if (s == "bpr") return Theory::bpr;
  throw ArgumentError("unknown theory '" + std::string(s) + "' (expected en or bpr)");
}

/// Length of the k-th family of differentials, 2^{k+1} - 1.
constexpr int family_page(int k) { return (1 << (k + 1)) - 1; }

/// v̄_i sits in stem (2^i - 1)ρ.
constexpr int vbar_weight(int i) { return (1 << i) - 1; }

constexpr int two_adic_valuation(long long j) {
  if (j == 0) return 64;
  int v = 0;
  while ((j & 1) == 0) {
    j >>= 1;
    ++v;
  }
  return v;
}

enum class GeneratorKind : std::uint8_t { ubar_i, ubar, u2sigma, asigma, vbar_i };

struct Generator {
  GeneratorKind kind = GeneratorKind::ubar;
  int index = 0;  // only for ū_i and v̄_i

  /// Accepts "u1", "ubar", "u2sigma", "asigma", "v3".
  static Generator parse(std::string_view name) {
    auto indexed = [&](std::string_view prefix, GeneratorKind kind) -> std::optional<Generator> {
      if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return std::nullopt;
      auto digits = name.substr(prefix.size());
      if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
      return Generator{kind, std::stoi(std::string(digits))};
    };
    if (name == "ubar") return {GeneratorKind::ubar, 0};
    if (name == "u2sigma") return {GeneratorKind::u2sigma, 0};
    if (name == "asigma") return {GeneratorKind::asigma, 0};
    if (auto g = indexed("u", GeneratorKind::ubar_i)) return *g;
    if (auto g = indexed("v", GeneratorKind::vbar_i)) return *g;
    throw ArgumentError("unknown generator '" + std::string(name) + "'");
  }

  std::string name() const {
    switch (kind) {
      case GeneratorKind::ubar_i: return "u" + std::to_string(index);
      case GeneratorKind::ubar: return "ubar";
      case GeneratorKind::u2sigma: return "u2sigma";
      case GeneratorKind::asigma: return "asigma";
      case GeneratorKind::vbar_i: return "v" + std::to_string(index);
    }
    return "?";
  }
};

inline TriDegree degree_of_generator(Generator g, int height) {
  switch (g.kind) {
    case GeneratorKind::ubar_i:
      if (g.index < 1 || g.index >= height)
        throw ArgumentError("generator " + g.name() + " out of range at height " + std::to_string(height));
      return {{0, 0}, 0};
    case GeneratorKind::ubar: return {kRho, 0};
    case GeneratorKind::u2sigma: return {{2, -2}, 0};
    case GeneratorKind::asigma: return {{0, -1}, 1};
    case GeneratorKind::vbar_i:
      if (g.index < 1 || g.index > 30) throw ArgumentError("generator " + g.name() + " out of range");
      return {vbar_weight(g.index) * kRho, 0};
  }
  throw ArgumentError("unknown generator kind");
}

/// Exponent vector over the generators of one theory's E₂ page.
///
/// For Eₙ, `vars[i-1]` is the exponent of ū_i and `ubar` that of ū. For
/// BP_ℝ, `vars[i-1]` is the exponent of v̄_i and `ubar` must stay 0.
struct Monomial {
  Theory theory = Theory::en;
  std::vector<int> vars;
  int ubar = 0;
  int u2sigma = 0;
  int asigma = 0;

  int var(int i) const { return i >= 1 && i <= static_cast<int>(vars.size()) ? vars[i - 1] : 0; }

  void set_var(int i, int e) {
    if (static_cast<int>(vars.size()) < i) vars.resize(i, 0);
    vars[i - 1] = e;
    trim();
  }

  void trim() {
    while (!vars.empty() && vars.back() == 0) vars.pop_back();
  }

  Monomial trimmed() const {
    Monomial m = *this;
    m.trim();
    return m;
  }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    if (x.theory != y.theory) throw ArgumentError("monomials from different theories");
    Monomial m = x;
    if (m.vars.size() < y.vars.size()) m.vars.resize(y.vars.size(), 0);
    for (std::size_t i = 0; i < y.vars.size(); ++i) m.vars[i] += y.vars[i];
    m.ubar += y.ubar;
    m.u2sigma += y.u2sigma;
    m.asigma += y.asigma;
    m.trim();
    return m;
  }

  friend bool operator==(const Monomial& x, const Monomial& y) {
    auto a = x.trimmed();
    auto b = y.trimmed();
    return a.theory == b.theory && a.vars == b.vars && a.ubar == b.ubar && a.u2sigma == b.u2sigma &&
           a.asigma == b.asigma;
  }

  std::string str() const {
    std::string out;
    auto put = [&](const std::string& name, int e) {
      if (e == 0) return;
      if (!out.empty()) out += ' ';
      out += name;
      if (e != 1) out += "^" + std::to_string(e);
    };
    const char* prefix = theory == Theory::en ? "u" : "v";
    for (std::size_t i = 0; i < vars.size(); ++i) put(prefix + std::to_string(i + 1), vars[i]);
    put("ubar", ubar);
    put("u2sigma", u2sigma);
    put("asigma", asigma);
    return out.empty() ? "1" : out;
  }
};

inline Monomial power(Theory theory, Generator g, int e) {
  Monomial m{theory, {}, 0, 0, 0};
  switch (g.kind) {
    case GeneratorKind::ubar_i:
    case GeneratorKind::vbar_i: m.set_var(g.index, e); break;
    case GeneratorKind::ubar: m.ubar = e; break;
    case GeneratorKind::u2sigma: m.u2sigma = e; break;
    case GeneratorKind::asigma: m.asigma = e; break;
  }
  return m;
}

inline TriDegree degree_of_monomial(const Monomial& m, int height) {
  TriDegree d{};
  if (m.asigma < 0) throw ArgumentError("negative exponent on asigma");
  for (int i = 1; i <= static_cast<int>(m.vars.size()); ++i) {
    int e = m.var(i);
    if (e == 0) continue;
    if (e < 0) throw ArgumentError("negative exponent on a polynomial generator");
    if (m.theory == Theory::en) {
      d = d + e * degree_of_generator({GeneratorKind::ubar_i, i}, height);
    } else {
      d = d + e * degree_of_generator({GeneratorKind::vbar_i, i}, height);
    }
  }
  if (m.theory == Theory::bpr && m.ubar != 0) throw ArgumentError("ubar does not exist in BP_R");
  d = d + m.ubar * degree_of_generator({GeneratorKind::ubar, 0}, height);
  d = d + m.u2sigma * degree_of_generator({GeneratorKind::u2sigma, 0}, height);
  d = d + m.asigma * degree_of_generator({GeneratorKind::asigma, 0}, height);
  return d;
}

/// The cyclic generator sitting at a lattice point, plus the ρ-weight of the
/// polynomial part (BP_ℝ only; always 0 for Eₙ).
struct PointSolution {
  Monomial generator;
  int weight = 0;
};

/// Solves the exponent equations of a tri-degree. Returns nullopt when no
/// E₂ class can sit there.
///
/// With ū^x u_{2σ}^j a_σ^s (or weight x for BP_ℝ):
///   a = x + 2j,  b = x - 2j - s.
inline std::optional<PointSolution> solve_point(Theory theory, TriDegree t) {
  if (t.s < 0) return std::nullopt;
  const int d = t.stem.a - t.stem.b - t.s;
  if (d % 4 != 0) return std::nullopt;
  const int j = d / 4;
  const int x = (t.stem.a + t.stem.b + t.s) / 2;
  if (theory == Theory::en) return PointSolution{Monomial{Theory::en, {}, x, j, t.s}, 0};
  if (x < 0) return std::nullopt;
  return PointSolution{Monomial{Theory::bpr, {}, 0, j, t.s}, x};
}

}  // namespace rosq
