#pragma once

// Exact coefficient rings: 𝔽_{2ⁿ}, W(𝔽_{2ⁿ}) mod 2^M, and power series in
// ū₁..ū_{n-1} truncated by total degree.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rosq/error.hpp"

namespace rosq {

inline constexpr int kMaxFieldDegree = 8;

/// Defining polynomials of 𝔽_{2ⁿ}, bit i = coefficient of xⁱ. These are the
/// Conway polynomials for n ≤ 8; fixed so every artifact is reproducible.
inline constexpr std::array<std::uint32_t, kMaxFieldDegree + 1> kDefiningPolynomials = {
    0,
    0b11,         // x + 1
    0b111,        // x^2 + x + 1
    0b1011,       // x^3 + x + 1
    0b10011,      // x^4 + x + 1
    0b100101,     // x^5 + x^2 + 1
    0b1011011,    // x^6 + x^4 + x^3 + x + 1
    0b10000011,   // x^7 + x + 1
    0b100011101,  // x^8 + x^4 + x^3 + x^2 + 1
};

inline void check_field_degree(int n) {
  if (n < 1 || n > kMaxFieldDegree) throw ArgumentError("field degree out of range: " + std::to_string(n));
}

/// Element of 𝔽_{2ⁿ} in the polynomial basis 1, x, ..., x^{n-1}.
class GfElement {
 public:
  GfElement() = default;
  GfElement(int n, std::uint32_t bits) : n_(n), bits_(bits & mask(n)) { check_field_degree(n); }

  static GfElement zero(int n) { return {n, 0}; }
  static GfElement one(int n) { return {n, 1}; }
  static GfElement basis(int n, int i) { return {n, 1u << i}; }

  int degree() const { return n_; }
  std::uint32_t bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }
  int coordinate(int i) const { return static_cast<int>((bits_ >> i) & 1u); }

  friend GfElement operator+(GfElement x, GfElement y) {
    check_same(x, y);
    return {x.n_, x.bits_ ^ y.bits_};
  }
  friend GfElement operator-(GfElement x, GfElement y) { return x + y; }

  friend GfElement operator*(GfElement x, GfElement y) {
    check_same(x, y);
    const int n = x.n_;
    const std::uint32_t poly = kDefiningPolynomials[n];
    std::uint32_t acc = 0;
    std::uint32_t a = x.bits_;
    for (std::uint32_t b = y.bits_; b != 0; b >>= 1) {
      if (b & 1u) acc ^= a;
      a <<= 1;
      if (a & (1u << n)) a ^= poly;
    }
    return {n, acc};
  }

  GfElement pow(unsigned long long e) const {
    GfElement result = one(n_);
    GfElement base = *this;
    while (e != 0) {
      if (e & 1u) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  GfElement frobenius() const { return *this * *this; }

  GfElement inverse() const {
    if (is_zero()) throw ArgumentError("zero has no inverse");
    return pow((1ull << n_) - 2);
  }

  friend bool operator==(GfElement, GfElement) = default;

 private:
  static std::uint32_t mask(int n) { return (1u << n) - 1u; }
  static void check_same(GfElement x, GfElement y) {
    if (x.n_ != y.n_) throw ArgumentError("mismatched Galois fields");
  }

  int n_ = 1;
  std::uint32_t bits_ = 0;
};

/// Element of W(𝔽_{2ⁿ}) / 2^M = (ℤ/2^M)[x] / (f̃), where f̃ is the 0/1 lift of
/// the defining polynomial of 𝔽_{2ⁿ}.
class WittElement {
 public:
  WittElement() = default;
  WittElement(int n, int precision) : n_(n), m_(precision) {
    check_field_degree(n);
    if (precision < 1 || precision > 62) throw ArgumentError("Witt precision out of range");
  }

  static WittElement zero(int n, int precision) { return {n, precision}; }
  static WittElement integer(int n, int precision, long long k) {
    WittElement w(n, precision);
    w.c_[0] = static_cast<std::uint64_t>(k) & w.modulus_mask();
    return w;
  }
  static WittElement one(int n, int precision) { return integer(n, precision, 1); }
  /// The basis vector xⁱ.
  static WittElement basis(int n, int precision, int i) {
    WittElement w(n, precision);
    w.c_[i] = 1;
    return w;
  }
  /// Coordinatewise 0/1 lift of a field element.
  static WittElement lift(GfElement g, int precision) {
    WittElement w(g.degree(), precision);
    for (int i = 0; i < g.degree(); ++i) w.c_[i] = static_cast<std::uint64_t>(g.coordinate(i));
    return w;
  }

  int degree() const { return n_; }
  int precision() const { return m_; }
  std::uint64_t coordinate(int i) const { return c_[i]; }
  void set_coordinate(int i, std::uint64_t v) { c_[i] = v & modulus_mask(); }
  bool is_zero() const {
    for (int i = 0; i < n_; ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  /// Largest e ≤ M with x ∈ 2^e · W; M for zero.
  int valuation() const {
    int v = m_;
    for (int i = 0; i < n_; ++i)
      if (c_[i] != 0) v = std::min(v, std::countr_zero(c_[i]));
    return v;
  }

  friend WittElement operator+(const WittElement& x, const WittElement& y) {
    check_same(x, y);
    WittElement r(x.n_, x.m_);
    for (int i = 0; i < x.n_; ++i) r.c_[i] = (x.c_[i] + y.c_[i]) & x.modulus_mask();
    return r;
  }
  friend WittElement operator-(const WittElement& x, const WittElement& y) {
    check_same(x, y);
    WittElement r(x.n_, x.m_);
    for (int i = 0; i < x.n_; ++i) r.c_[i] = (x.c_[i] - y.c_[i]) & x.modulus_mask();
    return r;
  }
  friend WittElement operator*(long long k, const WittElement& x) {
    WittElement r(x.n_, x.m_);
    for (int i = 0; i < x.n_; ++i) r.c_[i] = (static_cast<std::uint64_t>(k) * x.c_[i]) & x.modulus_mask();
    return r;
  }
  friend WittElement operator*(const WittElement& x, const WittElement& y) {
    check_same(x, y);
    const int n = x.n_;
    const std::uint64_t mask = x.modulus_mask();
    std::array<std::uint64_t, 2 * kMaxFieldDegree> prod{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + x.c_[i] * y.c_[j]) & mask;
    // x^n = -(f̃ - x^n)
    const std::uint32_t poly = kDefiningPolynomials[n];
    for (int d = 2 * n - 2; d >= n; --d) {
      const std::uint64_t top = prod[d];
      if (top == 0) continue;
      prod[d] = 0;
      for (int i = 0; i < n; ++i)
        if ((poly >> i) & 1u) prod[d - n + i] = (prod[d - n + i] - top) & mask;
    }
    WittElement r(n, x.m_);
    for (int i = 0; i < n; ++i) r.c_[i] = prod[i];
    return r;
  }

  friend bool operator==(const WittElement& x, const WittElement& y) {
    if (x.n_ != y.n_ || x.m_ != y.m_) return false;
    for (int i = 0; i < x.n_; ++i)
      if (x.c_[i] != y.c_[i]) return false;
    return true;
  }

 private:
  std::uint64_t modulus_mask() const { return (std::uint64_t{1} << m_) - 1; }
  static void check_same(const WittElement& x, const WittElement& y) {
    if (x.n_ != y.n_ || x.m_ != y.m_) throw ArgumentError("mismatched Witt rings");
  }

  int n_ = 1;
  int m_ = 1;
  std::array<std::uint64_t, kMaxFieldDegree> c_{};
};

/// Reduction W(𝔽_{2ⁿ}) → 𝔽_{2ⁿ}; kernel (2).
inline GfElement witt_reduce(const WittElement& x) {
  std::uint32_t bits = 0;
  for (int i = 0; i < x.degree(); ++i) bits |= static_cast<std::uint32_t>(x.coordinate(i) & 1u) << i;
  return {x.degree(), bits};
}

/// Power series in `nvars` variables over a coefficient ring `R`, truncated
/// to total degree < D. `R` needs +, *, == and is_zero().
template <class R>
class TruncatedSeries {
 public:
  using Exponents = std::vector<int>;

  TruncatedSeries(int nvars, int truncation, R zero) : nvars_(nvars), truncation_(truncation), zero_(zero) {
    if (nvars < 0 || truncation < 1) throw ArgumentError("invalid series shape");
  }

  static TruncatedSeries monomial(int nvars, int truncation, Exponents e, R coefficient, R zero) {
    TruncatedSeries s(nvars, truncation, zero);
    s.add_term(std::move(e), coefficient);
    return s;
  }

  int nvars() const { return nvars_; }
  int truncation() const { return truncation_; }
  const std::map<Exponents, R>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  R coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? zero_ : it->second;
  }

  void add_term(Exponents e, const R& c) {
    if (static_cast<int>(e.size()) != nvars_) throw ArgumentError("exponent vector has wrong length");
    int deg = 0;
    for (int x : e) {
      if (x < 0) throw ArgumentError("negative exponent in power series");
      deg += x;
    }
    if (deg >= truncation_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
    f.check_compatible(g);
    TruncatedSeries r = f;
    for (const auto& [e, c] : g.terms_) r.add_term(e, c);
    return r;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) {
    f.check_compatible(g);
    TruncatedSeries r(f.nvars_, f.truncation_, f.zero_);
    for (const auto& [e1, c1] : f.terms_) {
      for (const auto& [e2, c2] : g.terms_) {
        Exponents e(e1.size());
        int deg = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
          e[i] = e1[i] + e2[i];
          deg += e[i];
        }
        if (deg < f.truncation_) r.add_term(std::move(e), c1 * c2);
      }
    }
    return r;
  }

  friend bool operator==(const TruncatedSeries& f, const TruncatedSeries& g) {
    return f.nvars_ == g.nvars_ && f.truncation_ == g.truncation_ && f.terms_ == g.terms_;
  }

 private:
  void check_compatible(const TruncatedSeries& g) const {
    if (nvars_ != g.nvars_ || truncation_ != g.truncation_ || !(zero_ == g.zero_))
      throw ArgumentError("series over different bases or truncations");
  }

  int nvars_;
  int truncation_;
  R zero_;
  std::map<Exponents, R> terms_;
};

/// series_mul, named for symmetry with the other coefficient operations.
template <class R>
TruncatedSeries<R> series_mul(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
  return f * g;
}

}  // namespace rosq
