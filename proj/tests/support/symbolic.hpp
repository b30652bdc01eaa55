#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rosq/engine.hpp"

namespace rosq::testing {

inline Monomial product(const Monomial& x, const Monomial& y) {
  Monomial m = x;
  for (int i = 1; i <= static_cast<int>(y.vars.size()); ++i) m.set_var(i, m.var(i) + y.var(i));
  m.ubar += y.ubar;
  m.u2sigma += y.u2sigma;
  m.asigma += y.asigma;
  m.trim();
  return m;
}

/// Monomial -> coefficient mod 2, keyed by the printed form.
using Terms = std::map<std::string, std::pair<Monomial, int>>;

// d on page r_k of a product of atoms, expanded term by term. Atoms are
// u2sigma^{±2^{k-1}} and permanent cycles; d(x⁻¹) = x⁻² d(x) mod 2.
inline Terms expand_leibniz(const std::vector<Monomial>& atoms, const Monomial& target, int k) {
  Terms out;
  const int step = 1 << (k - 1);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Monomial d;
    if (atoms[i].u2sigma == step) {
      d = target;
    } else if (atoms[i].u2sigma == -step) {
      d = product(Monomial{target.theory, {}, 0, -2 * step, 0}, target);
    } else {
      continue;
    }
    Monomial term = d;
    for (std::size_t j = 0; j < atoms.size(); ++j)
      if (j != i) term = product(term, atoms[j]);
    auto& slot = out[term.str()];
    slot.first = term;
    slot.second ^= 1;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.second ? std::next(it) : out.erase(it);
  return out;
}

/// A product of at most three generator powers on page r_k, with the atoms
/// it factors into.
struct RandomProduct {
  int k = 1;
  Monomial monomial;
  std::vector<Monomial> atoms;
};

inline RandomProduct random_product(std::mt19937& rng, int n) {
  RandomProduct p;
  p.k = 1 + static_cast<int>(rng() % n);
  const int step = 1 << (p.k - 1);
  const int nfactors = 1 + static_cast<int>(rng() % 3);
  p.monomial = Monomial{Theory::en, {}, 0, 0, 0};
  for (int f = 0; f < nfactors; ++f) {
    Monomial factor{Theory::en, {}, 0, 0, 0};
    switch (rng() % 4) {
      case 0: {
        const int c = static_cast<int>(rng() % 5) - 2;
        for (int i = 0; i < std::abs(c); ++i) p.atoms.push_back(Monomial{Theory::en, {}, 0, c > 0 ? step : -step, 0});
        factor.u2sigma = c * step;
        break;
      }
      case 1:
        factor.ubar = static_cast<int>(rng() % 3);
        p.atoms.push_back(factor);
        break;
      case 2:
        factor.asigma = static_cast<int>(rng() % 3);
        p.atoms.push_back(factor);
        break;
      default:
        if (n > 1) factor.set_var(1 + static_cast<int>(rng() % (n - 1)), 1 + static_cast<int>(rng() % 2));
        p.atoms.push_back(factor);
        break;
    }
    p.monomial = product(p.monomial, factor);
  }
  return p;
}

/// Empty when the engine's arrow out of the product agrees with the
/// symbolic expansion, otherwise a description of the disagreement.
inline std::string leibniz_disagreement(const PageLattice& e2, const RandomProduct& p) {
  const int n = e2.height();
  const TriDegree deg = degree_of_monomial(p.monomial, n);
  const auto rule = generator_differential(Theory::en, n, p.k);
  const Terms terms = expand_leibniz(p.atoms, rule.target, p.k);
  const Differential d = leibniz_arrow(e2, deg, p.k);
  const std::string where = p.monomial.str() + " on page " + std::to_string(rule.page);
  if (terms.size() > 1) return where + ": expansion has several terms";
  if (terms.empty()) return d.map == MapKind::zero ? "" : where + ": engine arrow, expansion vanishes";
  const Monomial& image = terms.begin()->second.first;
  if (d.map == MapKind::zero) return where + ": no engine arrow, expansion gives " + image.str();
  if (d.target != degree_of_monomial(image, n)) return where + ": target degree differs";
  if (p.k < n) {
    if (d.map != MapKind::multiply || image.var(p.k) != p.monomial.var(p.k) + 1) return where + ": wrong multiplier";
  } else if (d.map != MapKind::unit || image.vars != p.monomial.vars) {
    return where + ": wrong unit map";
  }
  return "";
}

}  // namespace rosq::testing
