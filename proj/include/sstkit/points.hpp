#pragma once

// Vanishing ideal of a finite point set (Buchberger-Moeller).

#include <map>
#include <set>
#include <vector>

#include "sstkit/integer.hpp"
#include "sstkit/poly.hpp"

namespace sstkit {

struct GrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_grevlex(a, b) < 0; }
};

/// Reduced degrevlex Groebner basis of { p : p(x) = 0 for every x in points },
/// as primitive integer polynomials. `vars[k]` names coordinate k.
inline std::vector<MultiPoly> vanishing_ideal(const std::vector<Var>& vars,
                                              const std::vector<std::vector<Rational>>& points) {
  const std::size_t m = points.size();
  std::vector<MultiPoly> G;
  if (m == 0) {
    G.push_back(MultiPoly(1));
    return G;
  }
  std::map<Var, std::size_t> coord;
  for (std::size_t k = 0; k < vars.size(); ++k) coord[vars[k]] = k;

  using Vec = std::vector<Rational>;
  struct Row {
    Vec values;
    std::size_t pivot;
    std::map<std::size_t, Rational> poly;  // over indices into `normal`
  };
  std::vector<Monomial> normal;
  std::vector<Row> rows;
  std::map<Monomial, Vec, GrevlexLess> todo;
  todo.emplace(Monomial(), Vec(m, Rational(1)));

  auto blocked = [&](const Monomial& t) {
    for (const auto& g : G)
      if (g.leading_monomial().divides(t)) return true;
    return false;
  };

  while (!todo.empty()) {
    auto node = todo.extract(todo.begin());
    const Monomial& t = node.key();
    if (blocked(t)) continue;
    const Vec tv = node.mapped();  // evaluation of t itself
    Vec v = tv;
    std::map<std::size_t, Rational> poly;  // combination of normal monomials, t excluded
    for (const auto& r : rows) {
      if (v[r.pivot] == 0) continue;
      Rational c = v[r.pivot] / r.values[r.pivot];
      for (std::size_t j = 0; j < m; ++j)
        if (r.values[j] != 0) v[j] -= c * r.values[j];
      for (const auto& [k, a] : r.poly) {
        poly[k] -= c * a;
        if (poly[k] == 0) poly.erase(k);
      }
    }
    std::size_t pivot = m;
    for (std::size_t j = 0; j < m; ++j)
      if (v[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot == m) {
      // t + sum(poly) vanishes on every point.
      Integer den = 1;
      for (const auto& [k, a] : poly) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
      std::vector<Term> terms{{t, den}};
      for (const auto& [k, a] : poly) terms.push_back({normal[k], Integer(a * den)});
      G.push_back(MultiPoly::from_terms(std::move(terms)).make_primitive());
      continue;
    }
    std::size_t idx = normal.size();
    normal.push_back(t);
    poly[idx] = 1;
    rows.push_back({v, pivot, std::move(poly)});
    for (auto x : vars) {
      Monomial next = t * Monomial::variable(x);
      if (todo.count(next) || blocked(next)) continue;
      Vec nv(m);
      for (std::size_t j = 0; j < m; ++j) nv[j] = tv[j] * points[j][coord.at(x)];
      todo.emplace(std::move(next), std::move(nv));
    }
  }
  return G;
}

} // namespace sstkit
