#pragma once

// Buchberger's algorithm over Q, with polynomials stored as primitive integer
// representatives. Pair handling follows Gebauer and Moeller; pairs are
// selected by sugar degree.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sstkit/poly.hpp"

namespace sstkit {

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GroebnerBudget {
  std::size_t max_reductions = std::numeric_limits<std::size_t>::max();
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::size_t reductions = 0;

  void charge(std::size_t n = 1) {
    reductions += n;
    if (reductions > max_reductions) throw BudgetExceeded("Groebner reduction budget exhausted");
    if (deadline && std::chrono::steady_clock::now() > *deadline)
      throw BudgetExceeded("Groebner time budget exhausted");
  }
};

/// S(f, g) = (L/lt(f)) f - (L/lt(g)) g with L the lcm of the leading terms,
/// scaled to stay integral and then made primitive.
inline MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  Monomial L = lcm(f.leading_monomial(), g.leading_monomial());
  Integer k = gcd(f.leading_coefficient(), g.leading_coefficient());
  Integer cf = g.leading_coefficient() / k, cg = f.leading_coefficient() / k;
  MultiPoly s = f.mul_term(quotient(L, f.leading_monomial()), cf) - g.mul_term(quotient(L, g.leading_monomial()), cg);
  return s.make_primitive();
}

/// Full reduction of p modulo `basis`. The result is a primitive
/// representative (a nonzero rational multiple of the true remainder).
inline MultiPoly normal_form(MultiPoly p, const std::vector<const MultiPoly*>& basis,
                             GroebnerBudget* budget = nullptr) {
  std::vector<Term> rem;
  std::size_t steps = 0;
  while (!p.is_zero()) {
    const Term& lead = p.leading();
    const MultiPoly* red = nullptr;
    for (const auto* g : basis)
      if (g->leading_monomial().divides(lead.mono)) {
        red = g;
        break;
      }
    if (!red) {
      rem.push_back(lead);
      p = MultiPoly::from_sorted(std::vector<Term>(p.terms().begin() + 1, p.terms().end()));
      continue;
    }
    if (budget) budget->charge();
    Integer k = gcd(lead.coef, red->leading_coefficient());
    Integer a = red->leading_coefficient() / k, b = lead.coef / k;
    Monomial m = quotient(lead.mono, red->leading_monomial());
    if (a != 1) {
      p = p.scaled(a);
      for (auto& t : rem) t.coef *= a;
    }
    p = p - red->mul_term(m, b);
    if (++steps % 16 == 0 && !rem.empty()) {
      Integer c = p.content();
      for (const auto& t : rem) {
        if (c == 1) break;
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coef.get_mpz_t());
      }
      if (c > 1) {
        p = MultiPoly::from_sorted([&] {
          std::vector<Term> ts = p.terms();
          for (auto& t : ts) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
          return ts;
        }());
        for (auto& t : rem) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
      }
    }
  }
  return MultiPoly::from_sorted(std::move(rem)).make_primitive();
}

inline MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis,
                             GroebnerBudget* budget = nullptr) {
  std::vector<const MultiPoly*> ptrs;
  for (const auto& g : basis) ptrs.push_back(&g);
  return normal_form(p, ptrs, budget);
}

/// Generators together with a Groebner basis of the ideal they span.
/// New generators can be added at any time; the basis is completed eagerly.
class IdealBasis {
public:
  IdealBasis() = default;
  explicit IdealBasis(GroebnerBudget budget) : budget_(budget) {}

  const std::vector<MultiPoly>& generators() const noexcept { return generators_; }
  GroebnerBudget& budget() noexcept { return budget_; }
  bool is_unit() const {
    for (auto i : active_)
      if (polys_[i].is_constant()) return true;
    return false;
  }

  MultiPoly reduce(const MultiPoly& p) { return normal_form(p, active_ptrs(), &budget_); }

  bool contains(const MultiPoly& p) { return reduce(p).is_zero(); }

  /// Starts from generators already forming a Groebner basis; their
  /// S-polynomials are known to reduce to zero and are not queued.
  void seed(const std::vector<MultiPoly>& basis) {
    if (!polys_.empty()) throw std::logic_error("IdealBasis::seed on a non-empty basis");
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      generators_.push_back(g.primitive());
      polys_.push_back(g.primitive());
      sugar_.push_back(g.degree());
      active_.push_back(polys_.size() - 1);
    }
  }

  /// Adds p as a generator. Returns false (and leaves the basis as is) when p
  /// already lies in the ideal.
  bool insert(const MultiPoly& p) {
    MultiPoly r = reduce(p);
    if (r.is_zero()) return false;
    generators_.push_back(p.primitive());
    auto d = r.degree();
    add(std::move(r), d);
    complete();
    return true;
  }

  /// The reduced Groebner basis (monic up to a positive integer multiple),
  /// sorted by decreasing leading monomial.
  std::vector<MultiPoly> groebner() {
    std::vector<MultiPoly> minimal;
    for (auto i : active_) minimal.push_back(polys_[i]);
    std::sort(minimal.begin(), minimal.end(), [](const MultiPoly& a, const MultiPoly& b) {
      return compare_grevlex(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    std::vector<MultiPoly> kept;
    for (const auto& g : minimal) {
      bool redundant = false;
      for (const auto& k : kept)
        if (k.leading_monomial().divides(g.leading_monomial())) redundant = true;
      if (!redundant) kept.push_back(g);
    }
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      std::vector<const MultiPoly*> others;
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(&kept[j]);
      Term lead = kept[i].leading();
      MultiPoly tail = MultiPoly::from_sorted(std::vector<Term>(kept[i].terms().begin() + 1, kept[i].terms().end()));
      // Tails are reduced against the other elements; the leading term stays.
      MultiPoly tr = tail.is_zero() ? MultiPoly::from_sorted({lead}).make_primitive() : normal_form_keep_scale(tail, others, lead);
      out.push_back(tr);
    }
    std::sort(out.begin(), out.end(), [](const MultiPoly& a, const MultiPoly& b) {
      return compare_grevlex(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return out;
  }

private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t sugar;
  };

  std::vector<const MultiPoly*> active_ptrs() const {
    std::vector<const MultiPoly*> ptrs;
    ptrs.reserve(active_.size());
    for (auto i : active_) ptrs.push_back(&polys_[i]);
    return ptrs;
  }

  std::uint32_t pair_sugar(std::size_t i, std::size_t j, const Monomial& L) const {
    auto si = sugar_[i] - polys_[i].leading_monomial().degree();
    auto sj = sugar_[j] - polys_[j].leading_monomial().degree();
    return std::max(si, sj) + L.degree();
  }

  // Gebauer-Moeller update with the new element h.
  void add(MultiPoly h, std::uint32_t sugar) {
    std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    sugar_.push_back(std::max(sugar, polys_[hi].degree()));
    const Monomial& lh = polys_[hi].leading_monomial();

    std::vector<Pair> C;
    for (auto g : active_) {
      Monomial L = lcm(lh, polys_[g].leading_monomial());
      C.push_back({g, hi, L, pair_sugar(g, hi, L)});
    }
    std::vector<Pair> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const auto& p = C[k];
      bool keep = coprime(lh, polys_[p.i].leading_monomial());
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < C.size() && keep; ++m)
          if (C[m].lcm.divides(p.lcm)) keep = false;
        for (std::size_t m = 0; m < D.size() && keep; ++m)
          if (D[m].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> E;
    for (auto& p : D)
      if (!coprime(lh, polys_[p.i].leading_monomial())) E.push_back(std::move(p));

    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && !(lcm(polys_[p.i].leading_monomial(), lh) == p.lcm) &&
                  !(lcm(polys_[p.j].leading_monomial(), lh) == p.lcm);
      if (!drop) kept.push_back(std::move(p));
    }
    for (auto& p : E) kept.push_back(std::move(p));
    pairs_ = std::move(kept);

    std::vector<std::size_t> act;
    for (auto g : active_)
      if (!lh.divides(polys_[g].leading_monomial())) act.push_back(g);
    act.push_back(hi);
    active_ = std::move(act);
  }

  void complete() {
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin(); it != pairs_.end(); ++it)
        if (it->sugar < best->sugar || (it->sugar == best->sugar && compare_grevlex(it->lcm, best->lcm) < 0))
          best = it;
      Pair p = *best;
      pairs_.erase(best);
      budget_.charge();
      MultiPoly s = s_polynomial(polys_[p.i], polys_[p.j]);
      MultiPoly r = normal_form(std::move(s), active_ptrs(), &budget_);
      if (!r.is_zero()) add(std::move(r), p.sugar);
    }
  }

  // Reduces `tail` modulo `others` while tracking the scale applied, so that
  // lead + tail stays a multiple of the original element.
  MultiPoly normal_form_keep_scale(const MultiPoly& tail, const std::vector<const MultiPoly*>& others,
                                   const Term& lead) {
    std::vector<Term> rem{lead};
    MultiPoly p = tail;
    Integer scale = 1;
    while (!p.is_zero()) {
      const Term& t = p.leading();
      const MultiPoly* red = nullptr;
      for (const auto* g : others)
        if (g->leading_monomial().divides(t.mono)) {
          red = g;
          break;
        }
      if (!red) {
        rem.push_back(t);
        p = MultiPoly::from_sorted(std::vector<Term>(p.terms().begin() + 1, p.terms().end()));
        continue;
      }
      Integer k = gcd(t.coef, red->leading_coefficient());
      Integer a = red->leading_coefficient() / k, b = t.coef / k;
      Monomial m = quotient(t.mono, red->leading_monomial());
      if (a != 1) {
        p = p.scaled(a);
        for (auto& r : rem) r.coef *= a;
      }
      p = p - red->mul_term(m, b);
    }
    return MultiPoly::from_sorted(std::move(rem)).make_primitive();
  }

  std::vector<MultiPoly> generators_;
  std::vector<MultiPoly> polys_;
  std::vector<std::uint32_t> sugar_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  GroebnerBudget budget_;
};

inline std::vector<MultiPoly> groebner(const std::vector<MultiPoly>& gens, GroebnerBudget budget = {}) {
  IdealBasis basis(budget);
  for (const auto& g : gens) basis.insert(g);
  return basis.groebner();
}

} // namespace sstkit
