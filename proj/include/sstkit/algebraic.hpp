#pragma once

// Deciding HDT0L validity with polynomial ideals.
//
// Output words are embedded into SL(2, Z) by mu. Each letter a of A gets two
// symbolic 2x2 matrices, X_a (h side) and Y_a (g side). A label i acts on
// polynomials by the ring homomorphism Phi_i replacing X_a by the matrix of
// h_i(a) and Y_a by the matrix of g_i(a). Evaluating at the base point
// (X_a = mu(h(a)), Y_a = mu(g(a))) turns Phi_{i1} ... Phi_{ik} applied to the
// entries of M1(v) - M2(w) into mu(h(h_{i1}(...(v)))) - mu(g(g_{i1}(...(w)))).

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sstkit/errors.hpp"
#include "sstkit/groebner.hpp"
#include "sstkit/hdt0l.hpp"
#include "sstkit/matrix2.hpp"
#include "sstkit/points.hpp"
#include "sstkit/poly.hpp"
#include "sstkit/verdict.hpp"

namespace sstkit {

/// mu of the letter with 0-based index i: M_a * M_b^(i+1).
inline IntMatrix letter_matrix(LetterIndex i) {
  // M_b^k = [[1,0],[k,1]], so M_a * M_b^k = [[1+k,1],[k,1]].
  Integer k = static_cast<unsigned long>(i) + 1;
  return IntMatrix{{k + 1, Integer(1), k, Integer(1)}};
}

inline IntMatrix embed_raw(std::span<const LetterIndex> u) {
  IntMatrix m = IntMatrix::identity();
  for (auto l : u) m = m * letter_matrix(l);
  return m;
}

inline IntMatrix embed_word(const Word& u, const AlphabetPtr& B) {
  require_same_alphabet(u.alphabet(), B, "embed_word");
  return embed_raw(u.letters());
}

inline IntMatrix embed_word(const Word& u) { return embed_raw(u.letters()); }

struct PolyVar {
  int side = 1;  // 1: h family (X), 2: g family (Y)
  LetterIndex letter = 0;
  int row = 0;  // 0-based
  int col = 0;

  friend bool operator==(const PolyVar&, const PolyVar&) = default;
};

/// Variables are numbered in (side, letter, row, col) order, so variable 0
/// (the largest in degrevlex) is X_{first letter,1,1}.
inline Var encode(const PolyVar& x, std::size_t letters) {
  return static_cast<Var>(((static_cast<std::size_t>(x.side - 1) * letters + x.letter) * 4) + x.row * 2 + x.col);
}

inline PolyVar decode(Var v, std::size_t letters) {
  PolyVar x;
  x.col = static_cast<int>(v % 2);
  x.row = static_cast<int>((v / 2) % 2);
  auto rest = v / 4;
  x.letter = static_cast<LetterIndex>(rest % letters);
  x.side = static_cast<int>(rest / letters) + 1;
  return x;
}

inline std::string var_name(const PolyVar& x, const Alphabet& A) {
  return std::string(x.side == 1 ? "X" : "Y") + "_" + A.token(x.letter) + "_" + std::to_string(x.row + 1) +
         std::to_string(x.col + 1);
}

using PolyMatrix = Matrix2<MultiPoly>;

inline PolyMatrix variable_matrix(int side, LetterIndex a, std::size_t letters) {
  PolyMatrix m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = MultiPoly::variable(encode({side, a, r, c}, letters));
  return m;
}

/// The ordered product of the symbolic letter matrices of u.
inline PolyMatrix poly_matrix(const Word& u, int side) {
  if (side != 1 && side != 2) throw DomainError("side must be 1 or 2");
  PolyMatrix m = PolyMatrix::identity();
  for (auto l : u.letters()) m = m * variable_matrix(side, l, u.alphabet()->size());
  return m;
}

/// Values of all 8|A| variables: X_a = mu(h(a)), Y_a = mu(g(a)).
inline std::vector<Integer> base_point(const Hdt0lInstance& I) {
  const auto n = I.inner->size();
  std::vector<Integer> point(8 * n);
  for (int side = 1; side <= 2; ++side)
    for (LetterIndex a = 0; a < n; ++a) {
      IntMatrix m = embed_raw((side == 1 ? I.h : I.g).image(a));
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) point[encode({side, a, r, c}, n)] = m(r, c);
    }
  return point;
}

inline Integer evaluate(const MultiPoly& p, const std::vector<Integer>& point) {
  return p.evaluate([&](Var v) -> const Integer& { return point.at(v); });
}

/// Phi_i, with no specialization.
inline MultiPoly substitute(const Hdt0lInstance& I, const MultiPoly& p, std::size_t label) {
  if (label >= I.pairs.size()) throw DomainError("label index " + std::to_string(label) + " out of range");
  const auto n = I.inner->size();
  std::unordered_map<Var, MultiPoly> cache;
  return p.substitute([&](Var v) -> MultiPoly {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    PolyVar x = decode(v, n);
    const auto& image = (x.side == 1 ? I.pairs[label].h : I.pairs[label].g).image(x.letter);
    PolyMatrix m = PolyMatrix::identity();
    for (auto b : image) m = m * variable_matrix(x.side, b, n);
    return cache.emplace(v, m(x.row, x.col)).first->second;
  });
}

inline MultiPoly substitute(const Hdt0lInstance& I, const MultiPoly& p, std::string_view label) {
  return substitute(I, p, I.label_index(label));
}

// ---------------------------------------------------------------------------
// Frozen letters
//
// On one side (say h), a set F of letters is frozen when, for every label i
// and every a in F, h_i(a) is a word over F and h(h_i(a)) = h(a). Then
// h(h_s(a)) = h(a) for every sequence s, so X_a takes the same value at every
// point of the orbit, and the ideal generated by the entries of X_a - mu(h(a))
// (a in F) is mapped into itself by every Phi_i. Working modulo it is the
// same as substituting the constants, which removes those variables.

/// Greatest frozen set for one side, as a per-letter flag.
inline std::vector<bool> frozen_letters(const Hdt0lInstance& I, int side) {
  const auto n = I.inner->size();
  const Morphism& fin = side == 1 ? I.h : I.g;
  std::vector<bool> frozen(n, true);
  for (LetterIndex a = 0; a < n; ++a)
    for (const auto& p : I.pairs) {
      const Morphism& f = side == 1 ? p.h : p.g;
      if (fin.apply_raw(f.image(a)) != fin.image(a)) {
        frozen[a] = false;
        break;
      }
    }
  for (bool changed = true; changed;) {
    changed = false;
    for (LetterIndex a = 0; a < n; ++a) {
      if (!frozen[a]) continue;
      for (const auto& p : I.pairs) {
        const Morphism& f = side == 1 ? p.h : p.g;
        bool closed = std::all_of(f.image(a).begin(), f.image(a).end(), [&](LetterIndex b) { return frozen[b]; });
        if (!closed) {
          frozen[a] = false;
          changed = true;
          break;
        }
      }
    }
  }
  return frozen;
}

// ---------------------------------------------------------------------------
// Finite orbits
//
// A letter a (on one side) has a finite orbit when { h_s(a) : s } is finite.
// For a set L of such letters, closed under images up to frozen letters, the
// tuples (h_s(a))_{a in L} over all sequences s give a finite point set S for
// the variables of L. Phi_i maps the point of s to the point of s.i, so a
// polynomial vanishing on S still vanishes on S after Phi_i; I(S) is radical,
// hence Phi_i(I(S)) lies in I(S). Adding I(S) to the chain keeps every
// generator zero at the base point (the point of the empty sequence) and keeps
// the stabilization argument intact.

struct OrbitLimits {
  std::size_t max_words = 64;
  std::size_t max_word_length = 32;
  std::size_t max_tuples = 1024;
  std::size_t max_points = 256;
};

inline std::vector<bool> finite_orbit_letters(const Hdt0lInstance& I, int side, const OrbitLimits& lim) {
  const auto n = I.inner->size();
  std::vector<bool> finite(n, false);
  for (LetterIndex a = 0; a < n; ++a) {
    std::set<std::vector<LetterIndex>> seen{{a}};
    std::vector<std::vector<LetterIndex>> queue{{a}};
    bool ok = true;
    for (std::size_t k = 0; k < queue.size() && ok; ++k)
      for (const auto& p : I.pairs) {
        auto u = (side == 1 ? p.h : p.g).apply_raw(queue[k]);
        if (u.size() > lim.max_word_length) {
          ok = false;
          break;
        }
        if (seen.insert(u).second) {
          if (seen.size() > lim.max_words) {
            ok = false;
            break;
          }
          queue.push_back(std::move(u));
        }
      }
    finite[a] = ok;
  }
  return finite;
}

struct OrbitInvariants {
  std::vector<PolyVar> variables;
  std::vector<MultiPoly> ideal;  // reduced Groebner basis of I(S)
  std::size_t points = 0;
  std::string note;
};

inline OrbitInvariants orbit_invariants(const Hdt0lInstance& I, const std::vector<bool> frozen[2],
                                        const OrbitLimits& lim) {
  const auto n = I.inner->size();
  OrbitInvariants inv;
  std::vector<std::pair<int, LetterIndex>> letters;
  for (int side = 1; side <= 2; ++side) {
    auto fin = finite_orbit_letters(I, side, lim);
    for (LetterIndex a = 0; a < n; ++a) fin[a] = fin[a] && !frozen[side - 1][a];
    for (bool changed = true; changed;) {
      changed = false;
      for (LetterIndex a = 0; a < n; ++a) {
        if (!fin[a]) continue;
        for (const auto& p : I.pairs)
          for (auto b : (side == 1 ? p.h : p.g).image(a))
            if (!fin[b] && !frozen[side - 1][b] && fin[a]) {
              fin[a] = false;
              changed = true;
            }
      }
    }
    for (LetterIndex a = 0; a < n; ++a)
      if (fin[a]) letters.emplace_back(side, a);
  }
  if (letters.empty()) {
    inv.note = "no finite-orbit letters";
    return inv;
  }

  using Tuple = std::vector<std::vector<LetterIndex>>;
  Tuple start;
  for (auto [side, a] : letters) start.push_back({a});
  std::set<Tuple> seen{start};
  std::vector<Tuple> queue{start};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& p : I.pairs) {
      Tuple next;
      next.reserve(letters.size());
      for (std::size_t j = 0; j < letters.size(); ++j)
        next.push_back((letters[j].first == 1 ? p.h : p.g).apply_raw(queue[k][j]));
      if (seen.insert(next).second) {
        if (seen.size() > lim.max_tuples) {
          inv.note = "finite-orbit tuple space exceeds " + std::to_string(lim.max_tuples);
          return inv;
        }
        queue.push_back(std::move(next));
      }
    }

  std::set<std::vector<Rational>> pts;
  for (const auto& t : queue) {
    std::vector<Rational> coords;
    for (std::size_t j = 0; j < letters.size(); ++j) {
      IntMatrix m = embed_raw((letters[j].first == 1 ? I.h : I.g).apply_raw(t[j]));
      for (const auto& x : m.e) coords.emplace_back(x);
    }
    pts.insert(std::move(coords));
    if (pts.size() > lim.max_points) {
      inv.note = "finite-orbit point set exceeds " + std::to_string(lim.max_points);
      return inv;
    }
  }
  std::vector<Var> vars;
  for (auto [side, a] : letters)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        inv.variables.push_back({side, a, r, c});
        vars.push_back(encode({side, a, r, c}, n));
      }
  inv.points = pts.size();
  inv.ideal = vanishing_ideal(vars, {pts.begin(), pts.end()});
  inv.note = std::to_string(letters.size()) + " finite-orbit letters, " + std::to_string(inv.points) + " points";
  return inv;
}

struct IdealOptions {
  std::size_t max_chain_steps = 25;
  std::size_t max_reductions = 5'000'000;
  std::optional<std::chrono::milliseconds> time_limit;
  bool specialize_frozen = true;
  bool orbit_invariants = true;
  OrbitLimits orbit_limits;
};

struct TrackedPoly {
  MultiPoly poly;
  std::vector<std::size_t> origin;  // label sequence, outermost first
};

/// Polynomial view of an instance modulo its frozen letters.
class ChainRing {
public:
  ChainRing(const Hdt0lInstance& I, bool specialize) : I_(I), n_(I.inner->size()) {
    frozen_[0] = specialize ? frozen_letters(I, 1) : std::vector<bool>(n_, false);
    frozen_[1] = specialize ? frozen_letters(I, 2) : std::vector<bool>(n_, false);
    point_ = base_point(I);
    images_.resize(I.pairs.size());
  }

  const std::vector<Integer>& point() const noexcept { return point_; }
  bool frozen(int side, LetterIndex a) const { return frozen_[side - 1][a]; }
  std::size_t free_variables() const {
    std::size_t k = 0;
    for (int s = 0; s < 2; ++s)
      for (bool f : frozen_[s]) k += f ? 0 : 4;
    return k;
  }

  PolyMatrix letter(int side, LetterIndex a) const {
    if (!frozen(side, a)) return variable_matrix(side, a, n_);
    PolyMatrix m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(r, c) = MultiPoly(point_[encode({side, a, r, c}, n_)]);
    return m;
  }

  PolyMatrix word(int side, std::span<const LetterIndex> u) const {
    PolyMatrix m = PolyMatrix::identity();
    for (auto l : u) m = m * letter(side, l);
    return m;
  }

  MultiPoly phi(const MultiPoly& p, std::size_t label) {
    auto& cache = images_[label];
    return p.substitute([&](Var v) -> const MultiPoly& {
      auto it = cache.find(v);
      if (it != cache.end()) return it->second;
      PolyVar x = decode(v, n_);
      const auto& pair = I_.pairs[label];
      PolyMatrix m = word(x.side, (x.side == 1 ? pair.h : pair.g).image(x.letter));
      return cache.emplace(v, m(x.row, x.col)).first->second;
    });
  }

  std::string name(Var v) const { return var_name(decode(v, n_), *I_.inner); }
  const std::vector<bool>* frozen_sets() const { return frozen_; }

private:
  const Hdt0lInstance& I_;
  std::size_t n_;
  std::vector<bool> frozen_[2];
  std::vector<Integer> point_;
  std::vector<std::unordered_map<Var, MultiPoly>> images_;
};

/// Ascending chain of ideals generated by the difference entries and their
/// images under all Phi_i, built breadth-first.
///
/// Holds is reported once a whole step contributes no new ideal member. That
/// step is final: every generator g satisfies Phi_i(g) in J for all i (older
/// generators had their images processed in earlier steps), so Phi_i(J) lies
/// in J because Phi_i is a ring homomorphism, and J then contains every
/// Phi_s(entry). All generators vanish at the base point, so every derivation
/// agrees.
inline Verdict decide_hdt0l(const Hdt0lInstance& I, const IdealOptions& opt = {}) {
  validate(I);
  ChainRing ring(I, opt.specialize_frozen);
  GroebnerBudget budget;
  budget.max_reductions = opt.max_reductions;
  if (opt.time_limit) budget.deadline = std::chrono::steady_clock::now() + *opt.time_limit;
  IdealBasis ideal(budget);
  std::string strengthening;
  if (opt.orbit_invariants) {
    auto inv = orbit_invariants(I, ring.frozen_sets(), opt.orbit_limits);
    for (const auto& r : inv.ideal)
      if (evaluate(r, ring.point()) != 0) throw SoundnessError("orbit invariant does not vanish at the base point");
    ideal.seed(inv.ideal);
    strengthening = "; " + inv.note;
  }

  std::size_t depth = 0;
  auto counterexample = [&](const TrackedPoly& t) {
    auto [l, r] = derive(I, t.origin);
    if (l == r)
      throw SoundnessError("tracked polynomial is nonzero at the base point but derive() agrees on the sequence");
    return Verdict::counterexample(sequence_witness(I, t.origin), "tracked polynomial does not vanish at the base point",
                                   t.origin.size());
  };

  // Candidates of the current depth are evaluated at the base point one step
  // before they enter the ideal, so a short counterexample is reported even
  // when completing the basis of the previous depth is expensive.
  auto children = [&](const TrackedPoly& t) {
    std::vector<TrackedPoly> out;
    for (std::size_t i = 0; i < I.pairs.size(); ++i) {
      TrackedPoly c{ring.phi(t.poly, i), {}};
      if (c.poly.is_zero()) continue;
      c.origin.reserve(t.origin.size() + 1);
      c.origin.push_back(i);
      c.origin.insert(c.origin.end(), t.origin.begin(), t.origin.end());
      out.push_back(std::move(c));
    }
    return out;
  };

  std::vector<TrackedPoly> pending;
  try {
    PolyMatrix diff = ring.word(1, I.v.letters()) - ring.word(2, I.w.letters());
    for (const auto& entry : diff.e) {
      if (entry.is_zero()) continue;
      TrackedPoly t{entry, {}};
      if (evaluate(t.poly, ring.point()) != 0) return counterexample(t);
      pending.push_back(std::move(t));
    }
    if (pending.empty()) return Verdict::holds("difference entries vanish identically", 0);

    for (depth = 0;; ++depth) {
      std::vector<std::vector<TrackedPoly>> kids(pending.size());
      if (depth < opt.max_chain_steps)
        for (std::size_t j = 0; j < pending.size(); ++j) {
          kids[j] = children(pending[j]);
          for (const auto& c : kids[j])
            if (evaluate(c.poly, ring.point()) != 0) return counterexample(c);
        }
      std::vector<TrackedPoly> next;
      bool grew = false;
      for (std::size_t j = 0; j < pending.size(); ++j) {
        if (!ideal.insert(pending[j].poly)) continue;
        grew = true;
        for (auto& c : kids[j]) next.push_back(std::move(c));
      }
      if (!grew)
        return Verdict::holds("ideal chain stabilized after " + std::to_string(depth) + " step" +
                                  (depth == 1 ? "" : "s") + " (" + std::to_string(ideal.generators().size()) +
                                  " generators" + strengthening + ")",
                              depth);
      if (depth == opt.max_chain_steps) break;
      pending = std::move(next);
      if (pending.empty())
        return Verdict::holds("ideal chain stabilized after " + std::to_string(depth + 1) + " step" +
                                  (depth == 0 ? "" : "s") + " (" + std::to_string(ideal.generators().size()) +
                                  " generators" + strengthening + ")",
                              depth + 1);
    }
  } catch (const BudgetExceeded& e) {
    return Verdict::resource_limit(std::string(e.what()) + " at chain depth " + std::to_string(depth), depth);
  }
  return Verdict::resource_limit(
      "ideal chain did not stabilize within " + std::to_string(opt.max_chain_steps) + " steps", opt.max_chain_steps);
}

} // namespace sstkit
