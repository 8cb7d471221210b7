#pragma once

#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sstkit/errors.hpp"
#include "sstkit/verdict.hpp"
#include "sstkit/words.hpp"

namespace sstkit {

struct MorphismPair {
  std::string label;
  Morphism h;  // A* -> A*
  Morphism g;  // A* -> A*
};

struct Hdt0lInstance {
  AlphabetPtr inner;  // A
  AlphabetPtr outer;  // B
  std::vector<MorphismPair> pairs;
  Morphism h;  // A* -> B*
  Morphism g;  // A* -> B*
  Word v;
  Word w;

  std::size_t size() const { return pairs.size(); }

  std::size_t label_index(std::string_view label) const {
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i].label == label) return i;
    throw DomainError("unknown label '" + std::string(label) + "'");
  }
};

inline void validate(const Hdt0lInstance& I) {
  if (!I.inner || !I.outer) throw ValidationError("instance is missing an alphabet");
  std::unordered_set<std::string> labels;
  for (const auto& p : I.pairs) {
    if (!is_valid_token(p.label)) throw ValidationError("invalid label '" + p.label + "'");
    if (!labels.insert(p.label).second) throw ValidationError("duplicate label '" + p.label + "'");
    if (!same_alphabet(p.h.source(), I.inner) || !same_alphabet(p.h.target(), I.inner) ||
        !same_alphabet(p.g.source(), I.inner) || !same_alphabet(p.g.target(), I.inner))
      throw ValidationError("pair '" + p.label + "' is not a pair of endomorphisms of A*");
  }
  if (!same_alphabet(I.h.source(), I.inner) || !same_alphabet(I.h.target(), I.outer) ||
      !same_alphabet(I.g.source(), I.inner) || !same_alphabet(I.g.target(), I.outer))
    throw ValidationError("final pair must map A* to B*");
  if (!same_alphabet(I.v.alphabet(), I.inner) || !same_alphabet(I.w.alphabet(), I.inner))
    throw ValidationError("axioms must be words over A");
}

/// (h(h_{i1}(...h_{ik}(v)...)), g(g_{i1}(...g_{ik}(w)...))): the last index is
/// applied first.
inline std::pair<Word, Word> derive(const Hdt0lInstance& I, const std::vector<std::size_t>& seq) {
  std::vector<LetterIndex> u = I.v.letters(), x = I.w.letters();
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    if (*it >= I.pairs.size()) throw DomainError("label index " + std::to_string(*it) + " out of range");
    u = I.pairs[*it].h.apply_raw(u);
    x = I.pairs[*it].g.apply_raw(x);
  }
  return {Word(I.outer, I.h.apply_raw(u)), Word(I.outer, I.g.apply_raw(x))};
}

inline std::vector<std::size_t> label_indices(const Hdt0lInstance& I, const std::vector<std::string>& labels) {
  std::vector<std::size_t> seq;
  seq.reserve(labels.size());
  for (const auto& l : labels) seq.push_back(I.label_index(l));
  return seq;
}

inline std::pair<Word, Word> derive(const Hdt0lInstance& I, const std::vector<std::string>& labels) {
  return derive(I, label_indices(I, labels));
}

inline Witness sequence_witness(const Hdt0lInstance& I, const std::vector<std::size_t>& seq) {
  auto [l, r] = derive(I, seq);
  Witness w;
  w.kind = Witness::Kind::label_sequence;
  w.indices = seq;
  for (auto i : seq) w.input.push_back(I.pairs[i].label);
  w.outputs = {l.str(), r.str()};
  return w;
}

/// Exhaustive check of all sequences of length <= max_len, breadth-first.
///
/// A new label is prepended (it becomes the outermost inner morphism), so the
/// state of a sequence is the pair of inner words it derives before h and g.
/// Sequences reaching an already seen state are pruned: their extensions
/// derive exactly what the earlier, smaller sequence's extensions derive.
inline Verdict bounded_validity(const Hdt0lInstance& I, std::size_t max_len) {
  using Inner = std::pair<std::vector<LetterIndex>, std::vector<LetterIndex>>;
  struct Node {
    Inner state;
    std::vector<std::size_t> seq;
  };
  auto violates = [&](const Inner& s) { return I.h.apply_raw(s.first) != I.g.apply_raw(s.second); };

  std::set<Inner> seen;
  std::vector<Node> level{{{I.v.letters(), I.w.letters()}, {}}};
  seen.insert(level.front().state);
  if (violates(level.front().state)) return Verdict::counterexample(sequence_witness(I, {}), "h(v) != g(w)", 0);

  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<Node> next;
    for (std::size_t i = 0; i < I.pairs.size(); ++i)
      for (const auto& node : level) {
        Inner s{I.pairs[i].h.apply_raw(node.state.first), I.pairs[i].g.apply_raw(node.state.second)};
        if (!seen.insert(s).second) continue;
        std::vector<std::size_t> seq;
        seq.reserve(len);
        seq.push_back(i);
        seq.insert(seq.end(), node.seq.begin(), node.seq.end());
        if (violates(s)) return Verdict::counterexample(sequence_witness(I, seq), "derivations differ", len);
        next.push_back({std::move(s), std::move(seq)});
      }
    level = std::move(next);
  }
  return Verdict::resource_limit("valid up to " + std::to_string(max_len), max_len);
}

} // namespace sstkit
