#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sstkit/sst.hpp"
#include "sstkit/verdict.hpp"

namespace sstkit {

struct Nfa {
  AlphabetPtr alphabet;
  std::size_t states = 0;
  std::vector<bool> initial;
  std::vector<bool> final;
  /// delta[q][a] = successor states
  std::vector<std::vector<std::vector<LetterIndex>>> delta;

  explicit Nfa(AlphabetPtr sigma = nullptr, std::size_t n = 0)
      : alphabet(std::move(sigma)), states(n), initial(n, false), final(n, false),
        delta(n, std::vector<std::vector<LetterIndex>>(alphabet ? alphabet->size() : 0)) {}

  void add(LetterIndex q, LetterIndex a, LetterIndex p) { delta.at(q).at(a).push_back(p); }

  using Subset = std::vector<bool>;

  Subset start() const { return initial; }

  Subset step(const Subset& s, LetterIndex a) const {
    Subset out(states, false);
    for (std::size_t q = 0; q < states; ++q)
      if (s[q])
        for (auto p : delta[q][a]) out[p] = true;
    return out;
  }

  bool accepting(const Subset& s) const {
    for (std::size_t q = 0; q < states; ++q)
      if (s[q] && final[q]) return true;
    return false;
  }

  bool accepts(const std::vector<LetterIndex>& w) const {
    auto s = start();
    for (auto a : w) s = step(s, a);
    return accepting(s);
  }
};

/// NFA over T's input alphabet accepting dom(T): finals are the states where F is defined.
inline Nfa domain_automaton(const Sst& T) {
  Nfa A(T.input, T.state_count());
  A.initial[T.initial] = true;
  for (LetterIndex q = 0; q < T.state_count(); ++q) A.final[q] = T.accepts_in(q);
  for (const auto& t : T.transitions) A.add(t.source, t.input, t.target);
  return A;
}

/// Synchronous search over pairs of subsets. Breadth-first with letters in
/// alphabet order, so the first disagreement is a shortest, then
/// lexicographically least, distinguishing word.
inline Verdict nfa_equivalent(const Nfa& A, const Nfa& B) {
  if (!A.alphabet || !B.alphabet) throw DomainError("nfa_equivalent: missing input alphabet");
  {
    auto a = A.alphabet->tokens(), b = B.alphabet->tokens();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw DomainError("nfa_equivalent: input alphabets differ");
  }
  using Key = std::pair<Nfa::Subset, Nfa::Subset>;
  std::map<Key, std::size_t> seen;
  std::vector<std::pair<std::size_t, LetterIndex>> parent;  // (parent node, letter)
  std::vector<Key> nodes;
  std::deque<std::size_t> queue;

  auto push = [&](Key k, std::size_t from, LetterIndex a) {
    if (seen.count(k)) return;
    seen.emplace(k, nodes.size());
    nodes.push_back(std::move(k));
    parent.emplace_back(from, a);
    queue.push_back(nodes.size() - 1);
  };
  push({A.start(), B.start()}, SIZE_MAX, 0);

  while (!queue.empty()) {
    auto id = queue.front();
    queue.pop_front();
    const auto [sa, sb] = nodes[id];
    bool in_a = A.accepting(sa), in_b = B.accepting(sb);
    if (in_a != in_b) {
      std::vector<LetterIndex> word;
      for (auto n = id; parent[n].first != SIZE_MAX; n = parent[n].first) word.push_back(parent[n].second);
      std::reverse(word.begin(), word.end());
      Witness w;
      w.indices.assign(word.begin(), word.end());
      for (auto a : word) w.input.push_back(A.alphabet->token(a));
      w.detail = in_a ? "accepted by the first automaton only" : "accepted by the second automaton only";
      return Verdict::counterexample(std::move(w), "languages differ", word.size());
    }
    for (LetterIndex a = 0; a < A.alphabet->size(); ++a) {
      LetterIndex b = B.alphabet->index_of(A.alphabet->token(a));
      push({A.step(sa, a), B.step(sb, b)}, id, a);
    }
  }
  return Verdict::holds("languages are equal");
}

} // namespace sstkit
