#pragma once

#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sstkit/sst.hpp"

namespace sstkit {

/// Picks `base`, or `base'`, `base''`, ... if taken, and records the choice.
inline std::string fresh_token(std::string base, std::unordered_set<std::string>& used) {
  while (used.count(base) || is_reserved_token(base)) base += '\'';
  used.insert(base);
  return base;
}

/// T1 (x) T2: both machines in lockstep on the same input, producing the pair
/// of their outputs. Variables are kept apart by side tags; output alphabets
/// are merged by token.
inline Sst product(const Sst& T1, const Sst& T2) {
  if (T1.arity != 1 || T2.arity != 1) throw PreconditionError("product expects two machines of arity 1");
  {
    auto a = T1.input->tokens(), b = T2.input->tokens();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw DomainError("product: input alphabets differ");
  }

  Sst P;
  P.arity = 2;
  P.input = T1.input;

  std::vector<LetterIndex> out1(T1.output->size()), out2(T2.output->size());
  if (same_alphabet(T1.output, T2.output)) {
    P.output = T1.output;
    for (LetterIndex i = 0; i < out1.size(); ++i) out1[i] = out2[i] = i;
  } else {
    std::vector<std::string> tokens = T1.output->tokens();
    for (const auto& tok : T2.output->tokens())
      if (!T1.output->find(tok)) tokens.push_back(tok);
    std::string id = T1.output->id() == T2.output->id() ? T1.output->id() : T1.output->id() + "+" + T2.output->id();
    P.output = make_alphabet(id, tokens);
    for (LetterIndex i = 0; i < out1.size(); ++i) out1[i] = i;
    for (LetterIndex i = 0; i < out2.size(); ++i) out2[i] = P.output->index_of(T2.output->token(i));
  }

  const std::size_t n1 = T1.state_count(), n2 = T2.state_count();
  {
    std::unordered_set<std::string> used;
    std::vector<std::string> names;
    names.reserve(n1 * n2);
    for (LetterIndex p = 0; p < n1; ++p)
      for (LetterIndex q = 0; q < n2; ++q)
        names.push_back(fresh_token("(" + T1.states->token(p) + "," + T2.states->token(q) + ")", used));
    P.states = make_alphabet(T1.states->id() + "x" + T2.states->id(), names);
  }
  auto pair_state = [&](LetterIndex p, LetterIndex q) { return static_cast<LetterIndex>(p * n2 + q); };
  P.initial = pair_state(T1.initial, T2.initial);

  const auto v1 = static_cast<LetterIndex>(T1.variables->size());
  {
    std::unordered_set<std::string> used;
    std::vector<std::string> names;
    for (const auto& x : T1.variables->tokens()) {
      names.push_back(fresh_token("1." + x, used));
      P.variable_tags.push_back({1, x});
    }
    for (const auto& x : T2.variables->tokens()) {
      names.push_back(fresh_token("2." + x, used));
      P.variable_tags.push_back({2, x});
    }
    P.variables = make_alphabet(T1.variables->id() + "+" + T2.variables->id(), names);
  }

  auto lift = [&](const SymbolString& s, LetterIndex var_offset, const std::vector<LetterIndex>& out_map) {
    SymbolString r;
    r.reserve(s.size());
    for (auto sym : s)
      r.push_back(sym.is_variable() ? Symbol::var(sym.index + var_offset) : Symbol::out(out_map[sym.index]));
    return r;
  };

  P.final.assign(n1 * n2, false);
  P.output_fn.assign(n1 * n2, std::nullopt);
  for (LetterIndex p = 0; p < n1; ++p)
    for (LetterIndex q = 0; q < n2; ++q) {
      auto s = pair_state(p, q);
      P.final[s] = T1.final[p] && T2.final[q];
      if (!T1.output_fn[p] || !T2.output_fn[q]) continue;
      VarString left = T1.output_fn[p]->front(), right = T2.output_fn[q]->front();
      for (auto& x : right) x += v1;
      P.output_fn[s] = std::vector<VarString>{left, right};
    }

  for (const auto& t1 : T1.transitions)
    for (const auto& t2 : T2.transitions) {
      if (T1.input->token(t1.input) != T2.input->token(t2.input)) continue;
      std::vector<SymbolString> images;
      images.reserve(P.variables->size());
      for (const auto& im : t1.update->images()) images.push_back(lift(im, 0, out1));
      for (const auto& im : t2.update->images()) images.push_back(lift(im, v1, out2));
      P.transitions.push_back(Transition{pair_state(t1.source, t2.source), t1.input, pair_state(t1.target, t2.target),
                                         Substitution(P.variables, P.output, std::move(images))});
    }
  return P;
}

} // namespace sstkit
