#pragma once

// biSST diagonality -> HDT0L validity, HDT0L validity -> SST equivalence, and
// the functionality / equivalence pipelines built on top.

#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sstkit/algebraic.hpp"
#include "sstkit/hdt0l.hpp"
#include "sstkit/nfa.hpp"
#include "sstkit/product.hpp"
#include "sstkit/sst.hpp"
#include "sstkit/verdict.hpp"

namespace sstkit {

struct LabelOrigin {
  bool final_state = false;
  LetterIndex state = 0;       // when final_state
  std::size_t transition = 0;  // otherwise, index into T.transitions
};

struct ReductionTrace {
  enum class Direction { bisst_to_hdt0l, hdt0l_to_sst };
  Direction direction = Direction::bisst_to_hdt0l;
  std::vector<LabelOrigin> labels;  // parallel to the instance's pairs
};

/// Letters of A for one state q: alpha_q for alpha in X, Gamma, $ and #.
struct SubscriptTable {
  LetterIndex bare_hash = 0;
  std::vector<std::vector<LetterIndex>> variable;  // [q][x]
  std::vector<std::vector<LetterIndex>> output;    // [q][a]
  std::vector<LetterIndex> dollar;                 // [q]
  std::vector<LetterIndex> hash;                   // [q]
};

inline std::pair<AlphabetPtr, SubscriptTable> subscript_alphabet(const Sst& T) {
  std::unordered_set<std::string> used;
  std::vector<std::string> tokens;
  SubscriptTable tab;
  auto add = [&](const std::string& base) {
    tokens.push_back(fresh_token(base, used));
    return static_cast<LetterIndex>(tokens.size() - 1);
  };
  tab.bare_hash = add("#");
  const auto nq = T.state_count();
  tab.variable.resize(nq);
  tab.output.resize(nq);
  for (LetterIndex q = 0; q < nq; ++q) {
    const std::string sub = "_" + T.states->token(q);
    for (const auto& x : T.variables->tokens()) tab.variable[q].push_back(add(x + sub));
    for (const auto& a : T.output->tokens()) tab.output[q].push_back(add(a + sub));
    tab.dollar.push_back(add("$" + sub));
    tab.hash.push_back(add("#" + sub));
  }
  return {make_alphabet("A", tokens), tab};
}

/// The instance I_T of the diagonal-to-HDT0L reduction. Pairs are listed as
/// (f_q^1, f_q^2) for each final state q where F is defined, then (f_t, f_t)
/// for each transition; the final pair is (f_q0, f_q0) and v = w = #.
inline std::pair<Hdt0lInstance, ReductionTrace> bisst_to_hdt0l(const Sst& T) {
  validate(T);
  if (T.arity != 2) throw PreconditionError("bisst_to_hdt0l expects a machine of arity 2");
  auto [A, tab] = subscript_alphabet(T);
  const auto nA = A->size();
  const AlphabetPtr& B = T.output;

  auto subscript = [&](LetterIndex q, const SymbolString& s) {
    std::vector<LetterIndex> out;
    for (auto sym : s) out.push_back(sym.is_variable() ? tab.variable[q][sym.index] : tab.output[q][sym.index]);
    return out;
  };

  std::vector<MorphismPair> pairs;
  ReductionTrace trace;
  std::unordered_set<std::string> labels;

  for (LetterIndex q = 0; q < T.state_count(); ++q) {
    if (!T.accepts_in(q)) continue;
    std::vector<Morphism> f;
    for (int i = 0; i < 2; ++i) {
      std::vector<std::vector<LetterIndex>> images(nA);
      auto& img = images[tab.bare_hash];
      img.push_back(tab.dollar[q]);
      for (auto x : (*T.output_fn[q])[i]) img.push_back(tab.variable[q][x]);
      f.emplace_back(A, A, std::move(images));
    }
    pairs.push_back({fresh_token("f:" + T.states->token(q), labels), f[0], f[1]});
    trace.labels.push_back({true, q, 0});
  }

  for (std::size_t ti = 0; ti < T.transitions.size(); ++ti) {
    const auto& t = T.transitions[ti];
    std::vector<std::vector<LetterIndex>> images(nA);
    for (LetterIndex x = 0; x < T.variables->size(); ++x)
      images[tab.variable[t.target][x]] = subscript(t.source, t.update->image(x));
    for (LetterIndex a = 0; a < B->size(); ++a) images[tab.output[t.target][a]] = {tab.output[t.source][a]};
    images[tab.dollar[t.target]] = {tab.dollar[t.source]};
    Morphism ft(A, A, std::move(images));
    std::string label = "t:" + T.states->token(t.source) + ":" + T.input->token(t.input) + ":" + T.states->token(t.target);
    pairs.push_back({fresh_token(label, labels), ft, ft});
    trace.labels.push_back({false, 0, ti});
  }

  std::vector<std::vector<LetterIndex>> final_images(nA);
  for (LetterIndex a = 0; a < B->size(); ++a) final_images[tab.output[T.initial][a]] = {a};
  Morphism fq0(A, B, std::move(final_images));

  Word hash(A, {tab.bare_hash});
  Hdt0lInstance I{A, B, std::move(pairs), fq0, fq0, hash, hash};
  return {std::move(I), std::move(trace)};
}

/// Valid in the reduction's sense: transitions chained from q0, then exactly
/// one final-state label, last, naming the state the run ends in.
inline bool is_valid_sequence(const Sst& T, const ReductionTrace& trace, const std::vector<std::size_t>& seq) {
  if (seq.empty()) return false;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (seq[j] >= trace.labels.size()) return false;
    bool last = j + 1 == seq.size();
    if (trace.labels[seq[j]].final_state != last) return false;
  }
  LetterIndex cur = T.initial;
  for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
    const auto& t = T.transitions[trace.labels[seq[j]].transition];
    if (t.source != cur) return false;
    cur = t.target;
  }
  return trace.labels[seq.back()].state == cur;
}

/// The run encoded by a valid sequence.
inline Run sequence_run(const Sst& T, const ReductionTrace& trace, const std::vector<std::size_t>& seq) {
  Run r;
  r.states.push_back(T.initial);
  for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
    auto ti = trace.labels[seq[j]].transition;
    const auto& t = T.transitions[ti];
    r.input.push_back(t.input);
    r.states.push_back(t.target);
    r.transitions.push_back(ti);
  }
  return r;
}

/// The two machines of the HDT0L-to-SST reduction: input letters 0..n
/// (label k in declaration order is letter k), variables X_a for a in A.
inline std::pair<Sst, Sst> hdt0l_to_sst_pair(const Hdt0lInstance& I) {
  validate(I);
  std::vector<std::string> digits;
  for (std::size_t i = 0; i <= I.pairs.size(); ++i) digits.push_back(std::to_string(i));
  auto sigma = make_alphabet("N", digits);
  std::unordered_set<std::string> used;
  std::vector<std::string> names;
  for (const auto& a : I.inner->tokens()) names.push_back(fresh_token("X_" + a, used));
  auto vars = make_alphabet("X", names);

  auto rename = [](const std::vector<LetterIndex>& u) {
    SymbolString s;
    for (auto l : u) s.push_back(Symbol::var(l));
    return s;
  };
  auto letters = [](const std::vector<LetterIndex>& u) {
    SymbolString s;
    for (auto l : u) s.push_back(Symbol::out(l));
    return s;
  };

  auto build = [&](int side, const std::string& s0, const std::string& s1) {
    Sst T;
    T.input = sigma;
    T.output = I.outer;
    T.states = make_alphabet("Q", {s0, s1});
    T.variables = vars;
    T.initial = 0;
    T.final = {false, true};
    const Morphism& fin = side == 1 ? I.h : I.g;
    std::vector<SymbolString> first;
    for (LetterIndex a = 0; a < I.inner->size(); ++a) first.push_back(letters(fin.image(a)));
    T.transitions.push_back({0, 0, 1, Substitution(vars, I.outer, std::move(first))});
    for (std::size_t i = 0; i < I.pairs.size(); ++i) {
      const Morphism& f = side == 1 ? I.pairs[i].h : I.pairs[i].g;
      std::vector<SymbolString> images;
      for (LetterIndex a = 0; a < I.inner->size(); ++a) images.push_back(rename(f.image(a)));
      T.transitions.push_back(
          {1, static_cast<LetterIndex>(i + 1), 1, Substitution(vars, I.outer, std::move(images))});
    }
    const Word& axiom = side == 1 ? I.v : I.w;
    T.output_fn = {std::nullopt, std::vector<VarString>{axiom.letters()}};
    return T;
  };
  return {build(1, "q0", "q1"), build(2, "p0", "p1")};
}

// ---------------------------------------------------------------------------
// Pipelines

enum class Engine { bounded, ideal };

inline std::string_view to_string(Engine e) { return e == Engine::bounded ? "bounded" : "ideal"; }

struct EngineOptions {
  Engine engine = Engine::ideal;
  std::size_t max_len = 8;
  IdealOptions ideal;
};

inline Verdict run_engine(const Hdt0lInstance& I, const EngineOptions& opt) {
  if (opt.engine == Engine::bounded) return bounded_validity(I, opt.max_len);
  return decide_hdt0l(I, opt.ideal);
}

inline bool language_empty(const Nfa& A) {
  Nfa none(A.alphabet, 1);
  return nfa_equivalent(A, none).is_holds();
}

inline Witness word_witness(const Sst& T, const std::vector<LetterIndex>& word) {
  Witness w;
  w.indices.assign(word.begin(), word.end());
  for (auto a : word) w.input.push_back(T.input->token(a));
  return w;
}

inline Verdict check_diagonal(const Sst& T, const EngineOptions& opt = {}) {
  validate(T);
  if (T.arity != 2) throw PreconditionError("check_diagonal expects a machine of arity 2");
  if (language_empty(domain_automaton(T))) return Verdict::holds("empty domain");

  auto [I, trace] = bisst_to_hdt0l(T);
  Verdict v = run_engine(I, opt);
  if (opt.engine == Engine::bounded)
    v.note += " (label sequences up to length " + std::to_string(opt.max_len) + ", i.e. input words up to length " +
              std::to_string(opt.max_len ? opt.max_len - 1 : 0) + ")";
  if (!v.is_counterexample()) return v;

  const auto& seq = v.witness->indices;
  if (!is_valid_sequence(T, trace, seq))
    throw SoundnessError("violating label sequence does not encode a run; the reduction's property (ii) failed");
  Run r = sequence_run(T, trace, seq);
  auto out = evaluate_run(T, r);
  if (!out || (*out)[0] == (*out)[1])
    throw SoundnessError("violating label sequence replays to a run with equal outputs");
  Witness w = word_witness(T, r.input);
  w.outputs = {(*out)[0].str(), (*out)[1].str()};
  w.detail = "label sequence:";
  for (const auto& l : v.witness->input) w.detail += " " + l;
  return Verdict::counterexample(std::move(w), "output components differ", v.depth);
}

inline Verdict check_functional(const Sst& T, const EngineOptions& opt = {}) {
  validate(T);
  if (T.arity != 1) throw PreconditionError("check_functional expects a machine of arity 1");
  return check_diagonal(product(T, T), opt);
}

inline Verdict check_equivalent(const Sst& T1, const Sst& T2, const EngineOptions& opt = {}) {
  validate(T1);
  validate(T2);
  if (T1.arity != 1 || T2.arity != 1) throw PreconditionError("check_equivalent expects machines of arity 1");
  if (!is_deterministic(T1) || !is_deterministic(T2))
    throw PreconditionError("check_equivalent expects deterministic machines");

  Verdict dom = nfa_equivalent(domain_automaton(T1), domain_automaton(T2));
  if (dom.is_counterexample()) {
    Witness w = *dom.witness;
    for (const Sst* T : {&T1, &T2}) {
      std::vector<LetterIndex> word;
      for (const auto& tok : w.input) word.push_back(T->input->index_of(tok));
      auto out = evaluate(*T, word);
      w.outputs.push_back(out.empty() ? std::nullopt : std::optional<std::string>(out.begin()->front().str()));
    }
    w.detail = "domains differ: " + w.detail;
    return Verdict::counterexample(std::move(w), "domains differ", dom.depth);
  }
  Verdict v = check_diagonal(product(T1, T2), opt);
  if (!v.is_counterexample()) v.note = "domains equal; " + v.note;
  return v;
}

} // namespace sstkit
