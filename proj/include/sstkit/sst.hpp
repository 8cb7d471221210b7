#pragma once

// Streaming string transducers (deterministic or not), arity 1 or 2.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sstkit/errors.hpp"
#include "sstkit/words.hpp"

namespace sstkit {

/// A word over the variable alphabet, as used by output functions.
using VarString = std::vector<LetterIndex>;

struct Transition {
  LetterIndex source = 0;
  LetterIndex input = 0;
  LetterIndex target = 0;
  /// Absent only in malformed machines; validate() rejects that.
  std::optional<Substitution> update;
};

/// Side marker for product variables: side 1 or 2 plus the original name.
struct VariableTag {
  int side = 0;
  std::string name;
  friend bool operator==(const VariableTag&, const VariableTag&) = default;
};

struct Sst {
  AlphabetPtr input;
  AlphabetPtr output;
  AlphabetPtr states;
  AlphabetPtr variables;
  LetterIndex initial = 0;
  std::vector<bool> final;
  std::vector<Transition> transitions;
  /// Indexed by state; each defined entry holds `arity` variable strings.
  std::vector<std::optional<std::vector<VarString>>> output_fn;
  int arity = 1;
  std::vector<VariableTag> variable_tags;

  std::size_t state_count() const { return states->size(); }
  bool accepts_in(LetterIndex q) const { return final.at(q) && output_fn.at(q).has_value(); }
};

/// One output of a machine: `arity` words over Gamma.
using Output = std::vector<Word>;
using OutputSet = std::set<Output>;

inline std::string render_output(const Output& out) {
  std::string s;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) s += " | ";
    s += out[i].str();
  }
  return s;
}

inline std::string describe_transition(const Sst& T, const Transition& t) {
  return "(" + T.states->token(t.source) + ", " + T.input->token(t.input) + ", " + T.states->token(t.target) + ")";
}

inline void validate(const Sst& T) {
  if (!T.input || !T.output || !T.states || !T.variables) throw ValidationError("machine is missing an alphabet");
  if (T.arity != 1 && T.arity != 2) throw ValidationError("output arity must be 1 or 2");
  if (T.states->size() == 0) throw ValidationError("machine has no states");
  if (!T.states->contains(T.initial)) throw ValidationError("initial state is not a declared state");
  if (T.final.size() != T.states->size()) throw ValidationError("final-state flags do not cover the state set");
  if (T.output_fn.size() != T.states->size()) throw ValidationError("output function does not cover the state set");
  if (!T.variable_tags.empty() && T.variable_tags.size() != T.variables->size())
    throw ValidationError("variable tags do not cover the variable set");

  std::set<std::tuple<LetterIndex, LetterIndex, LetterIndex>> seen;
  for (const auto& t : T.transitions) {
    if (!T.states->contains(t.source) || !T.states->contains(t.target))
      throw ValidationError("transition references a dangling state");
    if (!T.input->contains(t.input)) throw ValidationError("transition reads a letter outside the input alphabet");
    if (!seen.emplace(t.source, t.input, t.target).second)
      throw ValidationError("duplicate transition " + describe_transition(T, t));
    if (!t.update) throw ValidationError("update function undefined on transition " + describe_transition(T, t));
    if (!same_alphabet(t.update->variables(), T.variables) || !same_alphabet(t.update->outputs(), T.output))
      throw ValidationError("update on " + describe_transition(T, t) + " is over foreign alphabets");
  }

  for (LetterIndex q = 0; q < T.output_fn.size(); ++q) {
    const auto& f = T.output_fn[q];
    if (!f) continue;
    if (!T.final[q]) throw ValidationError("output function defined on non-final state " + T.states->token(q));
    if (f->size() != static_cast<std::size_t>(T.arity))
      throw ValidationError("output at state " + T.states->token(q) + " has the wrong arity");
    for (const auto& comp : *f)
      for (auto x : comp)
        if (!T.variables->contains(x))
          throw ValidationError("output at state " + T.states->token(q) + " references an unknown variable");
  }
}

inline bool is_deterministic(const Sst& T) {
  std::set<std::pair<LetterIndex, LetterIndex>> seen;
  for (const auto& t : T.transitions)
    if (!seen.emplace(t.source, t.input).second) return false;
  return true;
}

inline std::optional<std::size_t> find_transition(const Sst& T, LetterIndex q, LetterIndex a, LetterIndex p) {
  for (std::size_t i = 0; i < T.transitions.size(); ++i) {
    const auto& t = T.transitions[i];
    if (t.source == q && t.input == a && t.target == p) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Runs

struct Run {
  std::vector<LetterIndex> states;  // q0 q1 ... qn
  std::vector<LetterIndex> input;   // a1 ... an
  std::vector<std::size_t> transitions;

  std::size_t size() const { return input.size(); }
};

/// Fills in r.transitions from r.states and r.input; throws DomainError if
/// some step is not a transition of T.
inline void resolve_run(const Sst& T, Run& r) {
  if (r.states.size() != r.input.size() + 1) throw DomainError("run must have one more state than input letters");
  r.transitions.clear();
  for (std::size_t i = 0; i < r.input.size(); ++i) {
    auto t = find_transition(T, r.states[i], r.input[i], r.states[i + 1]);
    if (!t) throw DomainError("run step " + std::to_string(i + 1) + " is not a transition");
    r.transitions.push_back(*t);
  }
}

/// sigma_r, composed left to right: sigma_{r,i} = sigma_{r,i-1} rho(t_i).
/// The empty run gives the identity.
inline Substitution run_substitution(const Sst& T, const Run& r) {
  Run resolved = r;
  if (resolved.transitions.size() != resolved.input.size()) resolve_run(T, resolved);
  auto sigma = Substitution::identity(T.variables, T.output);
  for (auto ti : resolved.transitions) sigma = compose_substitutions(sigma, *T.transitions.at(ti).update);
  return sigma;
}

inline std::vector<LetterIndex> erase_variables(const SymbolString& s) {
  std::vector<LetterIndex> out;
  for (auto sym : s)
    if (!sym.is_variable()) out.push_back(sym.index);
  return out;
}

/// sigma_eps sigma_r F(q_n), or nothing when the run does not end where F is defined.
inline std::optional<Output> evaluate_run(const Sst& T, const Run& r) {
  LetterIndex last = r.states.empty() ? T.initial : r.states.back();
  if (!T.accepts_in(last)) return std::nullopt;
  auto sigma = run_substitution(T, r);
  Output out;
  for (const auto& comp : *T.output_fn[last]) {
    SymbolString vars;
    for (auto x : comp) vars.push_back(Symbol::var(x));
    out.emplace_back(T.output, erase_variables(apply_substitution(sigma, vars)));
  }
  return out;
}

/// Every accepting run of T on w, in lexicographic order of transition indices.
inline std::vector<Run> accepting_runs(const Sst& T, const std::vector<LetterIndex>& w) {
  std::vector<Run> done;
  Run cur;
  cur.states.push_back(T.initial);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == w.size()) {
      if (T.accepts_in(cur.states.back())) done.push_back(cur);
      return;
    }
    for (std::size_t ti = 0; ti < T.transitions.size(); ++ti) {
      const auto& t = T.transitions[ti];
      if (t.source != cur.states.back() || t.input != w[i]) continue;
      cur.states.push_back(t.target);
      cur.input.push_back(t.input);
      cur.transitions.push_back(ti);
      self(self, i + 1);
      cur.states.pop_back();
      cur.input.pop_back();
      cur.transitions.pop_back();
    }
  };
  rec(rec, 0);
  return done;
}

// Register valuations: val(X) is the current content of X. Reading t updates
// val'(X) = val(rho(t)(X)), which is the same as composing sigma_r.
using Valuation = std::vector<std::vector<LetterIndex>>;

inline Valuation step_valuation(const Substitution& rho, const Valuation& val) {
  Valuation next(val.size());
  for (std::size_t x = 0; x < val.size(); ++x) {
    auto& dst = next[x];
    for (auto sym : rho.image(static_cast<LetterIndex>(x))) {
      if (sym.is_variable())
        dst.insert(dst.end(), val[sym.index].begin(), val[sym.index].end());
      else
        dst.push_back(sym.index);
    }
  }
  return next;
}

inline OutputSet evaluate(const Sst& T, const std::vector<LetterIndex>& w) {
  std::map<LetterIndex, std::set<Valuation>> configs;
  configs[T.initial].insert(Valuation(T.variables->size()));
  for (auto a : w) {
    if (!T.input->contains(a)) throw DomainError("input letter index outside the input alphabet");
    std::map<LetterIndex, std::set<Valuation>> next;
    for (const auto& [q, vals] : configs)
      for (const auto& t : T.transitions) {
        if (t.source != q || t.input != a) continue;
        auto& bucket = next[t.target];
        for (const auto& val : vals) bucket.insert(step_valuation(*t.update, val));
      }
    configs = std::move(next);
    if (configs.empty()) break;
  }
  OutputSet out;
  for (const auto& [q, vals] : configs) {
    if (!T.accepts_in(q)) continue;
    for (const auto& val : vals) {
      Output o;
      for (const auto& comp : *T.output_fn[q]) {
        std::vector<LetterIndex> letters;
        for (auto x : comp) letters.insert(letters.end(), val[x].begin(), val[x].end());
        o.emplace_back(T.output, std::move(letters));
      }
      out.insert(std::move(o));
    }
  }
  return out;
}

inline OutputSet evaluate(const Sst& T, const Word& w) {
  require_same_alphabet(T.input, w.alphabet(), "evaluate");
  return evaluate(T, w.letters());
}

struct CopylessReport {
  bool copyless = true;
  std::optional<std::size_t> transition;
  std::optional<LetterIndex> variable;
};

/// Copyless: within each update, every variable occurs at most once across
/// all right-hand sides taken together.
inline CopylessReport is_copyless(const Sst& T) {
  for (std::size_t ti = 0; ti < T.transitions.size(); ++ti) {
    const auto& t = T.transitions[ti];
    if (!t.update) continue;
    std::vector<int> count(T.variables->size(), 0);
    for (const auto& image : t.update->images())
      for (auto sym : image)
        if (sym.is_variable() && ++count[sym.index] > 1) return {false, ti, sym.index};
  }
  return {};
}

} // namespace sstkit
