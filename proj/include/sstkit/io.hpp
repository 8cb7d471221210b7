#pragma once

// Text formats for machines and instances.
//
//   sst                                   hdt0l
//   input: 0 1                            alphabet A: a b c d
//   output: e f                           alphabet B: e f
//   states: q0 q1                         v: c
//   initial: q0                           w: c d
//   final: q1                             pair 1: h: a -> a ; c -> a c b ; ... | g: ...
//   vars: X Y                             final: h: a -> e ; ... | g: ...
//   arity: 2
//   trans: q0 0 q1 { X := e ; Y := ~ }
//   out: q1 = X | Y
//
// Tokens are separated by whitespace, `~` is the empty word and a line whose
// first visible character is `#` is a comment. A transition block may run
// over several lines until its closing brace.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sstkit/errors.hpp"
#include "sstkit/hdt0l.hpp"
#include "sstkit/sst.hpp"

namespace sstkit {

namespace detail {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Line {
  std::vector<Token> tokens;
  std::size_t line = 0;
};

inline std::vector<Line> tokenize(std::string_view text, bool join_braces) {
  std::vector<Line> lines;
  std::size_t lineno = 0, pos = 0;
  bool open = false;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++lineno;
    pos = end + 1;
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!open) lines.push_back({{}, lineno});
    auto& cur = lines.back();
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      cur.tokens.push_back({std::string(raw.substr(i, j - i)), lineno, i + 1});
      i = j;
    }
    if (join_braces) {
      for (const auto& t : cur.tokens) {
        if (t.text == "{") open = true;
        if (t.text == "}") open = false;
      }
    }
    if (end == text.size()) break;
  }
  if (open) throw ParseError(lineno, 1, "unterminated '{' block");
  return lines;
}

[[noreturn]] inline void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

[[noreturn]] inline void fail_at_end(const Line& l, const std::string& msg) {
  const auto& last = l.tokens.back();
  throw ParseError(last.line, last.column + last.text.size(), msg);
}

inline std::vector<std::string> token_texts(const Line& l, std::size_t from) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < l.tokens.size(); ++i) out.push_back(l.tokens[i].text);
  return out;
}

inline AlphabetPtr parse_alphabet(const Line& l, std::size_t from, const std::string& id) {
  try {
    return make_alphabet(id, token_texts(l, from));
  } catch (const ValidationError& e) {
    fail(l.tokens[std::min(from, l.tokens.size() - 1)], e.what());
  }
}

inline LetterIndex lookup(const Alphabet& A, const Token& t, const std::string& what) {
  auto i = A.find(t.text);
  if (!i) fail(t, "unknown " + what + " '" + t.text + "'");
  return *i;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

inline std::string render_tokens(const std::vector<std::string>& toks) { return toks.empty() ? "~" : join(toks); }

} // namespace detail

// ---------------------------------------------------------------------------
// SST files

inline Sst parse_sst(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text, true);
  if (lines.empty() || lines.front().tokens.size() != 1 || lines.front().tokens[0].text != "sst")
    throw ParseError(lines.empty() ? 1 : lines.front().line, 1, "expected header 'sst'");

  Sst T;
  std::optional<Token> initial_tok;
  std::vector<Token> final_toks;
  bool have_final = false, have_arity = false;
  std::vector<const Line*> trans_lines, out_lines;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const Token& kw = l.tokens.front();
    auto once = [&](bool present) {
      if (present) fail(kw, "duplicate '" + kw.text + "' line");
    };
    if (kw.text == "input:") {
      once(T.input != nullptr);
      T.input = parse_alphabet(l, 1, "Sigma");
    } else if (kw.text == "output:") {
      once(T.output != nullptr);
      T.output = parse_alphabet(l, 1, "Gamma");
    } else if (kw.text == "states:") {
      once(T.states != nullptr);
      T.states = parse_alphabet(l, 1, "Q");
    } else if (kw.text == "vars:") {
      once(T.variables != nullptr);
      T.variables = parse_alphabet(l, 1, "X");
    } else if (kw.text == "initial:") {
      once(initial_tok.has_value());
      if (l.tokens.size() != 2) fail(kw, "'initial:' takes exactly one state");
      initial_tok = l.tokens[1];
    } else if (kw.text == "final:") {
      once(have_final);
      have_final = true;
      final_toks.assign(l.tokens.begin() + 1, l.tokens.end());
    } else if (kw.text == "arity:") {
      once(have_arity);
      have_arity = true;
      if (l.tokens.size() != 2 || (l.tokens[1].text != "1" && l.tokens[1].text != "2"))
        fail(kw, "'arity:' takes 1 or 2");
      T.arity = l.tokens[1].text == "2" ? 2 : 1;
    } else if (kw.text == "trans:") {
      trans_lines.push_back(&l);
    } else if (kw.text == "out:") {
      out_lines.push_back(&l);
    } else {
      fail(kw, "unknown directive '" + kw.text + "'");
    }
  }
  const Line& head = lines.front();
  if (!T.input) fail(head.tokens[0], "missing 'input:' line");
  if (!T.output) fail(head.tokens[0], "missing 'output:' line");
  if (!T.states) fail(head.tokens[0], "missing 'states:' line");
  if (!T.variables) fail(head.tokens[0], "missing 'vars:' line");
  if (!initial_tok) fail(head.tokens[0], "missing 'initial:' line");
  for (const auto& tok : T.output->tokens())
    if (T.variables->find(tok)) throw ValidationError("token '" + tok + "' is both an output letter and a variable");

  T.initial = lookup(*T.states, *initial_tok, "state");
  T.final.assign(T.states->size(), false);
  for (const auto& t : final_toks) T.final[lookup(*T.states, t, "state")] = true;
  T.output_fn.assign(T.states->size(), std::nullopt);

  for (const Line* lp : trans_lines) {
    const Line& l = *lp;
    const auto& tk = l.tokens;
    if (tk.size() < 6 || tk[4].text != "{") fail(tk[0], "expected 'trans: q a q' { ... }'");
    if (tk.back().text != "}") fail_at_end(l, "expected '}' at end of transition");
    Transition t;
    t.source = lookup(*T.states, tk[1], "state");
    t.input = lookup(*T.input, tk[2], "input letter");
    t.target = lookup(*T.states, tk[3], "state");
    std::vector<std::optional<SymbolString>> images(T.variables->size());
    std::size_t i = 5;
    while (i + 1 < tk.size()) {
      const Token& var = tk[i];
      LetterIndex x = lookup(*T.variables, var, "variable");
      if (i + 1 >= tk.size() || tk[i + 1].text != ":=") fail(var, "expected ':=' after variable");
      i += 2;
      SymbolString rhs;
      bool saw_eps = false, saw_sym = false;
      for (; i < tk.size() && tk[i].text != ";" && tk[i].text != "}"; ++i) {
        const Token& s = tk[i];
        if (s.text == "~") {
          saw_eps = true;
          continue;
        }
        saw_sym = true;
        if (auto v = T.variables->find(s.text))
          rhs.push_back(Symbol::var(*v));
        else if (auto a = T.output->find(s.text))
          rhs.push_back(Symbol::out(*a));
        else
          fail(s, "unknown symbol '" + s.text + "' (neither an output letter nor a variable)");
      }
      if (saw_eps && saw_sym) fail(var, "'~' must stand alone on a right-hand side");
      if (!saw_eps && !saw_sym) fail(var, "empty right-hand side (write '~' for the empty word)");
      if (images[x]) fail(var, "variable '" + var.text + "' assigned twice");
      images[x] = std::move(rhs);
      if (i < tk.size() && tk[i].text == ";") ++i;
    }
    std::vector<SymbolString> full;
    for (LetterIndex x = 0; x < images.size(); ++x) {
      if (!images[x])
        throw ValidationError("transition (" + tk[1].text + ", " + tk[2].text + ", " + tk[3].text +
                              ") does not assign variable '" + T.variables->token(x) + "'");
      full.push_back(std::move(*images[x]));
    }
    t.update = Substitution(T.variables, T.output, std::move(full));
    T.transitions.push_back(std::move(t));
  }

  for (const Line* lp : out_lines) {
    const Line& l = *lp;
    const auto& tk = l.tokens;
    if (tk.size() < 4 || tk[2].text != "=") fail(tk[0], "expected 'out: q = ...'");
    LetterIndex q = lookup(*T.states, tk[1], "state");
    if (T.output_fn[q]) fail(tk[1], "output already defined for state '" + tk[1].text + "'");
    std::vector<VarString> comps(1);
    bool eps = false;
    for (std::size_t i = 3; i < tk.size(); ++i) {
      if (tk[i].text == "|") {
        comps.emplace_back();
        eps = false;
        continue;
      }
      if (tk[i].text == "~") {
        eps = true;
        continue;
      }
      (void)eps;
      comps.back().push_back(lookup(*T.variables, tk[i], "variable"));
    }
    if (comps.size() != static_cast<std::size_t>(T.arity))
      fail(tk[0], "output has " + std::to_string(comps.size()) + " component(s), arity is " + std::to_string(T.arity));
    T.output_fn[q] = std::move(comps);
  }
  validate(T);
  return T;
}

inline std::string print_sst(const Sst& T) {
  using detail::join;
  std::ostringstream os;
  os << "sst\n";
  os << "input: " << join(T.input->tokens()) << "\n";
  os << "output: " << join(T.output->tokens()) << "\n";
  os << "states: " << join(T.states->tokens()) << "\n";
  os << "initial: " << T.states->token(T.initial) << "\n";
  std::vector<std::string> fin;
  for (LetterIndex q = 0; q < T.final.size(); ++q)
    if (T.final[q]) fin.push_back(T.states->token(q));
  os << "final: " << join(fin) << "\n";
  os << "vars: " << join(T.variables->tokens()) << "\n";
  if (T.arity != 1) os << "arity: " << T.arity << "\n";
  for (const auto& t : T.transitions) {
    os << "trans: " << T.states->token(t.source) << " " << T.input->token(t.input) << " "
       << T.states->token(t.target) << " {";
    for (LetterIndex x = 0; x < T.variables->size(); ++x) {
      if (x) os << " ;";
      os << " " << T.variables->token(x) << " := " << t.update->render(t.update->image(x));
    }
    os << " }\n";
  }
  for (LetterIndex q = 0; q < T.output_fn.size(); ++q) {
    if (!T.output_fn[q]) continue;
    std::vector<std::string> comps;
    for (const auto& c : *T.output_fn[q]) {
      std::vector<std::string> toks;
      for (auto x : c) toks.push_back(T.variables->token(x));
      comps.push_back(detail::render_tokens(toks));
    }
    os << "out: " << T.states->token(q) << " = " << join(comps, " | ") << "\n";
  }
  return os.str();
}

/// Same machine with states, variables and transitions sorted by token.
inline Sst canonicalize(const Sst& T) {
  auto order = [](const Alphabet& A) {
    std::vector<LetterIndex> idx(A.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](LetterIndex a, LetterIndex b) { return A.token(a) < A.token(b); });
    return idx;
  };
  auto qs = order(*T.states), xs = order(*T.variables);
  std::vector<LetterIndex> qmap(qs.size()), xmap(xs.size());
  std::vector<std::string> qtok, xtok;
  for (LetterIndex i = 0; i < qs.size(); ++i) {
    qmap[qs[i]] = i;
    qtok.push_back(T.states->token(qs[i]));
  }
  for (LetterIndex i = 0; i < xs.size(); ++i) {
    xmap[xs[i]] = i;
    xtok.push_back(T.variables->token(xs[i]));
  }
  Sst C;
  C.input = T.input;
  C.output = T.output;
  C.states = make_alphabet(T.states->id(), qtok);
  C.variables = make_alphabet(T.variables->id(), xtok);
  C.initial = qmap[T.initial];
  C.arity = T.arity;
  C.final.assign(qs.size(), false);
  C.output_fn.assign(qs.size(), std::nullopt);
  for (LetterIndex q = 0; q < qs.size(); ++q) {
    C.final[qmap[q]] = T.final[q];
    if (T.output_fn[q]) {
      auto f = *T.output_fn[q];
      for (auto& comp : f)
        for (auto& x : comp) x = xmap[x];
      C.output_fn[qmap[q]] = std::move(f);
    }
  }
  if (!T.variable_tags.empty()) {
    C.variable_tags.resize(xs.size());
    for (LetterIndex x = 0; x < xs.size(); ++x) C.variable_tags[xmap[x]] = T.variable_tags[x];
  }
  for (const auto& t : T.transitions) {
    std::vector<SymbolString> images(xs.size());
    for (LetterIndex x = 0; x < xs.size(); ++x) {
      SymbolString s = t.update->image(x);
      for (auto& sym : s)
        if (sym.is_variable()) sym.index = xmap[sym.index];
      images[xmap[x]] = std::move(s);
    }
    C.transitions.push_back({qmap[t.source], t.input, qmap[t.target], Substitution(C.variables, C.output, images)});
  }
  std::sort(C.transitions.begin(), C.transitions.end(), [&](const Transition& a, const Transition& b) {
    auto key = [&](const Transition& t) {
      return std::make_tuple(C.states->token(t.source), C.input->token(t.input), C.states->token(t.target));
    };
    return key(a) < key(b);
  });
  return C;
}

/// Token-level identity of the two models, in their stored order. Alphabet
/// ids and product variable tags are not part of the comparison.
inline bool structurally_equal(const Sst& a, const Sst& b) { return print_sst(a) == print_sst(b); }

// ---------------------------------------------------------------------------
// HDT0L files

namespace detail {

// Parses `h: a -> rhs ; ... | g: a -> rhs ; ...` starting at tokens[i].
inline std::pair<Morphism, Morphism> parse_pair_body(const Line& l, std::size_t i, const AlphabetPtr& src,
                                                     const AlphabetPtr& dst, const std::string& what) {
  const auto& tk = l.tokens;
  auto side = [&](const std::string& name) {
    if (i >= tk.size() || tk[i].text != name + ":") {
      if (i >= tk.size()) fail_at_end(l, "expected '" + name + ":'");
      fail(tk[i], "expected '" + name + ":'");
    }
    ++i;
    std::vector<std::optional<std::vector<LetterIndex>>> images(src->size());
    while (i < tk.size() && tk[i].text != "|") {
      const Token& letter = tk[i];
      LetterIndex a = lookup(*src, letter, "letter of A");
      if (i + 1 >= tk.size() || tk[i + 1].text != "->") fail(letter, "expected '->' after letter");
      i += 2;
      std::vector<LetterIndex> rhs;
      bool eps = false, sym = false;
      for (; i < tk.size() && tk[i].text != ";" && tk[i].text != "|"; ++i) {
        if (tk[i].text == "~") {
          eps = true;
          continue;
        }
        sym = true;
        rhs.push_back(lookup(*dst, tk[i], "letter of " + dst->id()));
      }
      if (eps && sym) fail(letter, "'~' must stand alone on a right-hand side");
      if (!eps && !sym) fail(letter, "empty image (write '~' for the empty word)");
      if (images[a]) fail(letter, "image of '" + letter.text + "' given twice");
      images[a] = std::move(rhs);
      if (i < tk.size() && tk[i].text == ";") ++i;
    }
    std::vector<std::vector<LetterIndex>> full;
    for (LetterIndex a = 0; a < images.size(); ++a) {
      if (!images[a])
        throw ValidationError(what + ": " + name + " has no image for letter '" + src->token(a) + "'");
      full.push_back(std::move(*images[a]));
    }
    return Morphism(src, dst, std::move(full));
  };
  Morphism h = side("h");
  if (i >= tk.size()) fail_at_end(l, "expected '| g:'");
  ++i;  // '|'
  Morphism g = side("g");
  return {std::move(h), std::move(g)};
}

inline std::string render_morphism(const Morphism& f) {
  std::vector<std::string> parts;
  for (LetterIndex a = 0; a < f.source()->size(); ++a) {
    std::vector<std::string> toks;
    for (auto b : f.image(a)) toks.push_back(f.target()->token(b));
    parts.push_back(f.source()->token(a) + " -> " + render_tokens(toks));
  }
  return join(parts, " ; ");
}

} // namespace detail

inline Hdt0lInstance parse_hdt0l(std::string_view text) {
  using namespace detail;
  auto lines = tokenize(text, false);
  if (lines.empty() || lines.front().tokens.size() != 1 || lines.front().tokens[0].text != "hdt0l")
    throw ParseError(lines.empty() ? 1 : lines.front().line, 1, "expected header 'hdt0l'");
  AlphabetPtr A, B;
  const Line *vline = nullptr, *wline = nullptr, *fline = nullptr;
  std::vector<const Line*> pair_lines;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const auto& kw = l.tokens[0];
    if (kw.text == "alphabet") {
      if (l.tokens.size() < 2 || (l.tokens[1].text != "A:" && l.tokens[1].text != "B:"))
        fail(kw, "expected 'alphabet A:' or 'alphabet B:'");
      auto& slot = l.tokens[1].text == "A:" ? A : B;
      if (slot) fail(kw, "duplicate '" + kw.text + " " + l.tokens[1].text + "' line");
      slot = parse_alphabet(l, 2, l.tokens[1].text == "A:" ? "A" : "B");
    } else if (kw.text == "v:" || kw.text == "w:") {
      auto& slot = kw.text == "v:" ? vline : wline;
      if (slot) fail(kw, "duplicate '" + kw.text + "' line");
      slot = &l;
    } else if (kw.text == "pair") {
      pair_lines.push_back(&l);
    } else if (kw.text == "final:") {
      if (fline) fail(kw, "duplicate 'final:' line");
      fline = &l;
    } else {
      fail(kw, "unknown directive '" + kw.text + "'");
    }
  }
  const Token& head = lines.front().tokens[0];
  if (!A) fail(head, "missing 'alphabet A:' line");
  if (!B) fail(head, "missing 'alphabet B:' line");
  if (!vline) fail(head, "missing 'v:' line");
  if (!wline) fail(head, "missing 'w:' line");
  if (!fline) fail(head, "missing 'final:' line");

  auto axiom = [&](const Line& l) {
    std::vector<LetterIndex> u;
    bool eps = false;
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      if (l.tokens[i].text == "~") {
        eps = true;
        continue;
      }
      u.push_back(lookup(*A, l.tokens[i], "letter of A"));
    }
    if (eps && !u.empty()) fail(l.tokens[0], "'~' must stand alone");
    if (!eps && u.empty()) fail(l.tokens[0], "empty axiom (write '~' for the empty word)");
    return Word(A, std::move(u));
  };

  std::vector<MorphismPair> pairs;
  for (const Line* lp : pair_lines) {
    const auto& tk = lp->tokens;
    if (tk.size() < 2) fail(tk[0], "expected 'pair <label>:'");
    std::string label;
    std::size_t i;
    if (tk[1].text.size() > 1 && tk[1].text.back() == ':') {
      label = tk[1].text.substr(0, tk[1].text.size() - 1);
      i = 2;
    } else {
      if (tk.size() < 3 || tk[2].text != ":") fail(tk[1], "expected ':' after label");
      label = tk[1].text;
      i = 3;
    }
    auto [h, g] = parse_pair_body(*lp, i, A, A, "pair '" + label + "'");
    pairs.push_back({label, std::move(h), std::move(g)});
  }
  auto [h, g] = parse_pair_body(*fline, 1, A, B, "final pair");
  Hdt0lInstance I{A, B, std::move(pairs), std::move(h), std::move(g), axiom(*vline), axiom(*wline)};
  validate(I);
  return I;
}

inline std::string print_hdt0l(const Hdt0lInstance& I) {
  using namespace detail;
  std::ostringstream os;
  os << "hdt0l\n";
  os << "alphabet A: " << join(I.inner->tokens()) << "\n";
  os << "alphabet B: " << join(I.outer->tokens()) << "\n";
  os << "v: " << render_tokens(I.v.tokens()) << "\n";
  os << "w: " << render_tokens(I.w.tokens()) << "\n";
  for (const auto& p : I.pairs)
    os << "pair " << p.label << ": h: " << render_morphism(p.h) << " | g: " << render_morphism(p.g) << "\n";
  os << "final: h: " << render_morphism(I.h) << " | g: " << render_morphism(I.g) << "\n";
  return os.str();
}

inline bool structurally_equal(const Hdt0lInstance& a, const Hdt0lInstance& b) {
  return print_hdt0l(a) == print_hdt0l(b);
}

} // namespace sstkit
