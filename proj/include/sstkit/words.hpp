#pragma once

// Alphabets, words, substitutions and morphisms.
//
// Letters are tokens (non-empty, printable, no whitespace) owned by an
// alphabet. Inside words a letter is stored as its index in the owning
// alphabet; two letters are equal iff their alphabet ids and tokens agree.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sstkit/errors.hpp"

namespace sstkit {

using LetterIndex = std::uint32_t;

/// Tokens with a fixed meaning in the text formats; they cannot name letters.
inline bool is_reserved_token(std::string_view token) {
  static constexpr std::string_view reserved[] = {"~", ";", "|", "{", "}", ":=", "=", "->"};
  return std::find(std::begin(reserved), std::end(reserved), token) != std::end(reserved);
}

inline bool is_valid_token(std::string_view token) {
  if (token.empty() || is_reserved_token(token)) return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u > 0x20 && u != 0x7f;
  });
}

class Alphabet {
public:
  Alphabet(std::string id, std::vector<std::string> tokens)
      : id_(std::move(id)), tokens_(std::move(tokens)) {
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (!is_valid_token(tokens_[i]))
        throw ValidationError("alphabet '" + id_ + "': invalid token '" + tokens_[i] + "'");
      if (!index_.emplace(tokens_[i], static_cast<LetterIndex>(i)).second)
        throw ValidationError("alphabet '" + id_ + "': duplicate token '" + tokens_[i] + "'");
    }
  }

  const std::string& id() const noexcept { return id_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& token(LetterIndex i) const { return tokens_.at(i); }

  std::optional<LetterIndex> find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  LetterIndex index_of(std::string_view token) const {
    if (auto i = find(token)) return *i;
    throw DomainError("'" + std::string(token) + "' is not a letter of alphabet '" + id_ + "'");
  }

  bool contains(LetterIndex i) const noexcept { return i < tokens_.size(); }

  /// Same id and same tokens in the same order.
  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.id_ == b.id_ && a.tokens_ == b.tokens_;
  }

private:
  std::string id_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, LetterIndex> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(std::string id, std::vector<std::string> tokens) {
  return std::make_shared<const Alphabet>(std::move(id), std::move(tokens));
}

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, std::string_view what) {
  if (!same_alphabet(a, b))
    throw DomainError(std::string(what) + ": alphabet mismatch ('" + (a ? a->id() : "null") + "' vs '" +
                      (b ? b->id() : "null") + "')");
}

struct Letter {
  AlphabetPtr alphabet;
  LetterIndex index = 0;

  const std::string& token() const { return alphabet->token(index); }

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.alphabet->id() == b.alphabet->id() && a.token() == b.token();
  }
};

/// A finite word over one alphabet; the empty word is epsilon.
class Word {
public:
  explicit Word(AlphabetPtr alphabet, std::vector<LetterIndex> letters = {})
      : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    for (auto l : letters_)
      if (!alphabet_->contains(l))
        throw DomainError("letter index " + std::to_string(l) + " outside alphabet '" + alphabet_->id() + "'");
  }

  static Word from_tokens(AlphabetPtr alphabet, const std::vector<std::string>& tokens) {
    std::vector<LetterIndex> letters;
    letters.reserve(tokens.size());
    for (const auto& t : tokens) letters.push_back(alphabet->index_of(t));
    return Word(std::move(alphabet), std::move(letters));
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const std::vector<LetterIndex>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return Letter{alphabet_, letters_.at(i)}; }

  Word operator+(const Word& other) const {
    require_same_alphabet(alphabet_, other.alphabet_, "word concatenation");
    std::vector<LetterIndex> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word(alphabet_, std::move(out));
  }

  std::vector<std::string> tokens() const {
    std::vector<std::string> out;
    out.reserve(letters_.size());
    for (auto l : letters_) out.push_back(alphabet_->token(l));
    return out;
  }

  /// Space-separated tokens, or "~" for the empty word.
  std::string str() const {
    if (letters_.empty()) return "~";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += ' ';
      out += alphabet_->token(letters_[i]);
    }
    return out;
  }

  friend bool operator==(const Word& a, const Word& b) {
    if (same_alphabet(a.alphabet_, b.alphabet_)) return a.letters_ == b.letters_;
    return a.alphabet_->id() == b.alphabet_->id() && a.tokens() == b.tokens();
  }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (same_alphabet(a.alphabet_, b.alphabet_)) return a.letters_ <=> b.letters_;
    if (auto c = a.alphabet_->id() <=> b.alphabet_->id(); c != 0) return c;
    return a.tokens() <=> b.tokens();
  }

private:
  AlphabetPtr alphabet_;
  std::vector<LetterIndex> letters_;
};

// ---------------------------------------------------------------------------
// Substitutions  sigma : X -> (Gamma u X)*

/// One symbol on the right-hand side of a variable update.
struct Symbol {
  enum class Kind : std::uint8_t { output, variable };
  Kind kind = Kind::output;
  LetterIndex index = 0;

  static Symbol out(LetterIndex i) { return {Kind::output, i}; }
  static Symbol var(LetterIndex i) { return {Kind::variable, i}; }
  bool is_variable() const noexcept { return kind == Kind::variable; }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using SymbolString = std::vector<Symbol>;

class Substitution {
public:
  Substitution(AlphabetPtr variables, AlphabetPtr outputs, std::vector<SymbolString> images)
      : variables_(std::move(variables)), outputs_(std::move(outputs)), images_(std::move(images)) {
    if (images_.size() != variables_->size())
      throw ValidationError("substitution must assign every variable exactly once (" +
                            std::to_string(images_.size()) + " images for " +
                            std::to_string(variables_->size()) + " variables)");
    for (const auto& image : images_) check_string(image);
  }

  static Substitution identity(AlphabetPtr variables, AlphabetPtr outputs) {
    std::vector<SymbolString> images(variables->size());
    for (LetterIndex x = 0; x < images.size(); ++x) images[x] = {Symbol::var(x)};
    return Substitution(std::move(variables), std::move(outputs), std::move(images));
  }

  /// sigma_epsilon: every variable replaced by its initial value, the empty word.
  static Substitution erasing(AlphabetPtr variables, AlphabetPtr outputs) {
    std::vector<SymbolString> images(variables->size());
    return Substitution(std::move(variables), std::move(outputs), std::move(images));
  }

  const AlphabetPtr& variables() const noexcept { return variables_; }
  const AlphabetPtr& outputs() const noexcept { return outputs_; }
  const std::vector<SymbolString>& images() const noexcept { return images_; }
  const SymbolString& image(LetterIndex x) const { return images_.at(x); }

  /// Throws DomainError unless every symbol of s is a letter of Gamma or a variable of X.
  void check_string(const SymbolString& s) const {
    for (auto sym : s) {
      if (sym.is_variable() ? !variables_->contains(sym.index) : !outputs_->contains(sym.index))
        throw DomainError(std::string(sym.is_variable() ? "unknown variable" : "unknown output letter") +
                          " index " + std::to_string(sym.index));
    }
  }

  std::string render(const SymbolString& s) const {
    if (s.empty()) return "~";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ' ';
      out += s[i].is_variable() ? variables_->token(s[i].index) : outputs_->token(s[i].index);
    }
    return out;
  }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return same_alphabet(a.variables_, b.variables_) && same_alphabet(a.outputs_, b.outputs_) &&
           a.images_ == b.images_;
  }

private:
  AlphabetPtr variables_;
  AlphabetPtr outputs_;
  std::vector<SymbolString> images_;
};

/// The hat extension: letters of Gamma are fixed, each variable X becomes sigma(X).
inline SymbolString apply_substitution(const Substitution& sigma, std::span<const Symbol> w) {
  SymbolString out;
  out.reserve(w.size());
  for (auto sym : w) {
    if (!sym.is_variable()) {
      out.push_back(sym);
      continue;
    }
    if (!sigma.variables()->contains(sym.index))
      throw DomainError("unknown variable index " + std::to_string(sym.index) + " in substituted word");
    const auto& image = sigma.image(sym.index);
    out.insert(out.end(), image.begin(), image.end());
  }
  return out;
}

/// (sigma1 sigma2)(X) = hat(sigma1)(sigma2(X)).
inline Substitution compose_substitutions(const Substitution& sigma1, const Substitution& sigma2) {
  require_same_alphabet(sigma1.variables(), sigma2.variables(), "substitution composition (variables)");
  require_same_alphabet(sigma1.outputs(), sigma2.outputs(), "substitution composition (outputs)");
  std::vector<SymbolString> images;
  images.reserve(sigma2.images().size());
  for (const auto& image : sigma2.images()) images.push_back(apply_substitution(sigma1, image));
  return Substitution(sigma1.variables(), sigma1.outputs(), std::move(images));
}

// ---------------------------------------------------------------------------
// Morphisms  f : source* -> target*

class Morphism {
public:
  Morphism(AlphabetPtr source, AlphabetPtr target, std::vector<std::vector<LetterIndex>> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->size())
      throw ValidationError("morphism must define an image for every letter of '" + source_->id() + "'");
    for (const auto& image : images_)
      for (auto l : image)
        if (!target_->contains(l))
          throw DomainError("morphism image uses a letter outside '" + target_->id() + "'");
  }

  static Morphism identity(const AlphabetPtr& alphabet) {
    std::vector<std::vector<LetterIndex>> images(alphabet->size());
    for (LetterIndex a = 0; a < images.size(); ++a) images[a] = {a};
    return Morphism(alphabet, alphabet, std::move(images));
  }

  const AlphabetPtr& source() const noexcept { return source_; }
  const AlphabetPtr& target() const noexcept { return target_; }
  const std::vector<std::vector<LetterIndex>>& images() const noexcept { return images_; }
  const std::vector<LetterIndex>& image(LetterIndex a) const { return images_.at(a); }

  /// Appends f(w) to out without alphabet checks; w must be over the source.
  void apply_into(std::span<const LetterIndex> w, std::vector<LetterIndex>& out) const {
    for (auto a : w) {
      const auto& image = images_[a];
      out.insert(out.end(), image.begin(), image.end());
    }
  }

  std::vector<LetterIndex> apply_raw(std::span<const LetterIndex> w) const {
    std::vector<LetterIndex> out;
    apply_into(w, out);
    return out;
  }

  Word operator()(const Word& w) const {
    require_same_alphabet(source_, w.alphabet(), "morphism application");
    return Word(target_, apply_raw(w.letters()));
  }

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return same_alphabet(a.source_, b.source_) && same_alphabet(a.target_, b.target_) && a.images_ == b.images_;
  }

private:
  AlphabetPtr source_;
  AlphabetPtr target_;
  std::vector<std::vector<LetterIndex>> images_;
};

inline Word apply_morphism(const Morphism& f, const Word& w) { return f(w); }

/// (f o g)(a) = f(g(a)); g's target must be f's source.
inline Morphism compose_morphisms(const Morphism& f, const Morphism& g) {
  require_same_alphabet(g.target(), f.source(), "morphism composition");
  std::vector<std::vector<LetterIndex>> images;
  images.reserve(g.images().size());
  for (const auto& image : g.images()) images.push_back(f.apply_raw(image));
  return Morphism(g.source(), f.target(), std::move(images));
}

} // namespace sstkit
