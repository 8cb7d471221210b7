#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sstkit {

enum class VerdictKind { holds, counterexample, resource_limit };

inline std::string_view to_string(VerdictKind k) {
  switch (k) {
  case VerdictKind::holds: return "holds";
  case VerdictKind::counterexample: return "counterexample";
  case VerdictKind::resource_limit: return "resource-limit";
  }
  return "?";
}

/// A replayable witness: an input word (or HDT0L label sequence) and the
/// distinct outputs it produces. `outputs` are rendered words ("~" is the
/// empty word); an absent output means the word is outside that machine's domain.
struct Witness {
  enum class Kind { input_word, label_sequence };
  Kind kind = Kind::input_word;
  std::vector<std::string> input;
  std::vector<std::size_t> indices;
  std::vector<std::optional<std::string>> outputs;
  std::string detail;
};

struct Verdict {
  VerdictKind kind = VerdictKind::holds;
  std::optional<Witness> witness;
  std::string note;
  /// Budget consumed: sequence length for the bounded engine, chain depth for
  /// the ideal engine.
  std::size_t depth = 0;

  static Verdict holds(std::string note = {}, std::size_t depth = 0) {
    return Verdict{VerdictKind::holds, std::nullopt, std::move(note), depth};
  }
  static Verdict counterexample(Witness w, std::string note = {}, std::size_t depth = 0) {
    return Verdict{VerdictKind::counterexample, std::move(w), std::move(note), depth};
  }
  static Verdict resource_limit(std::string note, std::size_t depth = 0) {
    return Verdict{VerdictKind::resource_limit, std::nullopt, std::move(note), depth};
  }

  bool is_holds() const noexcept { return kind == VerdictKind::holds; }
  bool is_counterexample() const noexcept { return kind == VerdictKind::counterexample; }
  bool is_resource_limit() const noexcept { return kind == VerdictKind::resource_limit; }
};

} // namespace sstkit
