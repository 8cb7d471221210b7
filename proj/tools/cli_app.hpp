#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sstkit/sstkit.hpp"

namespace sstkit::cli {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write '" + path + "'");
  out << text;
  if (!out) throw FileError("write to '" + path + "' failed");
}

inline Sst load_sst(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_sst(text);
  } catch (const ParseError& e) {
    throw FileError(path + ":" + e.what());
  } catch (const ValidationError& e) {
    throw FileError(path + ": " + e.what());
  }
}

inline Hdt0lInstance load_hdt0l(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_hdt0l(text);
  } catch (const ParseError& e) {
    throw FileError(path + ":" + e.what());
  } catch (const ValidationError& e) {
    throw FileError(path + ": " + e.what());
  }
}

/// Splits a word argument into letter tokens. Tokens are separated by
/// whitespace or commas; a single unseparated string is read letter by letter
/// when every token of the alphabet is one character long. `~` is the empty word.
inline std::vector<LetterIndex> parse_word(const Alphabet& A, const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  if (parts.size() == 1 && parts[0] == "~") parts.clear();
  if (parts.size() == 1 && !A.find(parts[0])) {
    bool single = std::all_of(A.tokens().begin(), A.tokens().end(), [](const std::string& t) { return t.size() == 1; });
    if (single) {
      std::string s = parts[0];
      parts.clear();
      for (char c : s) parts.emplace_back(1, c);
    }
  }
  std::vector<LetterIndex> w;
  for (const auto& p : parts) {
    auto a = A.find(p);
    if (!a) throw DomainError("'" + p + "' is not a letter of the input alphabet");
    w.push_back(*a);
  }
  return w;
}

struct EngineArgs {
  std::string engine = "ideal";
  std::size_t max_len = 8;
  std::size_t max_steps = 25;
  double timeout = 0;
  bool json = false;

  EngineOptions options() const {
    EngineOptions o;
    o.engine = engine == "bounded" ? Engine::bounded : Engine::ideal;
    o.max_len = max_len;
    o.ideal.max_chain_steps = max_steps;
    if (timeout > 0) o.ideal.time_limit = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
    return o;
  }
  std::string budget() const {
    return engine == "bounded" ? "max-len " + std::to_string(max_len) : "max-steps " + std::to_string(max_steps);
  }
};

inline void add_engine_flags(CLI::App* sub, EngineArgs& e) {
  sub->add_option("--engine", e.engine, "decision engine")->check(CLI::IsMember({"bounded", "ideal"}));
  sub->add_option("--max-len", e.max_len, "bounded engine: longest label sequence searched")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--max-steps", e.max_steps, "ideal engine: chain step cap")->check(CLI::PositiveNumber);
  sub->add_option("--timeout", e.timeout, "ideal engine: wall-clock limit in seconds (0 = none)")
      ->check(CLI::NonNegativeNumber);
  sub->add_flag("--json", e.json, "print the report as JSON");
}

inline int emit(const Report& r, bool json, std::ostream& out) {
  if (json)
    out << to_json(r).dump(2) << "\n";
  else
    out << to_text(r);
  return exit_code(r.verdict.kind);
}

/// Runs the command line `args` (without the program name) and returns the
/// process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streaming string transducer toolkit", "sstkit"};
  app.require_subcommand(1);

  std::string file1, file2, out1, out2, word;
  EngineArgs eng;

  auto* eval = app.add_subcommand("eval", "evaluate a transducer on one input word");
  eval->add_option("sst", file1)->required();
  eval->add_option("--word", word, "input word (tokens separated by spaces or commas)")->required();

  auto* copyless = app.add_subcommand("copyless", "check the copyless restriction");
  copyless->add_option("sst", file1)->required();

  auto* prod = app.add_subcommand("product", "write the product transducer");
  prod->add_option("sst1", file1)->required();
  prod->add_option("sst2", file2)->required();
  prod->add_option("-o,--output", out1)->required();

  auto* equiv = app.add_subcommand("equiv", "decide equivalence of two deterministic transducers");
  equiv->add_option("sst1", file1)->required();
  equiv->add_option("sst2", file2)->required();
  add_engine_flags(equiv, eng);

  auto* functional = app.add_subcommand("functional", "decide functionality");
  functional->add_option("sst", file1)->required();
  add_engine_flags(functional, eng);

  auto* diagonal = app.add_subcommand("diagonal", "decide diagonality of a transducer with pair outputs");
  diagonal->add_option("bisst", file1)->required();
  add_engine_flags(diagonal, eng);

  auto* reduce = app.add_subcommand("reduce", "run a reduction");
  reduce->require_subcommand(1);
  auto* to_hdt0l = reduce->add_subcommand("to-hdt0l", "pair-output transducer to HDT0L instance");
  to_hdt0l->add_option("bisst", file1)->required();
  to_hdt0l->add_option("-o,--output", out1)->required();
  auto* to_sst = reduce->add_subcommand("to-sst", "HDT0L instance to two transducers");
  to_sst->add_option("hdt0l", file1)->required();
  to_sst->add_option("-o,--output", [&](const CLI::results_t& r) {
            if (r.size() != 2) return false;
            out1 = r[0];
            out2 = r[1];
            return true;
          }, "two output files")
      ->expected(2)
      ->type_name("OUT1 OUT2")
      ->required();

  auto* hdt0l = app.add_subcommand("hdt0l", "HDT0L instance commands");
  hdt0l->require_subcommand(1);
  auto* decide = hdt0l->add_subcommand("decide", "decide validity of an HDT0L instance");
  decide->add_option("file", file1)->required();
  add_engine_flags(decide, eng);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*eval) {
      Sst T = load_sst(file1);
      auto outputs = evaluate(T, parse_word(*T.input, word));
      if (outputs.empty()) out << "(undefined)\n";
      for (const auto& o : outputs) out << render_output(o) << "\n";
      return 0;
    }
    if (*copyless) {
      Sst T = load_sst(file1);
      auto rep = is_copyless(T);
      if (rep.copyless) {
        out << "copyless\n";
        return 0;
      }
      out << "not copyless: variable " << T.variables->token(*rep.variable) << " is used more than once in "
          << describe_transition(T, T.transitions[*rep.transition]) << "\n";
      return 1;
    }
    if (*prod) {
      Sst P = canonicalize(product(load_sst(file1), load_sst(file2)));
      write_file(out1, print_sst(P));
      out << "wrote " << out1 << " (" << P.state_count() << " states, " << P.transitions.size() << " transitions)\n";
      return 0;
    }
    if (*equiv) {
      Verdict v = check_equivalent(load_sst(file1), load_sst(file2), eng.options());
      return emit({"equiv", eng.engine, eng.budget(), std::move(v)}, eng.json, out);
    }
    if (*functional) {
      Verdict v = check_functional(load_sst(file1), eng.options());
      return emit({"functional", eng.engine, eng.budget(), std::move(v)}, eng.json, out);
    }
    if (*diagonal) {
      Verdict v = check_diagonal(load_sst(file1), eng.options());
      return emit({"diagonal", eng.engine, eng.budget(), std::move(v)}, eng.json, out);
    }
    if (*to_hdt0l) {
      auto [I, trace] = bisst_to_hdt0l(load_sst(file1));
      write_file(out1, print_hdt0l(I));
      out << "wrote " << out1 << " (" << I.inner->size() << " letters, " << I.size() << " labels)\n";
      return 0;
    }
    if (*to_sst) {
      auto [T1, T2] = hdt0l_to_sst_pair(load_hdt0l(file1));
      write_file(out1, print_sst(canonicalize(T1)));
      write_file(out2, print_sst(canonicalize(T2)));
      out << "wrote " << out1 << " and " << out2 << "\n";
      return 0;
    }
    if (*decide) {
      Verdict v = run_engine(load_hdt0l(file1), eng.options());
      return emit({"hdt0l decide", eng.engine, eng.budget(), std::move(v)}, eng.json, out);
    }
  } catch (const SoundnessError& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

} // namespace sstkit::cli
