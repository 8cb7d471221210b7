#pragma once

// Verdict reports. The JSON value is the single source; the human form is
// rendered from it so both always carry the same facts.

#include <sstream>
#include <string>

#include <json.hpp>

#include "sstkit/verdict.hpp"

namespace sstkit {

struct Report {
  std::string command;
  std::string engine;
  std::string budget;  // the configured limit, e.g. "max-len 8"
  Verdict verdict;
};

inline int exit_code(VerdictKind k) {
  switch (k) {
  case VerdictKind::holds: return 0;
  case VerdictKind::counterexample: return 1;
  case VerdictKind::resource_limit: return 2;
  }
  return 3;
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["verdict"] = std::string(to_string(r.verdict.kind));
  j["engine"] = r.engine;
  j["budget"] = r.budget;
  j["depth"] = r.verdict.depth;
  j["note"] = r.verdict.note;
  if (r.verdict.witness) {
    const Witness& w = *r.verdict.witness;
    nlohmann::json wj;
    wj["kind"] = w.kind == Witness::Kind::input_word ? "input-word" : "label-sequence";
    wj["sequence"] = w.input;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& o : w.outputs) outs.push_back(o ? nlohmann::json(*o) : nlohmann::json(nullptr));
    wj["outputs"] = outs;
    wj["detail"] = w.detail;
    j["witness"] = wj;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline std::string to_text(const nlohmann::json& j) {
  std::ostringstream os;
  auto str = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  os << "verdict: " << str(j["verdict"]) << "\n";
  os << "command: " << str(j["command"]) << "\n";
  os << "engine: " << str(j["engine"]) << "\n";
  os << "budget: " << str(j["budget"]) << "\n";
  os << "depth: " << str(j["depth"]) << "\n";
  if (!j["note"].get<std::string>().empty()) os << "note: " << str(j["note"]) << "\n";
  const auto& w = j["witness"];
  if (!w.is_null()) {
    os << "witness (" << str(w["kind"]) << "):";
    if (w["sequence"].empty()) os << " ~";
    for (const auto& t : w["sequence"]) os << " " << str(t);
    os << "\n";
    std::size_t k = 1;
    for (const auto& o : w["outputs"]) os << "output " << k++ << ": " << (o.is_null() ? "(undefined)" : str(o)) << "\n";
    if (!w["detail"].get<std::string>().empty()) os << "detail: " << str(w["detail"]) << "\n";
  }
  return os.str();
}

inline std::string to_text(const Report& r) { return to_text(to_json(r)); }

} // namespace sstkit
