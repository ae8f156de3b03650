#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "qlog/cli.hpp"
#include "qlog/consequence.hpp"
#include "qlog/error.hpp"
#include "qlog/proof.hpp"

namespace qlog::cli {

namespace {

enum class Verb { Entails, Prove, Decide, Classify };

struct Record {
  std::size_t line;
  std::string tag;
  Verb verb;
  std::map<std::string, std::string> params;
  std::string query;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == s.npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = s.find(sep, start);
    out.push_back(trim(s.substr(start, end == s.npos ? s.npos : end - start)));
    if (end == s.npos) return out;
    start = end + 1;
  }
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error("corpus line " + std::to_string(line) + ": " + message);
}

const std::map<std::string, std::pair<Verb, std::vector<std::string>>, std::less<>>& verbs() {
  static const std::map<std::string, std::pair<Verb, std::vector<std::string>>, std::less<>> table = {
      {"entails", {Verb::Entails, {"HOLDS", "FAILS"}}},
      {"prove", {Verb::Prove, {"PROVED", "UNKNOWN"}}},
      {"decide", {Verb::Decide, {"PROVED", "REFUTED", "UNKNOWN"}}},
      {"classify", {Verb::Classify, {"HOLDS", "FAILS"}}},
  };
  return table;
}

const std::map<Verb, std::vector<std::string>>& allowed_keys() {
  static const std::map<Verb, std::vector<std::string>> table = {
      {Verb::Entails, {"mode", "lattice"}},
      {Verb::Prove, {"logic", "depth", "r1"}},
      {Verb::Decide, {"logic", "lattice", "depth", "r1"}},
      {Verb::Classify, {"variety"}},
  };
  return table;
}

Record parse_record(std::string_view text, std::size_t line) {
  const std::vector<std::string> fields = split(text, ';');
  if (fields.size() != 4) fail(line, "expected '<TAG> ; <verb> ; <params> ; <query>'");
  static const std::vector<std::string> kTags = {"PROVED", "REFUTED", "HOLDS", "FAILS", "UNKNOWN"};
  if (std::find(kTags.begin(), kTags.end(), fields[0]) == kTags.end()) fail(line, "unknown tag '" + fields[0] + "'");
  const auto verb = verbs().find(fields[1]);
  if (verb == verbs().end()) fail(line, "unknown verb '" + fields[1] + "'");
  const auto& tags = verb->second.second;
  if (std::find(tags.begin(), tags.end(), fields[0]) == tags.end())
    fail(line, "tag " + fields[0] + " does not apply to " + fields[1]);

  Record r{line, fields[0], verb->second.first, {}, fields[3]};
  std::stringstream params(fields[2]);
  std::string item;
  const auto& keys = allowed_keys().at(r.verb);
  while (params >> item) {
    const auto eq = item.find('=');
    if (eq == item.npos || eq == 0) fail(line, "expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      fail(line, "unknown parameter '" + key + "' for " + fields[1]);
    if (!r.params.emplace(key, item.substr(eq + 1)).second) fail(line, "duplicate parameter '" + key + "'");
  }
  if (r.query.empty()) fail(line, "missing query");

  // Syntax is checked up front so a malformed corpus runs nothing.
  try {
    switch (r.verb) {
      case Verb::Entails: parse_query(r.query); break;
      case Verb::Prove:
      case Verb::Decide: parse_sequent(r.query); break;
      case Verb::Classify: break;
    }
  } catch (const ParseError& e) {
    fail(line, e.what());
  }
  if (auto it = r.params.find("mode"); it != r.params.end() && it->second != "weak" && it->second != "strong")
    fail(line, "mode must be weak or strong");
  if (auto it = r.params.find("logic"); it != r.params.end() && !parse_logic(it->second))
    fail(line, "unknown logic '" + it->second + "'");
  if (auto it = r.params.find("variety"); it != r.params.end() && !parse_variety(it->second))
    fail(line, "unknown variety '" + it->second + "'");
  if (r.verb == Verb::Classify && !r.params.contains("variety")) fail(line, "classify needs variety=");
  if (r.verb == Verb::Entails && !r.params.contains("lattice")) fail(line, "entails needs lattice=");
  if (auto it = r.params.find("depth"); it != r.params.end()) {
    if (it->second.empty() || it->second.find_first_not_of("0123456789") != std::string::npos)
      fail(line, "depth must be a nonnegative integer");
  }
  if (auto it = r.params.find("r1"); it != r.params.end() && it->second != "verbatim" && it->second != "transitive")
    fail(line, "r1 must be verbatim or transitive");
  return r;
}

std::string param(const Record& r, const std::string& key, std::string fallback) {
  const auto it = r.params.find(key);
  return it == r.params.end() ? std::move(fallback) : it->second;
}

std::vector<OrthoLattice> lattices_of(const Record& r, const std::filesystem::path& base) {
  std::vector<OrthoLattice> out;
  for (const std::string& ref : split(param(r, "lattice", ""), ','))
    if (!ref.empty()) out.push_back(resolve_lattice(ref, base));
  return out;
}

std::string execute(const Record& r, const std::filesystem::path& base) {
  const std::size_t depth = std::stoul(param(r, "depth", "6"));
  const ProofOptions options{param(r, "r1", "transitive") == "verbatim"};
  const Logic logic = *parse_logic(param(r, "logic", "OL"));
  switch (r.verb) {
    case Verb::Entails: {
      const Query q = parse_query(r.query);
      const Mode mode = param(r, "mode", "strong") == "weak" ? Mode::Weak : Mode::Strong;
      const auto ls = lattices_of(r, base);
      const ConsequenceVerdict v = class_entails(q.premises, q.conclusion, ls, mode);
      if (!v.holds && !verify_witness(v, q, mode, ls)) throw std::logic_error("witness failed replay");
      return v.holds ? "HOLDS" : "FAILS";
    }
    case Verb::Prove:
      return prove(parse_sequent(r.query), logic, depth, options) ? "PROVED" : "UNKNOWN";
    case Verb::Decide: {
      auto ls = lattices_of(r, base);
      if (!r.params.contains("lattice")) {
        for (std::string_view name : builtin_names()) {
          OrthoLattice l = builtin(name);
          if (classify(l).belongs_to(variety_of(logic))) ls.push_back(std::move(l));
        }
      }
      return std::string(to_string(decide(parse_sequent(r.query), logic, ls, depth, options).outcome));
    }
    case Verb::Classify: {
      const OrthoLattice l = resolve_lattice(r.query, base);
      return classify(l).strongest() == *parse_variety(r.params.at("variety")) ? "HOLDS" : "FAILS";
    }
  }
  return "?";
}

}  // namespace

int run_corpus_text(std::string_view text, const std::filesystem::path& base, std::ostream& out, std::ostream& err) {
  std::vector<Record> records;
  try {
    std::size_t line = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == text.npos) end = text.size();
      const std::string body = trim(text.substr(start, end - start));
      ++line;
      start = end + 1;
      if (body.empty() || body.front() == '#') continue;
      records.push_back(parse_record(body, line));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::size_t passed = 0;
  for (const Record& r : records) {
    std::string actual;
    try {
      actual = execute(r, base);
    } catch (const Error& e) {
      actual = std::string("ERROR (") + e.what() + ")";
    }
    const bool ok = actual == r.tag;
    passed += ok ? 1 : 0;
    out << "line " << r.line << ": " << (ok ? "PASS" : "FAIL") << " expected " << r.tag << ", got " << actual << '\n';
  }
  out << "summary: " << passed << '/' << records.size() << " passed\n";
  return passed == records.size() ? kPositive : kNegative;
}

int run_corpus(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot read corpus file " << path.string() << '\n';
    return kUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return run_corpus_text(buffer.str(), path.parent_path(), out, err);
}

}  // namespace qlog::cli
