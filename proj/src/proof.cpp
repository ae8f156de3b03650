#include "qlog/proof.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "proof_schema.hpp"
#include "qlog/error.hpp"

namespace qlog {

namespace detail {

namespace {

Formula letter(const char* name) { return Formula::variable(name); }

Schema make(std::vector<Sequent> premises, Sequent conclusion) {
  std::vector<Formula> sides;
  for (const Sequent& s : premises) {
    sides.push_back(s.left);
    sides.push_back(s.right);
  }
  sides.push_back(conclusion.left);
  sides.push_back(conclusion.right);
  const VariableSet vs = variables(sides);
  return Schema{std::move(premises), std::move(conclusion), std::vector<std::string>(vs.begin(), vs.end())};
}

}  // namespace

const Schema& schema(Rule rule, const ProofOptions& options) {
  static const auto table = [] {
    const Formula a = letter("alpha");
    const Formula b = letter("beta");
    const Formula c = letter("gamma");
    std::vector<Schema> t;
    t.push_back(make({}, {a, a}));
    t.push_back(make({}, {a, ~~a}));
    t.push_back(make({}, {a & b, a}));
    t.push_back(make({}, {a & b, b}));
    t.push_back(make({}, {a, a | b}));
    t.push_back(make({}, {b, a | b}));
    t.push_back(make({}, {a & ~a, b}));
    t.push_back(make({}, {~~a, a}));
    t.push_back(make({}, {a & (~a | (a & b)), b}));
    t.push_back(make({}, {a & ((a & b) | c), (a & b) | (a & c)}));
    t.push_back(make({}, {a & (b | c), (a & b) | (a & c)}));
    t.push_back(make({{a, b}, {b, c}}, {a, c}));
    t.push_back(make({{a, b}, {a, c}}, {a, b & c}));
    t.push_back(make({{a, c}, {b, c}}, {a | b, c}));
    t.push_back(make({{a, b}}, {~b, ~a}));
    t.push_back(make({}, {a, b}));
    return t;
  }();
  static const Schema verbatim_r1 = [] {
    const Formula a = letter("alpha");
    const Formula b = letter("beta");
    const Formula c = letter("gamma");
    return make({{a, b}, {b, a}}, {a, c});
  }();
  if (rule == Rule::R1 && options.r1_verbatim) return verbatim_r1;
  return table[static_cast<std::size_t>(rule)];
}

bool match(const Formula& pattern, const Formula& term, Substitution& binding) {
  switch (pattern.kind()) {
    case Connective::Variable:
      if (const Formula* bound = binding.find(pattern.name())) return *bound == term;
      binding.assign(pattern.name(), term);
      return true;
    case Connective::Top:
    case Connective::Bottom:
      return term.kind() == pattern.kind();
    case Connective::Not:
      return term.is_negation() && match(pattern.child(), term.child(), binding);
    case Connective::And:
    case Connective::Or:
      return term.kind() == pattern.kind() && match(pattern.left(), term.left(), binding) &&
             match(pattern.right(), term.right(), binding);
  }
  return false;
}

bool match(const Sequent& pattern, const Sequent& term, Substitution& binding) {
  return match(pattern.left, term.left, binding) && match(pattern.right, term.right, binding);
}

Sequent instantiate(const Sequent& pattern, const Substitution& binding) {
  return {substitute(pattern.left, binding), substitute(pattern.right, binding)};
}

std::span<const Rule> axioms_of(Logic logic) noexcept {
  static constexpr std::array<Rule, 11> kAll = {Rule::Ax1, Rule::Ax2, Rule::Ax3,          Rule::Ax4,
                                                Rule::Ax5, Rule::Ax6, Rule::Ax7,          Rule::Ax8,
                                                Rule::Orthomodular, Rule::Modular, Rule::Distributive};
  switch (logic) {
    case Logic::OL: return std::span<const Rule>(kAll).first(8);
    case Logic::OML: return std::span<const Rule>(kAll).first(9);
    case Logic::MOL: return std::span<const Rule>(kAll).first(10);
    case Logic::CL: return kAll;
  }
  return {};
}

bool has_constants(const Formula& f) noexcept {
  switch (f.kind()) {
    case Connective::Variable: return false;
    case Connective::Top:
    case Connective::Bottom: return true;
    case Connective::Not: return has_constants(f.child());
    case Connective::And:
    case Connective::Or: return has_constants(f.left()) || has_constants(f.right());
  }
  return false;
}

}  // namespace detail

// --- Names -------------------------------------------------------------------

std::string_view to_string(Logic logic) noexcept {
  switch (logic) {
    case Logic::OL: return "OL";
    case Logic::OML: return "OML";
    case Logic::MOL: return "MOL";
    case Logic::CL: return "CL";
  }
  return "?";
}

std::optional<Logic> parse_logic(std::string_view text) noexcept {
  if (text == "OL") return Logic::OL;
  if (text == "OML") return Logic::OML;
  if (text == "MOL") return Logic::MOL;
  if (text == "CL") return Logic::CL;
  return std::nullopt;
}

Variety variety_of(Logic logic) noexcept {
  switch (logic) {
    case Logic::OL: return Variety::OL;
    case Logic::OML: return Variety::OML;
    case Logic::MOL: return Variety::MOL;
    case Logic::CL: return Variety::BA;
  }
  return Variety::OL;
}

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 16> kTags = {{
    {Rule::Ax1, "Ax1"},
    {Rule::Ax2, "Ax2"},
    {Rule::Ax3, "Ax3"},
    {Rule::Ax4, "Ax4"},
    {Rule::Ax5, "Ax5"},
    {Rule::Ax6, "Ax6"},
    {Rule::Ax7, "Ax7"},
    {Rule::Ax8, "Ax8"},
    {Rule::Orthomodular, "OML"},
    {Rule::Modular, "MOL"},
    {Rule::Distributive, "CL"},
    {Rule::R1, "R1"},
    {Rule::R2, "R2"},
    {Rule::R3, "R3"},
    {Rule::R4, "R4"},
    {Rule::Hypothesis, "Hyp"},
}};

}  // namespace

std::string_view tag(Rule rule) noexcept { return kTags[static_cast<std::size_t>(rule)].second; }

std::optional<Rule> parse_rule_tag(std::string_view text) noexcept {
  for (const auto& [rule, name] : kTags)
    if (name == text) return rule;
  return std::nullopt;
}

std::size_t arity(Rule rule) noexcept {
  switch (rule) {
    case Rule::R1:
    case Rule::R2:
    case Rule::R3: return 2;
    case Rule::R4: return 1;
    default: return 0;
  }
}

bool is_axiom(Rule rule) noexcept { return arity(rule) == 0 && rule != Rule::Hypothesis; }

bool available(Rule rule, Logic logic) noexcept {
  switch (rule) {
    case Rule::Orthomodular: return logic != Logic::OL;
    case Rule::Modular: return logic == Logic::MOL || logic == Logic::CL;
    case Rule::Distributive: return logic == Logic::CL;
    default: return true;
  }
}

// --- Sequents ----------------------------------------------------------------

Sequent parse_sequent(std::string_view text) {
  const Query query = parse_query(text);
  if (query.premises.empty()) throw ParseError("a sequent needs a formula on the left of '|-'", 0);
  return {conjoin(query.premises), query.conclusion};
}

std::string to_string(const Sequent& s) { return to_string(s.left) + " |- " + to_string(s.right); }

// --- Derivations -------------------------------------------------------------

std::size_t Derivation::height() const noexcept {
  std::size_t h = 0;
  for (const Derivation& p : premises) h = std::max(h, p.height());
  return h + 1;
}

std::size_t Derivation::node_count() const noexcept {
  std::size_t n = 1;
  for (const Derivation& p : premises) n += p.node_count();
  return n;
}

std::string CheckReport::message() const {
  if (!failure) return "ok";
  std::string where = "root";
  for (std::size_t i : failure->path) where += "." + std::to_string(i + 1);
  return "node " + where + ": " + failure->reason;
}

namespace {

std::optional<std::string> check_node(const Derivation& d, Logic logic, const ProofOptions& options,
                                      std::span<const Sequent> hypotheses) {
  const std::string name(tag(d.rule));
  if (detail::has_constants(d.conclusion.left) || detail::has_constants(d.conclusion.right))
    return "constants are not part of the calculus";
  if (!available(d.rule, logic)) return "wrong logic: " + name + " is not available in " + std::string(to_string(logic));
  if (d.rule == Rule::Hypothesis) {
    if (!d.premises.empty()) return "arity mismatch: Hyp takes no premises";
    if (std::find(hypotheses.begin(), hypotheses.end(), d.conclusion) == hypotheses.end())
      return "undischarged hypothesis " + to_string(d.conclusion);
    return std::nullopt;
  }
  const detail::Schema& s = detail::schema(d.rule, options);
  if (d.premises.size() != s.premises.size())
    return "arity mismatch: " + name + " takes " + std::to_string(s.premises.size()) + " premises, got " +
           std::to_string(d.premises.size());
  for (const std::string& l : s.letters)
    if (!d.instantiation.find(l)) return "incomplete instantiation: " + l + " is unbound";
  for (const auto& [l, f] : d.instantiation.mapping()) {
    if (std::find(s.letters.begin(), s.letters.end(), l) == s.letters.end())
      return "instantiation binds " + l + ", which " + name + " does not use";
  }
  if (detail::instantiate(s.conclusion, d.instantiation) != d.conclusion)
    return "wrong schema: conclusion is not an instance of " + name;
  for (std::size_t i = 0; i < s.premises.size(); ++i) {
    if (detail::instantiate(s.premises[i], d.instantiation) != d.premises[i].conclusion)
      return "wrong schema: premise " + std::to_string(i + 1) + " does not fit " + name;
  }
  return std::nullopt;
}

void check_tree(const Derivation& d, Logic logic, const ProofOptions& options, std::span<const Sequent> hypotheses,
                std::vector<std::size_t>& path, CheckReport& report) {
  if (report.failure) return;
  if (auto reason = check_node(d, logic, options, hypotheses)) {
    report.failure = CheckFailure{path, *reason};
    return;
  }
  for (std::size_t i = 0; i < d.premises.size() && !report.failure; ++i) {
    path.push_back(i);
    check_tree(d.premises[i], logic, options, hypotheses, path, report);
    path.pop_back();
  }
}

void print_tree(const Derivation& d, std::size_t level, std::string& out) {
  out.append(level * 2, ' ');
  out += tag(d.rule);
  out += ": ";
  out += to_string(d.conclusion);
  out += '\n';
  for (const Derivation& p : d.premises) print_tree(p, level + 1, out);
}

}  // namespace

CheckReport check_derivation(const Derivation& d, Logic logic, const ProofOptions& options,
                             std::span<const Sequent> hypotheses) {
  CheckReport report;
  std::vector<std::size_t> path;
  check_tree(d, logic, options, hypotheses, path, report);
  return report;
}

std::string to_string(const Derivation& d) {
  std::string out;
  print_tree(d, 0, out);
  return out;
}

namespace {

struct Line {
  std::size_t number;
  std::size_t level;
  Rule rule;
  Sequent sequent;
};

Derivation assemble(const std::vector<Line>& lines, std::size_t& next, const ProofOptions& options) {
  const Line& line = lines[next++];
  Derivation d{line.sequent, line.rule, {}, {}};
  while (next < lines.size() && lines[next].level > line.level) {
    if (lines[next].level != line.level + 1)
      throw ParseError("line " + std::to_string(lines[next].number) + ": indentation skips a level", 0);
    d.premises.push_back(assemble(lines, next, options));
  }
  // Recover the instantiation; a mismatch is left for check_derivation to report.
  if (d.rule != Rule::Hypothesis) {
    const detail::Schema& s = detail::schema(d.rule, options);
    Substitution binding;
    bool ok = detail::match(s.conclusion, d.conclusion, binding);
    for (std::size_t i = 0; ok && i < s.premises.size() && i < d.premises.size(); ++i)
      ok = detail::match(s.premises[i], d.premises[i].conclusion, binding);
    if (ok) d.instantiation = std::move(binding);
  }
  return d;
}

}  // namespace

Derivation parse_derivation(std::string_view text, const ProofOptions& options) {
  std::vector<Line> lines;
  std::size_t start = 0;
  std::size_t number = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == text.npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t indent = 0;
    while (indent < raw.size() && raw[indent] == ' ') ++indent;
    if (indent == raw.size()) continue;
    if (indent % 2 != 0) throw ParseError("line " + std::to_string(number) + ": odd indentation", indent);
    const std::string_view body = raw.substr(indent);
    const std::size_t colon = body.find(':');
    if (colon == body.npos) throw ParseError("line " + std::to_string(number) + ": expected '<rule>: <sequent>'", indent);
    const auto rule = parse_rule_tag(body.substr(0, colon));
    if (!rule)
      throw ParseError("line " + std::to_string(number) + ": unknown rule '" + std::string(body.substr(0, colon)) + "'",
                       indent);
    Sequent sequent = [&] {
      try {
        return parse_sequent(body.substr(colon + 1));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(number) + ": " + e.detail(), indent + colon + 1 + e.position());
      }
    }();
    lines.push_back({number, indent / 2, *rule, std::move(sequent)});
  }
  if (lines.empty()) throw ParseError("empty derivation", 0);
  if (lines.front().level != 0) throw ParseError("line " + std::to_string(lines.front().number) + ": root is indented", 0);
  std::size_t next = 0;
  Derivation root = assemble(lines, next, options);
  if (next != lines.size())
    throw ParseError("line " + std::to_string(lines[next].number) + ": more than one root", 0);
  return root;
}

// --- decide ------------------------------------------------------------------

std::string_view to_string(DecideResult::Outcome outcome) noexcept {
  switch (outcome) {
    case DecideResult::Outcome::Proved: return "PROVED";
    case DecideResult::Outcome::Refuted: return "REFUTED";
    case DecideResult::Outcome::Unknown: return "UNKNOWN";
  }
  return "?";
}

DecideResult decide(const Sequent& goal, Logic logic, std::span<const OrthoLattice> lattices, std::size_t depth,
                    const ProofOptions& options) {
  const Variety needed = variety_of(logic);
  for (const OrthoLattice& l : lattices) {
    if (!classify(l).belongs_to(needed))
      throw Error("lattice " + l.name() + " is not in " + std::string(to_string(needed)) + ", so it cannot refute " +
                  std::string(to_string(logic)) + " sequents");
  }

  if (auto proof = prove(goal, logic, depth, options)) {
    return {DecideResult::Outcome::Proved, std::move(proof), std::nullopt};
  }

  const Query query{{goal.left}, goal.right};
  for (const OrthoLattice& l : lattices) {
    ConsequenceVerdict verdict = strong_entails(query.premises, query.conclusion, l);
    if (verdict.holds) continue;
    if (!verify_witness(verdict, query, Mode::Strong, lattices))
      throw std::logic_error("countermodel for " + to_string(goal) + " failed replay");
    return {DecideResult::Outcome::Refuted, std::nullopt, std::move(verdict.witness)};
  }
  return {};
}

}  // namespace qlog
