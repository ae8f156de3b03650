#include "qlog/formula.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "qlog/error.hpp"

namespace qlog {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Variable;
  node->hash = mix(std::hash<std::string>{}(name), 1);
  node->name = std::move(name);
  node->size = 1;
  node->height = 0;
  return Formula(std::move(node));
}

Formula Formula::top() {
  static const Formula instance = [] {
    auto node = std::make_shared<Node>();
    node->kind = Connective::Top;
    node->size = 1;
    node->height = 0;
    node->hash = mix(0, 2);
    return Formula(std::move(node));
  }();
  return instance;
}

Formula Formula::bottom() {
  static const Formula instance = [] {
    auto node = std::make_shared<Node>();
    node->kind = Connective::Bottom;
    node->size = 1;
    node->height = 0;
    node->hash = mix(0, 3);
    return Formula(std::move(node));
  }();
  return instance;
}

Formula Formula::negation(Formula child) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Not;
  node->size = child.size() + 1;
  node->height = child.height() + 1;
  node->hash = mix(mix(0, 4), child.hash());
  node->lhs = std::move(child);
  return Formula(std::move(node));
}

Formula Formula::conjunction(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::And;
  node->size = left.size() + right.size() + 1;
  node->height = std::max(left.height(), right.height()) + 1;
  node->hash = mix(mix(mix(0, 5), left.hash()), right.hash());
  node->lhs = std::move(left);
  node->rhs = std::move(right);
  return Formula(std::move(node));
}

Formula Formula::disjunction(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Or;
  node->size = left.size() + right.size() + 1;
  node->height = std::max(left.height(), right.height()) + 1;
  node->hash = mix(mix(mix(0, 6), left.hash()), right.hash());
  node->lhs = std::move(left);
  node->rhs = std::move(right);
  return Formula(std::move(node));
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Connective::Variable:
      return a.name() == b.name();
    case Connective::Top:
    case Connective::Bottom:
      return true;
    case Connective::Not:
      return a.child() == b.child();
    case Connective::And:
    case Connective::Or:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Connective::Variable:
      return a.name() <=> b.name();
    case Connective::Top:
    case Connective::Bottom:
      return std::strong_ordering::equal;
    case Connective::Not:
      return a.child() <=> b.child();
    case Connective::And:
    case Connective::Or:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
  }
  return std::strong_ordering::equal;
}

Formula operator~(Formula f) { return Formula::negation(std::move(f)); }
Formula operator&(Formula a, Formula b) { return Formula::conjunction(std::move(a), std::move(b)); }
Formula operator|(Formula a, Formula b) { return Formula::disjunction(std::move(a), std::move(b)); }

Formula Substitution::image(const std::string& var) const {
  if (const Formula* f = find(var)) return *f;
  return Formula::variable(var);
}

const Formula* Substitution::find(std::string_view var) const {
  auto it = mapping_.find(var);
  return it == mapping_.end() ? nullptr : &it->second;
}

namespace {

// Binding strength used by the printer: | < & < ~ and atoms.
constexpr int kOr = 1;
constexpr int kAnd = 2;
constexpr int kUnary = 3;

void print(std::string& out, const Formula& f, int context) {
  switch (f.kind()) {
    case Connective::Variable:
      out += f.name();
      return;
    case Connective::Top:
      out += '1';
      return;
    case Connective::Bottom:
      out += '0';
      return;
    case Connective::Not:
      out += '~';
      print(out, f.child(), kUnary);
      return;
    case Connective::And:
    case Connective::Or: {
      const int own = f.is_conjunction() ? kAnd : kOr;
      const bool parens = context > own;
      if (parens) out += '(';
      // Left associative: a right operand of the same strength needs parentheses.
      print(out, f.left(), own);
      out += f.is_conjunction() ? " & " : " | ";
      print(out, f.right(), own + 1);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(out, f, kOr);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

Formula substitute(const Formula& f, const Substitution& e) {
  switch (f.kind()) {
    case Connective::Variable:
      if (const Formula* image = e.find(f.name())) return *image;
      return f;
    case Connective::Top:
    case Connective::Bottom:
      return f;
    case Connective::Not:
      return Formula::negation(substitute(f.child(), e));
    case Connective::And:
      return Formula::conjunction(substitute(f.left(), e), substitute(f.right(), e));
    case Connective::Or:
      return Formula::disjunction(substitute(f.left(), e), substitute(f.right(), e));
  }
  return f;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution result;
  for (const auto& [var, image] : first.mapping()) result.assign(var, substitute(image, second));
  for (const auto& [var, image] : second.mapping())
    if (!first.find(var)) result.assign(var, image);
  return result;
}

namespace {

void collect_variables(const Formula& f, VariableSet& out) {
  switch (f.kind()) {
    case Connective::Variable:
      out.insert(f.name());
      return;
    case Connective::Top:
    case Connective::Bottom:
      return;
    case Connective::Not:
      collect_variables(f.child(), out);
      return;
    case Connective::And:
    case Connective::Or:
      collect_variables(f.left(), out);
      collect_variables(f.right(), out);
      return;
  }
}

void collect_subformulas(const Formula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  if (f.is_negation()) {
    collect_subformulas(f.child(), out);
  } else if (f.is_binary()) {
    collect_subformulas(f.left(), out);
    collect_subformulas(f.right(), out);
  }
}

}  // namespace

VariableSet variables(const Formula& f) {
  VariableSet out;
  collect_variables(f, out);
  return out;
}

VariableSet variables(std::span<const Formula> fs) {
  VariableSet out;
  for (const Formula& f : fs) collect_variables(f, out);
  return out;
}

FormulaSet subformula_closure(std::span<const Formula> fs) {
  FormulaSet out;
  for (const Formula& f : fs) collect_subformulas(f, out);
  return out;
}

std::size_t literal_depth(const Formula& f) {
  switch (f.kind()) {
    case Connective::Variable:
    case Connective::Top:
    case Connective::Bottom:
      return 0;
    case Connective::Not:
      if (f.child().is_variable()) return 0;
      return literal_depth(f.child()) + 1;
    case Connective::And:
    case Connective::Or:
      return std::max(literal_depth(f.left()), literal_depth(f.right())) + 1;
  }
  return 0;
}

FormulaSet formula_universe(const VariableSet& vars, std::size_t depth, std::size_t max_count) {
  FormulaSet universe;
  auto add = [&](Formula f) {
    universe.insert(std::move(f));
    if (universe.size() > max_count)
      throw GuardError("formula universe exceeds " + std::to_string(max_count) + " formulas");
  };
  for (const std::string& v : vars) {
    add(Formula::variable(v));
    add(~Formula::variable(v));
  }
  for (std::size_t level = 0; level < depth; ++level) {
    const std::vector<Formula> previous(universe.begin(), universe.end());
    for (const Formula& a : previous) add(~a);
    for (const Formula& a : previous) {
      for (const Formula& b : previous) {
        add(a & b);
        add(a | b);
      }
    }
  }
  return universe;
}

Formula conjoin(std::span<const Formula> fs) {
  if (fs.empty()) throw Error("cannot conjoin an empty list of formulas");
  Formula result = fs.front();
  for (const Formula& f : fs.subspan(1)) result = result & f;
  return result;
}

}  // namespace qlog
