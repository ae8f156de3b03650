#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qlog {

enum class Connective : unsigned char { Variable, Top, Bottom, Not, And, Or };

// A term of the absolutely free algebra over {~, &, |} with optional
// constants 1 and 0. Immutable; copies share structure. Equality is purely
// structural: p & q and q & p are different formulas.
class Formula {
 public:
  static Formula variable(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula child);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);

  Connective kind() const noexcept;
  bool is_variable() const noexcept { return kind() == Connective::Variable; }
  bool is_negation() const noexcept { return kind() == Connective::Not; }
  bool is_conjunction() const noexcept { return kind() == Connective::And; }
  bool is_disjunction() const noexcept { return kind() == Connective::Or; }
  bool is_binary() const noexcept { return is_conjunction() || is_disjunction(); }

  // Only meaningful for variables.
  const std::string& name() const noexcept;
  // Only meaningful for negations.
  const Formula& child() const noexcept;
  // Only meaningful for conjunctions and disjunctions.
  const Formula& left() const noexcept;
  const Formula& right() const noexcept;

  // Number of nodes in the tree.
  std::size_t size() const noexcept;
  // Height of the tree; leaves have height 0.
  std::size_t height() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  // Total order: smaller trees first, then by connective, then lexically.
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Formula operator~(Formula f);
Formula operator&(Formula a, Formula b);
Formula operator|(Formula a, Formula b);

using FormulaSet = std::set<Formula>;
using VariableSet = std::set<std::string>;

// Maps variables to formulas; variables outside the domain map to themselves.
class Substitution {
 public:
  using Map = std::map<std::string, Formula, std::less<>>;

  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Formula>> entries)
      : mapping_(entries) {}
  explicit Substitution(Map mapping) : mapping_(std::move(mapping)) {}

  void assign(const std::string& var, Formula value) { mapping_.insert_or_assign(var, std::move(value)); }
  Formula image(const std::string& var) const;
  const Formula* find(std::string_view var) const;
  const Map& mapping() const noexcept { return mapping_; }
  bool empty() const noexcept { return mapping_.empty(); }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map mapping_;
};

Formula parse_formula(std::string_view text);
// Comma separated formulas; an all-blank string yields an empty list.
std::vector<Formula> parse_formula_list(std::string_view text);
bool is_identifier(std::string_view text) noexcept;

// ASCII form with the fewest parentheses the grammar needs.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

Formula substitute(const Formula& f, const Substitution& e);
// (second after first)(v) = substitute(first(v), second).
Substitution compose(const Substitution& first, const Substitution& second);

VariableSet variables(const Formula& f);
VariableSet variables(std::span<const Formula> fs);

FormulaSet subformula_closure(std::span<const Formula> fs);

// Depth where a variable or a negated variable counts as 0 and every other
// connective adds one level. Constants count as 0.
std::size_t literal_depth(const Formula& f);

// All constant-free formulas over vars whose literal_depth is at most depth.
// Throws GuardError when more than max_count formulas would be produced.
FormulaSet formula_universe(const VariableSet& vars, std::size_t depth,
                            std::size_t max_count = 1'000'000);

// Left-associated conjunction of a nonempty list.
Formula conjoin(std::span<const Formula> fs);

struct Formula::Node {
  Connective kind;
  std::string name;
  Formula lhs;
  Formula rhs;
  std::size_t size;
  std::size_t height;
  std::size_t hash;
};

inline Connective Formula::kind() const noexcept { return node_->kind; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline const Formula& Formula::child() const noexcept { return node_->lhs; }
inline const Formula& Formula::left() const noexcept { return node_->lhs; }
inline const Formula& Formula::right() const noexcept { return node_->rhs; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline std::size_t Formula::height() const noexcept { return node_->height; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }

}  // namespace qlog

template <>
struct std::hash<qlog::Formula> {
  std::size_t operator()(const qlog::Formula& f) const noexcept { return f.hash(); }
};
