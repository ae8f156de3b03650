#include <map>
#include <vector>

#include "proof_schema.hpp"
#include "qlog/error.hpp"
#include "qlog/proof.hpp"

namespace qlog {

namespace {

class Search {
 public:
  Search(const Sequent& goal, Logic logic, const ProofOptions& options) : logic_(logic), options_(options) {
    const std::vector<Formula> sides{goal.left, goal.right};
    const FormulaSet closure = subformula_closure(sides);
    cuts_.assign(closure.begin(), closure.end());
  }

  // A derivation of s of height at most depth, if the search finds one.
  std::optional<Derivation> run(const Sequent& s, std::size_t depth) {
    if (depth == 0) return std::nullopt;
    if (auto hit = proved_.find(s); hit != proved_.end()) {
      if (hit->second.height() <= depth) return hit->second;
    }
    if (auto miss = failed_.find(s); miss != failed_.end() && miss->second >= depth) return std::nullopt;

    std::optional<Derivation> found = expand(s, depth);
    if (found) {
      proved_.insert_or_assign(s, *found);
    } else {
      auto& ceiling = failed_[s];
      ceiling = std::max(ceiling, depth);
    }
    return found;
  }

 private:
  std::optional<Derivation> expand(const Sequent& s, std::size_t depth) {
    for (Rule rule : detail::axioms_of(logic_)) {
      Substitution binding;
      if (detail::match(detail::schema(rule, options_).conclusion, s, binding))
        return Derivation{s, rule, {}, std::move(binding)};
    }
    if (depth == 1) return std::nullopt;
    const std::size_t below = depth - 1;

    if (s.left.is_negation() && s.right.is_negation()) {
      const Formula& a = s.right.child();
      const Formula& b = s.left.child();
      if (auto p = run({a, b}, below)) return Derivation{s, Rule::R4, {std::move(*p)}, {{"alpha", a}, {"beta", b}}};
    }
    if (s.right.is_conjunction()) {
      const Formula& a = s.left;
      const Formula& b = s.right.left();
      const Formula& c = s.right.right();
      if (auto p1 = run({a, b}, below)) {
        if (auto p2 = run({a, c}, below))
          return Derivation{s, Rule::R2, {std::move(*p1), std::move(*p2)}, {{"alpha", a}, {"beta", b}, {"gamma", c}}};
      }
    }
    if (s.left.is_disjunction()) {
      const Formula& a = s.left.left();
      const Formula& b = s.left.right();
      const Formula& c = s.right;
      if (auto p1 = run({a, c}, below)) {
        if (auto p2 = run({b, c}, below))
          return Derivation{s, Rule::R3, {std::move(*p1), std::move(*p2)}, {{"alpha", a}, {"beta", b}, {"gamma", c}}};
      }
    }
    for (const Formula& b : cuts_) {
      const Formula& a = s.left;
      const Formula& c = s.right;
      if (!options_.r1_verbatim && (b == a || b == c)) continue;
      const Sequent second = options_.r1_verbatim ? Sequent{b, a} : Sequent{b, c};
      if (auto p1 = run({a, b}, below)) {
        if (auto p2 = run(second, below))
          return Derivation{s, Rule::R1, {std::move(*p1), std::move(*p2)}, {{"alpha", a}, {"beta", b}, {"gamma", c}}};
      }
    }
    return std::nullopt;
  }

  Logic logic_;
  const ProofOptions& options_;
  std::vector<Formula> cuts_;
  std::map<Sequent, Derivation> proved_;
  std::map<Sequent, std::size_t> failed_;
};

}  // namespace

std::optional<Derivation> prove(const Sequent& goal, Logic logic, std::size_t depth, const ProofOptions& options) {
  if (detail::has_constants(goal.left) || detail::has_constants(goal.right))
    throw Error("constants are not part of the calculus: " + to_string(goal));
  Search search(goal, logic, options);
  for (std::size_t d = 1; d <= depth; ++d) {
    if (auto proof = search.run(goal, d)) return proof;
  }
  return std::nullopt;
}

}  // namespace qlog
