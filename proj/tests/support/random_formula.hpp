#pragma once

#include <random>
#include <string>
#include <vector>

#include "qlog/formula.hpp"
#include "qlog/lattice.hpp"
#include "qlog/valuation.hpp"

namespace qlog::testing {

// Uniform-ish random formulas with height at most max_height.
class FormulaGenerator {
 public:
  FormulaGenerator(std::vector<std::string> vars, std::uint32_t seed, bool constants = false)
      : vars_(std::move(vars)), rng_(seed), constants_(constants) {}

  Formula operator()(std::size_t max_height) {
    if (max_height == 0) return leaf();
    const int kind = std::uniform_int_distribution<int>(0, 4)(rng_);
    switch (kind) {
      case 0: return leaf();
      case 1: return ~(*this)(max_height - 1);
      case 2:
      case 3: {
        const Formula a = (*this)(max_height - 1);
        const Formula b = (*this)(max_height - 1);
        return kind == 2 ? a & b : a | b;
      }
      default: return leaf();
    }
  }

  std::vector<Formula> list(std::size_t count, std::size_t max_height) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back((*this)(max_height));
    return out;
  }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937& engine() noexcept { return rng_; }

 private:
  Formula leaf() {
    if (constants_ && std::uniform_int_distribution<int>(0, 9)(rng_) == 0)
      return std::uniform_int_distribution<int>(0, 1)(rng_) == 0 ? Formula::top() : Formula::bottom();
    return Formula::variable(vars_[below(vars_.size())]);
  }

  std::vector<std::string> vars_;
  std::mt19937 rng_;
  bool constants_;
};

inline std::vector<OrthoLattice> all_builtins() {
  std::vector<OrthoLattice> out;
  for (std::string_view name : builtin_names()) out.push_back(builtin(name));
  return out;
}

// Recursive evaluation straight from the tables, independent of Valuation.
inline Element eval_direct(const OrthoLattice& l, const Formula& f, const std::vector<std::string>& vars,
                           const std::vector<Element>& slots) {
  switch (f.kind()) {
    case Connective::Variable:
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == f.name()) return slots[i];
      return l.bottom();
    case Connective::Top: return l.top();
    case Connective::Bottom: return l.bottom();
    case Connective::Not: return l.ortho(eval_direct(l, f.child(), vars, slots));
    case Connective::And: return l.meet(eval_direct(l, f.left(), vars, slots), eval_direct(l, f.right(), vars, slots));
    case Connective::Or: return l.join(eval_direct(l, f.left(), vars, slots), eval_direct(l, f.right(), vars, slots));
  }
  return l.bottom();
}

// Calls fn(slots) for every assignment of elements to vars.size() slots.
template <class Fn>
void for_each_assignment(const OrthoLattice& l, std::size_t count, Fn&& fn) {
  std::vector<Element> slots(count, l.elements().front());
  std::vector<std::size_t> digits(count, 0);
  while (true) {
    fn(slots);
    std::size_t i = count;
    while (i > 0) {
      --i;
      if (++digits[i] < l.size()) {
        slots[i] = l.elements()[digits[i]];
        break;
      }
      digits[i] = 0;
      slots[i] = l.elements()[0];
      if (i == 0) return;
    }
    if (count == 0) return;
  }
}

// h(left) <= h(right) under every valuation.
inline bool strongly_valid(const OrthoLattice& l, const Formula& left, const Formula& right) {
  const std::vector<Formula> sides{left, right};
  const VariableSet vs = variables(sides);
  const std::vector<std::string> vars(vs.begin(), vs.end());
  bool ok = true;
  for_each_assignment(l, vars.size(), [&](const std::vector<Element>& slots) {
    if (ok && !l.leq(eval_direct(l, left, vars, slots), eval_direct(l, right, vars, slots))) ok = false;
  });
  return ok;
}

}  // namespace qlog::testing
