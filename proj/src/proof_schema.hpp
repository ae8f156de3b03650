#pragma once

#include <vector>

#include "qlog/proof.hpp"

namespace qlog::detail {

// A rule as patterns over the schematic letters alpha, beta, gamma.
struct Schema {
  std::vector<Sequent> premises;
  Sequent conclusion;
  std::vector<std::string> letters;
};

const Schema& schema(Rule rule, const ProofOptions& options);

// Extends binding so that substitute(pattern, binding) == term.
bool match(const Formula& pattern, const Formula& term, Substitution& binding);
bool match(const Sequent& pattern, const Sequent& term, Substitution& binding);

Sequent instantiate(const Sequent& pattern, const Substitution& binding);

// Axioms of the logic in search order.
std::span<const Rule> axioms_of(Logic logic) noexcept;

bool has_constants(const Formula& f) noexcept;

}  // namespace qlog::detail
