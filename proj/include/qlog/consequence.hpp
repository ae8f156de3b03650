#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qlog/formula.hpp"
#include "qlog/lattice.hpp"
#include "qlog/valuation.hpp"

namespace qlog {

enum class Mode { Weak, Strong };

std::string_view to_string(Mode mode) noexcept;

// "g1, g2, ... |- phi"; the left side may be empty.
struct Query {
  std::vector<Formula> premises;
  Formula conclusion;
};

Query parse_query(std::string_view text);
std::string to_string(const Query& query);

// A falsifying valuation, plus for strong consequence the element a that lies
// below every premise value but not below the conclusion value.
struct Witness {
  Valuation valuation;
  std::optional<Element> bound;

  const OrthoLattice& lattice() const noexcept { return valuation.lattice(); }
};

struct ConsequenceVerdict {
  bool holds = true;
  std::optional<Witness> witness;  // set exactly when holds is false
};

// "p=x, q=y" for weak witnesses, "p=x, q=y, a=x" for strong ones.
std::string describe(const Witness& witness);

// Valuations range over the variables of the query in sorted order; the
// witness is the first failure in that enumeration (elements a innermost for
// strong consequence). Throws GuardError above cap.
ConsequenceVerdict weak_entails(std::span<const Formula> premises, const Formula& conclusion,
                                const OrthoLattice& lattice, std::uint64_t cap = kDefaultValuationCap);
ConsequenceVerdict strong_entails(std::span<const Formula> premises, const Formula& conclusion,
                                  const OrthoLattice& lattice, std::uint64_t cap = kDefaultValuationCap);
ConsequenceVerdict entails(const Query& query, const OrthoLattice& lattice, Mode mode,
                           std::uint64_t cap = kDefaultValuationCap);
// Holds iff it holds in every lattice; otherwise reports the first failing one.
ConsequenceVerdict class_entails(std::span<const Formula> premises, const Formula& conclusion,
                                 std::span<const OrthoLattice> lattices, Mode mode,
                                 std::uint64_t cap = kDefaultValuationCap);

// Replays the witness against the defining condition. Returns true iff the
// violation is confirmed. Throws Error if the verdict has no witness or the
// witness lattice is not among lattices, EvaluationError if a query variable
// is unassigned.
bool verify_witness(const ConsequenceVerdict& verdict, const Query& query, Mode mode,
                    std::span<const OrthoLattice> lattices);

// Logical matrix: an ortholattice with a set of designated elements. Any
// subset is allowed, including the empty set and the whole carrier.
class Matrix {
 public:
  Matrix(OrthoLattice algebra, std::span<const Element> designated);
  explicit Matrix(const Filter& filter);

  const OrthoLattice& algebra() const noexcept { return algebra_; }
  const std::vector<Element>& designated() const noexcept { return designated_; }
  bool designates(Element e) const noexcept { return mask_[e.index] != 0; }

 private:
  OrthoLattice algebra_;
  std::vector<Element> designated_;
  std::vector<char> mask_;
};

// Members of universe designated by every valuation (over the variables of xs
// and universe) that designates all of xs. When no valuation designates xs
// the whole universe is returned.
FormulaSet matrix_consequence(std::span<const Formula> xs, std::span<const Formula> universe, const Matrix& matrix,
                              std::uint64_t cap = kDefaultValuationCap);
FormulaSet matrix_consequence(std::span<const Formula> xs, const FormulaSet& universe, const Matrix& matrix,
                              std::uint64_t cap = kDefaultValuationCap);

// Members of formula_universe(vars, depth) designated under every valuation.
FormulaSet tautologies(const Matrix& matrix, const VariableSet& vars, std::size_t depth,
                       std::uint64_t cap = kDefaultValuationCap, std::size_t max_universe = 1'000'000);

}  // namespace qlog
