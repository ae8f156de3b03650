#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlog/formula.hpp"
#include "qlog/lattice.hpp"

namespace qlog {

inline constexpr std::uint64_t kDefaultValuationCap = 10'000'000;

// Assignment of lattice elements to finitely many variables. evaluate() is
// its unique homomorphic extension to formulas.
class Valuation {
 public:
  using Assignment = std::map<std::string, Element, std::less<>>;

  Valuation(OrthoLattice lattice, Assignment assignment);
  // Resolves element names; throws LatticeError(UnknownElement).
  static Valuation from_names(const OrthoLattice& lattice, const std::map<std::string, std::string>& names);

  const OrthoLattice& lattice() const noexcept { return lattice_; }
  const Assignment& assignment() const noexcept { return assignment_; }
  std::optional<Element> lookup(std::string_view var) const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.lattice_ == b.lattice_ && a.assignment_ == b.assignment_;
  }

 private:
  OrthoLattice lattice_;
  Assignment assignment_;
};

// "p=x, q=y" using element names.
std::string to_string(const Valuation& v);
// Parses "p=x,q=y" against the lattice. Throws ParseError or LatticeError.
Valuation parse_assignment(const OrthoLattice& lattice, std::string_view text);

// Throws EvaluationError naming the first unbound variable.
Element evaluate(const Valuation& v, const Formula& f);

// Number of assignments, or nullopt if it exceeds cap.
std::optional<std::uint64_t> valuation_count(std::size_t lattice_size, std::size_t var_count,
                                             std::uint64_t cap = kDefaultValuationCap);

// All |A|^|vars| assignments in lexicographic order: the first variable varies
// slowest and elements follow declaration order. Throws GuardError above cap.
std::vector<Valuation> enumerate_valuations(const OrthoLattice& lattice, std::span<const std::string> vars,
                                            std::uint64_t cap = kDefaultValuationCap);

// Odometer over the same order as enumerate_valuations, without materialising
// Valuation objects. slots()[i] is the element assigned to vars[i].
class ValuationCursor {
 public:
  ValuationCursor(const OrthoLattice& lattice, std::size_t var_count, std::uint64_t cap = kDefaultValuationCap);

  std::span<const Element> slots() const noexcept { return slots_; }
  std::uint64_t index() const noexcept { return index_; }
  bool done() const noexcept { return done_; }
  void advance() noexcept;

 private:
  std::size_t lattice_size_;
  std::vector<Element> slots_;
  std::uint64_t index_ = 0;
  bool done_ = false;
};

// A formula flattened to postfix form over variable slots, for evaluating the
// same formula under many assignments.
class CompiledFormula {
 public:
  // vars fixes the slot of each variable; every variable of f must appear.
  CompiledFormula(const Formula& f, std::span<const std::string> vars);

  Element evaluate(const OrthoLattice& lattice, std::span<const Element> slots) const;

 private:
  struct Op {
    Connective kind;
    std::uint32_t slot;
  };
  std::vector<Op> program_;
  std::size_t max_stack_ = 0;
};

}  // namespace qlog
