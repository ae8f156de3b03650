#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qlog/consequence.hpp"
#include "qlog/formula.hpp"
#include "qlog/lattice.hpp"

namespace qlog {

// Binary sequent: exactly one formula on each side of the turnstile.
struct Sequent {
  Formula left;
  Formula right;

  friend bool operator==(const Sequent&, const Sequent&) = default;
  friend std::strong_ordering operator<=>(const Sequent& a, const Sequent& b) noexcept {
    if (auto c = a.left <=> b.left; c != 0) return c;
    return a.right <=> b.right;
  }
};

// "a |- b". Several comma separated formulas on the left are conjoined
// left-associatively; an empty left side is rejected.
Sequent parse_sequent(std::string_view text);
std::string to_string(const Sequent& s);

// Orthologic and its extensions, each containing the previous one's axioms.
enum class Logic { OL, OML, MOL, CL };

std::string_view to_string(Logic logic) noexcept;
std::optional<Logic> parse_logic(std::string_view text) noexcept;
// The variety of algebras the logic is sound for.
Variety variety_of(Logic logic) noexcept;

enum class Rule {
  Ax1,  // a |- a
  Ax2,  // a |- ~~a
  Ax3,  // a & b |- a
  Ax4,  // a & b |- b
  Ax5,  // a |- a | b
  Ax6,  // b |- a | b
  Ax7,  // a & ~a |- b
  Ax8,  // ~~a |- a
  Orthomodular,  // a & (~a | (a & b)) |- b                  OML and up
  Modular,       // a & ((a & b) | c) |- (a & b) | (a & c)   MOL and up
  Distributive,  // a & (b | c) |- (a & b) | (a & c)         CL
  R1,  // a |- b, b |- c  /  a |- c
  R2,  // a |- b, a |- c  /  a |- b & c
  R3,  // a |- c, b |- c  /  a | b |- c
  R4,  // a |- b  /  ~b |- ~a
  Hypothesis,  // an assumed sequent, only valid when explicitly allowed
};

std::string_view tag(Rule rule) noexcept;
std::optional<Rule> parse_rule_tag(std::string_view text) noexcept;
std::size_t arity(Rule rule) noexcept;
bool is_axiom(Rule rule) noexcept;
bool available(Rule rule, Logic logic) noexcept;

struct ProofOptions {
  // Read R1 literally as "a |- b, b |- a / a |- c" instead of transitivity.
  // The literal rule derives every sequent.
  bool r1_verbatim = false;
};

// Schematic letters of a rule instance are the variables "alpha", "beta" and
// "gamma" of the instantiation.
struct Derivation {
  Sequent conclusion;
  Rule rule = Rule::Ax1;
  std::vector<Derivation> premises;
  Substitution instantiation;

  std::size_t height() const noexcept;
  std::size_t node_count() const noexcept;
};

struct CheckFailure {
  std::vector<std::size_t> path;  // premise indices from the root to the bad node
  std::string reason;
};

struct CheckReport {
  std::optional<CheckFailure> failure;

  explicit operator bool() const noexcept { return !failure; }
  std::string message() const;
};

CheckReport check_derivation(const Derivation& d, Logic logic, const ProofOptions& options = {},
                             std::span<const Sequent> hypotheses = {});

// Indented tree, one "<tag>: <sequent>" line per node in preorder, two spaces
// of indentation per level.
std::string to_string(const Derivation& d);
// Reads the to_string format back, recovering instantiations by matching each
// node against its rule. Throws ParseError with a line number.
Derivation parse_derivation(std::string_view text, const ProofOptions& options = {});

// Bounded backward search. Tries the logic's axioms in order, then R4, R2,
// R3 and finally R1 with cut formulas drawn from the subformulas of the goal.
// The result, if any, has height at most depth and is the shallowest proof
// the search finds. Throws Error for goals containing constants.
std::optional<Derivation> prove(const Sequent& goal, Logic logic, std::size_t depth,
                                const ProofOptions& options = {});

struct DecideResult {
  enum class Outcome { Proved, Refuted, Unknown };

  Outcome outcome = Outcome::Unknown;
  std::optional<Derivation> derivation;  // when Proved
  std::optional<Witness> witness;        // when Refuted; its lattice names the countermodel
};

std::string_view to_string(DecideResult::Outcome outcome) noexcept;

// Proof search first, then strong countermodels in the given lattices. Every
// lattice must belong to the variety of the logic (throws Error otherwise).
DecideResult decide(const Sequent& goal, Logic logic, std::span<const OrthoLattice> lattices, std::size_t depth,
                    const ProofOptions& options = {});

struct ClosureOptions {
  std::size_t max_pool = 256;
  std::size_t max_sequents = 2'000'000;
  // Sequents with a side larger than this are discarded. Defaults to one
  // more than the largest formula among the pool and the seeds.
  std::optional<std::size_t> max_formula_size;
  ProofOptions proof;
};

// The sequents derivable in a bounded number of forward rounds, each with the
// derivation that first produced it.
class SequentClosure {
 public:
  const std::vector<Sequent>& sequents() const noexcept { return sequents_; }
  std::size_t size() const noexcept { return sequents_.size(); }
  bool contains(const Sequent& s) const;
  // Throws Error if s is not in the closure.
  Derivation derivation(const Sequent& s) const;

 private:
  struct Origin {
    Rule rule;
    std::vector<std::size_t> premises;
    Substitution instantiation;
  };
  struct SequentHash {
    std::size_t operator()(const Sequent& s) const noexcept { return s.left.hash() * 31 + s.right.hash(); }
  };

  bool add(Sequent s, Origin origin);
  Derivation build(std::size_t index) const;

  std::vector<Sequent> sequents_;
  std::vector<Origin> origins_;
  std::unordered_map<Sequent, std::size_t, SequentHash> index_;

  friend SequentClosure forward_closure(std::span<const Sequent>, std::span<const Formula>, Logic, std::size_t,
                                        const ClosureOptions&);
};

// Round 0 holds the seeds (as hypotheses) and every axiom instance of the logic
// whose schematic letters range over pool; each further round applies R1-R4
// to everything derived so far. Throws GuardError when the pool or the result
// grows past the configured limits.
SequentClosure forward_closure(std::span<const Sequent> seeds, std::span<const Formula> pool, Logic logic,
                               std::size_t steps, const ClosureOptions& options = {});

}  // namespace qlog

template <>
struct std::hash<qlog::Sequent> {
  std::size_t operator()(const qlog::Sequent& s) const noexcept { return s.left.hash() * 31 + s.right.hash(); }
};
