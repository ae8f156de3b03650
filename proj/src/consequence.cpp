#include "qlog/consequence.hpp"

#include <algorithm>

#include "qlog/error.hpp"

namespace qlog {

std::string_view to_string(Mode mode) noexcept { return mode == Mode::Weak ? "weak" : "strong"; }

Query parse_query(std::string_view text) {
  const std::size_t turnstile = text.find("|-");
  if (turnstile == text.npos) throw ParseError("expected '|-'", text.size());
  if (text.find("|-", turnstile + 2) != text.npos)
    throw ParseError("more than one '|-'", text.find("|-", turnstile + 2));
  Query query{parse_formula_list(text.substr(0, turnstile)), Formula::top()};
  try {
    query.conclusion = parse_formula(text.substr(turnstile + 2));
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), turnstile + 2 + e.position());
  }
  return query;
}

std::string to_string(const Query& query) {
  std::string out;
  for (std::size_t i = 0; i < query.premises.size(); ++i) {
    if (i != 0) out += ", ";
    out += to_string(query.premises[i]);
  }
  out += out.empty() ? "|- " : " |- ";
  out += to_string(query.conclusion);
  return out;
}

std::string describe(const Witness& witness) {
  std::string out = to_string(witness.valuation);
  if (witness.bound) {
    if (!out.empty()) out += ", ";
    out += "a=" + witness.lattice().name_of(*witness.bound);
  }
  return out;
}

namespace {

// Compiled premises and conclusion over the sorted variables of the query.
struct CompiledQuery {
  std::vector<std::string> vars;
  std::vector<CompiledFormula> premises;
  std::optional<CompiledFormula> conclusion;

  CompiledQuery(std::span<const Formula> ps, const Formula& c) {
    std::vector<Formula> all(ps.begin(), ps.end());
    all.push_back(c);
    const VariableSet vs = variables(all);
    vars.assign(vs.begin(), vs.end());
    for (const Formula& p : ps) premises.emplace_back(p, vars);
    conclusion.emplace(c, vars);
  }

  Valuation valuation(const OrthoLattice& lattice, std::span<const Element> slots) const {
    Valuation::Assignment assignment;
    for (std::size_t i = 0; i < vars.size(); ++i) assignment.emplace(vars[i], slots[i]);
    return Valuation(lattice, std::move(assignment));
  }
};

}  // namespace

ConsequenceVerdict weak_entails(std::span<const Formula> premises, const Formula& conclusion,
                                const OrthoLattice& lattice, std::uint64_t cap) {
  const CompiledQuery q(premises, conclusion);
  const Element one = lattice.top();
  for (ValuationCursor cursor(lattice, q.vars.size(), cap); !cursor.done(); cursor.advance()) {
    const auto slots = cursor.slots();
    const bool designated = std::all_of(q.premises.begin(), q.premises.end(),
                                        [&](const CompiledFormula& p) { return p.evaluate(lattice, slots) == one; });
    if (designated && q.conclusion->evaluate(lattice, slots) != one)
      return {false, Witness{q.valuation(lattice, slots), std::nullopt}};
  }
  return {true, std::nullopt};
}

ConsequenceVerdict strong_entails(std::span<const Formula> premises, const Formula& conclusion,
                                  const OrthoLattice& lattice, std::uint64_t cap) {
  const CompiledQuery q(premises, conclusion);
  std::vector<Element> values(q.premises.size());
  for (ValuationCursor cursor(lattice, q.vars.size(), cap); !cursor.done(); cursor.advance()) {
    const auto slots = cursor.slots();
    for (std::size_t i = 0; i < q.premises.size(); ++i) values[i] = q.premises[i].evaluate(lattice, slots);
    const Element target = q.conclusion->evaluate(lattice, slots);
    for (Element a : lattice.elements()) {
      const bool below_premises =
          std::all_of(values.begin(), values.end(), [&](Element v) { return lattice.leq(a, v); });
      if (below_premises && !lattice.leq(a, target)) return {false, Witness{q.valuation(lattice, slots), a}};
    }
  }
  return {true, std::nullopt};
}

ConsequenceVerdict entails(const Query& query, const OrthoLattice& lattice, Mode mode, std::uint64_t cap) {
  return mode == Mode::Weak ? weak_entails(query.premises, query.conclusion, lattice, cap)
                            : strong_entails(query.premises, query.conclusion, lattice, cap);
}

ConsequenceVerdict class_entails(std::span<const Formula> premises, const Formula& conclusion,
                                 std::span<const OrthoLattice> lattices, Mode mode, std::uint64_t cap) {
  for (const OrthoLattice& lattice : lattices) {
    ConsequenceVerdict verdict = mode == Mode::Weak ? weak_entails(premises, conclusion, lattice, cap)
                                                    : strong_entails(premises, conclusion, lattice, cap);
    if (!verdict.holds) return verdict;
  }
  return {true, std::nullopt};
}

bool verify_witness(const ConsequenceVerdict& verdict, const Query& query, Mode mode,
                    std::span<const OrthoLattice> lattices) {
  if (!verdict.witness) throw Error("verdict carries no witness");
  const Witness& w = *verdict.witness;
  const OrthoLattice& l = w.lattice();
  const bool known = std::any_of(lattices.begin(), lattices.end(),
                                 [&](const OrthoLattice& candidate) { return candidate == l; });
  if (!known) throw Error("witness refers to lattice " + l.name() + " outside the queried class");

  std::vector<Element> values;
  for (const Formula& p : query.premises) values.push_back(evaluate(w.valuation, p));
  const Element target = evaluate(w.valuation, query.conclusion);

  if (mode == Mode::Weak) {
    const bool designated = std::all_of(values.begin(), values.end(), [&](Element v) { return v == l.top(); });
    return designated && target != l.top();
  }
  if (!w.bound) return false;
  if (!l.contains(*w.bound)) throw Error("witness bound is not an element of " + l.name());
  const Element a = *w.bound;
  const bool below = std::all_of(values.begin(), values.end(), [&](Element v) { return l.leq(a, v); });
  return below && !l.leq(a, target);
}

Matrix::Matrix(OrthoLattice algebra, std::span<const Element> designated)
    : algebra_(std::move(algebra)), mask_(algebra_.size(), 0) {
  for (Element e : designated) {
    if (!algebra_.contains(e)) algebra_.name_of(e);  // throws
    mask_[e.index] = 1;
  }
  for (Element e : algebra_.elements())
    if (mask_[e.index] != 0) designated_.push_back(e);
}

Matrix::Matrix(const Filter& filter) : Matrix(filter.carrier(), filter.members()) {}

FormulaSet matrix_consequence(std::span<const Formula> xs, std::span<const Formula> universe, const Matrix& matrix,
                              std::uint64_t cap) {
  std::vector<Formula> all(xs.begin(), xs.end());
  all.insert(all.end(), universe.begin(), universe.end());
  const VariableSet vs = variables(all);
  const std::vector<std::string> vars(vs.begin(), vs.end());
  std::vector<CompiledFormula> premises;
  for (const Formula& x : xs) premises.emplace_back(x, vars);
  std::vector<CompiledFormula> candidates;
  for (const Formula& u : universe) candidates.emplace_back(u, vars);

  const OrthoLattice& lattice = matrix.algebra();
  std::vector<char> kept(universe.size(), 1);
  for (ValuationCursor cursor(lattice, vars.size(), cap); !cursor.done(); cursor.advance()) {
    const auto slots = cursor.slots();
    const bool designated = std::all_of(premises.begin(), premises.end(), [&](const CompiledFormula& p) {
      return matrix.designates(p.evaluate(lattice, slots));
    });
    if (!designated) continue;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (kept[i] != 0 && !matrix.designates(candidates[i].evaluate(lattice, slots))) kept[i] = 0;
  }
  FormulaSet out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (kept[i] != 0) out.insert(universe[i]);
  return out;
}

FormulaSet matrix_consequence(std::span<const Formula> xs, const FormulaSet& universe, const Matrix& matrix,
                              std::uint64_t cap) {
  const std::vector<Formula> items(universe.begin(), universe.end());
  return matrix_consequence(xs, std::span<const Formula>(items), matrix, cap);
}

FormulaSet tautologies(const Matrix& matrix, const VariableSet& vars, std::size_t depth, std::uint64_t cap,
                       std::size_t max_universe) {
  const FormulaSet universe = formula_universe(vars, depth, max_universe);
  const std::vector<std::string> order(vars.begin(), vars.end());
  const OrthoLattice& lattice = matrix.algebra();
  // Fail before the scan if the valuation space itself is too large.
  ValuationCursor probe(lattice, order.size(), cap);
  FormulaSet out;
  for (const Formula& f : universe) {
    const CompiledFormula compiled(f, order);
    bool valid = true;
    for (ValuationCursor cursor(lattice, order.size(), cap); !cursor.done() && valid; cursor.advance())
      valid = matrix.designates(compiled.evaluate(lattice, cursor.slots()));
    if (valid) out.insert(f);
  }
  return out;
}

}  // namespace qlog
