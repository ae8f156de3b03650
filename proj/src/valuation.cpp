#include "qlog/valuation.hpp"

#include <algorithm>
#include <cctype>

#include "qlog/error.hpp"

namespace qlog {

Valuation::Valuation(OrthoLattice lattice, Assignment assignment)
    : lattice_(std::move(lattice)), assignment_(std::move(assignment)) {
  for (const auto& [var, e] : assignment_) {
    if (!lattice_.contains(e))
      throw LatticeError(LatticeError::Kind::UnknownElement,
                         "valuation assigns " + var + " to an element outside " + lattice_.name());
  }
}

Valuation Valuation::from_names(const OrthoLattice& lattice, const std::map<std::string, std::string>& names) {
  Assignment assignment;
  for (const auto& [var, element] : names) assignment.emplace(var, lattice.element(element));
  return Valuation(lattice, std::move(assignment));
}

std::optional<Element> Valuation::lookup(std::string_view var) const {
  auto it = assignment_.find(var);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

std::string to_string(const Valuation& v) {
  std::string out;
  for (const auto& [var, e] : v.assignment()) {
    if (!out.empty()) out += ", ";
    out += var;
    out += '=';
    out += v.lattice().name_of(e);
  }
  return out;
}

Valuation parse_assignment(const OrthoLattice& lattice, std::string_view text) {
  Valuation::Assignment assignment;
  std::size_t start = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
    return s;
  };
  if (trim(text).empty()) return Valuation(lattice, {});
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece = text.substr(start, comma == text.npos ? text.npos : comma - start);
    const std::size_t eq = piece.find('=');
    if (eq == piece.npos) throw ParseError("expected '<variable>=<element>'", start);
    const std::string_view var = trim(piece.substr(0, eq));
    const std::string_view element = trim(piece.substr(eq + 1));
    if (!is_identifier(var)) throw ParseError("bad variable name '" + std::string(var) + "'", start);
    if (!assignment.emplace(std::string(var), lattice.element(element)).second)
      throw ParseError("variable '" + std::string(var) + "' assigned twice", start);
    if (comma == text.npos) break;
    start = comma + 1;
  }
  return Valuation(lattice, std::move(assignment));
}

Element evaluate(const Valuation& v, const Formula& f) {
  const OrthoLattice& l = v.lattice();
  switch (f.kind()) {
    case Connective::Variable:
      if (auto e = v.lookup(f.name())) return *e;
      throw EvaluationError("unbound variable '" + f.name() + "'");
    case Connective::Top:
      return l.top();
    case Connective::Bottom:
      return l.bottom();
    case Connective::Not:
      return l.ortho(evaluate(v, f.child()));
    case Connective::And:
      return l.meet(evaluate(v, f.left()), evaluate(v, f.right()));
    case Connective::Or:
      return l.join(evaluate(v, f.left()), evaluate(v, f.right()));
  }
  return l.bottom();
}

std::optional<std::uint64_t> valuation_count(std::size_t lattice_size, std::size_t var_count, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < var_count; ++i) {
    if (lattice_size != 0 && total > cap / lattice_size) return std::nullopt;
    total *= lattice_size;
  }
  if (total > cap) return std::nullopt;
  return total;
}

namespace {

void require_within_cap(std::size_t lattice_size, std::size_t var_count, std::uint64_t cap) {
  if (!valuation_count(lattice_size, var_count, cap))
    throw GuardError(std::to_string(lattice_size) + "^" + std::to_string(var_count) +
                     " valuations exceed the cap of " + std::to_string(cap));
}

}  // namespace

ValuationCursor::ValuationCursor(const OrthoLattice& lattice, std::size_t var_count, std::uint64_t cap)
    : lattice_size_(lattice.size()), slots_(var_count, Element{0}) {
  require_within_cap(lattice_size_, var_count, cap);
}

void ValuationCursor::advance() noexcept {
  ++index_;
  for (std::size_t i = slots_.size(); i-- > 0;) {
    if (slots_[i].index + 1u < lattice_size_) {
      ++slots_[i].index;
      return;
    }
    slots_[i].index = 0;
  }
  done_ = true;
}

std::vector<Valuation> enumerate_valuations(const OrthoLattice& lattice, std::span<const std::string> vars,
                                            std::uint64_t cap) {
  std::vector<Valuation> out;
  for (ValuationCursor cursor(lattice, vars.size(), cap); !cursor.done(); cursor.advance()) {
    Valuation::Assignment assignment;
    for (std::size_t i = 0; i < vars.size(); ++i) assignment.emplace(vars[i], cursor.slots()[i]);
    out.emplace_back(lattice, std::move(assignment));
  }
  return out;
}

CompiledFormula::CompiledFormula(const Formula& f, std::span<const std::string> vars) {
  auto emit = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Connective::Variable: {
        auto it = std::find(vars.begin(), vars.end(), g.name());
        if (it == vars.end()) throw EvaluationError("unbound variable '" + g.name() + "'");
        program_.push_back({Connective::Variable, static_cast<std::uint32_t>(it - vars.begin())});
        return;
      }
      case Connective::Top:
      case Connective::Bottom:
        program_.push_back({g.kind(), 0});
        return;
      case Connective::Not:
        self(self, g.child());
        program_.push_back({Connective::Not, 0});
        return;
      case Connective::And:
      case Connective::Or:
        self(self, g.left());
        self(self, g.right());
        program_.push_back({g.kind(), 0});
        return;
    }
  };
  emit(emit, f);
  std::size_t depth = 0;
  for (const Op& op : program_) {
    if (op.kind == Connective::Variable || op.kind == Connective::Top || op.kind == Connective::Bottom) {
      max_stack_ = std::max(max_stack_, ++depth);
    } else if (op.kind != Connective::Not) {
      --depth;
    }
  }
}

Element CompiledFormula::evaluate(const OrthoLattice& l, std::span<const Element> slots) const {
  std::vector<Element> stack;
  stack.reserve(max_stack_);
  for (const Op& op : program_) {
    switch (op.kind) {
      case Connective::Variable:
        stack.push_back(slots[op.slot]);
        break;
      case Connective::Top:
        stack.push_back(l.top());
        break;
      case Connective::Bottom:
        stack.push_back(l.bottom());
        break;
      case Connective::Not:
        stack.back() = l.ortho(stack.back());
        break;
      case Connective::And: {
        const Element b = stack.back();
        stack.pop_back();
        stack.back() = l.meet(stack.back(), b);
        break;
      }
      case Connective::Or: {
        const Element b = stack.back();
        stack.pop_back();
        stack.back() = l.join(stack.back(), b);
        break;
      }
    }
  }
  return stack.back();
}

}  // namespace qlog
