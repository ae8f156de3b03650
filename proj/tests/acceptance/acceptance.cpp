// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlog/consequence.hpp"
#include "qlog/error.hpp"
#include "qlog/proof.hpp"
#include "support/random_formula.hpp"

using namespace qlog;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

// Every failing verdict produced by criteria 2 to 8, replayed by criterion 10.
struct Replay {
  ConsequenceVerdict verdict;
  Query query;
  Mode mode;
  std::vector<OrthoLattice> lattices;
};
std::vector<Replay> g_replays;

void record(const ConsequenceVerdict& v, const Query& q, Mode m, std::vector<OrthoLattice> ls) {
  if (!v.holds) g_replays.push_back({v, q, m, std::move(ls)});
}

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  Result result(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " failure(s), first: " + first_};
  }

 private:
  std::size_t failures_ = 0;
  std::string first_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string tuple_names(const OrthoLattice& l, const std::vector<Element>& t) {
  std::string out;
  for (Element e : t) out += (out.empty() ? "" : ",") + l.name_of(e);
  return out;
}

std::vector<OrthoLattice> in_variety(Variety v) {
  std::vector<OrthoLattice> out;
  for (const OrthoLattice& l : testing::all_builtins())
    if (classify(l).belongs_to(v)) out.push_back(l);
  return out;
}

Result criterion1() {
  Checker c;
  const auto start = Clock::now();
  std::size_t checks = 0;
  for (const OrthoLattice& l : testing::all_builtins()) {
    for (const IdentityCheck& id : check_ortholattice_identities(l)) {
      ++checks;
      c.expect(id.holds(), l.name() + ": " + std::string(id.identity));
    }
  }
  c.expect(checks == 5 * 15, "expected 15 checks per lattice");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "identity checks took " + std::to_string(elapsed) + " s");

  const std::string b4 = std::string(builtin_source("B4"));
  std::string corrupt = b4.substr(0, b4.find("ortho:")) + "ortho: a a ; b b\n";
  try {
    build_lattice(corrupt);
    c.expect(false, "corrupted B4 was accepted");
  } catch (const LatticeError& e) {
    c.expect(e.kind() == LatticeError::Kind::OrthoViolation, "wrong error kind");
    c.expect(std::string(e.what()) == "ortho violation: identity x & x' = 0 fails at x=a",
             std::string("unexpected message: ") + e.what());
  }
  return c.result(std::to_string(checks) + " identity checks hold, corrupted B4 rejected at x=a");
}

Result criterion2() {
  Checker c;
  const auto start = Clock::now();
  const VarietyReport b4 = classify(builtin("B4"));
  c.expect(b4.is_ortholattice && b4.is_orthomodular && b4.is_modular && b4.is_distributive, "B4 flags");

  const OrthoLattice mo2 = builtin("MO2");
  const VarietyReport r2 = classify(mo2);
  c.expect(r2.is_ortholattice && r2.is_orthomodular && r2.is_modular && !r2.is_distributive, "MO2 flags");
  c.expect(r2.witness && r2.witness->law == Variety::BA, "MO2 witness law");
  if (r2.witness) {
    const auto& t = r2.witness->tuple;
    c.expect(tuple_names(mo2, t) == "x,y,yp", "MO2 witness " + tuple_names(mo2, t));
    const Element lhs = mo2.meet(t[0], mo2.join(t[1], t[2]));
    const Element rhs = mo2.join(mo2.meet(t[0], t[1]), mo2.meet(t[0], t[2]));
    c.expect(mo2.name_of(lhs) == "x" && mo2.name_of(rhs) == "0", "MO2 distributivity values");
    // The same failure as a strong consequence over MO2.
    const Query q = parse_query("p & (q | r) |- p & q | p & r");
    const std::vector<OrthoLattice> cls{mo2};
    const auto v = class_entails(q.premises, q.conclusion, cls, Mode::Strong);
    c.expect(!v.holds, "distributivity holds on MO2");
    record(v, q, Mode::Strong, cls);
  }

  const OrthoLattice o6 = builtin("O6");
  const VarietyReport r6 = classify(o6);
  c.expect(r6.is_ortholattice && !r6.is_orthomodular && !r6.is_modular && !r6.is_distributive, "O6 flags");
  c.expect(r6.witness && r6.witness->law == Variety::OML, "O6 witness law");
  if (r6.witness) {
    const auto& t = r6.witness->tuple;
    c.expect(tuple_names(o6, t) == "b,a", "O6 witness " + tuple_names(o6, t));
    const Element x = t[0], y = t[1];
    const Element lhs = o6.meet(x, o6.join(o6.meet(x, y), o6.ortho(x)));
    c.expect(o6.name_of(lhs) == "b" && o6.meet(x, y) == o6.element("a") && lhs != o6.meet(x, y),
             "O6 orthomodular values");
    const Query q = parse_query("p & (~p | p & q) |- q");
    const std::vector<OrthoLattice> cls{o6};
    const auto v = class_entails(q.premises, q.conclusion, cls, Mode::Strong);
    c.expect(!v.holds, "orthomodular sequent holds on O6");
    record(v, q, Mode::Strong, cls);
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "classification took " + std::to_string(elapsed) + " s");
  return c.result("B4 all, MO2 OL+OML+MOL (x,y,yp: x vs 0), O6 OL only (b,a)");
}

Result criterion3() {
  Checker c;
  const auto start = Clock::now();
  const Query q = parse_query("p, ~p | q |- q");
  for (const OrthoLattice& l : testing::all_builtins())
    c.expect(entails(q, l, Mode::Weak).holds, "weak fails on " + l.name());
  const OrthoLattice mo2 = builtin("MO2");
  const auto v = entails(q, mo2, Mode::Strong);
  c.expect(!v.holds, "strong holds on MO2");
  if (!v.holds) {
    c.expect(to_string(v.witness->valuation) == "p=x, q=y", "valuation " + to_string(v.witness->valuation));
    c.expect(v.witness->bound && mo2.name_of(*v.witness->bound) == "x", "bound element");
    record(v, q, Mode::Strong, {mo2});
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  return c.result("weak holds on all five builtins, strong fails on MO2 at p=x, q=y, a=x");
}

Result criterion4() {
  Checker c;
  testing::FormulaGenerator gen({"p", "q", "r"}, 20240401);
  const auto lattices = testing::all_builtins();
  std::size_t strong_count = 0;
  const std::size_t trials = 1200;
  for (std::size_t i = 0; i < trials; ++i) {
    const OrthoLattice& l = lattices[i % lattices.size()];
    const Query q{gen.list(gen.below(4), 4), gen(4)};
    const auto strong = entails(q, l, Mode::Strong);
    const auto weak = entails(q, l, Mode::Weak);
    if (strong.holds) ++strong_count;
    c.expect(!strong.holds || weak.holds, "strong without weak: " + to_string(q) + " on " + l.name());
    record(strong, q, Mode::Strong, {l});
    record(weak, q, Mode::Weak, {l});
  }
  return c.result(std::to_string(trials) + " triples, " + std::to_string(strong_count) +
                  " strong positives, no strong-only case");
}

Result criterion5() {
  Checker c;
  testing::FormulaGenerator gen({"p", "q", "r"}, 5150);
  const auto lattices = testing::all_builtins();
  const std::size_t trials = 600;
  std::size_t weak_pos = 0, strong_pos = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const OrthoLattice& l = lattices[i % lattices.size()];
    const Query q{gen.list(gen.below(4), 3), gen(3)};
    const std::vector<Formula> universe{q.conclusion};
    const auto weak = entails(q, l, Mode::Weak);
    const bool weak_matrix =
        matrix_consequence(q.premises, universe, Matrix(principal_filter(l, l.top()))).contains(q.conclusion);
    c.expect(weak.holds == weak_matrix, "weak route differs: " + to_string(q) + " on " + l.name());
    const auto strong = entails(q, l, Mode::Strong);
    bool strong_matrix = true;
    for (Element a : l.elements())
      strong_matrix = strong_matrix &&
                      matrix_consequence(q.premises, universe, Matrix(principal_filter(l, a))).contains(q.conclusion);
    c.expect(strong.holds == strong_matrix, "strong route differs: " + to_string(q) + " on " + l.name());
    weak_pos += weak.holds;
    strong_pos += strong.holds;
    record(weak, q, Mode::Weak, {l});
    record(strong, q, Mode::Strong, {l});
  }
  return c.result(std::to_string(trials) + " queries agree (" + std::to_string(weak_pos) + " weak and " +
                  std::to_string(strong_pos) + " strong positives)");
}

// Subformula closed, within literal depth 2 over {p, q}.
std::vector<Formula> tarski_universe() {
  std::vector<Formula> u;
  for (const char* t : {"p", "q", "~p", "~q", "p & q", "p | q", "~(p & q)", "~(p | q)", "~p | q", "p & ~q",
                        "p | ~p", "q & ~q", "~~p", "p & (~p | q)"})
    u.push_back(parse_formula(t));
  return u;
}

Result criterion6() {
  Checker c;
  const std::vector<Formula> u = tarski_universe();
  const FormulaSet closed = subformula_closure(u);
  c.expect(closed == FormulaSet(u.begin(), u.end()), "universe is not subformula closed");
  const FormulaSet depth2 = formula_universe({"p", "q"}, 2);
  for (const Formula& f : u) c.expect(depth2.contains(f), to_string(f) + " is outside depth 2");

  const std::size_t n = u.size();
  const std::uint32_t subsets = 1u << n;
  auto members = [&](std::uint32_t mask) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) out.push_back(u[i]);
    return out;
  };
  auto mask_of = [&](const FormulaSet& s) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (s.contains(u[i])) m |= 1u << i;
    return m;
  };

  std::size_t checked = 0;
  for (const char* name : {"B2", "MO2"}) {
    const OrthoLattice l = builtin(name);
    const Matrix m(principal_filter(l, l.top()));
    std::vector<std::uint32_t> cn(subsets);
    for (std::uint32_t x = 0; x < subsets; ++x) {
      const FormulaSet out = matrix_consequence(members(x), u, m);
      c.expect(out.size() == static_cast<std::size_t>(std::popcount(mask_of(out))), "C escapes the universe");
      cn[x] = mask_of(out);
    }
    for (std::uint32_t x = 0; x < subsets; ++x) {
      ++checked;
      c.expect((x & ~cn[x]) == 0, std::string(name) + ": reflexivity fails at mask " + std::to_string(x));
      c.expect(cn[cn[x]] == cn[x], std::string(name) + ": idempotency fails at mask " + std::to_string(x));
      // Single-element extensions cover every inclusion by transitivity.
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t y = x | (1u << i);
        c.expect((cn[x] & ~cn[y]) == 0, std::string(name) + ": monotonicity fails at mask " + std::to_string(x));
      }
    }

    // Structurality under sampled substitutions.
    testing::FormulaGenerator gen({"p", "q", "r"}, 606 + static_cast<std::uint32_t>(l.size()));
    for (int s = 0; s < 50; ++s) {
      const Substitution e{{"p", gen(2)}, {"q", gen(2)}};
      std::vector<Formula> eu;
      for (const Formula& f : u) eu.push_back(substitute(f, e));
      for (int k = 0; k < 8; ++k) {
        const std::uint32_t x = static_cast<std::uint32_t>(gen.below(subsets));
        std::vector<Formula> ex;
        for (const Formula& f : members(x)) ex.push_back(substitute(f, e));
        const FormulaSet image = matrix_consequence(ex, eu, m);
        for (std::size_t i = 0; i < n; ++i) {
          if (!((cn[x] >> i) & 1u)) continue;
          c.expect(image.contains(substitute(u[i], e)),
                   std::string(name) + ": structurality fails for " + to_string(u[i]));
        }
      }
    }
  }
  return c.result(std::to_string(checked) + " subsets of a " + std::to_string(n) +
                  "-formula universe on (B2,{1}) and (MO2,{1}), 50 substitutions each");
}

struct ClosureRun {
  Logic logic;
  Variety variety;
  std::vector<const char*> seeds;
  std::optional<std::size_t> max_formula_size;
};

bool uses_rule(const Derivation& d, Rule rule) {
  if (d.rule == rule) return true;
  for (const Derivation& p : d.premises)
    if (uses_rule(p, rule)) return true;
  return false;
}

Result criterion7() {
  Checker c;
  const auto start = Clock::now();
  // The smallest orthomodular instance has 8 nodes, so the OML run raises the
  // size bound to let the extension axiom into the closure.
  const std::vector<ClosureRun> runs = {
      {Logic::OL, Variety::OL, {"p & q", "~p | q", "~(q & r)"}, std::nullopt},
      {Logic::OML, Variety::OML, {"p & (~p | p & q)", "q", "~q"}, 8},
  };
  const OrthoLattice o6 = builtin("O6");
  std::string summary;
  for (const ClosureRun& run : runs) {
    std::vector<Formula> seeds;
    for (const char* t : run.seeds) seeds.push_back(parse_formula(t));
    const FormulaSet closure = subformula_closure(seeds);
    const std::vector<Formula> pool(closure.begin(), closure.end());
    ClosureOptions options;
    options.max_formula_size = run.max_formula_size;
    const auto ls = in_variety(run.variety);
    const std::string name(to_string(run.logic));
    const SequentClosure sc = forward_closure({}, pool, run.logic, 3, options);
    c.expect(sc.size() >= 200, name + " closure has only " + std::to_string(sc.size()));
    std::size_t extension = 0;
    std::size_t beyond_ol = 0;
    for (std::size_t i = 0; i < sc.size(); ++i) {
      const Sequent& s = sc.sequents()[i];
      for (const OrthoLattice& l : ls)
        c.expect(testing::strongly_valid(l, s.left, s.right), to_string(s) + " fails on " + l.name());
      if (run.logic != Logic::OL && !testing::strongly_valid(o6, s.left, s.right)) ++beyond_ol;
      const bool sample = i % 50 == 0;
      if (sample || run.logic != Logic::OL) {
        const Derivation d = sc.derivation(s);
        if (uses_rule(d, Rule::Orthomodular)) ++extension;
        if (sample) c.expect(static_cast<bool>(check_derivation(d, run.logic)), "derivation of " + to_string(s));
      }
    }
    if (run.logic != Logic::OL) {
      c.expect(extension > 0, name + " closure never uses the orthomodular axiom");
      c.expect(beyond_ol > 0, name + " closure adds nothing beyond orthologic");
    }
    summary += std::string(summary.empty() ? "" : ", ") + name + " " + std::to_string(sc.size()) + " sequents on " +
               std::to_string(ls.size()) + " lattices";
    if (run.logic != Logic::OL)
      summary += " (" + std::to_string(extension) + " via the orthomodular axiom, " + std::to_string(beyond_ol) +
                 " invalid in O6)";
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
  return c.result(summary);
}

Result criterion8() {
  Checker c;
  auto timed = [&](const char* label, const std::function<void()>& body) {
    const auto start = Clock::now();
    body();
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 1.0, std::string(label) + " took " + std::to_string(elapsed) + " s");
  };
  timed("distributivity", [&] {
    const std::vector<OrthoLattice> ls{builtin("MO2")};
    const Sequent s = parse_sequent("p & (q | r) |- (p & q) | (p & r)");
    const DecideResult r = decide(s, Logic::OL, ls, 6);
    c.expect(r.outcome == DecideResult::Outcome::Refuted, "distributivity not refuted");
    if (r.witness) {
      c.expect(r.witness->lattice().name() == "MO2", "distributivity lattice");
      c.expect(describe(*r.witness) == "p=x, q=y, r=yp, a=x", "distributivity witness " + describe(*r.witness));
      record({false, r.witness}, {{s.left}, s.right}, Mode::Strong, ls);
    }
  });
  timed("orthomodular under OL", [&] {
    const std::vector<OrthoLattice> ls{builtin("O6")};
    const Sequent s = parse_sequent("p & (~p | (p & q)) |- q");
    const DecideResult r = decide(s, Logic::OL, ls, 6);
    c.expect(r.outcome == DecideResult::Outcome::Refuted, "orthomodular sequent not refuted");
    if (r.witness) {
      c.expect(r.witness->lattice().name() == "O6", "orthomodular lattice");
      c.expect(describe(*r.witness) == "p=b, q=a, a=b", "orthomodular witness " + describe(*r.witness));
      record({false, r.witness}, {{s.left}, s.right}, Mode::Strong, ls);
    }
  });
  timed("orthomodular under OML", [&] {
    const auto ls = in_variety(Variety::OML);
    const DecideResult r = decide(parse_sequent("p & (~p | (p & q)) |- q"), Logic::OML, ls, 6);
    c.expect(r.outcome == DecideResult::Outcome::Proved, "orthomodular sequent not proved in OML");
    c.expect(r.derivation && r.derivation->height() == 1 && r.derivation->rule == Rule::Orthomodular,
             "expected a single orthomodular axiom");
    c.expect(r.derivation && check_derivation(*r.derivation, Logic::OML), "derivation does not check");
  });
  return c.result("REFUTED(MO2) p=x,q=y,r=yp,a=x; REFUTED(O6) p=b,q=a,a=b; PROVED in OML at height 1");
}

Result criterion9() {
  Checker c;
  testing::FormulaGenerator gen({"p", "q", "r", "s", "t1"}, 99991, true);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = gen(6);
    c.expect(f.height() <= 6, "generator exceeded depth 6");
    const std::string text = to_string(f);
    try {
      c.expect(parse_formula(text) == f, "round trip changed " + text);
    } catch (const ParseError& e) {
      c.expect(false, "unparsable output " + text + ": " + e.what());
    }
  }
  return c.result("1000 random formulas of depth <= 6 round-trip");
}

Result criterion10() {
  Checker c;
  for (const Replay& r : g_replays) {
    bool ok = false;
    try {
      ok = verify_witness(r.verdict, r.query, r.mode, r.lattices);
    } catch (const Error& e) {
      c.expect(false, std::string("replay threw: ") + e.what());
      continue;
    }
    c.expect(ok, "witness for " + to_string(r.query) + " did not replay");
  }
  c.expect(g_replays.size() > 100, "too few witnesses collected");
  return c.result(std::to_string(g_replays.size()) + " witnesses replayed");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Result (*)()>> criteria = {
      {"ortholattice identities", criterion1},     {"classification oracles", criterion2},
      {"weak/strong separation", criterion3},      {"strong implies weak", criterion4},
      {"matrix route equality", criterion5},       {"Tarski conditions", criterion6},
      {"forward closure soundness", criterion7},   {"decide endpoints", criterion8},
      {"parser round trip", criterion9},           {"witness replay", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    const auto start = Clock::now();
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    if (!r.pass) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", elapsed);
    std::cout << "criterion " << (i + 1) << " [" << criteria[i].first << "]: " << (r.pass ? "PASS" : "FAIL") << " ("
              << timing << ") " << r.detail << '\n';
  }
  std::cout << (criteria.size() - failed) << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
