#include "qlog/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "qlog/consequence.hpp"
#include "qlog/error.hpp"
#include "qlog/proof.hpp"

namespace qlog::cli {

OrthoLattice resolve_lattice(std::string_view ref, const std::filesystem::path& base) {
  constexpr std::string_view kBuiltin = "builtin:";
  if (ref.starts_with(kBuiltin)) return builtin(ref.substr(kBuiltin.size()));
  std::filesystem::path path(ref);
  if (path.is_relative() && !base.empty()) path = base / path;
  return load_lattice(path);
}

std::string describe(const VarietyReport& report, const OrthoLattice& lattice) {
  static constexpr std::array<Variety, 4> kChain = {Variety::OL, Variety::OML, Variety::MOL, Variety::BA};
  static constexpr std::array<const char*, 3> kLetters = {"x", "y", "z"};
  std::string out;
  for (Variety v : kChain) {
    if (!out.empty()) out += ", ";
    out += to_string(v);
    out += report.belongs_to(v) ? ": yes" : ": no";
    if (report.witness && report.witness->law == v) {
      out += " (witness: ";
      for (std::size_t i = 0; i < report.witness->tuple.size(); ++i) {
        if (i != 0) out += ", ";
        out += kLetters[i];
        out += '=';
        out += lattice.name_of(report.witness->tuple[i]);
      }
      out += ')';
    }
  }
  return out;
}

namespace {

std::vector<OrthoLattice> resolve_all(const std::vector<std::string>& refs) {
  std::vector<OrthoLattice> out;
  for (const std::string& r : refs) out.push_back(resolve_lattice(r));
  return out;
}

// Builtins of the variety, used when decide gets no --lattice.
std::vector<OrthoLattice> default_lattices(Variety v) {
  std::vector<OrthoLattice> out;
  for (std::string_view name : builtin_names()) {
    OrthoLattice l = builtin(name);
    if (classify(l).belongs_to(v)) out.push_back(std::move(l));
  }
  return out;
}

Logic logic_from(const std::string& text) {
  const auto logic = parse_logic(text);
  if (!logic) throw Error("unknown logic '" + text + "' (expected OL, OML, MOL or CL)");
  return *logic;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

Filter filter_from(const OrthoLattice& lattice, const std::string& text) {
  if (text == "top") return principal_filter(lattice, lattice.top());
  constexpr std::string_view kElement = "element:";
  if (text.starts_with(kElement)) return principal_filter(lattice, lattice.element(text.substr(kElement.size())));
  throw Error("unknown filter '" + text + "' (expected top or element:<a>)");
}

int check_lattice(const std::string& file, std::ostream& out, std::ostream& err) {
  std::ifstream in(file);
  if (!in) {
    err << "error: cannot read lattice file " << file << '\n';
    return kUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  LatticeDescription description;
  try {
    description = parse_lattice_description(buffer.str());
  } catch (const LatticeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    const OrthoLattice l = build_lattice(description);
    out << "valid: " << l.name() << " (" << l.size() << " elements)\n";
    return kPositive;
  } catch (const LatticeError& e) {
    out << "invalid: " << e.what() << '\n';
    return kNegative;
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite ortholattices, quantum consequence and orthologic sequents", "qlog"};
  app.require_subcommand(1);

  std::string file;
  std::string builtin_name;
  std::string query;
  std::string assignment;
  std::string mode = "strong";
  std::string filter = "top";
  std::string premises;
  std::string vars;
  std::string logic = "OL";
  std::vector<std::string> lattices;
  std::size_t depth = 6;
  std::size_t universe_depth = 1;
  bool r1_verbatim = false;

  auto lattice_opt = [&](CLI::App* cmd, bool required) {
    auto* o = cmd->add_option("--lattice", lattices, "builtin:<name> or a lattice file (repeatable)")
                  ->allow_extra_args(false);
    if (required) o->required();
  };

  CLI::App* check_cmd = app.add_subcommand("check-lattice", "Validate a lattice file");
  check_cmd->add_option("file", file, "lattice file")->required();

  CLI::App* classify_cmd = app.add_subcommand("classify", "Report OL/OML/MOL/BA membership");
  classify_cmd->add_option("--builtin", builtin_name, "builtin lattice name");
  classify_cmd->add_option("file", file, "lattice file");

  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a formula under an assignment");
  lattice_opt(eval_cmd, true);
  eval_cmd->add_option("--assign", assignment, "p=x,q=y")->required();
  eval_cmd->add_option("formula", query, "formula")->required();

  CLI::App* entails_cmd = app.add_subcommand("entails", "Weak or strong consequence over lattices");
  entails_cmd->add_option("--mode", mode, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
  lattice_opt(entails_cmd, true);
  entails_cmd->add_option("query", query, "\"g1, g2 |- phi\"")->required();

  CLI::App* cn_cmd = app.add_subcommand("cn", "Matrix consequence over a finite universe");
  lattice_opt(cn_cmd, true);
  cn_cmd->add_option("--filter", filter, "top or element:<a>");
  cn_cmd->add_option("--universe-depth", universe_depth, "depth of the formula universe");
  cn_cmd->add_option("--premises", premises, "comma separated formulas");
  cn_cmd->add_option("--vars", vars, "universe variables (default: those of the premises)");

  CLI::App* taut_cmd = app.add_subcommand("tautologies", "Tautologies of a matrix up to a depth");
  lattice_opt(taut_cmd, true);
  taut_cmd->add_option("--filter", filter, "top or element:<a>");
  taut_cmd->add_option("--vars", vars, "p,q,...")->required();
  taut_cmd->add_option("--depth", depth, "formula depth")->required();

  CLI::App* prove_cmd = app.add_subcommand("prove", "Bounded proof search");
  prove_cmd->add_option("--logic", logic, "OL, OML, MOL or CL");
  prove_cmd->add_option("--depth", depth, "maximal derivation height");
  prove_cmd->add_flag("--r1-verbatim", r1_verbatim, "R1 with premises a |- b and b |- a instead of transitivity");
  prove_cmd->add_option("sequent", query, "\"a |- b\"")->required();

  CLI::App* decide_cmd = app.add_subcommand("decide", "Proof search, then countermodels");
  decide_cmd->add_option("--logic", logic, "OL, OML, MOL or CL");
  lattice_opt(decide_cmd, false);
  decide_cmd->add_option("--depth", depth, "maximal derivation height");
  decide_cmd->add_flag("--r1-verbatim", r1_verbatim, "R1 with premises a |- b and b |- a instead of transitivity");
  decide_cmd->add_option("sequent", query, "\"a |- b\"")->required();

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Run a corpus of expected verdicts");
  corpus_cmd->add_option("file", file, "corpus file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPositive;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    for (const CLI::App* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kUsage;
  }

  const ProofOptions proof_options{r1_verbatim};
  try {
    if (check_cmd->parsed()) return check_lattice(file, out, err);

    if (classify_cmd->parsed()) {
      if (builtin_name.empty() == file.empty()) {
        err << "usage error: classify takes exactly one of --builtin NAME or FILE\n";
        return kUsage;
      }
      const OrthoLattice l = builtin_name.empty() ? load_lattice(file) : builtin(builtin_name);
      out << describe(classify(l), l) << '\n';
      return kPositive;
    }

    if (eval_cmd->parsed()) {
      if (lattices.size() != 1) throw Error("eval takes exactly one --lattice");
      const OrthoLattice l = resolve_lattice(lattices.front());
      const Valuation v = parse_assignment(l, assignment);
      out << l.name_of(evaluate(v, parse_formula(query))) << '\n';
      return kPositive;
    }

    if (entails_cmd->parsed()) {
      const Query q = parse_query(query);
      const Mode m = mode == "weak" ? Mode::Weak : Mode::Strong;
      const auto ls = resolve_all(lattices);
      const ConsequenceVerdict verdict = class_entails(q.premises, q.conclusion, ls, m);
      if (verdict.holds) {
        out << "HOLDS\n";
        return kPositive;
      }
      if (!verify_witness(verdict, q, m, ls)) throw std::logic_error("witness failed replay");
      out << "FAILS on " << verdict.witness->lattice().name() << ": " << qlog::describe(*verdict.witness) << '\n';
      return kNegative;
    }

    if (cn_cmd->parsed()) {
      if (lattices.size() != 1) throw Error("cn takes exactly one --lattice");
      const OrthoLattice l = resolve_lattice(lattices.front());
      const std::vector<Formula> xs = parse_formula_list(premises);
      VariableSet vs;
      if (vars.empty()) {
        vs = variables(xs);
      } else {
        for (const std::string& v : split_names(vars)) vs.insert(v);
      }
      if (vs.empty()) throw Error("cn needs --vars or premises with variables");
      FormulaSet universe = formula_universe(vs, universe_depth);
      const FormulaSet closure = subformula_closure(xs);
      universe.insert(closure.begin(), closure.end());
      for (const Formula& f : matrix_consequence(xs, universe, Matrix(filter_from(l, filter)))) out << f << '\n';
      return kPositive;
    }

    if (taut_cmd->parsed()) {
      if (lattices.size() != 1) throw Error("tautologies takes exactly one --lattice");
      const OrthoLattice l = resolve_lattice(lattices.front());
      VariableSet vs;
      for (const std::string& v : split_names(vars)) vs.insert(v);
      for (const Formula& f : tautologies(Matrix(filter_from(l, filter)), vs, depth)) out << f << '\n';
      return kPositive;
    }

    if (prove_cmd->parsed()) {
      const Sequent goal = parse_sequent(query);
      if (auto proof = prove(goal, logic_from(logic), depth, proof_options)) {
        out << to_string(*proof);
        return kPositive;
      }
      out << "NOT_FOUND\n";
      return kUnknown;
    }

    if (decide_cmd->parsed()) {
      const Sequent goal = parse_sequent(query);
      const Logic lg = logic_from(logic);
      const auto ls = lattices.empty() ? default_lattices(variety_of(lg)) : resolve_all(lattices);
      const DecideResult result = decide(goal, lg, ls, depth, proof_options);
      switch (result.outcome) {
        case DecideResult::Outcome::Proved:
          out << "PROVED\n" << to_string(*result.derivation);
          return kPositive;
        case DecideResult::Outcome::Refuted:
          out << "REFUTED on " << result.witness->lattice().name() << ": " << qlog::describe(*result.witness) << '\n';
          return kNegative;
        case DecideResult::Outcome::Unknown:
          out << "UNKNOWN\n";
          return kUnknown;
      }
    }

    if (corpus_cmd->parsed()) return run_corpus(file, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace qlog::cli
