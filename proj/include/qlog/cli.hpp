#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "qlog/lattice.hpp"

namespace qlog::cli {

// Exit codes shared by every command.
inline constexpr int kPositive = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;
inline constexpr int kUnknown = 3;

// Runs one command line (without the program name).
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// "builtin:<name>" or a lattice file. Relative paths are resolved against base.
OrthoLattice resolve_lattice(std::string_view ref, const std::filesystem::path& base = {});

// "OL: yes, OML: no (witness: x=b, y=a), MOL: no, BA: no"
std::string describe(const VarietyReport& report, const OrthoLattice& lattice);

// Corpus files hold one record per line:
//   <TAG> ; <verb> ; <key=value ...> ; <query>
// Blank lines and lines starting with '#' are skipped.
int run_corpus(const std::filesystem::path& path, std::ostream& out, std::ostream& err);
int run_corpus_text(std::string_view text, const std::filesystem::path& base, std::ostream& out, std::ostream& err);

}  // namespace qlog::cli
