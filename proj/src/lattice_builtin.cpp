#include <array>

#include "qlog/error.hpp"
#include "qlog/lattice.hpp"

namespace qlog {

namespace {

constexpr std::string_view kB2 = R"(name: B2
elements: 0 1
bottom: 0
top: 1
cover: 0 1
)";

constexpr std::string_view kB4 = R"(name: B4
elements: 0 a b 1
bottom: 0
top: 1
cover: 0 a ; 0 b ; a 1 ; b 1
ortho: a b
)";

constexpr std::string_view kB8 = R"(name: B8
elements: 0 a b c ab ac bc 1
bottom: 0
top: 1
cover: 0 a ; 0 b ; 0 c
cover: a ab ; a ac ; b ab ; b bc ; c ac ; c bc
cover: ab 1 ; ac 1 ; bc 1
ortho: a bc ; b ac ; c ab
)";

// Two four-element blocks glued at 0 and 1. The atoms are listed as
// x y yp xp so that enumeration meets y before the complement of x.
constexpr std::string_view kMO2 = R"(name: MO2
elements: 0 x y yp xp 1
bottom: 0
top: 1
cover: 0 x ; 0 y ; 0 yp ; 0 xp
cover: x 1 ; y 1 ; yp 1 ; xp 1
ortho: x xp ; y yp
)";

// Benzene ring: chains 0 < a < b < 1 and 0 < bp < ap < 1.
constexpr std::string_view kO6 = R"(name: O6
elements: 0 a b bp ap 1
bottom: 0
top: 1
cover: 0 a ; a b ; b 1
cover: 0 bp ; bp ap ; ap 1
ortho: a ap ; b bp
)";

constexpr std::array<std::string_view, 5> kNames = {"B2", "B4", "B8", "MO2", "O6"};
constexpr std::array<std::string_view, 5> kSources = {kB2, kB4, kB8, kMO2, kO6};

}  // namespace

std::span<const std::string_view> builtin_names() noexcept { return kNames; }

std::string_view builtin_source(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return kSources[i];
  throw LatticeError(LatticeError::Kind::UnknownBuiltin, "unknown builtin lattice '" + std::string(name) + "'");
}

OrthoLattice builtin(std::string_view name) {
  static const std::array<OrthoLattice, 5> cache = [] {
    return std::array<OrthoLattice, 5>{build_lattice(kB2), build_lattice(kB4), build_lattice(kB8),
                                       build_lattice(kMO2), build_lattice(kO6)};
  }();
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return cache[i];
  throw LatticeError(LatticeError::Kind::UnknownBuiltin, "unknown builtin lattice '" + std::string(name) + "'");
}

}  // namespace qlog
