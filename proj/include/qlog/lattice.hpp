#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qlog {

// Handle to an element of a finite lattice: its position in the declared
// element order.
struct Element {
  std::uint16_t index = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

// Parsed but unvalidated lattice description (see build_lattice).
struct LatticeDescription {
  std::string name;
  std::vector<std::string> elements;
  std::string bottom;
  std::string top;
  std::vector<std::pair<std::string, std::string>> covers;  // first immediately below second
  std::vector<std::pair<std::string, std::string>> orthos;  // symmetric pairs
};

struct BuildOptions {
  // Carriers above this size are rejected unless allow_large is set.
  std::size_t max_elements = 64;
  bool allow_large = false;
};

// A validated finite ortholattice. Immutable; copies share the tables.
class OrthoLattice {
 public:
  const std::string& name() const noexcept;
  std::size_t size() const noexcept;

  // All elements in declaration order.
  std::span<const Element> elements() const noexcept;
  const std::string& name_of(Element e) const;
  std::optional<Element> find(std::string_view element_name) const;
  // Throws LatticeError(UnknownElement).
  Element element(std::string_view element_name) const;
  bool contains(Element e) const noexcept { return e.index < size(); }

  Element bottom() const noexcept;
  Element top() const noexcept;

  bool leq(Element a, Element b) const noexcept;
  Element meet(Element a, Element b) const noexcept;
  Element join(Element a, Element b) const noexcept;
  Element ortho(Element a) const noexcept;

  friend bool operator==(const OrthoLattice& a, const OrthoLattice& b) noexcept { return a.tables_ == b.tables_; }

 private:
  struct Tables;
  explicit OrthoLattice(std::shared_ptr<const Tables> tables) : tables_(std::move(tables)) {}
  friend OrthoLattice build_lattice(const LatticeDescription&, const BuildOptions&);

  std::shared_ptr<const Tables> tables_;
};

LatticeDescription parse_lattice_description(std::string_view text);
// Closes the covering relation, derives meet and join from the order, installs
// the orthocomplement and checks every ortholattice identity. Throws
// LatticeError describing the first problem found.
OrthoLattice build_lattice(const LatticeDescription& description, const BuildOptions& options = {});
OrthoLattice build_lattice(std::string_view text, const BuildOptions& options = {});
OrthoLattice load_lattice(const std::filesystem::path& path, const BuildOptions& options = {});

// B2, B4, B8, MO2 or O6.
OrthoLattice builtin(std::string_view name);
std::span<const std::string_view> builtin_names() noexcept;
// Source text of a builtin in the lattice file format.
std::string_view builtin_source(std::string_view name);

// --- Ortholattice identities -------------------------------------------------

struct IdentityCheck {
  std::string_view identity;
  // Falsifying tuple (x, y, z as far as the identity uses them), first in
  // declaration order.
  std::optional<std::vector<Element>> witness;

  bool holds() const noexcept { return !witness.has_value(); }
};

// The ten defining identities followed by the conditions x <= x'',
// x & x' = 0 and antitonicity, then involution and x | x' = 1.
std::vector<IdentityCheck> check_ortholattice_identities(const OrthoLattice& lattice);

// --- Varieties ---------------------------------------------------------------

enum class Variety { OL, OML, MOL, BA };

std::string_view to_string(Variety v) noexcept;
std::optional<Variety> parse_variety(std::string_view text) noexcept;

struct LawViolation {
  Variety law;                  // the variety whose defining law failed
  std::vector<Element> tuple;   // (x, y) or (x, y, z)
};

struct VarietyReport {
  bool is_ortholattice = false;
  bool is_orthomodular = false;
  bool is_modular = false;
  bool is_distributive = false;
  std::optional<LawViolation> witness;

  Variety strongest() const noexcept;
  bool belongs_to(Variety v) const noexcept;
};

VarietyReport classify(const OrthoLattice& lattice);

// --- Filters -----------------------------------------------------------------

// Nonempty, upward closed, meet closed subset of a lattice.
class Filter {
 public:
  const OrthoLattice& carrier() const noexcept { return carrier_; }
  // Sorted by element order.
  const std::vector<Element>& members() const noexcept { return members_; }
  bool contains(Element e) const noexcept;

 private:
  Filter(OrthoLattice carrier, std::vector<Element> members)
      : carrier_(std::move(carrier)), members_(std::move(members)) {}
  friend Filter principal_filter(const OrthoLattice&, Element);
  friend Filter generated_filter(const OrthoLattice&, std::span<const Element>);

  OrthoLattice carrier_;
  std::vector<Element> members_;
};

Filter principal_filter(const OrthoLattice& lattice, Element a);
// Least filter containing the nonempty set xs. Throws Error on empty input.
Filter generated_filter(const OrthoLattice& lattice, std::span<const Element> xs);
bool is_filter(const OrthoLattice& lattice, std::span<const Element> subset);

}  // namespace qlog
