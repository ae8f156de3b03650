#include "qlog/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "qlog/error.hpp"

namespace qlog {

struct OrthoLattice::Tables {
  std::string name;
  std::vector<std::string> names;
  std::vector<Element> elements;
  std::map<std::string, Element, std::less<>> index;
  Element bottom;
  Element top;
  std::size_t n = 0;
  std::vector<char> leq;  // n * n
  std::vector<Element> meet;
  std::vector<Element> join;
  std::vector<Element> ortho;
};

const std::string& OrthoLattice::name() const noexcept { return tables_->name; }
std::size_t OrthoLattice::size() const noexcept { return tables_->n; }
std::span<const Element> OrthoLattice::elements() const noexcept { return tables_->elements; }

const std::string& OrthoLattice::name_of(Element e) const {
  if (!contains(e))
    throw LatticeError(LatticeError::Kind::UnknownElement,
                       "element index " + std::to_string(e.index) + " is not in lattice " + name());
  return tables_->names[e.index];
}

std::optional<Element> OrthoLattice::find(std::string_view element_name) const {
  auto it = tables_->index.find(element_name);
  if (it == tables_->index.end()) return std::nullopt;
  return it->second;
}

Element OrthoLattice::element(std::string_view element_name) const {
  if (auto e = find(element_name)) return *e;
  throw LatticeError(LatticeError::Kind::UnknownElement,
                     "unknown element '" + std::string(element_name) + "' in lattice " + name());
}

Element OrthoLattice::bottom() const noexcept { return tables_->bottom; }
Element OrthoLattice::top() const noexcept { return tables_->top; }

bool OrthoLattice::leq(Element a, Element b) const noexcept {
  return tables_->leq[a.index * tables_->n + b.index] != 0;
}
Element OrthoLattice::meet(Element a, Element b) const noexcept { return tables_->meet[a.index * tables_->n + b.index]; }
Element OrthoLattice::join(Element a, Element b) const noexcept { return tables_->join[a.index * tables_->n + b.index]; }
Element OrthoLattice::ortho(Element a) const noexcept { return tables_->ortho[a.index]; }

// --- Parsing -----------------------------------------------------------------

namespace {

[[noreturn]] void format_error(std::size_t line, const std::string& message) {
  throw LatticeError(LatticeError::Kind::Format, "line " + std::to_string(line) + ": " + message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  return s;
}

bool is_element_token(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; });
}

std::vector<std::string> tokens(std::string_view s, std::size_t line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) {
    if (!is_element_token(tok)) format_error(line, "bad element name '" + tok + "'");
    out.push_back(tok);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> pairs(std::string_view s, std::size_t line,
                                                       std::string_view key) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t semi = s.find(';', start);
    const std::string_view piece = trim(s.substr(start, semi == s.npos ? s.npos : semi - start));
    if (!piece.empty()) {
      auto toks = tokens(piece, line);
      if (toks.size() != 2)
        format_error(line, std::string(key) + " entries are pairs '<a> <b>', got '" + std::string(piece) + "'");
      out.emplace_back(toks[0], toks[1]);
    }
    if (semi == s.npos) break;
    start = semi + 1;
  }
  return out;
}

std::string single(std::string_view value, std::size_t line, std::string_view key) {
  auto toks = tokens(value, line);
  if (toks.size() != 1) format_error(line, std::string(key) + " takes exactly one element");
  return toks.front();
}

}  // namespace

LatticeDescription parse_lattice_description(std::string_view text) {
  LatticeDescription d;
  bool seen_name = false;
  bool seen_elements = false;
  bool seen_bottom = false;
  bool seen_top = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == text.npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == line.npos) format_error(line_no, "expected '<key>: <value>'");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value = trim(line.substr(colon + 1));
    if (key == "name") {
      if (seen_name) format_error(line_no, "duplicate name");
      seen_name = true;
      d.name = single(value, line_no, key);
    } else if (key == "elements") {
      if (seen_elements) format_error(line_no, "duplicate elements line");
      seen_elements = true;
      d.elements = tokens(value, line_no);
    } else if (key == "bottom") {
      if (seen_bottom) throw LatticeError(LatticeError::Kind::Bounds, "line " + std::to_string(line_no) + ": duplicate bottom");
      seen_bottom = true;
      d.bottom = single(value, line_no, key);
    } else if (key == "top") {
      if (seen_top) throw LatticeError(LatticeError::Kind::Bounds, "line " + std::to_string(line_no) + ": duplicate top");
      seen_top = true;
      d.top = single(value, line_no, key);
    } else if (key == "cover") {
      auto ps = pairs(value, line_no, key);
      d.covers.insert(d.covers.end(), ps.begin(), ps.end());
    } else if (key == "ortho") {
      auto ps = pairs(value, line_no, key);
      d.orthos.insert(d.orthos.end(), ps.begin(), ps.end());
    } else {
      format_error(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!seen_name) throw LatticeError(LatticeError::Kind::Format, "missing name");
  if (!seen_elements) throw LatticeError(LatticeError::Kind::Format, "missing elements");
  if (!seen_bottom) throw LatticeError(LatticeError::Kind::Bounds, "missing bottom");
  if (!seen_top) throw LatticeError(LatticeError::Kind::Bounds, "missing top");
  return d;
}

// --- Construction ------------------------------------------------------------

namespace {

// The element of candidates above all others (below all others when dual),
// if there is one.
std::optional<Element> greatest(std::size_t n, const std::vector<char>& leq, const std::vector<Element>& candidates,
                                bool dual) {
  auto le = [&](Element a, Element b) {
    return dual ? leq[b.index * n + a.index] != 0 : leq[a.index * n + b.index] != 0;
  };
  for (Element g : candidates) {
    if (std::all_of(candidates.begin(), candidates.end(), [&](Element c) { return le(c, g); })) return g;
  }
  return std::nullopt;
}

std::string render(const OrthoLattice& lattice, const std::vector<Element>& tuple) {
  static constexpr const char* kNames[] = {"x", "y", "z"};
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i != 0) out += ", ";
    out += kNames[i];
    out += '=';
    out += lattice.name_of(tuple[i]);
  }
  return out;
}

}  // namespace

OrthoLattice build_lattice(const LatticeDescription& d, const BuildOptions& options) {
  using Kind = LatticeError::Kind;
  auto tables = std::make_shared<OrthoLattice::Tables>();
  tables->name = d.name;
  const std::size_t n = d.elements.size();
  if (n == 0) throw LatticeError(Kind::Format, "lattice " + d.name + " has no elements");
  if (n > options.max_elements && !options.allow_large)
    throw LatticeError(Kind::TooLarge, "lattice " + d.name + " has " + std::to_string(n) +
                                           " elements, above the limit of " + std::to_string(options.max_elements));
  if (n > 0xffff) throw LatticeError(Kind::TooLarge, "lattice " + d.name + " has too many elements");
  tables->n = n;
  tables->names = d.elements;
  for (std::size_t i = 0; i < n; ++i) {
    const Element e{static_cast<std::uint16_t>(i)};
    if (!tables->index.emplace(d.elements[i], e).second)
      throw LatticeError(Kind::Format, "duplicate element '" + d.elements[i] + "'");
    tables->elements.push_back(e);
  }
  auto lookup = [&](const std::string& name, std::string_view what) {
    auto it = tables->index.find(name);
    if (it == tables->index.end())
      throw LatticeError(Kind::UnknownElement, std::string(what) + " mentions unknown element '" + name + "'");
    return it->second;
  };
  tables->bottom = lookup(d.bottom, "bottom");
  tables->top = lookup(d.top, "top");

  // Order: reflexive-transitive closure of the covers.
  std::vector<char> cover(n * n, 0);
  for (const auto& [lo, hi] : d.covers) {
    const Element a = lookup(lo, "cover");
    const Element b = lookup(hi, "cover");
    if (a == b) throw LatticeError(Kind::Format, "cover " + lo + " " + hi + " relates an element to itself");
    if (cover[a.index * n + b.index] != 0) throw LatticeError(Kind::Format, "duplicate cover " + lo + " " + hi);
    cover[a.index * n + b.index] = 1;
  }
  std::vector<char> leq = cover;
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k] != 0)
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j] != 0) leq[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i * n + j] != 0 && leq[j * n + i] != 0)
        throw LatticeError(Kind::Format, "cyclic covers through " + d.elements[i] + " and " + d.elements[j]);
  // A cover must not be implied by a longer chain.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (cover[a * n + b] == 0) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (c != a && c != b && leq[a * n + c] != 0 && leq[c * n + b] != 0)
          throw LatticeError(Kind::Format, "cover " + d.elements[a] + " " + d.elements[b] + " is not a covering pair (" +
                                               d.elements[c] + " lies between)");
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[tables->bottom.index * n + i] == 0)
      throw LatticeError(Kind::Bounds, "bottom " + d.bottom + " is not below " + d.elements[i]);
    if (leq[i * n + tables->top.index] == 0)
      throw LatticeError(Kind::Bounds, "top " + d.top + " is not above " + d.elements[i]);
  }
  tables->leq = leq;

  // Meet and join as greatest lower and least upper bounds.
  tables->meet.resize(n * n);
  tables->join.resize(n * n);
  std::vector<Element> bounds;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bounds.clear();
      for (std::size_t k = 0; k < n; ++k)
        if (leq[k * n + i] != 0 && leq[k * n + j] != 0) bounds.push_back(Element{static_cast<std::uint16_t>(k)});
      auto m = greatest(n, leq, bounds, false);
      if (!m)
        throw LatticeError(Kind::NotALattice, "not a lattice: " + d.elements[i] + " and " + d.elements[j] +
                                                  " have no unique meet");
      tables->meet[i * n + j] = *m;
      bounds.clear();
      for (std::size_t k = 0; k < n; ++k)
        if (leq[i * n + k] != 0 && leq[j * n + k] != 0) bounds.push_back(Element{static_cast<std::uint16_t>(k)});
      auto s = greatest(n, leq, bounds, true);
      if (!s)
        throw LatticeError(Kind::NotALattice, "not a lattice: " + d.elements[i] + " and " + d.elements[j] +
                                                  " have no unique join");
      tables->join[i * n + j] = *s;
    }
  }

  // Orthocomplement from symmetric pairs; 0 <-> 1 may be left implicit.
  std::vector<std::optional<Element>> ortho(n);
  auto set_ortho = [&](Element a, Element b) {
    if (ortho[a.index] && *ortho[a.index] != b)
      throw LatticeError(Kind::OrthoViolation, "ortho violation: " + tables->names[a.index] +
                                                   " is given two orthocomplements");
    ortho[a.index] = b;
  };
  for (const auto& [x, y] : d.orthos) {
    const Element a = lookup(x, "ortho");
    const Element b = lookup(y, "ortho");
    set_ortho(a, b);
    set_ortho(b, a);
  }
  if (!ortho[tables->bottom.index] && !ortho[tables->top.index]) {
    ortho[tables->bottom.index] = tables->top;
    ortho[tables->top.index] = tables->bottom;
  }
  tables->ortho.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!ortho[i])
      throw LatticeError(Kind::OrthoViolation, "ortho violation: no orthocomplement given for " + tables->names[i]);
    tables->ortho[i] = *ortho[i];
  }

  OrthoLattice lattice(std::move(tables));
  for (const IdentityCheck& check : check_ortholattice_identities(lattice)) {
    if (!check.holds())
      throw LatticeError(Kind::OrthoViolation, "ortho violation: identity " + std::string(check.identity) +
                                                   " fails at " + render(lattice, *check.witness));
  }
  return lattice;
}

OrthoLattice build_lattice(std::string_view text, const BuildOptions& options) {
  return build_lattice(parse_lattice_description(text), options);
}

OrthoLattice load_lattice(const std::filesystem::path& path, const BuildOptions& options) {
  std::ifstream in(path);
  if (!in) throw LatticeError(LatticeError::Kind::Format, "cannot read lattice file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return build_lattice(buffer.str(), options);
}

// --- Identities --------------------------------------------------------------

namespace {

template <class Pred>
std::optional<std::vector<Element>> search1(const OrthoLattice& l, Pred pred) {
  for (Element x : l.elements())
    if (!pred(x)) return std::vector<Element>{x};
  return std::nullopt;
}

template <class Pred>
std::optional<std::vector<Element>> search2(const OrthoLattice& l, Pred pred) {
  for (Element x : l.elements())
    for (Element y : l.elements())
      if (!pred(x, y)) return std::vector<Element>{x, y};
  return std::nullopt;
}

template <class Pred>
std::optional<std::vector<Element>> search3(const OrthoLattice& l, Pred pred) {
  for (Element x : l.elements())
    for (Element y : l.elements())
      for (Element z : l.elements())
        if (!pred(x, y, z)) return std::vector<Element>{x, y, z};
  return std::nullopt;
}

}  // namespace

std::vector<IdentityCheck> check_ortholattice_identities(const OrthoLattice& l) {
  auto m = [&](Element a, Element b) { return l.meet(a, b); };
  auto j = [&](Element a, Element b) { return l.join(a, b); };
  auto o = [&](Element a) { return l.ortho(a); };
  const Element zero = l.bottom();
  const Element one = l.top();
  std::vector<IdentityCheck> out;
  out.push_back({"x & y = y & x", search2(l, [&](Element x, Element y) { return m(x, y) == m(y, x); })});
  out.push_back({"x & (y & z) = (x & y) & z",
                 search3(l, [&](Element x, Element y, Element z) { return m(x, m(y, z)) == m(m(x, y), z); })});
  out.push_back({"x = x & (x | y)", search2(l, [&](Element x, Element y) { return x == m(x, j(x, y)); })});
  out.push_back({"x | y = y | x", search2(l, [&](Element x, Element y) { return j(x, y) == j(y, x); })});
  out.push_back({"x | (y | z) = (x | y) | z",
                 search3(l, [&](Element x, Element y, Element z) { return j(x, j(y, z)) == j(j(x, y), z); })});
  out.push_back({"x = x | (x & y)", search2(l, [&](Element x, Element y) { return x == j(x, m(x, y)); })});
  out.push_back({"x | 1 = 1", search1(l, [&](Element x) { return j(x, one) == one; })});
  out.push_back({"x & x' = 0", search1(l, [&](Element x) { return m(x, o(x)) == zero; })});
  out.push_back({"x'' & x = x", search1(l, [&](Element x) { return m(o(o(x)), x) == x; })});
  out.push_back({"x' & (x | y)' = (x | y)'",
                 search2(l, [&](Element x, Element y) { return m(o(x), o(j(x, y))) == o(j(x, y)); })});
  out.push_back({"x <= x''", search1(l, [&](Element x) { return l.leq(x, o(o(x))); })});
  out.push_back({"x & x' = 0 (complement)", search1(l, [&](Element x) { return m(x, o(x)) == zero; })});
  out.push_back({"x <= y implies y' <= x'",
                 search2(l, [&](Element x, Element y) { return !l.leq(x, y) || l.leq(o(y), o(x)); })});
  out.push_back({"x'' = x", search1(l, [&](Element x) { return o(o(x)) == x; })});
  out.push_back({"x | x' = 1", search1(l, [&](Element x) { return j(x, o(x)) == one; })});
  return out;
}

// --- Varieties ---------------------------------------------------------------

std::string_view to_string(Variety v) noexcept {
  switch (v) {
    case Variety::OL: return "OL";
    case Variety::OML: return "OML";
    case Variety::MOL: return "MOL";
    case Variety::BA: return "BA";
  }
  return "?";
}

std::optional<Variety> parse_variety(std::string_view text) noexcept {
  if (text == "OL") return Variety::OL;
  if (text == "OML") return Variety::OML;
  if (text == "MOL") return Variety::MOL;
  if (text == "BA") return Variety::BA;
  return std::nullopt;
}

Variety VarietyReport::strongest() const noexcept {
  if (is_distributive) return Variety::BA;
  if (is_modular) return Variety::MOL;
  if (is_orthomodular) return Variety::OML;
  return Variety::OL;
}

bool VarietyReport::belongs_to(Variety v) const noexcept {
  switch (v) {
    case Variety::OL: return is_ortholattice;
    case Variety::OML: return is_orthomodular;
    case Variety::MOL: return is_modular;
    case Variety::BA: return is_distributive;
  }
  return false;
}

VarietyReport classify(const OrthoLattice& l) {
  auto m = [&](Element a, Element b) { return l.meet(a, b); };
  auto j = [&](Element a, Element b) { return l.join(a, b); };
  VarietyReport report;
  report.is_ortholattice = true;

  auto orthomodular = search2(l, [&](Element x, Element y) { return m(x, j(m(x, y), l.ortho(x))) == m(x, y); });
  auto modular = search3(l, [&](Element x, Element y, Element z) {
    return m(x, j(m(x, y), z)) == j(m(x, y), m(x, z));
  });
  auto distributive = search3(l, [&](Element x, Element y, Element z) {
    return m(x, j(y, z)) == j(m(x, y), m(x, z));
  });

  report.is_orthomodular = !orthomodular;
  report.is_modular = report.is_orthomodular && !modular;
  report.is_distributive = report.is_modular && !distributive;
  if (orthomodular) {
    report.witness = LawViolation{Variety::OML, *orthomodular};
  } else if (modular) {
    report.witness = LawViolation{Variety::MOL, *modular};
  } else if (distributive) {
    report.witness = LawViolation{Variety::BA, *distributive};
  }
  return report;
}

// --- Filters -----------------------------------------------------------------

bool Filter::contains(Element e) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), e);
}

Filter principal_filter(const OrthoLattice& l, Element a) {
  if (!l.contains(a)) l.name_of(a);  // throws
  std::vector<Element> members;
  for (Element x : l.elements())
    if (l.leq(a, x)) members.push_back(x);
  return Filter(l, std::move(members));
}

Filter generated_filter(const OrthoLattice& l, std::span<const Element> xs) {
  if (xs.empty()) throw Error("generated_filter: the generating set must be nonempty");
  std::vector<char> in(l.size(), 0);
  for (Element x : xs) {
    if (!l.contains(x)) l.name_of(x);
    in[x.index] = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (Element x : l.elements()) {
      if (in[x.index] == 0) continue;
      for (Element y : l.elements()) {
        if (l.leq(x, y) && in[y.index] == 0) {
          in[y.index] = 1;
          changed = true;
        }
        if (in[y.index] != 0) {
          const Element z = l.meet(x, y);
          if (in[z.index] == 0) {
            in[z.index] = 1;
            changed = true;
          }
        }
      }
    }
  }
  std::vector<Element> members;
  for (Element x : l.elements())
    if (in[x.index] != 0) members.push_back(x);
  return Filter(l, std::move(members));
}

bool is_filter(const OrthoLattice& l, std::span<const Element> subset) {
  if (subset.empty()) return false;
  std::vector<char> in(l.size(), 0);
  for (Element x : subset) {
    if (!l.contains(x)) return false;
    in[x.index] = 1;
  }
  for (Element x : l.elements()) {
    if (in[x.index] == 0) continue;
    for (Element y : l.elements()) {
      if (l.leq(x, y) && in[y.index] == 0) return false;
      if (in[y.index] != 0 && in[l.meet(x, y).index] == 0) return false;
    }
  }
  return true;
}

}  // namespace qlog
