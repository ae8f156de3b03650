#include <cctype>

#include "qlog/error.hpp"
#include "qlog/formula.hpp"

namespace qlog {

namespace {

bool is_ident_start(char c) noexcept { return c >= 'a' && c <= 'z'; }

bool is_ident_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Recursive descent over
//   formula := conj { "|" conj }
//   conj    := neg { "&" neg }
//   neg     := "~" neg | atom
//   atom    := IDENT | "1" | "0" | "(" formula ")"
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    skip_space();
    if (at_end()) throw ParseError("empty formula", pos_);
    Formula f = disjunction();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return f;
  }

 private:
  Formula disjunction() {
    Formula f = conjunction();
    while (accept('|')) f = f | conjunction();
    return f;
  }

  Formula conjunction() {
    Formula f = negation();
    while (accept('&')) f = f & negation();
    return f;
  }

  Formula negation() {
    if (accept('~')) return ~negation();
    return atom();
  }

  Formula atom() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of input, expected a formula", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = disjunction();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (c == '1') {
      ++pos_;
      return Formula::top();
    }
    if (c == '0') {
      ++pos_;
      return Formula::bottom();
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (!at_end() && is_ident_char(text_[pos_])) ++pos_;
      return Formula::variable(std::string(text_.substr(start, pos_ - start)));
    }
    throw ParseError(std::string("unexpected '") + c + "', expected a formula", pos_);
  }

  bool accept(char c) {
    skip_space();
    // "|-" is the turnstile, never a disjunction.
    if (c == '|' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') return false;
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool at_end() const noexcept { return pos_ >= text_.size(); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool blank(std::string_view text) {
  for (char c : text)
    if (std::isspace(static_cast<unsigned char>(c)) == 0) return false;
  return true;
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse_all(); }

std::vector<Formula> parse_formula_list(std::string_view text) {
  std::vector<Formula> out;
  if (blank(text)) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    try {
      out.push_back(parse_formula(piece));
    } catch (const ParseError& e) {
      // Re-anchor the position to the whole list.
      throw ParseError(e.detail(), start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty() || !is_ident_start(text.front())) return false;
  for (char c : text)
    if (!is_ident_char(c)) return false;
  return true;
}

}  // namespace qlog
