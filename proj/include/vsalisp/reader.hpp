#pragma once

// S-expression reader: tokenizer and recursive-descent parser.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vsalisp {

struct SExpr;

struct Atom {
  std::string name;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct IntLiteral {
  std::int64_t value;
  friend bool operator==(const IntLiteral&, const IntLiteral&) = default;
};

struct List {
  std::vector<SExpr> items;
  friend bool operator==(const List&, const List&);
};

struct SExpr {
  std::variant<Atom, IntLiteral, List> node;

  [[nodiscard]] bool is_atom() const noexcept { return std::holds_alternative<Atom>(node); }
  [[nodiscard]] bool is_int() const noexcept { return std::holds_alternative<IntLiteral>(node); }
  [[nodiscard]] bool is_list() const noexcept { return std::holds_alternative<List>(node); }
  [[nodiscard]] const Atom& atom() const { return std::get<Atom>(node); }
  [[nodiscard]] const IntLiteral& int_literal() const { return std::get<IntLiteral>(node); }
  [[nodiscard]] const List& list() const { return std::get<List>(node); }

  friend bool operator==(const SExpr&, const SExpr&) = default;
};

inline bool operator==(const List& a, const List& b) { return a.items == b.items; }

SExpr make_atom(std::string name);
SExpr make_int(std::int64_t value);
SExpr make_list(std::vector<SExpr> items);

// Written back in reader syntax; the empty list prints as nil.
std::string to_string(const SExpr& expr);

enum class TokenKind { kLParen, kRParen, kQuote, kAtom, kInteger };

struct Token {
  TokenKind kind;
  std::string text;
  std::int64_t value = 0;  // kInteger only
  std::size_t offset = 0;  // byte offset into the source
};

struct TokenStream {
  std::vector<Token> tokens;
  std::size_t source_length = 0;
};

// Splits on whitespace and parentheses; ';' starts a comment running to end
// of line. A token of optional sign plus decimal digits is an integer.
TokenStream tokenize(std::string_view source);

// Exactly one form; unbalanced or trailing tokens raise SyntaxError. "()" is
// the atom nil; 'x reads as (quote x).
SExpr parse(const TokenStream& tokens);

// Every top-level form in order.
std::vector<SExpr> parse_program(const TokenStream& tokens);

inline std::vector<SExpr> read_program(std::string_view source) {
  return parse_program(tokenize(source));
}

}  // namespace vsalisp
