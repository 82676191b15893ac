#include "vsalisp/reader.hpp"

#include <cctype>
#include <charconv>

#include "vsalisp/error.hpp"

namespace vsalisp {

SExpr make_atom(std::string name) { return SExpr{Atom{std::move(name)}}; }
SExpr make_int(std::int64_t value) { return SExpr{IntLiteral{value}}; }
SExpr make_list(std::vector<SExpr> items) { return SExpr{List{std::move(items)}}; }

std::string to_string(const SExpr& expr) {
  if (expr.is_atom()) return expr.atom().name;
  if (expr.is_int()) return std::to_string(expr.int_literal().value);
  const auto& items = expr.list().items;
  if (items.empty()) return "nil";
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out += ' ';
    out += to_string(items[i]);
  }
  out += ')';
  return out;
}

namespace {

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '(' || c == ')' || c == ';' ||
         c == '\'';
}

bool looks_numeric(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(text[i])) == 0) return false;
  }
  return true;
}

}  // namespace

TokenStream tokenize(std::string_view source) {
  TokenStream out;
  out.source_length = source.size();
  std::size_t i = 0;
  while (i < source.size()) {
    const char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
    } else if (c == ';') {
      while (i < source.size() && source[i] != '\n') ++i;
    } else if (c == '(') {
      out.tokens.push_back({TokenKind::kLParen, "(", 0, i++});
    } else if (c == ')') {
      out.tokens.push_back({TokenKind::kRParen, ")", 0, i++});
    } else if (c == '\'') {
      out.tokens.push_back({TokenKind::kQuote, "'", 0, i++});
    } else {
      const std::size_t start = i;
      while (i < source.size() && !is_delimiter(source[i])) ++i;
      std::string text(source.substr(start, i - start));
      if (looks_numeric(text)) {
        std::int64_t value = 0;
        const char* first = text.data() + (text[0] == '+' ? 1 : 0);
        const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
          throw SyntaxError(start, "integer literal '" + text + "' out of range");
        }
        out.tokens.push_back({TokenKind::kInteger, std::move(text), value, start});
      } else {
        out.tokens.push_back({TokenKind::kAtom, std::move(text), 0, start});
      }
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const TokenStream& stream) : stream_(stream) {}

  [[nodiscard]] bool at_end() const { return pos_ >= stream_.tokens.size(); }

  SExpr form() {
    if (at_end()) throw SyntaxError(stream_.source_length, "unexpected end of input");
    const Token& tok = stream_.tokens[pos_++];
    switch (tok.kind) {
      case TokenKind::kInteger:
        return make_int(tok.value);
      case TokenKind::kAtom:
        return make_atom(tok.text);
      case TokenKind::kQuote:
        return make_list({make_atom("quote"), form()});
      case TokenKind::kRParen:
        throw SyntaxError(tok.offset, "unbalanced ')'");
      case TokenKind::kLParen:
        break;
    }
    std::vector<SExpr> items;
    while (true) {
      if (at_end()) throw SyntaxError(stream_.source_length, "unbalanced '(': missing ')'");
      if (stream_.tokens[pos_].kind == TokenKind::kRParen) {
        ++pos_;
        break;
      }
      items.push_back(form());
    }
    if (items.empty()) return make_atom("nil");
    return make_list(std::move(items));
  }

  [[nodiscard]] std::size_t offset() const { return stream_.tokens[pos_].offset; }

 private:
  const TokenStream& stream_;
  std::size_t pos_ = 0;
};

}  // namespace

SExpr parse(const TokenStream& tokens) {
  Parser p(tokens);
  SExpr out = p.form();
  if (!p.at_end()) throw SyntaxError(p.offset(), "trailing tokens after form");
  return out;
}

std::vector<SExpr> parse_program(const TokenStream& tokens) {
  Parser p(tokens);
  std::vector<SExpr> forms;
  while (!p.at_end()) forms.push_back(p.form());
  return forms;
}

}  // namespace vsalisp
