#include <gtest/gtest.h>

#include "vsalisp/error.hpp"
#include "vsalisp/reader.hpp"

namespace {

using namespace vsalisp;

std::size_t syntax_offset(std::string_view source) {
  try {
    (void)read_program(source);
  } catch (const SyntaxError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "expected a syntax error for " << source;
  return 0;
}

TEST(Tokenize, BasicTokens) {
  const TokenStream ts = tokenize("(+ 2 3)");
  ASSERT_EQ(ts.tokens.size(), 5u);
  EXPECT_EQ(ts.tokens[0].kind, TokenKind::kLParen);
  EXPECT_EQ(ts.tokens[1].kind, TokenKind::kAtom);
  EXPECT_EQ(ts.tokens[1].text, "+");
  EXPECT_EQ(ts.tokens[2].kind, TokenKind::kInteger);
  EXPECT_EQ(ts.tokens[2].value, 2);
  EXPECT_EQ(ts.tokens[3].value, 3);
  EXPECT_EQ(ts.tokens[4].kind, TokenKind::kRParen);
  EXPECT_EQ(ts.tokens[4].offset, 6u);
}

TEST(Tokenize, CommentsDropped) {
  const TokenStream ts = tokenize("(car (cons 1 nil)) ; note (ignored\n");
  EXPECT_EQ(ts.tokens.size(), 8u);
}

TEST(Tokenize, SignedIntegersAndSignAtoms) {
  TokenStream ts = tokenize("-7");
  ASSERT_EQ(ts.tokens.size(), 1u);
  EXPECT_EQ(ts.tokens[0].kind, TokenKind::kInteger);
  EXPECT_EQ(ts.tokens[0].value, -7);
  ts = tokenize("- +5 1a");
  EXPECT_EQ(ts.tokens[0].kind, TokenKind::kAtom);
  EXPECT_EQ(ts.tokens[1].kind, TokenKind::kInteger);
  EXPECT_EQ(ts.tokens[1].value, 5);
  EXPECT_EQ(ts.tokens[2].kind, TokenKind::kAtom);
}

TEST(Tokenize, IntegerOverflowIsSyntaxError) {
  EXPECT_THROW((void)tokenize("99999999999999999999"), SyntaxError);
}

TEST(Parse, NestedStructure) {
  const SExpr e = parse(tokenize("(car (cons 1 nil))"));
  const SExpr want = make_list(
      {make_atom("car"), make_list({make_atom("cons"), make_int(1), make_atom("nil")})});
  EXPECT_EQ(e, want);
  EXPECT_EQ(to_string(e), "(car (cons 1 nil))");
}

TEST(Parse, EmptyListIsNil) {
  EXPECT_EQ(parse(tokenize("()")), make_atom("nil"));
}

TEST(Parse, QuoteSugar) {
  EXPECT_EQ(parse(tokenize("'(a b)")),
            make_list({make_atom("quote"), make_list({make_atom("a"), make_atom("b")})}));
}

TEST(Parse, UnbalancedAndTrailing) {
  EXPECT_EQ(syntax_offset("(("), 2u);
  EXPECT_EQ(syntax_offset("(a))"), 3u);
  EXPECT_EQ(syntax_offset(")"), 0u);
  EXPECT_THROW((void)parse(tokenize("a b")), SyntaxError);
  EXPECT_THROW((void)parse(tokenize("")), SyntaxError);
  try {
    (void)read_program("((");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSyntax);
    EXPECT_NE(e.formatted().find("ERROR:syntax:"), std::string::npos);
    EXPECT_NE(e.formatted().find("offset 2"), std::string::npos);
  }
}

TEST(Parse, ProgramReturnsAllForms) {
  const auto forms = read_program("(define sq (lambda (x) (* x x)))\n(sq 9) ; done\n");
  ASSERT_EQ(forms.size(), 2u);
  EXPECT_EQ(to_string(forms[1]), "(sq 9)");
  EXPECT_TRUE(read_program("  ; only a comment\n").empty());
}

}  // namespace
