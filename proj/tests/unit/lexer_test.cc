#include <gtest/gtest.h>

#include "g/syntax/token.h"

namespace g::syntax {
namespace {

std::vector<std::string> texts(const LexResult& r) {
  std::vector<std::string> out;
  for (const auto& t : r.tokens) out.push_back(t.text);
  return out;
}

TEST(Lexer, IdFunction) {
  LexResult r = tokenize("fun id<U>(U a) -> U { return a; }");
  ASSERT_TRUE(r.ok());
  // fun id < U > ( U a ) -> U { return a ; }
  std::vector<std::string> expected = {"fun", "id", "<",      "U", ">", "(",
                                       "U",   "a",  ")",      "->", "U", "{",
                                       "return", "a", ";", "}"};
  EXPECT_EQ(texts(r), expected);
  EXPECT_EQ(r.tokens.size(), 16u);
  EXPECT_EQ(r.tokens[0].kind, TokenKind::kKeyword);
  EXPECT_EQ(r.tokens[1].kind, TokenKind::kIdentifier);
  EXPECT_TRUE(r.tokens[2].is_punct("<"));
}

TEST(Lexer, EmptyInput) {
  LexResult r = tokenize("");
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.tokens.empty());
}

TEST(Lexer, UnterminatedComment) {
  LexResult r = tokenize("/* open");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].message, "unterminated comment");
  EXPECT_EQ(r.diagnostics[0].loc.line, 1);
}

TEST(Lexer, UnterminatedString) {
  LexResult r = tokenize("let s = \"abc");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].message, "unterminated string literal");
}

TEST(Lexer, MultiCharOperators) {
  LexResult r = tokenize("-> <| |> == != ++ -- << <= >=");
  ASSERT_TRUE(r.ok());
  std::vector<std::string> expected = {"->", "<|", "|>", "==", "!=",
                                       "++", "--", "<<", "<=", ">="};
  EXPECT_EQ(texts(r), expected);
  for (const auto& t : r.tokens) EXPECT_EQ(t.kind, TokenKind::kPunct);
}

TEST(Lexer, NestedTemplateClosersStaySeparate) {
  LexResult r = tokenize("vector<slist<int>>");
  ASSERT_TRUE(r.ok());
  std::vector<std::string> expected = {"vector", "<", "slist", "<",
                                       "int",    ">", ">"};
  EXPECT_EQ(texts(r), expected);
}

TEST(Lexer, CommentsAndLocations) {
  LexResult r = tokenize("a // x\n/* y\n z */ b\n  c");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.tokens.size(), 3u);
  EXPECT_EQ(r.tokens[0].loc.line, 1);
  EXPECT_EQ(r.tokens[1].loc.line, 3);
  EXPECT_EQ(r.tokens[1].loc.column, 7);
  EXPECT_EQ(r.tokens[2].loc.line, 4);
  EXPECT_EQ(r.tokens[2].loc.column, 3);
}

TEST(Lexer, Literals) {
  LexResult r = tokenize("42 1.5 2.0e3 'x' '\\n' \"a\\tb\"");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.tokens.size(), 6u);
  EXPECT_EQ(r.tokens[0].kind, TokenKind::kIntLiteral);
  EXPECT_EQ(r.tokens[1].kind, TokenKind::kFloatLiteral);
  EXPECT_EQ(r.tokens[2].kind, TokenKind::kFloatLiteral);
  EXPECT_EQ(r.tokens[2].text, "2.0e3");
  EXPECT_EQ(r.tokens[3].text, "x");
  EXPECT_EQ(r.tokens[4].text, "\n");
  EXPECT_EQ(r.tokens[5].text, "a\tb");
}

TEST(Lexer, MemberAccessOnIntegerIsNotFloat) {
  LexResult r = tokenize("e.first 3.x");
  ASSERT_TRUE(r.ok());
  std::vector<std::string> expected = {"e", ".", "first", "3", ".", "x"};
  EXPECT_EQ(texts(r), expected);
}

TEST(Lexer, KeywordsVersusIdentifiers) {
  LexResult r = tokenize("where wherever operator const true not");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.tokens[0].kind, TokenKind::kKeyword);
  EXPECT_EQ(r.tokens[1].kind, TokenKind::kIdentifier);
  EXPECT_EQ(r.tokens[2].kind, TokenKind::kIdentifier);
  EXPECT_EQ(r.tokens[3].kind, TokenKind::kIdentifier);
  EXPECT_EQ(r.tokens[4].kind, TokenKind::kIdentifier);
  EXPECT_EQ(r.tokens[5].kind, TokenKind::kKeyword);
}

TEST(Lexer, OneDiagnosticPerIllegalRegion) {
  LexResult r = tokenize("a $$$ b # c");
  EXPECT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(texts(r), (std::vector<std::string>{"a", "b", "c"}));
  for (const auto& d : r.diagnostics) EXPECT_EQ(d.message, "illegal character");
}

// Totality: arbitrary byte strings over a small alphabet either lex
// cleanly or report diagnostics, and every produced token is nonempty
// or a literal.
TEST(Lexer, TotalOnRandomInput) {
  const std::string alphabet = "ab1 (){}<>|!=-+*/.;:'\"\n$#";
  unsigned seed = 12345;
  for (int iter = 0; iter < 2000; ++iter) {
    std::string src;
    int len = iter % 40;
    for (int i = 0; i < len; ++i) {
      seed = seed * 1103515245u + 12345u;
      src += alphabet[(seed >> 16) % alphabet.size()];
    }
    LexResult r = tokenize(src);
    for (const auto& t : r.tokens) {
      EXPECT_GE(t.loc.line, 1);
      EXPECT_GE(t.loc.column, 1);
      if (t.kind != TokenKind::kStringLiteral) EXPECT_FALSE(t.text.empty());
    }
  }
}

}  // namespace
}  // namespace g::syntax
