#ifndef G_SYNTAX_TOKEN_H_
#define G_SYNTAX_TOKEN_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "g/diagnostic.h"

namespace g::syntax {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kIntLiteral,
  kFloatLiteral,
  kCharLiteral,
  kStringLiteral,
  kPunct,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  // Spelling for identifiers, keywords and punctuation; decoded contents for
  // string and char literals; source spelling for numeric literals.
  std::string text;
  SourceLocation loc;

  bool is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool is_punct(std::string_view t) const { return is(TokenKind::kPunct, t); }
  bool is_keyword(std::string_view t) const {
    return is(TokenKind::kKeyword, t);
  }
};

bool is_keyword(std::string_view word);

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Splits `source` into tokens. Comments and whitespace are dropped. The
// returned sequence has no end-of-input marker. Each maximal run of illegal
// characters yields exactly one diagnostic; lexing resumes after it.
LexResult tokenize(std::string_view source, std::shared_ptr<const std::string> file);
LexResult tokenize(std::string_view source, std::string file = "<input>");

}  // namespace g::syntax

#endif  // G_SYNTAX_TOKEN_H_
