#ifndef G_SYNTAX_PARSER_H_
#define G_SYNTAX_PARSER_H_

#include <string>
#include <string_view>
#include <vector>

#include "g/diagnostic.h"
#include "g/syntax/ast.h"
#include "g/syntax/token.h"

namespace g::syntax {

struct ParseResult {
  Program program;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Parses a token sequence produced by tokenize(). On a syntax error the
// parser reports it and skips to the next top-level declaration, so one
// call can report several errors.
ParseResult parse_program(const std::vector<Token>& tokens,
                          std::shared_ptr<const std::string> file = nullptr);

// tokenize + parse_program. Lexical diagnostics come first.
ParseResult parse_source(std::string_view source, const std::string& file);

// Single-phrase entry points, mostly for tests. They throw nothing; a
// failed parse returns null and fills `diags`.
TypeExprPtr parse_type_text(std::string_view text,
                            std::vector<Diagnostic>* diags = nullptr);
ExprPtr parse_expr_text(std::string_view text,
                        std::vector<Diagnostic>* diags = nullptr);

}  // namespace g::syntax

#endif  // G_SYNTAX_PARSER_H_
