#include <array>
#include <cctype>

#include "g/syntax/token.h"

namespace g::syntax {

namespace {

constexpr std::array<std::string_view, 26> kKeywords = {
    "fun",    "concept", "model",  "where",   "refines", "require", "type",
    "let",    "while",   "for",    "return",  "struct",  "class",   "union",
    "module", "scope",   "import", "public",  "private", "new",     "use",
    "if",     "else",    "and",    "or",      "not",
};

// Longest match first.
constexpr std::array<std::string_view, 10> kMultiPunct = {
    "->", "<|", "|>", "==", "!=", "++", "--", "<<", "<=", ">=",
};

constexpr std::string_view kSinglePunct = "(){}[]<>,;:.=+-*/%!@&?~|^";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

class Lexer {
 public:
  Lexer(std::string_view src, std::shared_ptr<const std::string> file)
      : src_(src), file_(std::move(file)) {}

  LexResult run() {
    LexResult result;
    while (true) {
      skip_trivia(result);
      if (pos_ >= src_.size()) break;
      SourceLocation loc = here();
      char c = src_[pos_];
      if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        std::string word(src_.substr(start, pos_ - start));
        TokenKind kind =
            is_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier;
        result.tokens.push_back(Token{kind, std::move(word), loc});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(result, loc);
      } else if (c == '"') {
        lex_quoted(result, loc, '"', TokenKind::kStringLiteral,
                   "unterminated string literal");
      } else if (c == '\'') {
        lex_quoted(result, loc, '\'', TokenKind::kCharLiteral,
                   "unterminated character literal");
      } else if (!lex_punct(result, loc)) {
        // One diagnostic for the whole run of illegal characters.
        while (pos_ < src_.size() && !legal_start(src_[pos_])) advance();
        result.diagnostics.push_back(
            Diagnostic{loc, Severity::kError, "illegal character", {}});
      }
    }
    return result;
  }

 private:
  SourceLocation here() const { return SourceLocation{file_, line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool legal_start(char c) const {
    return is_space(c) || ident_start(c) ||
           std::isdigit(static_cast<unsigned char>(c)) || c == '"' ||
           c == '\'' || kSinglePunct.find(c) != std::string_view::npos;
  }

  void skip_trivia(LexResult& result) {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (is_space(c)) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        SourceLocation loc = here();
        advance();
        advance();
        bool closed = false;
        while (pos_ < src_.size()) {
          if (src_.substr(pos_, 2) == "*/") {
            advance();
            advance();
            closed = true;
            break;
          }
          advance();
        }
        if (!closed) {
          result.diagnostics.push_back(
              Diagnostic{loc, Severity::kError, "unterminated comment", {}});
        }
      } else {
        break;
      }
    }
  }

  void lex_number(LexResult& result, const SourceLocation& loc) {
    std::size_t start = pos_;
    bool is_float = false;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      advance();
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      is_float = true;
      advance();
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      int save_line = line_, save_col = col_;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
        advance();
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        is_float = true;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance();
      } else {
        pos_ = save;
        line_ = save_line;
        col_ = save_col;
      }
    }
    result.tokens.push_back(
        Token{is_float ? TokenKind::kFloatLiteral : TokenKind::kIntLiteral,
              std::string(src_.substr(start, pos_ - start)), loc});
  }

  void lex_quoted(LexResult& result, const SourceLocation& loc, char quote,
                  TokenKind kind, const char* unterminated) {
    advance();
    std::string value;
    while (pos_ < src_.size() && src_[pos_] != quote && src_[pos_] != '\n') {
      char c = src_[pos_];
      if (c == '\\' && pos_ + 1 < src_.size()) {
        advance();
        switch (src_[pos_]) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '0': value += '\0'; break;
          case 'r': value += '\r'; break;
          default: value += src_[pos_]; break;
        }
        advance();
      } else {
        value += c;
        advance();
      }
    }
    if (pos_ >= src_.size() || src_[pos_] != quote) {
      result.diagnostics.push_back(
          Diagnostic{loc, Severity::kError, unterminated, {}});
      return;
    }
    advance();
    if (kind == TokenKind::kCharLiteral && value.size() != 1) {
      result.diagnostics.push_back(Diagnostic{
          loc, Severity::kError, "character literal must hold one character",
          {}});
      return;
    }
    result.tokens.push_back(Token{kind, std::move(value), loc});
  }

  bool lex_punct(LexResult& result, const SourceLocation& loc) {
    for (std::string_view p : kMultiPunct) {
      if (src_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        result.tokens.push_back(Token{TokenKind::kPunct, std::string(p), loc});
        return true;
      }
    }
    if (kSinglePunct.find(src_[pos_]) != std::string_view::npos) {
      std::string p(1, src_[pos_]);
      advance();
      result.tokens.push_back(Token{TokenKind::kPunct, std::move(p), loc});
      return true;
    }
    return false;
  }

  std::string_view src_;
  std::shared_ptr<const std::string> file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (std::string_view k : kKeywords)
    if (k == word) return true;
  return false;
}

LexResult tokenize(std::string_view source,
                   std::shared_ptr<const std::string> file) {
  return Lexer(source, std::move(file)).run();
}

LexResult tokenize(std::string_view source, std::string file) {
  return tokenize(source, std::make_shared<const std::string>(std::move(file)));
}

}  // namespace g::syntax
