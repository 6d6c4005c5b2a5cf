#include "g/syntax/parser.h"

#include <array>
#include <stdexcept>

namespace g::syntax {

const char* pass_mode_suffix(PassMode m) {
  switch (m) {
    case PassMode::kConstRef: return "";
    case PassMode::kMutRef: return "!";
    case PassMode::kByValue: return "@";
  }
  return "";
}

namespace {

struct SyntaxError {
  SourceLocation loc;
  std::string message;
};

constexpr std::array<std::string_view, 17> kOperatorNames = {
    "*", "++", "--", "==", "!=", "<", "<=", ">", ">=",
    "+", "-", "/", "%",  "<<", "=", "!", "&",
};

constexpr std::array<std::string_view, 14> kSyncKeywords = {
    "concept", "model",  "fun",     "struct", "class", "union", "module",
    "scope",   "import", "public",  "private", "use",  "type",  "let",
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kIdentifier: return "identifier '" + t.text + "'";
    case TokenKind::kKeyword: return "keyword '" + t.text + "'";
    case TokenKind::kIntLiteral:
    case TokenKind::kFloatLiteral: return "number '" + t.text + "'";
    case TokenKind::kCharLiteral: return "character literal";
    case TokenKind::kStringLiteral: return "string literal";
    case TokenKind::kPunct: return "'" + t.text + "'";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens,
         std::shared_ptr<const std::string> file)
      : toks_(tokens), file_(std::move(file)) {
    end_.kind = TokenKind::kEnd;
    if (!toks_.empty()) {
      end_.loc = toks_.back().loc;
    } else {
      end_.loc = SourceLocation{file_, 1, 1};
    }
  }

  ParseResult run() {
    ParseResult result;
    result.program = decl_list(/*nested=*/false);
    result.diagnostics = std::move(diags_);
    return result;
  }

  TypeExprPtr type_only() {
    auto t = type();
    if (!at_end()) fail("end of input");
    return t;
  }
  ExprPtr expr_only() {
    auto e = expr();
    if (!at_end()) fail("end of input");
    return e;
  }

 private:
  // ------------------------------------------------------------ tokens

  const Token& peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : end_;
  }
  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& next() {
    const Token& t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).is_punct(p);
  }
  bool is_kw(std::string_view k, std::size_t ahead = 0) const {
    return peek(ahead).is_keyword(k);
  }
  bool is_ident(std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::kIdentifier;
  }
  bool accept_punct(std::string_view p) {
    if (!is_punct(p)) return false;
    ++pos_;
    return true;
  }
  bool accept_kw(std::string_view k) {
    if (!is_kw(k)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError{peek().loc, "syntax error: expected " + expected +
                                      ", found " + describe(peek())};
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail("'" + std::string(p) + "'");
  }
  void expect_kw(std::string_view k) {
    if (!accept_kw(k)) fail("'" + std::string(k) + "'");
  }
  std::string expect_ident(const char* what = "identifier") {
    if (!is_ident()) fail(what);
    return next().text;
  }
  SourceLocation loc() const { return peek().loc; }

  // ------------------------------------------------------ declarations

  static bool is_sync_keyword(const Token& t) {
    if (t.kind != TokenKind::kKeyword) return false;
    for (auto k : kSyncKeywords)
      if (t.text == k) return true;
    return false;
  }

  void recover(std::size_t start) {
    pos_ = start;
    int depth = 0;
    bool first = true;
    while (!at_end()) {
      const Token& t = peek();
      if (!first && depth == 0 && is_sync_keyword(t)) return;
      if (t.is_punct("{") || t.is_punct("(") || t.is_punct("[")) {
        ++depth;
      } else if (t.is_punct("}") || t.is_punct(")") || t.is_punct("]")) {
        if (depth == 0) {
          if (t.is_punct("}")) return;
        } else {
          --depth;
        }
      }
      first = false;
      ++pos_;
    }
  }

  std::vector<DeclPtr> decl_list(bool nested) {
    std::vector<DeclPtr> decls;
    while (!at_end() && !(nested && is_punct("}"))) {
      std::size_t start = pos_;
      try {
        decls.push_back(decl());
      } catch (const SyntaxError& e) {
        diags_.push_back(Diagnostic{e.loc, Severity::kError, e.message, {}});
        recover(start);
        if (pos_ == start) ++pos_;
      }
    }
    return decls;
  }

  void optional_semi() { accept_punct(";"); }

  DeclPtr decl() {
    SourceLocation l = loc();
    if (is_kw("concept")) return make_decl(l, concept_decl());
    if (is_kw("model")) return make_decl(l, model_decl());
    if (is_kw("fun")) return make_decl(l, fun_decl());
    if (is_kw("struct") || is_kw("class") || is_kw("union"))
      return make_decl(l, class_decl());
    if (accept_kw("module")) {
      ModuleDecl m;
      m.name = expect_ident("module name");
      expect_punct("{");
      m.decls = decl_list(/*nested=*/true);
      expect_punct("}");
      optional_semi();
      return make_decl(l, std::move(m));
    }
    if (accept_kw("scope")) {
      ScopeAliasDecl s;
      s.name = expect_ident("scope name");
      expect_punct("=");
      s.path.push_back(expect_ident("scope name"));
      while (accept_punct(".")) s.path.push_back(expect_ident("scope name"));
      expect_punct(";");
      return make_decl(l, std::move(s));
    }
    if (accept_kw("import")) {
      ImportDecl d;
      std::vector<std::string> ids{expect_ident("scope name")};
      while (accept_punct(".")) ids.push_back(expect_ident("concept name"));
      if (ids.size() < 2) fail("'.' and a concept name");
      d.concept_name = ids.back();
      ids.pop_back();
      d.path = std::move(ids);
      d.args = type_args_angle();
      expect_punct(";");
      return make_decl(l, std::move(d));
    }
    if (is_kw("public") || is_kw("private")) {
      VisibilityDecl v;
      v.is_public = next().text == "public";
      expect_punct(":");
      return make_decl(l, v);
    }
    if (accept_kw("use")) {
      if (peek().kind == TokenKind::kStringLiteral) {
        UseFileDecl u{next().text};
        expect_punct(";");
        return make_decl(l, std::move(u));
      }
      UseScopeDecl u;
      u.path.push_back(expect_ident("file name or scope"));
      while (accept_punct(".")) u.path.push_back(expect_ident("scope name"));
      expect_punct(";");
      return make_decl(l, std::move(u));
    }
    if (accept_kw("type")) {
      TypeAliasDecl t;
      t.name = expect_ident("type name");
      expect_punct("=");
      t.type = type();
      expect_punct(";");
      return make_decl(l, std::move(t));
    }
    if (accept_kw("let")) {
      GlobalLetDecl g;
      g.name = expect_ident("variable name");
      expect_punct("=");
      g.init = expr();
      expect_punct(";");
      return make_decl(l, std::move(g));
    }
    fail("declaration");
  }

  std::vector<std::string> type_params_opt() {
    std::vector<std::string> params;
    if (!is_punct("<")) return params;
    next();
    params.push_back(expect_ident("type parameter"));
    while (accept_punct(",")) params.push_back(expect_ident("type parameter"));
    expect_punct(">");
    return params;
  }

  std::vector<Constraint> where_opt() {
    std::vector<Constraint> cs;
    if (!accept_kw("where")) return cs;
    expect_punct("{");
    if (!is_punct("}")) {
      cs.push_back(constraint());
      while (accept_punct(",")) cs.push_back(constraint());
    }
    expect_punct("}");
    return cs;
  }

  Constraint constraint() {
    Constraint c;
    c.loc = loc();
    TypeExprPtr lhs = type();
    if (accept_punct("==")) {
      c.node = SameTypeConstraint{std::move(lhs), type()};
      return c;
    }
    if (auto* app = std::get_if<AppliedType>(&lhs->node)) {
      c.node = ModelConstraint{app->name, std::move(app->args)};
      return c;
    }
    fail("'==' or a concept constraint");
  }

  ConceptDecl concept_decl() {
    expect_kw("concept");
    ConceptDecl c;
    c.name = expect_ident("concept name");
    expect_punct("<");
    c.params.push_back(expect_ident("type parameter"));
    while (accept_punct(",")) c.params.push_back(expect_ident("type parameter"));
    expect_punct(">");
    expect_punct("{");
    while (!is_punct("}")) {
      if (at_end()) fail("'}'");
      ConceptMember m;
      m.loc = loc();
      if (is_kw("fun")) {
        m.node = fun_decl();
      } else if (accept_kw("type")) {
        m.node = AssocTypeMember{expect_ident("associated type name")};
        expect_punct(";");
      } else if (accept_kw("refines")) {
        RefinesMember r;
        r.concept_name = expect_ident("concept name");
        r.args = type_args_angle();
        expect_punct(";");
        m.node = std::move(r);
      } else if (accept_kw("require")) {
        RequireMember r;
        r.concept_name = expect_ident("concept name");
        r.args = type_args_angle();
        expect_punct(";");
        m.node = std::move(r);
      } else {
        SameTypeConstraint s;
        s.lhs = type();
        expect_punct("==");
        s.rhs = type();
        expect_punct(";");
        m.node = std::move(s);
      }
      c.members.push_back(std::move(m));
    }
    expect_punct("}");
    optional_semi();
    return c;
  }

  ModelDecl model_decl() {
    expect_kw("model");
    ModelDecl m;
    m.type_params = type_params_opt();
    m.where = where_opt();
    m.concept_name = expect_ident("concept name");
    m.args = type_args_angle();
    expect_punct("{");
    while (!is_punct("}")) {
      if (at_end()) fail("'}'");
      SourceLocation l = loc();
      if (is_kw("fun")) {
        m.members.push_back(make_decl(l, fun_decl()));
      } else if (accept_kw("type")) {
        TypeAliasDecl t;
        t.name = expect_ident("type name");
        expect_punct("=");
        t.type = type();
        expect_punct(";");
        m.members.push_back(make_decl(l, std::move(t)));
      } else {
        fail("'type' or 'fun' in model body");
      }
    }
    expect_punct("}");
    optional_semi();
    return m;
  }

  std::string operator_name() {
    if (is_punct("[") && is_punct("]", 1)) {
      pos_ += 2;
      return "operator[]";
    }
    if (peek().kind == TokenKind::kPunct) {
      for (auto op : kOperatorNames) {
        if (peek().text == op) {
          next();
          return "operator" + std::string(op);
        }
      }
    }
    fail("operator symbol");
  }

  // Identifier, or `operator` followed by an operator token.
  std::string fun_name() {
    if (is_ident() && peek().text == "operator") {
      next();
      return operator_name();
    }
    return expect_ident("function name");
  }

  PassMode pass_mode() {
    if (accept_punct("@")) {
      accept_punct("@");
      return PassMode::kByValue;
    }
    if (accept_punct("!")) {
      accept_punct("&");
      return PassMode::kMutRef;
    }
    if (is_ident() && peek().text == "const") {
      next();
      accept_punct("&");
      return PassMode::kConstRef;
    }
    accept_punct("&");
    return PassMode::kConstRef;
  }

  std::vector<Param> params() {
    std::vector<Param> ps;
    expect_punct("(");
    if (!is_punct(")")) {
      ps.push_back(param());
      while (accept_punct(",")) ps.push_back(param());
    }
    expect_punct(")");
    return ps;
  }

  Param param() {
    Param p;
    p.loc = loc();
    p.type.type = type();
    p.type.mode = pass_mode();
    if (is_ident() && peek().text != "operator") p.name = next().text;
    return p;
  }

  FunDecl fun_decl() {
    expect_kw("fun");
    FunDecl f;
    f.name = fun_name();
    f.type_params = type_params_opt();
    f.where = where_opt();
    f.params = params();
    if (accept_punct("->")) {
      f.ret = type();
      f.ret_mode = pass_mode();
    }
    if (accept_punct(";")) return f;
    if (!is_punct("{")) fail("'{' or ';'");
    f.body = block_body();
    return f;
  }

  std::vector<StmtPtr> block_body() {
    expect_punct("{");
    std::vector<StmtPtr> out;
    while (!is_punct("}")) {
      if (at_end()) fail("'}'");
      out.push_back(stmt());
    }
    expect_punct("}");
    return out;
  }

  ClassDecl class_decl() {
    ClassDecl c;
    const std::string& kw = next().text;
    c.kind = kw == "struct"  ? ClassKind::kStruct
             : kw == "class" ? ClassKind::kClass
                             : ClassKind::kUnion;
    c.name = expect_ident("class name");
    c.type_params = type_params_opt();
    c.where = where_opt();
    expect_punct("{");
    while (!is_punct("}")) {
      if (at_end()) fail("'}'");
      ClassMember m;
      m.loc = loc();
      if (accept_punct("~")) {
        std::string name = expect_ident("class name");
        if (name != c.name) {
          throw SyntaxError{m.loc, "syntax error: destructor name '" + name +
                                       "' does not match class '" + c.name +
                                       "'"};
        }
        expect_punct("(");
        expect_punct(")");
        m.node = DtorDecl{block_body()};
      } else if (is_punct("<") || is_kw("where") ||
                 (is_ident() && peek().text == c.name && is_punct("(", 1))) {
        CtorDecl ctor;
        ctor.type_params = type_params_opt();
        ctor.where = where_opt();
        std::string name = expect_ident("constructor name");
        if (name != c.name) fail("constructor named '" + c.name + "'");
        ctor.params = params();
        if (accept_punct(":")) {
          ctor.inits.push_back(field_init());
          while (accept_punct(",")) ctor.inits.push_back(field_init());
        }
        ctor.body = block_body();
        m.node = std::move(ctor);
      } else {
        FieldDecl f;
        f.type = type();
        f.name = expect_ident("field name");
        expect_punct(";");
        m.node = std::move(f);
      }
      c.members.push_back(std::move(m));
    }
    expect_punct("}");
    optional_semi();
    return c;
  }

  FieldInit field_init() {
    FieldInit fi;
    fi.loc = loc();
    fi.field = expect_ident("field name");
    fi.args = call_args();
    return fi;
  }

  // --------------------------------------------------------------- types

  std::vector<TypeExprPtr> type_args_angle() {
    std::vector<TypeExprPtr> args;
    expect_punct("<");
    args.push_back(type());
    while (accept_punct(",")) args.push_back(type());
    expect_punct(">");
    return args;
  }

  TypeExprPtr type() {
    TypeExprPtr t = type_atom();
    while (is_punct("*")) {
      SourceLocation l = t->loc;
      next();
      t = make_type(l, PointerType{std::move(t)});
    }
    return t;
  }

  TypeExprPtr type_atom() {
    SourceLocation l = loc();
    if (accept_punct("(")) {
      TypeExprPtr t = type();
      expect_punct(")");
      return t;
    }
    if (accept_kw("fun")) {
      FunType f;
      f.type_params = type_params_opt();
      f.where = where_opt();
      expect_punct("(");
      if (!is_punct(")")) {
        do {
          ParamType p;
          p.type = type();
          p.mode = pass_mode();
          f.params.push_back(std::move(p));
        } while (accept_punct(","));
      }
      expect_punct(")");
      if (accept_punct("->")) {
        f.ret = type();
        f.ret_mode = pass_mode();
      }
      return make_type(l, std::move(f));
    }
    std::string name = expect_ident("type");
    if (!is_punct("<")) return make_type(l, NamedType{std::move(name)});
    std::vector<TypeExprPtr> args = type_args_angle();
    if (is_punct(".") && is_ident(1)) {
      ProjectionType p;
      p.concept_name = std::move(name);
      p.args = std::move(args);
      while (is_punct(".") && is_ident(1)) {
        next();
        p.path.push_back(next().text);
      }
      return make_type(l, std::move(p));
    }
    return make_type(l, AppliedType{std::move(name), std::move(args)});
  }

  // ---------------------------------------------------------- statements

  StmtPtr stmt() {
    SourceLocation l = loc();
    if (is_punct("{")) return make_stmt(l, BlockStmt{block_body()});
    if (accept_punct(";")) return make_stmt(l, BlockStmt{});
    if (accept_kw("let")) {
      LetStmt s;
      s.name = expect_ident("variable name");
      expect_punct("=");
      s.init = expr();
      expect_punct(";");
      return make_stmt(l, std::move(s));
    }
    if (accept_kw("type")) {
      TypeAliasStmt s;
      s.name = expect_ident("type name");
      expect_punct("=");
      s.type = type();
      expect_punct(";");
      return make_stmt(l, std::move(s));
    }
    if (accept_kw("while")) {
      WhileStmt s;
      expect_punct("(");
      s.cond = expr();
      expect_punct(")");
      s.body = stmt();
      return make_stmt(l, std::move(s));
    }
    if (accept_kw("for")) {
      ForStmt s;
      expect_punct("(");
      if (!is_punct(";")) {
        SourceLocation il = loc();
        if (accept_kw("let")) {
          LetStmt let;
          let.name = expect_ident("variable name");
          expect_punct("=");
          let.init = expr();
          s.init = make_stmt(il, std::move(let));
        } else {
          s.init = make_stmt(il, ExprStmt{expr()});
        }
      }
      expect_punct(";");
      if (!is_punct(";")) s.cond = expr();
      expect_punct(";");
      if (!is_punct(")")) {
        s.steps.push_back(expr());
        while (accept_punct(",")) s.steps.push_back(expr());
      }
      expect_punct(")");
      s.body = stmt();
      return make_stmt(l, std::move(s));
    }
    if (accept_kw("if")) {
      IfStmt s;
      expect_punct("(");
      s.cond = expr();
      expect_punct(")");
      s.then_stmt = stmt();
      if (accept_kw("else")) s.else_stmt = stmt();
      return make_stmt(l, std::move(s));
    }
    if (accept_kw("return")) {
      ReturnStmt s;
      if (!is_punct(";")) s.value = expr();
      expect_punct(";");
      return make_stmt(l, std::move(s));
    }
    ExprStmt s{expr()};
    expect_punct(";");
    return make_stmt(l, std::move(s));
  }

  // --------------------------------------------------------- expressions
  //
  // Loosest to tightest: =, <<, ?:, or, and, == !=, < > <= >=, + -,
  // * / %, prefix operators, postfix operators.

  ExprPtr expr() { return assign(); }

  ExprPtr assign() {
    ExprPtr lhs = shift();
    if (is_punct("=")) {
      next();
      ExprPtr rhs = assign();
      SourceLocation l = lhs->loc;
      return make_expr(l, BinaryExpr{"=", std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr shift() {
    ExprPtr lhs = cond();
    while (is_punct("<<")) {
      next();
      ExprPtr rhs = cond();
      SourceLocation l = lhs->loc;
      lhs = make_expr(l, BinaryExpr{"<<", std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr cond() {
    ExprPtr c = logical_or();
    if (!accept_punct("?")) return c;
    ExprPtr a = assign();
    expect_punct(":");
    ExprPtr b = cond();
    SourceLocation l = c->loc;
    return make_expr(l, CondExpr{std::move(c), std::move(a), std::move(b)});
  }

  ExprPtr logical_or() {
    ExprPtr lhs = logical_and();
    while (accept_kw("or")) {
      ExprPtr rhs = logical_and();
      SourceLocation l = lhs->loc;
      lhs = make_expr(l, BinaryExpr{"or", std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr logical_and() {
    ExprPtr lhs = equality();
    while (accept_kw("and")) {
      ExprPtr rhs = equality();
      SourceLocation l = lhs->loc;
      lhs = make_expr(l, BinaryExpr{"and", std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  template <typename Next>
  ExprPtr binary_level(std::initializer_list<std::string_view> ops,
                       Next next_level) {
    ExprPtr lhs = (this->*next_level)();
    while (true) {
      std::string op;
      for (auto o : ops)
        if (is_punct(o)) op = std::string(o);
      if (op.empty()) return lhs;
      next();
      ExprPtr rhs = (this->*next_level)();
      SourceLocation l = lhs->loc;
      lhs = make_expr(l, BinaryExpr{op, std::move(lhs), std::move(rhs)});
    }
  }

  ExprPtr equality() { return binary_level({"==", "!="}, &Parser::relational); }
  ExprPtr relational() {
    return binary_level({"<", ">", "<=", ">="}, &Parser::additive);
  }
  ExprPtr additive() {
    return binary_level({"+", "-"}, &Parser::multiplicative);
  }
  ExprPtr multiplicative() {
    return binary_level({"*", "/", "%"}, &Parser::unary);
  }

  ExprPtr unary() {
    SourceLocation l = loc();
    for (std::string_view op : {"*", "&", "-", "++", "--"}) {
      if (is_punct(op)) {
        next();
        return make_expr(l, UnaryExpr{std::string(op), unary()});
      }
    }
    if (accept_kw("not")) return make_expr(l, UnaryExpr{"not", unary()});
    return postfix();
  }

  std::vector<ExprPtr> call_args() {
    std::vector<ExprPtr> args;
    expect_punct("(");
    if (!is_punct(")")) {
      args.push_back(expr());
      while (accept_punct(",")) args.push_back(expr());
    }
    expect_punct(")");
    return args;
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (true) {
      SourceLocation l = e->loc;
      if (is_punct("(")) {
        std::vector<ExprPtr> args = call_args();
        e = make_expr(l, CallExpr{std::move(e), std::move(args)});
      } else if (accept_punct("[")) {
        ExprPtr idx = expr();
        expect_punct("]");
        e = make_expr(l, IndexExpr{std::move(e), std::move(idx)});
      } else if (is_punct(".") || is_punct("->")) {
        bool arrow = next().text == "->";
        std::string member = expect_ident("member name");
        e = make_expr(l, MemberExpr{std::move(e), std::move(member), arrow});
      } else if (accept_punct("<|")) {
        InstExpr inst;
        inst.fn = std::move(e);
        inst.type_args.push_back(type());
        while (accept_punct(",")) inst.type_args.push_back(type());
        expect_punct("|>");
        e = make_expr(l, std::move(inst));
      } else {
        return e;
      }
    }
  }

  ExprPtr primary() {
    SourceLocation l = loc();
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kIntLiteral: {
        next();
        try {
          return make_expr(l, IntLit{std::stoll(t.text)});
        } catch (const std::out_of_range&) {
          throw SyntaxError{l, "syntax error: integer literal out of range"};
        }
      }
      case TokenKind::kFloatLiteral:
        next();
        return make_expr(l, FloatLit{std::stod(t.text), t.text});
      case TokenKind::kCharLiteral:
        next();
        return make_expr(l, CharLit{t.text[0]});
      case TokenKind::kStringLiteral:
        next();
        return make_expr(l, StringLit{t.text});
      case TokenKind::kIdentifier:
        if (t.text == "operator") {
          next();
          return make_expr(l, VarRef{operator_name()});
        }
        next();
        return make_expr(l, VarRef{t.text});
      default:
        break;
    }
    if (accept_punct("(")) {
      ExprPtr e = expr();
      expect_punct(")");
      return e;
    }
    if (accept_kw("fun")) return make_expr(l, fun_expr());
    if (accept_kw("model")) {
      ModelMemberExpr m;
      m.concept_name = expect_ident("concept name");
      m.args = type_args_angle();
      expect_punct(".");
      if (is_ident() && peek().text == "operator") {
        next();
        m.member = operator_name();
      } else {
        m.member = expect_ident("model member");
      }
      return make_expr(l, std::move(m));
    }
    if (accept_kw("new")) {
      NewExpr n;
      n.type = type();
      if (accept_punct("[")) {
        n.array_size = expr();
        expect_punct("]");
      } else {
        n.args = call_args();
      }
      return make_expr(l, std::move(n));
    }
    if (accept_punct("@")) {
      ConstructExpr c;
      c.type = type();
      c.args = call_args();
      return make_expr(l, std::move(c));
    }
    fail("expression");
  }

  FunExpr fun_expr() {
    FunExpr f;
    f.params = params();
    if (accept_punct("->")) {
      f.ret = type();
      f.ret_mode = pass_mode();
    }
    while (is_ident()) {
      Capture c;
      c.name = next().text;
      expect_punct("=");
      c.init = cond();
      f.captures.push_back(std::move(c));
      if (!accept_punct(",")) break;
    }
    if (accept_punct(":")) {
      f.expr_body = assign();
    } else {
      f.body = block_body();
    }
    return f;
  }

  const std::vector<Token>& toks_;
  std::shared_ptr<const std::string> file_;
  std::size_t pos_ = 0;
  Token end_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

ParseResult parse_program(const std::vector<Token>& tokens,
                          std::shared_ptr<const std::string> file) {
  if (!file && !tokens.empty()) file = tokens.front().loc.file;
  return Parser(tokens, std::move(file)).run();
}

ParseResult parse_source(std::string_view source, const std::string& file) {
  auto name = std::make_shared<const std::string>(file);
  LexResult lex = tokenize(source, name);
  ParseResult result = parse_program(lex.tokens, name);
  if (!lex.diagnostics.empty()) {
    lex.diagnostics.insert(lex.diagnostics.end(), result.diagnostics.begin(),
                           result.diagnostics.end());
    result.diagnostics = std::move(lex.diagnostics);
  }
  return result;
}

namespace {
template <typename R, typename F>
R parse_phrase(std::string_view text, std::vector<Diagnostic>* diags, F f) {
  auto name = std::make_shared<const std::string>("<input>");
  LexResult lex = tokenize(text, name);
  if (!lex.ok()) {
    if (diags) *diags = lex.diagnostics;
    return nullptr;
  }
  Parser p(lex.tokens, name);
  try {
    return f(p);
  } catch (const SyntaxError& e) {
    if (diags) diags->push_back(Diagnostic{e.loc, Severity::kError, e.message, {}});
    return nullptr;
  }
}
}  // namespace

TypeExprPtr parse_type_text(std::string_view text,
                            std::vector<Diagnostic>* diags) {
  return parse_phrase<TypeExprPtr>(text, diags,
                                   [](Parser& p) { return p.type_only(); });
}

ExprPtr parse_expr_text(std::string_view text, std::vector<Diagnostic>* diags) {
  return parse_phrase<ExprPtr>(text, diags,
                               [](Parser& p) { return p.expr_only(); });
}

}  // namespace g::syntax
