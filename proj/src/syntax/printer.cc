#include "g/syntax/printer.h"

#include <sstream>

namespace g::syntax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string escape(const std::string& s, char quote) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\0': out += "\\0"; break;
      case '\\': out += "\\\\"; break;
      default:
        if (c == quote) out += '\\';
        out += c;
    }
  }
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, const char* sep, F f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += f(xs[i]);
  }
  return out;
}

// Precedence levels used when deciding where parentheses are required.
enum Prec {
  kFunExprPrec = 0,
  kAssignPrec = 1,
  kShiftPrec,
  kCondPrec,
  kOrPrec,
  kAndPrec,
  kEqPrec,
  kRelPrec,
  kAddPrec,
  kMulPrec,
  kUnaryPrec,
  kPostfixPrec,
  kPrimaryPrec,
};

int binary_prec(const std::string& op) {
  if (op == "=") return kAssignPrec;
  if (op == "<<") return kShiftPrec;
  if (op == "or") return kOrPrec;
  if (op == "and") return kAndPrec;
  if (op == "==" || op == "!=") return kEqPrec;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return kRelPrec;
  if (op == "+" || op == "-") return kAddPrec;
  return kMulPrec;
}

int expr_prec(const Expr& e) {
  return std::visit(
      overloaded{
          [](const BinaryExpr& b) { return binary_prec(b.op); },
          [](const CondExpr&) { return int(kCondPrec); },
          [](const UnaryExpr&) { return int(kUnaryPrec); },
          [](const CallExpr&) { return int(kPostfixPrec); },
          [](const IndexExpr&) { return int(kPostfixPrec); },
          [](const MemberExpr&) { return int(kPostfixPrec); },
          [](const InstExpr&) { return int(kPostfixPrec); },
          [](const FunExpr&) { return int(kFunExprPrec); },
          [](const auto&) { return int(kPrimaryPrec); },
      },
      e.node);
}

class Printer {
 public:
  std::string type(const TypeExpr& t) {
    return std::visit(
        overloaded{
            [](const NamedType& n) { return n.name; },
            [this](const AppliedType& a) {
              return a.name + "<" + type_list(a.args) + ">";
            },
            [this](const PointerType& p) {
              if (std::holds_alternative<FunType>(p.pointee->node))
                return "(" + type(*p.pointee) + ")*";
              return type(*p.pointee) + "*";
            },
            [this](const FunType& f) {
              std::string out = "fun";
              if (!f.type_params.empty())
                out += "<" + join(f.type_params, ", ", ident) + ">";
              if (!f.where.empty()) out += " where { " + where_list(f.where) + " } ";
              out += "(" + join(f.params, ", ", [this](const ParamType& p) {
                       return typed_mode(*p.type, p.mode);
                     }) + ")";
              if (f.ret) out += " -> " + typed_mode(*f.ret, f.ret_mode);
              return out;
            },
            [this](const ProjectionType& p) {
              std::string out = p.concept_name + "<" + type_list(p.args) + ">";
              for (const auto& m : p.path) out += "." + m;
              return out;
            },
        },
        t.node);
  }

  // A type followed by a pass mode. A function type with a return type
  // would otherwise absorb the mode into its return.
  std::string typed_mode(const TypeExpr& t, PassMode m) {
    std::string s = type(t);
    if (m != PassMode::kConstRef) {
      if (auto* f = std::get_if<FunType>(&t.node); f && f->ret) s = "(" + s + ")";
      s += pass_mode_suffix(m);
    }
    return s;
  }

  std::string type_list(const std::vector<TypeExprPtr>& ts) {
    return join(ts, ", ", [this](const TypeExprPtr& t) { return type(*t); });
  }

  std::string constraint(const Constraint& c) {
    return std::visit(
        overloaded{
            [this](const ModelConstraint& m) {
              return m.concept_name + "<" + type_list(m.args) + ">";
            },
            [this](const SameTypeConstraint& s) {
              return type(*s.lhs) + " == " + type(*s.rhs);
            },
        },
        c.node);
  }

  std::string where_list(const std::vector<Constraint>& cs) {
    return join(cs, ", ", [this](const Constraint& c) { return constraint(c); });
  }

  std::string expr(const Expr& e, int min_prec = kFunExprPrec) {
    std::string s = expr_raw(e);
    if (expr_prec(e) < min_prec) return "(" + s + ")";
    return s;
  }

  std::string args(const std::vector<ExprPtr>& as) {
    return "(" + join(as, ", ", [this](const ExprPtr& a) { return expr(*a); }) +
           ")";
  }

  std::string expr_raw(const Expr& e) {
    return std::visit(
        overloaded{
            [](const IntLit& i) { return std::to_string(i.value); },
            [](const FloatLit& f) {
              if (!f.spelling.empty()) return f.spelling;
              std::ostringstream os;
              os.precision(17);
              os << f.value;
              std::string s = os.str();
              if (s.find_first_of(".e") == std::string::npos) s += ".0";
              return s;
            },
            [](const CharLit& c) {
              return "'" + escape(std::string(1, c.value), '\'') + "'";
            },
            [](const StringLit& s) { return "\"" + escape(s.value, '"') + "\""; },
            [](const VarRef& v) { return v.name; },
            [this](const CallExpr& c) {
              return expr(*c.callee, kPostfixPrec) + args(c.args);
            },
            [this](const InstExpr& i) {
              return expr(*i.fn, kPostfixPrec) + "<|" + type_list(i.type_args) +
                     "|>";
            },
            [this](const FunExpr& f) { return fun_expr(f); },
            [this](const ModelMemberExpr& m) {
              return "model " + m.concept_name + "<" + type_list(m.args) + ">." +
                     m.member;
            },
            [this](const MemberExpr& m) {
              return expr(*m.object, kPostfixPrec) + (m.arrow ? "->" : ".") +
                     m.member;
            },
            [this](const UnaryExpr& u) {
              std::string operand = expr(*u.operand, kUnaryPrec);
              if (u.op == "not") return "not " + operand;
              if (!operand.empty() &&
                  (operand[0] == '-' || operand[0] == '+' || operand[0] == '&'))
                return u.op + " " + operand;
              return u.op + operand;
            },
            [this](const BinaryExpr& b) {
              int p = binary_prec(b.op);
              if (b.op == "=")
                return expr(*b.lhs, kShiftPrec) + " = " + expr(*b.rhs, kAssignPrec);
              return expr(*b.lhs, p) + " " + b.op + " " + expr(*b.rhs, p + 1);
            },
            [this](const CondExpr& c) {
              return expr(*c.cond, kOrPrec) + " ? " +
                     expr(*c.then_expr, kAssignPrec) + " : " +
                     expr(*c.else_expr, kCondPrec);
            },
            [this](const IndexExpr& i) {
              return expr(*i.object, kPostfixPrec) + "[" + expr(*i.index) + "]";
            },
            [this](const NewExpr& n) {
              std::string out = "new " + type(*n.type);
              if (n.array_size) return out + "[" + expr(*n.array_size) + "]";
              return out + args(n.args);
            },
            [this](const ConstructExpr& c) {
              return "@" + type(*c.type) + args(c.args);
            },
        },
        e.node);
  }

  std::string params(const std::vector<Param>& ps) {
    return "(" + join(ps, ", ", [this](const Param& p) {
             std::string s = typed_mode(*p.type.type, p.type.mode);
             if (!p.name.empty()) s += " " + p.name;
             return s;
           }) + ")";
  }

  std::string fun_expr(const FunExpr& f) {
    std::string out = "fun" + params(f.params);
    if (f.ret) out += " -> " + typed_mode(*f.ret, f.ret_mode);
    for (std::size_t i = 0; i < f.captures.size(); ++i) {
      out += i ? ", " : " ";
      out += f.captures[i].name + "=" + expr(*f.captures[i].init, kCondPrec);
    }
    if (f.expr_body) return out + ": " + expr(*f.expr_body, kAssignPrec);
    // Function expressions sit inside expressions, so their bodies are
    // printed on one line.
    out += " {";
    for (const auto& s : f.body) out += " " + stmt_inline(*s);
    return out + " }";
  }

  std::string stmt_inline(const Stmt& s) {
    std::string text = stmt(s, 0);
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '\n') {
        out += text[i];
        continue;
      }
      while (i + 1 < text.size() && text[i + 1] == ' ') ++i;
      out += ' ';
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
  }

  static std::string pad(int indent) { return std::string(indent * 2, ' '); }

  std::string block(const std::vector<StmtPtr>& body, int indent) {
    std::string out = "{\n";
    for (const auto& s : body) out += stmt(*s, indent + 1);
    return out + pad(indent) + "}";
  }

  std::string for_init(const Stmt& s) {
    if (auto* let = std::get_if<LetStmt>(&s.node))
      return "let " + let->name + " = " + expr(*let->init);
    if (auto* es = std::get_if<ExprStmt>(&s.node)) return expr(*es->expr);
    return "";
  }

  // Bodies of while/for/if: blocks stay on the header line.
  std::string sub_stmt(const Stmt& s, int indent) {
    if (auto* b = std::get_if<BlockStmt>(&s.node)) return " " + block(b->stmts, indent) + "\n";
    return "\n" + stmt(s, indent + 1);
  }

  std::string stmt(const Stmt& s, int indent) {
    std::string p = pad(indent);
    return std::visit(
        overloaded{
            [&](const LetStmt& l) {
              return p + "let " + l.name + " = " + expr(*l.init) + ";\n";
            },
            [&](const TypeAliasStmt& t) {
              return p + "type " + t.name + " = " + type(*t.type) + ";\n";
            },
            [&](const WhileStmt& w) {
              return p + "while (" + expr(*w.cond) + ")" + sub_stmt(*w.body, indent);
            },
            [&](const ForStmt& f) {
              std::string out = p + "for (";
              if (f.init) out += for_init(*f.init);
              out += ";";
              if (f.cond) out += " " + expr(*f.cond);
              out += ";";
              if (!f.steps.empty())
                out += " " + join(f.steps, ", ", [this](const ExprPtr& e) {
                  return expr(*e);
                });
              return out + ")" + sub_stmt(*f.body, indent);
            },
            [&](const IfStmt& i) {
              std::string out = p + "if (" + expr(*i.cond) + ")";
              out += sub_stmt(*i.then_stmt, indent);
              if (i.else_stmt) {
                if (std::holds_alternative<BlockStmt>(i.then_stmt->node)) {
                  out.pop_back();
                  out += " else";
                } else {
                  out += p + "else";
                }
                out += sub_stmt(*i.else_stmt, indent);
              }
              return out;
            },
            [&](const ReturnStmt& r) {
              if (!r.value) return p + "return;\n";
              return p + "return " + expr(*r.value) + ";\n";
            },
            [&](const ExprStmt& e) { return p + expr(*e.expr) + ";\n"; },
            [&](const BlockStmt& b) { return p + block(b.stmts, indent) + "\n"; },
        },
        s.node);
  }

  static std::string ident(const std::string& s) { return s; }

  std::string poly_header(const std::string& name,
                          const std::vector<std::string>& tparams,
                          const std::vector<Constraint>& where) {
    std::string out = name;
    if (!tparams.empty()) {
      if (name.rfind("operator", 0) == 0) out += " ";
      out += "<" + join(tparams, ", ", ident) + ">";
    }
    if (!where.empty()) out += " where { " + where_list(where) + " }";
    return out;
  }

  std::string fun_decl(const FunDecl& f, int indent) {
    std::string out = pad(indent) + "fun " +
                      poly_header(f.name, f.type_params, f.where);
    if (!f.where.empty()) out += "\n" + pad(indent + 1);
    out += params(f.params);
    if (f.ret) out += " -> " + typed_mode(*f.ret, f.ret_mode);
    if (!f.body) return out + ";\n";
    return out + " " + block(*f.body, indent) + "\n";
  }

  std::string decl(const Decl& d, int indent) {
    std::string p = pad(indent);
    return std::visit(
        overloaded{
            [&](const ConceptDecl& c) {
              std::string out = p + "concept " + c.name + "<" +
                                join(c.params, ", ", ident) + "> {\n";
              for (const auto& m : c.members) out += concept_member(m, indent + 1);
              return out + p + "};\n";
            },
            [&](const ModelDecl& m) {
              std::string out = p + "model ";
              if (!m.type_params.empty())
                out += "<" + join(m.type_params, ", ", ident) + "> ";
              if (!m.where.empty()) out += "where { " + where_list(m.where) + " }\n" + p;
              out += m.concept_name + "<" + type_list(m.args) + "> {\n";
              for (const auto& mem : m.members) out += decl(*mem, indent + 1);
              return out + p + "};\n";
            },
            [&](const FunDecl& f) { return fun_decl(f, indent); },
            [&](const ClassDecl& c) { return class_decl(c, indent); },
            [&](const ModuleDecl& m) {
              std::string out = p + "module " + m.name + " {\n";
              for (const auto& sub : m.decls) out += decl(*sub, indent + 1);
              return out + p + "}\n";
            },
            [&](const ScopeAliasDecl& s) {
              return p + "scope " + s.name + " = " + join(s.path, ".", ident) + ";\n";
            },
            [&](const ImportDecl& i) {
              return p + "import " + join(i.path, ".", ident) + "." +
                     i.concept_name + "<" + type_list(i.args) + ">;\n";
            },
            [&](const VisibilityDecl& v) {
              return p + (v.is_public ? "public:\n" : "private:\n");
            },
            [&](const UseFileDecl& u) {
              return p + "use \"" + escape(u.file, '"') + "\";\n";
            },
            [&](const UseScopeDecl& u) {
              return p + "use " + join(u.path, ".", ident) + ";\n";
            },
            [&](const TypeAliasDecl& t) {
              return p + "type " + t.name + " = " + type(*t.type) + ";\n";
            },
            [&](const GlobalLetDecl& g) {
              return p + "let " + g.name + " = " + expr(*g.init) + ";\n";
            },
        },
        d.node);
  }

  std::string concept_member(const ConceptMember& m, int indent) {
    std::string p = pad(indent);
    return std::visit(
        overloaded{
            [&](const FunDecl& f) { return fun_decl(f, indent); },
            [&](const AssocTypeMember& a) { return p + "type " + a.name + ";\n"; },
            [&](const SameTypeConstraint& s) {
              return p + type(*s.lhs) + " == " + type(*s.rhs) + ";\n";
            },
            [&](const RefinesMember& r) {
              return p + "refines " + r.concept_name + "<" + type_list(r.args) +
                     ">;\n";
            },
            [&](const RequireMember& r) {
              return p + "require " + r.concept_name + "<" + type_list(r.args) +
                     ">;\n";
            },
        },
        m.node);
  }

  std::string class_decl(const ClassDecl& c, int indent) {
    std::string p = pad(indent);
    const char* kw = c.kind == ClassKind::kStruct  ? "struct "
                     : c.kind == ClassKind::kClass ? "class "
                                                   : "union ";
    std::string out = p + kw + poly_header(c.name, c.type_params, c.where) + " {\n";
    std::string q = pad(indent + 1);
    for (const auto& m : c.members) {
      out += std::visit(
          overloaded{
              [&](const FieldDecl& f) {
                return q + type(*f.type) + " " + f.name + ";\n";
              },
              [&](const CtorDecl& k) {
                std::string s = q;
                if (!k.type_params.empty())
                  s += "<" + join(k.type_params, ", ", ident) + "> ";
                if (!k.where.empty()) s += "where { " + where_list(k.where) + " } ";
                s += c.name + params(k.params);
                if (!k.inits.empty()) {
                  s += " : " + join(k.inits, ", ", [this](const FieldInit& fi) {
                    return fi.field + args(fi.args);
                  });
                }
                return s + " " + block(k.body, indent + 1) + "\n";
              },
              [&](const DtorDecl& d) {
                return q + "~" + c.name + "() " + block(d.body, indent + 1) + "\n";
              },
          },
          m.node);
    }
    return out + p + "};\n";
  }
};

// ------------------------------------------------------------------ dump

class Dumper {
 public:
  explicit Dumper(bool locations) : locations_(locations) {}

  std::string result() const { return out_.str(); }

  void line(int depth, const std::string& text, const SourceLocation* loc) {
    out_ << std::string(depth * 2, ' ') << text;
    if (locations_ && loc) out_ << " @" << loc->line << ":" << loc->column;
    out_ << '\n';
  }

  static const char* mode(PassMode m) {
    switch (m) {
      case PassMode::kConstRef: return "const";
      case PassMode::kMutRef: return "mut";
      case PassMode::kByValue: return "value";
    }
    return "?";
  }

  void type(const TypeExpr& t, int d) {
    std::visit(overloaded{
                   [&](const NamedType& n) { line(d, "Named " + n.name, &t.loc); },
                   [&](const AppliedType& a) {
                     line(d, "Apply " + a.name, &t.loc);
                     for (const auto& x : a.args) type(*x, d + 1);
                   },
                   [&](const PointerType& p) {
                     line(d, "Pointer", &t.loc);
                     type(*p.pointee, d + 1);
                   },
                   [&](const FunType& f) {
                     std::string s = "FunType";
                     for (const auto& tp : f.type_params) s += " " + tp;
                     line(d, s, &t.loc);
                     where(f.where, d + 1);
                     for (const auto& p : f.params) {
                       line(d + 1, std::string("ParamType ") + mode(p.mode), nullptr);
                       type(*p.type, d + 2);
                     }
                     ret(f.ret.get(), f.ret_mode, d + 1);
                   },
                   [&](const ProjectionType& p) {
                     std::string s = "Projection " + p.concept_name;
                     for (const auto& m : p.path) s += "." + m;
                     line(d, s, &t.loc);
                     for (const auto& x : p.args) type(*x, d + 1);
                   },
               },
               t.node);
  }

  void ret(const TypeExpr* t, PassMode m, int d) {
    if (!t) {
      line(d, "Returns void", nullptr);
      return;
    }
    line(d, std::string("Returns ") + mode(m), nullptr);
    type(*t, d + 1);
  }

  void where(const std::vector<Constraint>& cs, int d) {
    for (const auto& c : cs) {
      std::visit(overloaded{
                     [&](const ModelConstraint& m) {
                       line(d, "Requires " + m.concept_name, &c.loc);
                       for (const auto& x : m.args) type(*x, d + 1);
                     },
                     [&](const SameTypeConstraint& s) {
                       line(d, "SameType", &c.loc);
                       type(*s.lhs, d + 1);
                       type(*s.rhs, d + 1);
                     },
                 },
                 c.node);
    }
  }

  void params(const std::vector<Param>& ps, int d) {
    for (const auto& p : ps) {
      line(d, std::string("Param ") + mode(p.type.mode) +
                  (p.name.empty() ? "" : " " + p.name),
           &p.loc);
      type(*p.type.type, d + 1);
    }
  }

  void expr(const Expr& e, int d) {
    const SourceLocation* l = &e.loc;
    std::visit(
        overloaded{
            [&](const IntLit& i) { line(d, "Int " + std::to_string(i.value), l); },
            [&](const FloatLit& f) {
              std::ostringstream os;
              os.precision(17);
              os << f.value;
              line(d, "Float " + os.str(), l);
            },
            [&](const CharLit& c) {
              line(d, "Char " + std::to_string(int(c.value)), l);
            },
            [&](const StringLit& s) {
              line(d, "String \"" + escape(s.value, '"') + "\"", l);
            },
            [&](const VarRef& v) { line(d, "Var " + v.name, l); },
            [&](const CallExpr& c) {
              line(d, "Call", l);
              expr(*c.callee, d + 1);
              for (const auto& a : c.args) expr(*a, d + 1);
            },
            [&](const InstExpr& i) {
              line(d, "Instantiate", l);
              expr(*i.fn, d + 1);
              for (const auto& t : i.type_args) type(*t, d + 1);
            },
            [&](const FunExpr& f) {
              line(d, "FunExpr", l);
              params(f.params, d + 1);
              if (f.ret) ret(f.ret.get(), f.ret_mode, d + 1);
              for (const auto& c : f.captures) {
                line(d + 1, "Capture " + c.name, nullptr);
                expr(*c.init, d + 2);
              }
              if (f.expr_body) {
                line(d + 1, "ExprBody", nullptr);
                expr(*f.expr_body, d + 2);
              } else {
                line(d + 1, "Body", nullptr);
                for (const auto& s : f.body) stmt(*s, d + 2);
              }
            },
            [&](const ModelMemberExpr& m) {
              line(d, "ModelMember " + m.concept_name + "." + m.member, l);
              for (const auto& t : m.args) type(*t, d + 1);
            },
            [&](const MemberExpr& m) {
              line(d, std::string(m.arrow ? "Arrow " : "Member ") + m.member, l);
              expr(*m.object, d + 1);
            },
            [&](const UnaryExpr& u) {
              line(d, "Unary " + u.op, l);
              expr(*u.operand, d + 1);
            },
            [&](const BinaryExpr& b) {
              line(d, "Binary " + b.op, l);
              expr(*b.lhs, d + 1);
              expr(*b.rhs, d + 1);
            },
            [&](const CondExpr& c) {
              line(d, "Cond", l);
              expr(*c.cond, d + 1);
              expr(*c.then_expr, d + 1);
              expr(*c.else_expr, d + 1);
            },
            [&](const IndexExpr& i) {
              line(d, "Index", l);
              expr(*i.object, d + 1);
              expr(*i.index, d + 1);
            },
            [&](const NewExpr& n) {
              line(d, n.array_size ? "NewArray" : "New", l);
              type(*n.type, d + 1);
              if (n.array_size) expr(*n.array_size, d + 1);
              for (const auto& a : n.args) expr(*a, d + 1);
            },
            [&](const ConstructExpr& c) {
              line(d, "Construct", l);
              type(*c.type, d + 1);
              for (const auto& a : c.args) expr(*a, d + 1);
            },
        },
        e.node);
  }

  void stmt(const Stmt& s, int d) {
    const SourceLocation* l = &s.loc;
    std::visit(
        overloaded{
            [&](const LetStmt& x) {
              line(d, "Let " + x.name, l);
              expr(*x.init, d + 1);
            },
            [&](const TypeAliasStmt& x) {
              line(d, "TypeAlias " + x.name, l);
              type(*x.type, d + 1);
            },
            [&](const WhileStmt& x) {
              line(d, "While", l);
              expr(*x.cond, d + 1);
              stmt(*x.body, d + 1);
            },
            [&](const ForStmt& x) {
              line(d, "For", l);
              if (x.init) {
                line(d + 1, "Init", nullptr);
                stmt(*x.init, d + 2);
              }
              if (x.cond) {
                line(d + 1, "Cond", nullptr);
                expr(*x.cond, d + 2);
              }
              for (const auto& e : x.steps) {
                line(d + 1, "Step", nullptr);
                expr(*e, d + 2);
              }
              stmt(*x.body, d + 1);
            },
            [&](const IfStmt& x) {
              line(d, x.else_stmt ? "IfElse" : "If", l);
              expr(*x.cond, d + 1);
              stmt(*x.then_stmt, d + 1);
              if (x.else_stmt) stmt(*x.else_stmt, d + 1);
            },
            [&](const ReturnStmt& x) {
              line(d, "Return", l);
              if (x.value) expr(*x.value, d + 1);
            },
            [&](const ExprStmt& x) {
              line(d, "ExprStmt", l);
              expr(*x.expr, d + 1);
            },
            [&](const BlockStmt& x) {
              line(d, "Block", l);
              for (const auto& t : x.stmts) stmt(*t, d + 1);
            },
        },
        s.node);
  }

  void fun(const FunDecl& f, int d, const SourceLocation* l) {
    std::string s = f.body ? "FunDef " : "FunSig ";
    s += f.name;
    for (const auto& tp : f.type_params) s += " " + tp;
    line(d, s, l);
    where(f.where, d + 1);
    params(f.params, d + 1);
    ret(f.ret.get(), f.ret_mode, d + 1);
    if (f.body)
      for (const auto& st : *f.body) stmt(*st, d + 1);
  }

  void decl(const Decl& dcl, int d) {
    const SourceLocation* l = &dcl.loc;
    std::visit(
        overloaded{
            [&](const ConceptDecl& c) {
              std::string s = "Concept " + c.name;
              for (const auto& p : c.params) s += " " + p;
              line(d, s, l);
              for (const auto& m : c.members) {
                std::visit(overloaded{
                               [&](const FunDecl& f) { fun(f, d + 1, &m.loc); },
                               [&](const AssocTypeMember& a) {
                                 line(d + 1, "AssocType " + a.name, &m.loc);
                               },
                               [&](const SameTypeConstraint& st) {
                                 line(d + 1, "SameType", &m.loc);
                                 type(*st.lhs, d + 2);
                                 type(*st.rhs, d + 2);
                               },
                               [&](const RefinesMember& r) {
                                 line(d + 1, "Refines " + r.concept_name, &m.loc);
                                 for (const auto& t : r.args) type(*t, d + 2);
                               },
                               [&](const RequireMember& r) {
                                 line(d + 1, "Require " + r.concept_name, &m.loc);
                                 for (const auto& t : r.args) type(*t, d + 2);
                               },
                           },
                           m.node);
              }
            },
            [&](const ModelDecl& m) {
              std::string s = "Model " + m.concept_name;
              for (const auto& p : m.type_params) s += " " + p;
              line(d, s, l);
              where(m.where, d + 1);
              for (const auto& t : m.args) type(*t, d + 1);
              for (const auto& mem : m.members) decl(*mem, d + 1);
            },
            [&](const FunDecl& f) { fun(f, d, l); },
            [&](const ClassDecl& c) {
              const char* kw = c.kind == ClassKind::kStruct  ? "Struct "
                               : c.kind == ClassKind::kClass ? "Class "
                                                             : "Union ";
              std::string s = kw + c.name;
              for (const auto& p : c.type_params) s += " " + p;
              line(d, s, l);
              where(c.where, d + 1);
              for (const auto& m : c.members) {
                std::visit(overloaded{
                               [&](const FieldDecl& f) {
                                 line(d + 1, "Field " + f.name, &m.loc);
                                 type(*f.type, d + 2);
                               },
                               [&](const CtorDecl& k) {
                                 std::string cs = "Ctor";
                                 for (const auto& p : k.type_params) cs += " " + p;
                                 line(d + 1, cs, &m.loc);
                                 where(k.where, d + 2);
                                 params(k.params, d + 2);
                                 for (const auto& fi : k.inits) {
                                   line(d + 2, "Init " + fi.field, &fi.loc);
                                   for (const auto& a : fi.args) expr(*a, d + 3);
                                 }
                                 for (const auto& st : k.body) stmt(*st, d + 2);
                               },
                               [&](const DtorDecl& k) {
                                 line(d + 1, "Dtor", &m.loc);
                                 for (const auto& st : k.body) stmt(*st, d + 2);
                               },
                           },
                           m.node);
              }
            },
            [&](const ModuleDecl& m) {
              line(d, "Module " + m.name, l);
              for (const auto& sub : m.decls) decl(*sub, d + 1);
            },
            [&](const ScopeAliasDecl& s) {
              std::string p;
              for (const auto& x : s.path) p += (p.empty() ? "" : ".") + x;
              line(d, "ScopeAlias " + s.name + " = " + p, l);
            },
            [&](const ImportDecl& i) {
              std::string p;
              for (const auto& x : i.path) p += x + ".";
              line(d, "Import " + p + i.concept_name, l);
              for (const auto& t : i.args) type(*t, d + 1);
            },
            [&](const VisibilityDecl& v) {
              line(d, v.is_public ? "Public" : "Private", l);
            },
            [&](const UseFileDecl& u) {
              line(d, "UseFile \"" + escape(u.file, '"') + "\"", l);
            },
            [&](const UseScopeDecl& u) {
              std::string p;
              for (const auto& x : u.path) p += (p.empty() ? "" : ".") + x;
              line(d, "UseScope " + p, l);
            },
            [&](const TypeAliasDecl& t) {
              line(d, "TypeAlias " + t.name, l);
              type(*t.type, d + 1);
            },
            [&](const GlobalLetDecl& g) {
              line(d, "Let " + g.name, l);
              expr(*g.init, d + 1);
            },
        },
        dcl.node);
  }

 private:
  bool locations_;
  std::ostringstream out_;
};

}  // namespace

std::string pretty_print(const Program& program) {
  Printer p;
  std::string out;
  for (const auto& d : program) out += p.decl(*d, 0);
  return out;
}

std::string print_type(const TypeExpr& t) { return Printer().type(t); }
std::string print_expr(const Expr& e) { return Printer().expr(e); }
std::string print_constraint(const Constraint& c) {
  return Printer().constraint(c);
}

std::string dump_ast(const Program& program, bool locations) {
  Dumper d(locations);
  for (const auto& decl : program) d.decl(*decl, 0);
  return d.result();
}

bool ast_equal(const Program& a, const Program& b) {
  return dump_ast(a) == dump_ast(b);
}

}  // namespace g::syntax
