#ifndef G_SYNTAX_AST_H_
#define G_SYNTAX_AST_H_

// Abstract syntax shared by every phase. Nodes own their children through
// unique_ptr; later phases hang their results off the `annot` slots.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "g/diagnostic.h"

namespace g::sema {
struct ExprAnnot;
struct StmtAnnot;
struct FunAnnot;
struct ClassAnnot;
struct ModelAnnot;
}  // namespace g::sema

namespace g::syntax {

enum class PassMode { kConstRef, kMutRef, kByValue };

struct TypeExpr;
struct Expr;
struct Stmt;
struct Decl;
using TypeExprPtr = std::unique_ptr<TypeExpr>;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;
using DeclPtr = std::unique_ptr<Decl>;

// ---------------------------------------------------------------- types

struct ModelConstraint {
  std::string concept_name;
  std::vector<TypeExprPtr> args;
};
struct SameTypeConstraint {
  TypeExprPtr lhs;
  TypeExprPtr rhs;
};
struct Constraint {
  SourceLocation loc;
  std::variant<ModelConstraint, SameTypeConstraint> node;
};

struct ParamType {
  TypeExprPtr type;
  PassMode mode = PassMode::kConstRef;
};

struct NamedType {
  std::string name;
};
struct AppliedType {
  std::string name;
  std::vector<TypeExprPtr> args;
};
struct PointerType {
  TypeExprPtr pointee;
};
struct FunType {
  std::vector<std::string> type_params;
  std::vector<Constraint> where;
  std::vector<ParamType> params;
  TypeExprPtr ret;  // null means void
  PassMode ret_mode = PassMode::kConstRef;
};
struct ProjectionType {
  std::string concept_name;
  std::vector<TypeExprPtr> args;
  std::vector<std::string> path;  // non-empty
};

struct TypeExpr {
  SourceLocation loc;
  std::variant<NamedType, AppliedType, PointerType, FunType, ProjectionType>
      node;
};

// ---------------------------------------------------------- expressions

struct IntLit {
  long long value = 0;
};
struct FloatLit {
  double value = 0;
  std::string spelling;
};
struct CharLit {
  char value = 0;
};
struct StringLit {
  std::string value;
};
struct VarRef {
  std::string name;
};
struct CallExpr {
  ExprPtr callee;
  std::vector<ExprPtr> args;
};
// e<|T, ...|>
struct InstExpr {
  ExprPtr fn;
  std::vector<TypeExprPtr> type_args;
};
struct Param {
  ParamType type;
  std::string name;  // may be empty
  SourceLocation loc;
};
struct Capture {
  std::string name;
  ExprPtr init;
};
struct FunExpr {
  std::vector<Param> params;
  std::vector<Capture> captures;
  TypeExprPtr ret;  // optional annotation
  PassMode ret_mode = PassMode::kConstRef;
  std::vector<StmtPtr> body;  // used when expr_body is null
  ExprPtr expr_body;          // `: expr` form
};
// model C<T...>.member
struct ModelMemberExpr {
  std::string concept_name;
  std::vector<TypeExprPtr> args;
  std::string member;
};
struct MemberExpr {
  ExprPtr object;
  std::string member;
  bool arrow = false;
};
struct UnaryExpr {
  std::string op;  // * & - ++ -- not
  ExprPtr operand;
};
struct BinaryExpr {
  std::string op;  // = << or and == != < > <= >= + - * / %
  ExprPtr lhs;
  ExprPtr rhs;
};
struct CondExpr {
  ExprPtr cond;
  ExprPtr then_expr;
  ExprPtr else_expr;
};
struct IndexExpr {
  ExprPtr object;
  ExprPtr index;
};
// new T(args) or new T[size]
struct NewExpr {
  TypeExprPtr type;
  std::vector<ExprPtr> args;
  ExprPtr array_size;  // non-null for the array form
};
// @T(args)
struct ConstructExpr {
  TypeExprPtr type;
  std::vector<ExprPtr> args;
};

struct Expr {
  SourceLocation loc;
  std::variant<IntLit, FloatLit, CharLit, StringLit, VarRef, CallExpr,
               InstExpr, FunExpr, ModelMemberExpr, MemberExpr, UnaryExpr,
               BinaryExpr, CondExpr, IndexExpr, NewExpr, ConstructExpr>
      node;
  std::shared_ptr<sema::ExprAnnot> annot;
};

// ----------------------------------------------------------- statements

struct LetStmt {
  std::string name;
  ExprPtr init;
};
struct TypeAliasStmt {
  std::string name;
  TypeExprPtr type;
};
struct WhileStmt {
  ExprPtr cond;
  StmtPtr body;
};
struct ForStmt {
  StmtPtr init;  // LetStmt or ExprStmt, optional
  ExprPtr cond;  // optional
  std::vector<ExprPtr> steps;
  StmtPtr body;
};
struct IfStmt {
  ExprPtr cond;
  StmtPtr then_stmt;
  StmtPtr else_stmt;  // optional
};
struct ReturnStmt {
  ExprPtr value;  // optional
};
struct ExprStmt {
  ExprPtr expr;
};
struct BlockStmt {
  std::vector<StmtPtr> stmts;
};

struct Stmt {
  SourceLocation loc;
  std::variant<LetStmt, TypeAliasStmt, WhileStmt, ForStmt, IfStmt, ReturnStmt,
               ExprStmt, BlockStmt>
      node;
  std::shared_ptr<sema::StmtAnnot> annot;
};

// --------------------------------------------------------- declarations

struct FunDecl {
  std::string name;
  std::vector<std::string> type_params;
  std::vector<Constraint> where;
  std::vector<Param> params;
  TypeExprPtr ret;  // null means void
  PassMode ret_mode = PassMode::kConstRef;
  std::optional<std::vector<StmtPtr>> body;  // absent for a signature
  std::shared_ptr<sema::FunAnnot> annot;
};

struct AssocTypeMember {
  std::string name;
};
struct RefinesMember {
  std::string concept_name;
  std::vector<TypeExprPtr> args;
};
struct RequireMember {
  std::string concept_name;
  std::vector<TypeExprPtr> args;
};
struct ConceptMember {
  SourceLocation loc;
  std::variant<FunDecl, AssocTypeMember, SameTypeConstraint, RefinesMember,
               RequireMember>
      node;
};

struct ConceptDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<ConceptMember> members;
};

// Model bodies hold TypeAliasDecl and FunDecl declarations.
struct ModelDecl {
  std::vector<std::string> type_params;
  std::vector<Constraint> where;
  std::string concept_name;
  std::vector<TypeExprPtr> args;
  std::vector<DeclPtr> members;
  std::shared_ptr<sema::ModelAnnot> annot;
};

struct FieldDecl {
  TypeExprPtr type;
  std::string name;
};
struct FieldInit {
  std::string field;
  std::vector<ExprPtr> args;
  SourceLocation loc;
};
struct CtorDecl {
  std::vector<std::string> type_params;
  std::vector<Constraint> where;
  std::vector<Param> params;
  std::vector<FieldInit> inits;
  std::vector<StmtPtr> body;
  std::shared_ptr<sema::FunAnnot> annot;
};
struct DtorDecl {
  std::vector<StmtPtr> body;
};
struct ClassMember {
  SourceLocation loc;
  std::variant<FieldDecl, CtorDecl, DtorDecl> node;
};

enum class ClassKind { kStruct, kClass, kUnion };

struct ClassDecl {
  ClassKind kind = ClassKind::kStruct;
  std::string name;
  std::vector<std::string> type_params;
  std::vector<Constraint> where;
  std::vector<ClassMember> members;
  std::shared_ptr<sema::ClassAnnot> annot;
};

struct ModuleDecl {
  std::string name;
  std::vector<DeclPtr> decls;
};
struct ScopeAliasDecl {
  std::string name;
  std::vector<std::string> path;
};
struct ImportDecl {
  std::vector<std::string> path;  // scope path
  std::string concept_name;
  std::vector<TypeExprPtr> args;
};
struct VisibilityDecl {
  bool is_public = true;
};
// use "file";
struct UseFileDecl {
  std::string file;
};
// use A.B;
struct UseScopeDecl {
  std::vector<std::string> path;
};
struct TypeAliasDecl {
  std::string name;
  TypeExprPtr type;
};
struct GlobalLetDecl {
  std::string name;
  ExprPtr init;
  std::shared_ptr<sema::StmtAnnot> annot;
};

struct Decl {
  SourceLocation loc;
  std::variant<ConceptDecl, ModelDecl, FunDecl, ClassDecl, ModuleDecl,
               ScopeAliasDecl, ImportDecl, VisibilityDecl, UseFileDecl,
               UseScopeDecl, TypeAliasDecl, GlobalLetDecl>
      node;
};

using Program = std::vector<DeclPtr>;

// Convenience constructors used by the parser and by tests.
template <typename Node>
ExprPtr make_expr(SourceLocation loc, Node node) {
  auto e = std::make_unique<Expr>();
  e->loc = std::move(loc);
  e->node = std::move(node);
  return e;
}
template <typename Node>
StmtPtr make_stmt(SourceLocation loc, Node node) {
  auto s = std::make_unique<Stmt>();
  s->loc = std::move(loc);
  s->node = std::move(node);
  return s;
}
template <typename Node>
TypeExprPtr make_type(SourceLocation loc, Node node) {
  auto t = std::make_unique<TypeExpr>();
  t->loc = std::move(loc);
  t->node = std::move(node);
  return t;
}
template <typename Node>
DeclPtr make_decl(SourceLocation loc, Node node) {
  auto d = std::make_unique<Decl>();
  d->loc = std::move(loc);
  d->node = std::move(node);
  return d;
}

const char* pass_mode_suffix(PassMode m);

}  // namespace g::syntax

#endif  // G_SYNTAX_AST_H_
