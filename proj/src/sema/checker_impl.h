#ifndef G_SRC_SEMA_CHECKER_IMPL_H_
#define G_SRC_SEMA_CHECKER_IMPL_H_

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "g/sema/checker.h"
#include "g/sema/context.h"
#include "g/sema/solver.h"

namespace g::sema {

struct LocalVar {
  int slot = -1;
  TypeRef type = nullptr;
  Category cat = Category::kConstLValue;
  int field = -1;  // constructor bodies: a field of the object
};

// State for checking one function body (or function expression).
struct Body {
  Context* ctx = nullptr;
  Solver* solver = nullptr;
  FrameLayout* layout = nullptr;
  std::vector<std::map<std::string, LocalVar>> scopes;
  TypeRef ret_type = nullptr;
  syntax::PassMode ret_mode = syntax::PassMode::kConstRef;
  bool infer_ret = false;
  bool generic = false;

  int new_slot() { return layout->num_slots++; }
};

struct Typed {
  TypeRef type = nullptr;
  Category cat = Category::kRValue;
};

struct Arg {
  TypeRef type = nullptr;  // null for an unresolved overload set
  Category cat = Category::kRValue;
  syntax::Expr* expr = nullptr;
  std::vector<const FunctionInfo*> overloads;
};

struct Cand {
  enum class Kind { kFunction, kSurrogate, kValue, kBuiltinAssign };
  Kind kind = Kind::kFunction;
  const FunctionInfo* fn = nullptr;
  int surrogate = -1;
  TypeRef type = nullptr;
  bool intrinsic() const {
    return kind == Kind::kBuiltinAssign ||
           (fn && fn->intrinsic != Intrinsic::kNone);
  }
};

struct Attempt {
  enum class Fail { kNone, kArity, kDeduce, kMismatch, kConstraint };
  bool ok = false;
  Fail fail = Fail::kNone;
  std::string message;  // formatted diagnostic text
  std::string goal;
  Subst theta;
  std::vector<TypeRef> params;
  types::Param ret;
  std::vector<ArgPass> passes;
  bool exact = true;
  std::vector<WitnessPtr> witnesses;
  std::vector<const FunctionInfo*> chosen;  // per arg, for overload sets
  int op = -1;                              // surrogate: concept operation
};

struct Resolution {
  bool ok = false;
  Cand cand;
  Attempt at;
};

class CheckerImpl {
 public:
  explicit CheckerImpl(CheckOptions opts);

  void check_unit(syntax::Program& program, const std::string& file,
                  bool is_prelude);

  CheckOptions opts;
  DiagnosticSink sink;
  Registry reg;
  std::deque<ScopeInfo> scopes;
  ScopeInfo* global = nullptr;
  std::deque<FunctionInfo> functions;
  std::deque<ClassInfo> classes;
  std::deque<ModelInfo> models;
  std::deque<ConceptInfo> concepts;
  std::deque<GlobalVar> global_store;
  std::vector<GlobalVar*> globals;
  std::vector<DeductionRecord> deductions;
  CheckStats stats;
  FrameLayout global_layout;
  std::string file;
  bool prelude = false;
  int next_model_id = 1;

  // ---- declarations (check_decls.cc)
  void check_decls(std::vector<syntax::DeclPtr>& decls, ScopeInfo* scope);
  void check_decl(syntax::Decl& d, ScopeInfo* scope);
  void check_concept(syntax::ConceptDecl& c, const SourceLocation& loc,
                     ScopeInfo* scope);
  void check_model(syntax::ModelDecl& m, const SourceLocation& loc,
                   ScopeInfo* scope);
  void check_class(syntax::ClassDecl& c, const SourceLocation& loc,
                   ScopeInfo* scope);
  void check_function(syntax::FunDecl& f, const SourceLocation& loc,
                      ScopeInfo* scope);
  void check_module(syntax::ModuleDecl& m, const SourceLocation& loc,
                    ScopeInfo* scope);
  void check_global_let(syntax::GlobalLetDecl& g, const SourceLocation& loc,
                        ScopeInfo* scope);
  void check_import(syntax::ImportDecl& d, const SourceLocation& loc,
                    ScopeInfo* scope);
  ScopeInfo* resolve_scope_path(const std::vector<std::string>& path,
                                ScopeInfo* from, const SourceLocation& loc);

  void declare_name(ScopeInfo* scope, const std::string& name);
  void check_fun_body(FunctionInfo& fi, std::vector<syntax::StmtPtr>& body,
                      Context& ctx, Solver& solver,
                      const std::vector<syntax::Param>& params,
                      const std::vector<types::Param>& ptypes);
  void check_ctor_body(FunctionInfo& fi, ClassInfo& cls, Context& ctx,
                       Solver& solver);
  void check_param_copyable(const types::Param& p, Context& ctx,
                            Solver& solver, const SourceLocation& loc);
  InitPlan default_plan(TypeRef t, Context& ctx, Solver& solver,
                        const SourceLocation& loc, bool report);
  void print_equalities(const std::string& owner, Context& ctx);
  std::unique_ptr<Context> make_context(ScopeInfo* scope);

  // ---- types (check_types.cc)
  TypeRef resolve_type(const syntax::TypeExpr& t, Context& ctx,
                       Solver& solver, bool check_wf = true);
  types::Param resolve_param(const syntax::ParamType& p, Context& ctx,
                             Solver& solver, bool check_wf = true);
  std::vector<Constraint> resolve_where(
      const std::vector<syntax::Constraint>& where, Context& ctx,
      Solver& solver, bool check_wf = true);
  std::optional<Constraint> resolve_model_constraint(
      const std::string& concept_name,
      const std::vector<syntax::TypeExprPtr>& args, const SourceLocation& loc,
      Context& ctx, Solver& solver, bool check_wf = true);
  TypeRef lookup_assoc(const std::string& name, Context& ctx, Solver& solver);
  ClassInfo* find_class(ScopeInfo* scope, const std::string& name);
  const TypeRef* find_alias(ScopeInfo* scope, const std::string& name);
  bool check_class_use(const ClassInfo& cls, const std::vector<TypeRef>& args,
                       Context& ctx, Solver& solver, const SourceLocation& loc,
                       std::vector<WitnessPtr>* witnesses, bool report);

  WitnessPtr satisfy(const Constraint& goal, Context& ctx, Solver& solver,
                     const SourceLocation& loc, const std::string& where_text,
                     bool report);
  std::string missing_model_text(const std::string& application,
                                 const SolveResult& r);

  // ---- calls (check_calls.cc)
  std::vector<const FunctionInfo*> visible_functions(ScopeInfo* scope,
                                                     const std::string& name);
  Attempt attempt(const Cand& c, const std::vector<Arg>& args, Context& ctx,
                  Solver& solver, const std::string& call_text);
  bool coercible(TypeRef from, TypeRef to, Context& ctx, Solver& solver,
                 Conv* conv);
  bool callable_from(const Cand& g, const Cand& f, Context& ctx);
  Resolution resolve(const std::string& call_text, std::vector<Cand> cands,
                     std::vector<Arg>& args, const SourceLocation& loc,
                     Context& ctx, Solver& solver, bool report);
  TypeRef cand_type(const Cand& c, Context& ctx) const;
  CallTarget target_of(const Resolution& r) const;
  std::string describe_cand(const Cand& c, Context& ctx) const;

  // ---- expressions (check_exprs.cc)
  Typed check_expr(syntax::Expr& e, Body& b);
  void check_stmt(syntax::Stmt& s, Body& b);
  void check_block(std::vector<syntax::StmtPtr>& stmts, Body& b);
  Arg make_arg(syntax::Expr& e, Body& b);
  Typed finish_call(syntax::Expr& e, const Resolution& r,
                    std::vector<Arg>& args, Body& b);
  Typed check_call_named(syntax::Expr& e, const std::string& name,
                         std::vector<const FunctionInfo*> funs,
                         bool with_surrogates, std::vector<syntax::Expr*> argx,
                         Body& b, const std::string& text);
  Typed check_construct(syntax::Expr& e, const syntax::TypeExpr& te,
                        std::vector<syntax::ExprPtr>& argx, Body& b);
  Resolution resolve_ctor(TypeRef t, const ClassInfo& cls,
                          std::vector<Arg>& args, const SourceLocation& loc,
                          const std::string& text, Context& ctx,
                          Solver& solver, bool report);
  Typed check_fun_expr(syntax::Expr& e, syntax::FunExpr& f, Body& b);
  Typed check_printf(syntax::Expr& e, std::vector<syntax::ExprPtr>& argx,
                     Body& b);
  Typed check_member(syntax::Expr& e, syntax::MemberExpr& m, Body& b);
  Typed check_var(syntax::Expr& e, const std::string& name, Body& b);
  Typed check_inst(syntax::Expr& e, syntax::InstExpr& x, Body& b);
  void expect_bool(syntax::Expr& e, Body& b, const char* what);
  bool construct_target(TypeRef t, std::vector<Arg>& args,
                        const SourceLocation& loc, const std::string& text,
                        Body& b, CallTarget* target,
                        std::vector<ArgPass>* passes);
  Typed check_assign(syntax::Expr& e, syntax::Expr& lhs, syntax::Expr& rhs,
                     Body& b);
  ScopeInfo* scope_of_expr(const syntax::Expr& e, Body& b);
  const LocalVar* find_local(Body& b, const std::string& name);
  TypeRef class_field_type(TypeRef object, const std::string& field,
                           Context& ctx, Solver& solver, int* index,
                           const ClassInfo** cls);
  bool is_concrete_for_assign(TypeRef t, Context& ctx, Solver& solver);
  void error(const SourceLocation& loc, const std::string& msg,
             const std::string& goal = {});
};

std::string location_text(const SourceLocation& loc);

}  // namespace g::sema

#endif  // G_SRC_SEMA_CHECKER_IMPL_H_
