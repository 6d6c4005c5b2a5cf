#include <variant>

#include "checker_impl.h"
#include "g/syntax/printer.h"

namespace g::sema {

using namespace syntax;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ExprAnnot& annot(Expr& e) {
  if (!e.annot) e.annot = std::make_shared<ExprAnnot>();
  return *e.annot;
}

StmtAnnot& annot(Stmt& s) {
  if (!s.annot) s.annot = std::make_shared<StmtAnnot>();
  return *s.annot;
}

Typed error_typed() { return Typed{types::error_type(), Category::kRValue}; }

Category param_category(PassMode m) {
  return m == PassMode::kConstRef ? Category::kConstLValue
                                  : Category::kMutLValue;
}

}  // namespace

const LocalVar* CheckerImpl::find_local(Body& b, const std::string& name) {
  for (auto it = b.scopes.rbegin(); it != b.scopes.rend(); ++it) {
    auto f = it->find(name);
    if (f != it->end()) return &f->second;
  }
  return nullptr;
}

ScopeInfo* CheckerImpl::scope_of_expr(const Expr& e, Body& b) {
  if (const auto* v = std::get_if<VarRef>(&e.node)) {
    if (find_local(b, v->name)) return nullptr;
    for (ScopeInfo* s = b.ctx->scope; s; s = s->parent) {
      auto it = s->modules.find(v->name);
      if (it != s->modules.end()) return it->second;
    }
    return nullptr;
  }
  if (const auto* m = std::get_if<MemberExpr>(&e.node)) {
    if (m->arrow) return nullptr;
    ScopeInfo* outer = scope_of_expr(*m->object, b);
    if (!outer) return nullptr;
    auto it = outer->modules.find(m->member);
    if (it != outer->modules.end() && !outer->private_names.count(m->member))
      return it->second;
  }
  return nullptr;
}

TypeRef CheckerImpl::class_field_type(TypeRef object, const std::string& field,
                                      Context& ctx, Solver& solver, int* index,
                                      const ClassInfo** cls) {
  TypeRef n = solver.normalize(object);
  for (TypeRef m : ctx.graph.class_of(n)) {
    if (!m->is_class()) continue;
    const ClassInfo* c = find_class(ctx.scope, m->name);
    if (!c) continue;
    int i = c->field_index(field);
    if (i < 0) return nullptr;
    Subst s;
    for (std::size_t k = 0; k < c->params.size() && k < m->args.size(); ++k)
      s[c->params[k]] = m->args[k];
    *index = i;
    *cls = c;
    return solver.normalize(types::substitute(s, c->fields[i].type));
  }
  return nullptr;
}

void CheckerImpl::expect_bool(Expr& e, Body& b, const char* what) {
  Typed t = check_expr(e, b);
  if (types::contains_error(t.type)) return;
  if (!b.solver->same(t.type, types::bool_type()))
    error(e.loc, std::string("The ") + what + " must have type bool, not " +
                     types::to_string(t.type));
}

Arg CheckerImpl::make_arg(Expr& e, Body& b) {
  Arg a;
  a.expr = &e;
  if (const auto* v = std::get_if<VarRef>(&e.node)) {
    if (!find_local(b, v->name)) {
      std::vector<const FunctionInfo*> fs =
          visible_functions(b.ctx->scope, v->name);
      if (fs.size() > 1) {
        annot(e).ref = ExprAnnot::Ref::kFunction;
        a.overloads = fs;
        return a;
      }
    }
  }
  Typed t = check_expr(e, b);
  a.type = t.type;
  a.cat = t.cat;
  return a;
}

Typed CheckerImpl::finish_call(Expr& e, const Resolution& r,
                               std::vector<Arg>& args, Body& b) {
  ExprAnnot& an = annot(e);
  an.target = target_of(r);
  an.args = r.at.passes;
  for (std::size_t i = 0; i < args.size() && i < r.at.chosen.size(); ++i) {
    if (!r.at.chosen[i]) continue;
    ExprAnnot& x = annot(*args[i].expr);
    x.ref = ExprAnnot::Ref::kFunction;
    x.fn = r.at.chosen[i];
    x.type = r.at.chosen[i]->type;
    x.cat = Category::kRValue;
  }
  if (r.cand.kind == Cand::Kind::kFunction && r.cand.fn->type->is_poly_fun()) {
    DeductionRecord d;
    d.callee = r.cand.fn->name;
    d.loc = e.loc;
    d.theta = r.at.theta;
    for (std::size_t i = 0; i < args.size(); ++i)
      d.arg_types.push_back(args[i].type ? args[i].type : r.at.chosen[i]->type);
    d.param_types = r.at.params;
    d.ret = r.at.ret.type;
    deductions.push_back(d);
  }
  (void)b;
  return Typed{r.at.ret.type, r.at.ret.mode == PassMode::kMutRef
                                  ? Category::kMutLValue
                                  : Category::kRValue};
}

Typed CheckerImpl::check_call_named(Expr& e, const std::string& name,
                                    std::vector<const FunctionInfo*> funs,
                                    bool with_surrogates,
                                    std::vector<Expr*> argx, Body& b,
                                    const std::string& text) {
  std::vector<Arg> args;
  bool bad = false;
  for (Expr* x : argx) {
    args.push_back(make_arg(*x, b));
    if (args.back().type && types::contains_error(args.back().type)) bad = true;
  }
  std::vector<Cand> cands;
  for (const FunctionInfo* f : funs) {
    Cand c;
    c.kind = Cand::Kind::kFunction;
    c.fn = f;
    cands.push_back(c);
  }
  if (with_surrogates && !b.ctx->hide_surrogates) {
    for (std::size_t i = 0; i < b.ctx->surrogates.size(); ++i) {
      if (b.ctx->surrogates[i].name != name) continue;
      Cand c;
      c.kind = Cand::Kind::kSurrogate;
      c.surrogate = static_cast<int>(i);
      cands.push_back(c);
    }
  }
  if (name == "operator=" && argx.size() == 2) {
    Cand c;
    c.kind = Cand::Kind::kBuiltinAssign;
    cands.push_back(c);
  }
  if (bad) return error_typed();
  Resolution r =
      resolve(text, cands, args, e.loc, *b.ctx, *b.solver, /*report=*/true);
  if (!r.ok) return error_typed();
  return finish_call(e, r, args, b);
}

Typed CheckerImpl::check_printf(Expr& e, std::vector<ExprPtr>& argx, Body& b) {
  if (argx.empty()) {
    error(e.loc, "printf requires a format string");
    return error_typed();
  }
  for (std::size_t i = 0; i < argx.size(); ++i) {
    Typed t = check_expr(*argx[i], b);
    if (types::contains_error(t.type)) continue;
    TypeRef r = b.ctx->graph.representative(b.solver->normalize(t.type));
    if (i == 0 && !(r->is_pointer() && r->pointee()->is_base(types::Base::kChar)))
      error(argx[i]->loc, "The format argument of printf must have type char*");
    else if (i > 0 && !r->is_base() && !r->is_pointer())
      error(argx[i]->loc, "Cannot pass a value of type " +
                              types::to_string(t.type) + " to printf");
  }
  ExprAnnot& an = annot(e);
  an.target.kind = CallTarget::Kind::kPrintf;
  return Typed{types::int_type(), Category::kRValue};
}

Typed CheckerImpl::check_var(Expr& e, const std::string& name, Body& b) {
  ExprAnnot& an = annot(e);
  if (const LocalVar* l = find_local(b, name)) {
    an.ref = l->field >= 0 ? ExprAnnot::Ref::kField : ExprAnnot::Ref::kLocal;
    an.slot = l->slot;
    an.field = l->field;
    return Typed{l->type, l->cat};
  }
  std::vector<const FunctionInfo*> fs = visible_functions(b.ctx->scope, name);
  if (fs.size() == 1) {
    an.ref = ExprAnnot::Ref::kFunction;
    an.fn = fs[0];
    return Typed{fs[0]->type, Category::kRValue};
  }
  if (fs.size() > 1) {
    error(e.loc, "Reference to overloaded function " + name +
                     " is ambiguous in this context");
    return error_typed();
  }
  for (ScopeInfo* s = b.ctx->scope; s; s = s->parent) {
    auto it = s->globals.find(name);
    if (it != s->globals.end()) {
      an.ref = ExprAnnot::Ref::kGlobal;
      an.slot = it->second->index;
      return Typed{it->second->type, Category::kMutLValue};
    }
  }
  if (name == "true" || name == "false") {
    an.ref = ExprAnnot::Ref::kBool;
    an.bool_value = name == "true";
    return Typed{types::bool_type(), Category::kRValue};
  }
  for (const auto& s : b.ctx->surrogates)
    if (s.name == name) {
      error(e.loc, "The requirement " + name +
                       " cannot be used as a value; use a model member "
                       "expression");
      return error_typed();
    }
  error(e.loc, "Unknown identifier " + name);
  return error_typed();
}

Typed CheckerImpl::check_inst(Expr& e, InstExpr& x, Body& b) {
  std::vector<TypeRef> targs;
  for (const auto& t : x.type_args)
    targs.push_back(resolve_type(*t, *b.ctx, *b.solver));
  for (TypeRef t : targs)
    if (types::contains_error(t)) return error_typed();
  TypeRef F = nullptr;
  const FunctionInfo* fn = nullptr;
  if (const auto* v = std::get_if<VarRef>(&x.fn->node);
      v && !find_local(b, v->name)) {
    std::vector<const FunctionInfo*> fs = visible_functions(b.ctx->scope, v->name);
    std::vector<const FunctionInfo*> fit;
    for (const FunctionInfo* f : fs)
      if (f->type->quantifiers.size() == targs.size()) fit.push_back(f);
    if (fit.size() != 1) {
      error(e.loc, fit.empty()
                       ? "No function " + v->name + " takes " +
                             std::to_string(targs.size()) + " type arguments"
                       : "Explicit instantiation of " + v->name +
                             " is ambiguous");
      return error_typed();
    }
    fn = fit[0];
    F = fn->type;
    ExprAnnot& fa = annot(*x.fn);
    fa.ref = ExprAnnot::Ref::kFunction;
    fa.fn = fn;
    fa.type = F;
  } else {
    F = check_expr(*x.fn, b).type;
  }
  if (types::contains_error(F)) return error_typed();
  if (!F->is_poly_fun() || F->quantifiers.size() != targs.size()) {
    error(e.loc, "Expression of type " + types::to_string(F) +
                     " cannot be instantiated with " +
                     std::to_string(targs.size()) + " type arguments");
    return error_typed();
  }
  Subst s;
  for (std::size_t i = 0; i < targs.size(); ++i) s[F->quantifiers[i]] = targs[i];
  ExprAnnot& an = annot(e);
  an.target.kind = CallTarget::Kind::kValue;
  an.target.fn = fn;
  std::string text = print_expr(e);
  for (const Constraint& c : F->constraints) {
    Constraint g = b.solver->normalize(types::substitute(s, c));
    if (g.same_type) {
      if (!b.solver->same(g.args[0], g.args[1])) {
        error(e.loc, "Same type requirement violated, " +
                         types::to_string(g.args[0]) +
                         " != " + types::to_string(g.args[1]));
        return error_typed();
      }
      continue;
    }
    WitnessPtr w = satisfy(g, *b.ctx, *b.solver, e.loc,
                           "In instantiation " + text, true);
    if (!w) return error_typed();
    an.target.witnesses.push_back(w);
  }
  std::vector<types::Param> ps;
  for (const auto& p : F->params)
    ps.push_back(types::Param{b.solver->normalize(types::substitute(s, p.type)),
                              p.mode});
  types::Param r{b.solver->normalize(types::substitute(s, F->ret.type)),
                 F->ret.mode};
  TypeRef t = types::mono_fun(ps, r);
  an.target.type = t;
  return Typed{t, Category::kRValue};
}

Typed CheckerImpl::check_fun_expr(Expr& e, FunExpr& f, Body& b) {
  auto info = std::make_shared<FunExprInfo>();
  ExprAnnot& an = annot(e);
  an.fun_expr = info;

  std::vector<std::pair<std::string, TypeRef>> caps;
  for (auto& c : f.captures) {
    Typed t = check_expr(*c.init, b);
    caps.emplace_back(c.name, t.type);
  }

  // The body sees only its parameters and captures, without the
  // enclosing function's where-clause operations.
  Context fctx = *b.ctx;
  fctx.facts.clear();
  fctx.surrogates.clear();
  fctx.num_roots = 0;
  fctx.self_model = nullptr;
  Solver fs(reg, fctx, opts.solver);

  Body fb;
  fb.ctx = &fctx;
  fb.solver = &fs;
  fb.layout = &info->layout;
  fb.generic = b.generic;
  fb.scopes.emplace_back();
  for (const auto& [name, t] : caps) {
    int slot = fb.new_slot();
    info->layout.capture_slots.push_back(slot);
    fb.scopes[0][name] = LocalVar{slot, t, Category::kMutLValue, -1};
  }
  std::vector<types::Param> ps;
  for (const auto& p : f.params) {
    types::Param tp = resolve_param(p.type, fctx, fs);
    ps.push_back(tp);
    int slot = fb.new_slot();
    info->layout.param_slots.push_back(slot);
    if (!p.name.empty())
      fb.scopes[0][p.name] = LocalVar{slot, tp.type, param_category(tp.mode), -1};
  }
  types::Param ret;
  if (f.ret) {
    ret = types::Param{resolve_type(*f.ret, fctx, fs), f.ret_mode};
    fb.ret_type = ret.type;
    fb.ret_mode = ret.mode;
  } else {
    fb.infer_ret = true;
    fb.ret_mode = PassMode::kByValue;
  }
  if (f.expr_body) {
    Typed t = check_expr(*f.expr_body, fb);
    if (fb.infer_ret) ret = types::Param{t.type, PassMode::kByValue};
  } else {
    check_block(f.body, fb);
    if (fb.infer_ret)
      ret = types::Param{fb.ret_type ? fb.ret_type : types::void_type(),
                         PassMode::kByValue};
  }
  info->type = types::mono_fun(ps, ret);
  return Typed{info->type, Category::kRValue};
}

Typed CheckerImpl::check_member(Expr& e, MemberExpr& m, Body& b) {
  ExprAnnot& an = annot(e);
  if (ScopeInfo* s = scope_of_expr(*m.object, b)) {
    if (s->private_names.count(m.member)) {
      error(e.loc, m.member + " is private in " + s->path);
      return error_typed();
    }
    auto fit = s->funs.find(m.member);
    if (fit != s->funs.end() && !fit->second.empty()) {
      if (fit->second.size() > 1) {
        error(e.loc, "Reference to overloaded function " + m.member +
                         " is ambiguous in this context");
        return error_typed();
      }
      an.ref = ExprAnnot::Ref::kFunction;
      an.fn = fit->second[0];
      return Typed{an.fn->type, Category::kRValue};
    }
    auto git = s->globals.find(m.member);
    if (git != s->globals.end()) {
      an.ref = ExprAnnot::Ref::kGlobal;
      an.slot = git->second->index;
      return Typed{git->second->type, Category::kMutLValue};
    }
    error(e.loc, "Scope " + s->path + " has no member " + m.member);
    return error_typed();
  }
  Typed obj = check_expr(*m.object, b);
  if (types::contains_error(obj.type)) return error_typed();
  TypeRef t = obj.type;
  Category cat = obj.cat;
  if (m.arrow) {
    TypeRef p = b.ctx->graph.find_with_head(b.solver->normalize(t), "*", 1, false);
    if (!p) {
      error(e.loc, "The operand of -> must be a pointer, not " +
                       types::to_string(t));
      return error_typed();
    }
    t = p->pointee();
    cat = Category::kMutLValue;
  }
  int index = -1;
  const ClassInfo* cls = nullptr;
  TypeRef ft = class_field_type(t, m.member, *b.ctx, *b.solver, &index, &cls);
  if (!ft) {
    error(e.loc, "Type " + types::to_string(t) + " has no field " + m.member);
    return error_typed();
  }
  an.field = index;
  return Typed{ft, cat};
}

Resolution CheckerImpl::resolve_ctor(TypeRef t, const ClassInfo& cls,
                                     std::vector<Arg>& args,
                                     const SourceLocation& loc,
                                     const std::string& text, Context& ctx,
                                     Solver& solver, bool report) {
  TypeRef head = ctx.graph.find_with_head(solver.normalize(t), cls.name,
                                          cls.params.size(), false);
  Subst s;
  for (std::size_t i = 0; i < cls.params.size(); ++i)
    s[cls.params[i]] = head ? head->args[i] : types::error_type();
  std::vector<Cand> cands;
  for (const FunctionInfo* f : cls.ctors) {
    const TypeRef F = f->type;
    std::vector<std::string> qs(F->quantifiers.begin() + cls.params.size(),
                                F->quantifiers.end());
    std::vector<Constraint> cs;
    for (const Constraint& c : F->constraints) cs.push_back(types::substitute(s, c));
    std::vector<types::Param> ps;
    for (const auto& p : F->params)
      ps.push_back(types::Param{types::substitute(s, p.type), p.mode});
    Cand c;
    c.kind = Cand::Kind::kFunction;
    c.fn = f;
    c.type = types::fun(qs, cs, ps, F->ret);
    cands.push_back(c);
  }
  return resolve(text, cands, args, loc, ctx, solver, report);
}

bool CheckerImpl::construct_target(TypeRef t, std::vector<Arg>& args,
                                   const SourceLocation& loc,
                                   const std::string& text, Body& b,
                                   CallTarget* target,
                                   std::vector<ArgPass>* passes) {
  Context& ctx = *b.ctx;
  Solver& solver = *b.solver;
  TypeRef n = solver.normalize(t);
  for (TypeRef m : ctx.graph.class_of(n)) {
    if (!m->is_class()) continue;
    const ClassInfo* cls = find_class(ctx.scope, m->name);
    if (!cls) break;
    Resolution r = resolve_ctor(m, *cls, args, loc, text, ctx, solver, true);
    if (!r.ok) return false;
    *target = target_of(r);
    *passes = r.at.passes;
    return true;
  }
  if (args.empty()) {
    target->kind = CallTarget::Kind::kDefault;
    target->plan = default_plan(t, ctx, solver, loc, true);
    return true;
  }
  if (args.size() == 1) {
    if (!args[0].type) {
      error(loc, "Cannot construct " + types::to_string(t) +
                     " from an overloaded function");
      return false;
    }
    Conv cv;
    if (!coercible(args[0].type, t, ctx, solver, &cv)) {
      error(loc, "Type (" + types::to_string(args[0].type) +
                     ") does not match type (" + types::to_string(t) + ")");
      return false;
    }
    target->kind = CallTarget::Kind::kCopy;
    target->type = t;
    *passes = {ArgPass{PassMode::kConstRef, cv}};
    return true;
  }
  error(loc, "Cannot construct " + types::to_string(t) + " from " +
                 std::to_string(args.size()) + " arguments");
  return false;
}

Typed CheckerImpl::check_construct(Expr& e, const TypeExpr& te,
                                   std::vector<ExprPtr>& argx, Body& b) {
  TypeRef t = resolve_type(te, *b.ctx, *b.solver);
  std::vector<Arg> args;
  bool bad = types::contains_error(t);
  for (auto& x : argx) {
    args.push_back(make_arg(*x, b));
    if (args.back().type && types::contains_error(args.back().type)) bad = true;
  }
  if (bad) return error_typed();
  ExprAnnot& an = annot(e);
  if (!construct_target(t, args, e.loc, print_expr(e), b, &an.target, &an.args))
    return error_typed();
  an.elem_type = t;
  return Typed{t, Category::kRValue};
}

Typed CheckerImpl::check_assign(Expr& e, Expr& lhs, Expr& rhs, Body& b) {
  return check_call_named(e, "operator=",
                          visible_functions(b.ctx->scope, "operator="), true,
                          {&lhs, &rhs}, b, print_expr(e));
}

Typed CheckerImpl::check_expr(Expr& e, Body& b) {
  Typed t = std::visit(
      overloaded{
          [&](IntLit&) { return Typed{types::int_type(), Category::kRValue}; },
          [&](FloatLit&) {
            return Typed{types::double_type(), Category::kRValue};
          },
          [&](CharLit&) { return Typed{types::char_type(), Category::kRValue}; },
          [&](StringLit&) {
            return Typed{types::pointer(types::char_type()), Category::kRValue};
          },
          [&](VarRef& v) { return check_var(e, v.name, b); },
          [&](CallExpr& c) -> Typed {
            std::vector<Expr*> argx;
            for (auto& a : c.args) argx.push_back(a.get());
            std::string text = print_expr(e);
            if (auto* v = std::get_if<VarRef>(&c.callee->node);
                v && !find_local(b, v->name)) {
              std::vector<const FunctionInfo*> fs =
                  visible_functions(b.ctx->scope, v->name);
              bool has_sur = false;
              for (const auto& s : b.ctx->surrogates)
                has_sur = has_sur || s.name == v->name;
              if (v->name == "printf" && fs.empty())
                return check_printf(e, c.args, b);
              bool is_global = false;
              for (ScopeInfo* s = b.ctx->scope; s && !is_global; s = s->parent)
                is_global = s->globals.count(v->name) > 0;
              if (!fs.empty() || has_sur || !is_global)
                return check_call_named(e, v->name, fs, true, argx, b, text);
            }
            if (auto* m = std::get_if<MemberExpr>(&c.callee->node); m && !m->arrow) {
              if (ScopeInfo* s = scope_of_expr(*m->object, b)) {
                if (s->private_names.count(m->member)) {
                  error(e.loc, m->member + " is private in " + s->path);
                  return error_typed();
                }
                std::vector<const FunctionInfo*> fs;
                auto it = s->funs.find(m->member);
                if (it != s->funs.end()) fs.assign(it->second.begin(), it->second.end());
                return check_call_named(e, m->member, fs, false, argx, b, text);
              }
            }
            Typed f = check_expr(*c.callee, b);
            std::vector<Arg> args;
            bool bad = types::contains_error(f.type);
            for (Expr* x : argx) {
              args.push_back(make_arg(*x, b));
              if (args.back().type && types::contains_error(args.back().type))
                bad = true;
            }
            if (bad) return error_typed();
            Cand cand;
            cand.kind = Cand::Kind::kValue;
            cand.type = f.type;
            Resolution r = resolve(text, {cand}, args, e.loc, *b.ctx, *b.solver, true);
            if (!r.ok) return error_typed();
            return finish_call(e, r, args, b);
          },
          [&](InstExpr& x) { return check_inst(e, x, b); },
          [&](FunExpr& f) { return check_fun_expr(e, f, b); },
          [&](ModelMemberExpr& m) -> Typed {
            auto c = resolve_model_constraint(m.concept_name, m.args, e.loc,
                                              *b.ctx, *b.solver);
            if (!c) return error_typed();
            const ConceptInfo* ci = reg.find_concept(m.concept_name);
            int op = -1;
            for (std::size_t i = 0; i < ci->ops.size(); ++i)
              if (ci->ops[i].name == m.member) {
                if (op >= 0) {
                  error(e.loc, "Concept " + ci->name + " has several operations named " +
                                   m.member);
                  return error_typed();
                }
                op = static_cast<int>(i);
              }
            if (op < 0) {
              error(e.loc, "Concept " + ci->name + " has no operation " + m.member);
              return error_typed();
            }
            Constraint g = b.solver->normalize(*c);
            WitnessPtr w = satisfy(g, *b.ctx, *b.solver, e.loc,
                                   "In " + print_expr(e), true);
            if (!w) return error_typed();
            Subst s;
            for (std::size_t i = 0; i < ci->params.size(); ++i)
              s[ci->params[i]] = g.args[i];
            ExprAnnot& an = annot(e);
            an.dict = w;
            an.op = op;
            return Typed{b.solver->normalize(types::substitute(s, ci->ops[op].sig)),
                         Category::kRValue};
          },
          [&](MemberExpr& m) { return check_member(e, m, b); },
          [&](UnaryExpr& u) -> Typed {
            if (u.op == "&") {
              Typed t = check_expr(*u.operand, b);
              if (types::contains_error(t.type)) return error_typed();
              if (t.cat == Category::kRValue) {
                error(e.loc, "Cannot take the address of a temporary");
                return error_typed();
              }
              return Typed{types::pointer(t.type), Category::kRValue};
            }
            if (u.op == "not") {
              expect_bool(*u.operand, b, "operand of not");
              return Typed{types::bool_type(), Category::kRValue};
            }
            std::string name = "operator" + u.op;
            return check_call_named(e, name, visible_functions(b.ctx->scope, name),
                                    true, {u.operand.get()}, b, print_expr(e));
          },
          [&](BinaryExpr& x) -> Typed {
            if (x.op == "=") return check_assign(e, *x.lhs, *x.rhs, b);
            if (x.op == "and" || x.op == "or") {
              expect_bool(*x.lhs, b, "operand of and/or");
              expect_bool(*x.rhs, b, "operand of and/or");
              return Typed{types::bool_type(), Category::kRValue};
            }
            std::string name = "operator" + x.op;
            return check_call_named(e, name, visible_functions(b.ctx->scope, name),
                                    true, {x.lhs.get(), x.rhs.get()}, b,
                                    print_expr(e));
          },
          [&](CondExpr& c) -> Typed {
            expect_bool(*c.cond, b, "condition");
            Typed a = check_expr(*c.then_expr, b);
            Typed d = check_expr(*c.else_expr, b);
            if (types::contains_error(a.type) || types::contains_error(d.type))
              return error_typed();
            ExprAnnot& an = annot(e);
            if (b.solver->same(a.type, d.type))
              return Typed{a.type, Category::kRValue};
            Conv cv;
            if (coercible(d.type, a.type, *b.ctx, *b.solver, &cv)) {
              an.else_conv = cv;
              return Typed{a.type, Category::kRValue};
            }
            if (coercible(a.type, d.type, *b.ctx, *b.solver, &cv)) {
              an.then_conv = cv;
              return Typed{d.type, Category::kRValue};
            }
            error(e.loc,
                  "The two branches of the conditional expression must have "
                  "the same type or one must be coercible to the other.");
            return error_typed();
          },
          [&](IndexExpr& x) -> Typed {
            return check_call_named(e, "operator[]",
                                    visible_functions(b.ctx->scope, "operator[]"),
                                    true, {x.object.get(), x.index.get()}, b,
                                    print_expr(e));
          },
          [&](NewExpr& n) -> Typed {
            TypeRef t = resolve_type(*n.type, *b.ctx, *b.solver);
            if (types::contains_error(t)) return error_typed();
            ExprAnnot& an = annot(e);
            an.elem_type = t;
            if (n.array_size) {
              Typed s = check_expr(*n.array_size, b);
              if (!types::contains_error(s.type) &&
                  !b.solver->same(s.type, types::int_type()))
                error(n.array_size->loc, "The size of an array must be an int");
              an.elem_plan = default_plan(t, *b.ctx, *b.solver, e.loc, true);
              return Typed{types::pointer(t), Category::kRValue};
            }
            std::vector<Arg> args;
            for (auto& x : n.args) {
              args.push_back(make_arg(*x, b));
              if (args.back().type && types::contains_error(args.back().type))
                return error_typed();
            }
            if (!construct_target(t, args, e.loc, print_expr(e), b, &an.target,
                                  &an.args))
              return error_typed();
            return Typed{types::pointer(t), Category::kRValue};
          },
          [&](ConstructExpr& c) { return check_construct(e, *c.type, c.args, b); },
      },
      e.node);
  ExprAnnot& an = annot(e);
  an.type = t.type;
  an.cat = t.cat;
  return t;
}

void CheckerImpl::check_block(std::vector<StmtPtr>& stmts, Body& b) {
  b.scopes.emplace_back();
  b.ctx->aliases.emplace_back();
  for (auto& s : stmts) check_stmt(*s, b);
  b.ctx->aliases.pop_back();
  b.scopes.pop_back();
}

void CheckerImpl::check_stmt(Stmt& s, Body& b) {
  auto scoped = [&](Stmt& inner) {
    b.scopes.emplace_back();
    b.ctx->aliases.emplace_back();
    check_stmt(inner, b);
    b.ctx->aliases.pop_back();
    b.scopes.pop_back();
  };
  std::visit(
      overloaded{
          [&](LetStmt& l) {
            Typed t = check_expr(*l.init, b);
            if (!types::contains_error(t.type) && t.type->is_void())
              error(s.loc, "Cannot bind " + l.name + " to an expression of type void");
            int slot = b.new_slot();
            annot(s).slot = slot;
            b.scopes.back()[l.name] = LocalVar{slot, t.type, Category::kMutLValue, -1};
          },
          [&](TypeAliasStmt& a) {
            TypeRef t = resolve_type(*a.type, *b.ctx, *b.solver);
            if (b.ctx->aliases.empty()) b.ctx->aliases.emplace_back();
            b.ctx->aliases.back()[a.name] = t;
          },
          [&](WhileStmt& w) {
            expect_bool(*w.cond, b, "condition of while");
            scoped(*w.body);
          },
          [&](ForStmt& f) {
            b.scopes.emplace_back();
            b.ctx->aliases.emplace_back();
            if (f.init) check_stmt(*f.init, b);
            if (f.cond) expect_bool(*f.cond, b, "condition of for");
            for (auto& x : f.steps) check_expr(*x, b);
            scoped(*f.body);
            b.ctx->aliases.pop_back();
            b.scopes.pop_back();
          },
          [&](IfStmt& i) {
            expect_bool(*i.cond, b, "condition of if");
            scoped(*i.then_stmt);
            if (i.else_stmt) scoped(*i.else_stmt);
          },
          [&](ReturnStmt& r) {
            StmtAnnot& an = annot(s);
            if (b.infer_ret) {
              TypeRef t = types::void_type();
              if (r.value) t = check_expr(*r.value, b).type;
              if (!b.ret_type) {
                b.ret_type = t;
              } else if (!types::contains_error(t) &&
                         !b.solver->same(t, b.ret_type)) {
                Conv cv;
                if (coercible(t, b.ret_type, *b.ctx, *b.solver, &cv))
                  an.conv = cv;
                else
                  error(s.loc, "Type (" + types::to_string(t) +
                                   ") does not match type (" +
                                   types::to_string(b.ret_type) + ")");
              }
              an.pass = ArgPass{PassMode::kByValue, an.conv};
              return;
            }
            if (!r.value) {
              if (!b.ret_type->is_void())
                error(s.loc, "A value of type " + types::to_string(b.ret_type) +
                                 " must be returned");
              return;
            }
            Typed t = check_expr(*r.value, b);
            if (types::contains_error(t.type) ||
                types::contains_error(b.ret_type))
              return;
            if (b.ret_type->is_void()) {
              if (!t.type->is_void())
                error(s.loc, "Cannot return a value from a function returning void");
              return;
            }
            if (b.ret_mode == PassMode::kMutRef) {
              if (t.cat != Category::kMutLValue ||
                  !b.solver->same(t.type, b.ret_type))
                error(s.loc, "The returned expression must be a mutable lvalue of type " +
                                 types::to_string(b.ret_type));
              an.pass = ArgPass{PassMode::kMutRef, {}};
              return;
            }
            Conv cv;
            if (!coercible(t.type, b.ret_type, *b.ctx, *b.solver, &cv)) {
              error(s.loc, "Type (" + types::to_string(t.type) +
                               ") does not match type (" +
                               types::to_string(b.ret_type) + ")");
              return;
            }
            an.conv = cv;
            an.pass = ArgPass{b.ret_mode, cv};
          },
          [&](ExprStmt& x) { check_expr(*x.expr, b); },
          [&](BlockStmt& blk) { check_block(blk.stmts, b); },
      },
      s.node);
}

}  // namespace g::sema
