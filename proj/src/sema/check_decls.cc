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

Category param_category(PassMode m) {
  return m == PassMode::kConstRef ? Category::kConstLValue
                                  : Category::kMutLValue;
}

std::string fun_text(const std::string& name, TypeRef sig) {
  return "fun " + name + types::to_string(sig).substr(3);
}

}  // namespace

std::string FunctionInfo::qualified_name() const {
  if (owner == Owner::kModelMember && model)
    return "model " + types::to_string(model->head_constraint()) + "." + name;
  if (owner == Owner::kConceptDefault && concept_info)
    return concept_info->name + "." + name;
  return name;
}

CheckerImpl::CheckerImpl(CheckOptions o) : opts(o) {
  scopes.emplace_back();
  global = &scopes.back();
}

std::unique_ptr<Context> CheckerImpl::make_context(ScopeInfo* scope) {
  auto c = std::make_unique<Context>();
  c->scope = scope;
  return c;
}

void CheckerImpl::check_unit(Program& program, const std::string& f,
                             bool is_prelude) {
  file = f;
  prelude = is_prelude;
  global->in_private = false;
  check_decls(program, global);
}

void CheckerImpl::check_decls(std::vector<DeclPtr>& decls, ScopeInfo* scope) {
  for (auto& d : decls) check_decl(*d, scope);
}

void CheckerImpl::declare_name(ScopeInfo* scope, const std::string& name) {
  if (scope->in_private) scope->private_names.insert(name);
}

void CheckerImpl::check_decl(Decl& d, ScopeInfo* scope) {
  std::visit(
      overloaded{
          [&](ConceptDecl& c) { check_concept(c, d.loc, scope); },
          [&](ModelDecl& m) { check_model(m, d.loc, scope); },
          [&](FunDecl& f) { check_function(f, d.loc, scope); },
          [&](ClassDecl& c) { check_class(c, d.loc, scope); },
          [&](ModuleDecl& m) { check_module(m, d.loc, scope); },
          [&](ScopeAliasDecl& a) {
            if (ScopeInfo* s = resolve_scope_path(a.path, scope, d.loc)) {
              scope->modules[a.name] = s;
              declare_name(scope, a.name);
            }
          },
          [&](ImportDecl& i) { check_import(i, d.loc, scope); },
          [&](VisibilityDecl& v) { scope->in_private = !v.is_public; },
          [&](UseFileDecl&) {},
          [&](UseScopeDecl& u) {
            if (ScopeInfo* s = resolve_scope_path(u.path, scope, d.loc))
              scope->opened.push_back(s);
          },
          [&](TypeAliasDecl& a) {
            auto ctx = make_context(scope);
            Solver solver(reg, *ctx, opts.solver);
            TypeRef t = resolve_type(*a.type, *ctx, solver);
            if (scope->type_aliases.count(a.name))
              error(d.loc, "Type " + a.name + " is already defined");
            scope->type_aliases[a.name] = t;
            declare_name(scope, a.name);
          },
          [&](GlobalLetDecl& g) { check_global_let(g, d.loc, scope); },
      },
      d.node);
}

ScopeInfo* CheckerImpl::resolve_scope_path(const std::vector<std::string>& path,
                                           ScopeInfo* from,
                                           const SourceLocation& loc) {
  ScopeInfo* cur = nullptr;
  for (ScopeInfo* s = from; s && !cur; s = s->parent) {
    auto it = s->modules.find(path[0]);
    if (it != s->modules.end()) cur = it->second;
  }
  if (!cur) {
    error(loc, "Unknown scope " + path[0]);
    return nullptr;
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto it = cur->modules.find(path[i]);
    if (it == cur->modules.end() || cur->private_names.count(path[i])) {
      error(loc, "Scope " + cur->path + " has no public scope " + path[i]);
      return nullptr;
    }
    cur = it->second;
  }
  return cur;
}

void CheckerImpl::check_module(ModuleDecl& m, const SourceLocation& loc,
                               ScopeInfo* scope) {
  ScopeInfo* child = nullptr;
  auto it = scope->modules.find(m.name);
  if (it != scope->modules.end()) {
    child = it->second;
    if (child->parent != scope || child->defining_file != file) {
      error(loc, "Module " + m.name + " cannot be reopened in another file");
      return;
    }
  } else {
    scopes.emplace_back();
    child = &scopes.back();
    child->name = m.name;
    child->path = scope->path.empty() ? m.name : scope->path + "." + m.name;
    child->parent = scope;
    child->defining_file = file;
    scope->modules[m.name] = child;
    declare_name(scope, m.name);
  }
  child->in_private = false;
  check_decls(m.decls, child);
  child->in_private = false;
}

void CheckerImpl::check_import(ImportDecl& d, const SourceLocation& loc,
                               ScopeInfo* scope) {
  ScopeInfo* s = resolve_scope_path(d.path, scope, loc);
  if (!s) return;
  auto ctx = make_context(scope);
  Solver solver(reg, *ctx, opts.solver);
  auto c = resolve_model_constraint(d.concept_name, d.args, loc, *ctx, solver);
  if (!c) return;
  for (const ModelInfo* r : s->rules) {
    if (s->private_rules.count(r) || r->concept_name != c->concept_name ||
        r->head.size() != c->args.size())
      continue;
    bool eq = true;
    for (std::size_t i = 0; i < r->head.size() && eq; ++i)
      eq = types::alpha_equal(r->head[i], c->args[i]);
    if (!eq) continue;
    scope->rules.push_back(r);
    if (scope->in_private) scope->private_rules.insert(r);
    return;
  }
  error(loc, "Scope " + s->path + " has no model " + types::to_string(*c));
}

void CheckerImpl::check_global_let(GlobalLetDecl& g, const SourceLocation& loc,
                                   ScopeInfo* scope) {
  auto ctx = make_context(scope);
  Solver solver(reg, *ctx, opts.solver);
  Body b;
  b.ctx = ctx.get();
  b.solver = &solver;
  b.layout = &global_layout;
  b.scopes.emplace_back();
  Typed t = check_expr(*g.init, b);
  if (scope->globals.count(g.name)) error(loc, g.name + " is already defined");
  global_store.push_back(GlobalVar{g.name, t.type,
                                   static_cast<int>(globals.size()), &g});
  GlobalVar* gv = &global_store.back();
  globals.push_back(gv);
  scope->globals[g.name] = gv;
  declare_name(scope, g.name);
  if (!g.annot) g.annot = std::make_shared<StmtAnnot>();
  g.annot->slot = gv->index;
}

void CheckerImpl::check_concept(ConceptDecl& c, const SourceLocation& loc,
                                ScopeInfo* scope) {
  if (reg.find_concept(c.name)) {
    error(loc, "Concept " + c.name + " is already defined");
    return;
  }
  concepts.emplace_back();
  ConceptInfo& ci = concepts.back();
  ci.name = c.name;
  ci.params = c.params;
  ci.loc = loc;
  reg.concepts[c.name] = &ci;

  auto ctx = make_context(scope);
  ctx->type_params = c.params;
  ctx->in_concept = &ci;
  SolverOptions quiet = opts.solver;
  quiet.trace = nullptr;
  Solver solver(reg, *ctx, quiet);

  // Associated types first so that operation signatures may mention them
  // regardless of declaration order.
  for (auto& m : c.members)
    if (auto* a = std::get_if<AssocTypeMember>(&m.node)) {
      for (const auto& x : ci.assoc)
        if (x == a->name) error(m.loc, "Associated type " + a->name + " is declared twice");
      ci.assoc.push_back(a->name);
    }

  std::vector<std::pair<int, FunDecl*>> defaults;
  for (auto& m : c.members) {
    std::visit(
        overloaded{
            [&](FunDecl& f) {
              if (!f.type_params.empty()) {
                error(m.loc, "Concept operations cannot have type parameters");
                return;
              }
              std::vector<types::Param> ps;
              for (const auto& p : f.params)
                ps.push_back(resolve_param(p.type, *ctx, solver, false));
              types::Param r{f.ret ? resolve_type(*f.ret, *ctx, solver, false)
                                   : types::void_type(),
                             f.ret_mode};
              ConceptOp op;
              op.name = f.name;
              op.sig = types::mono_fun(ps, r);
              op.decl = &f;
              op.loc = m.loc;
              ci.ops.push_back(op);
              if (f.body)
                defaults.emplace_back(static_cast<int>(ci.ops.size()) - 1, &f);
            },
            [&](AssocTypeMember&) {},
            [&](SameTypeConstraint& st) {
              TypeRef a = resolve_type(*st.lhs, *ctx, solver, false);
              TypeRef b = resolve_type(*st.rhs, *ctx, solver, false);
              ci.same_types.emplace_back(a, b);
            },
            [&](RefinesMember& r) {
              if (r.concept_name == ci.name) {
                error(m.loc, "Concept " + ci.name + " cannot refine itself");
                return;
              }
              auto k = resolve_model_constraint(r.concept_name, r.args, m.loc,
                                                *ctx, solver, false);
              if (k) ci.parents.push_back(ParentLink{true, k->concept_name, k->args});
            },
            [&](RequireMember& r) {
              if (r.concept_name == ci.name) {
                error(m.loc, "Concept " + ci.name + " cannot require itself");
                return;
              }
              auto k = resolve_model_constraint(r.concept_name, r.args, m.loc,
                                                *ctx, solver, false);
              if (k) ci.parents.push_back(ParentLink{false, k->concept_name, k->args});
            },
        },
        m.node);
  }
  ci.complete = true;

  if (defaults.empty()) return;
  auto dctx = make_context(scope);
  dctx->type_params = c.params;
  dctx->in_concept = &ci;
  Solver dsolver(reg, *dctx, quiet);
  std::vector<TypeRef> args;
  for (const auto& p : c.params) args.push_back(types::var(p));
  add_fact(reg, *dctx, types::model_constraint(ci.name, args), 0, {}, &dsolver);
  dctx->num_roots = 1;
  for (auto& [i, f] : defaults) {
    functions.emplace_back();
    FunctionInfo& fi = functions.back();
    fi.name = f->name;
    fi.type = ci.ops[i].sig;
    fi.decl = f;
    fi.owner = FunctionInfo::Owner::kConceptDefault;
    fi.concept_info = &ci;
    fi.loc = ci.ops[i].loc;
    fi.has_body = true;
    ci.ops[i].default_fn = &fi;
    if (!f->annot) f->annot = std::make_shared<FunAnnot>();
    f->annot->info = &fi;
    std::vector<types::Param> ps(fi.type->params);
    ++stats.bodies_checked;
    ++stats.generic_bodies_checked;
    check_fun_body(fi, *f->body, *dctx, dsolver, f->params, ps);
  }
}

void CheckerImpl::check_fun_body(FunctionInfo& fi, std::vector<StmtPtr>& body,
                                 Context& ctx, Solver& solver,
                                 const std::vector<syntax::Param>& params,
                                 const std::vector<types::Param>& ptypes) {
  Body b;
  b.ctx = &ctx;
  b.solver = &solver;
  b.layout = &fi.layout;
  b.ret_type = fi.type->ret.type;
  b.ret_mode = fi.type->ret.mode;
  b.generic = !ctx.type_params.empty();
  b.scopes.emplace_back();
  for (std::size_t i = 0; i < params.size(); ++i) {
    int slot = b.new_slot();
    fi.layout.param_slots.push_back(slot);
    if (!params[i].name.empty())
      b.scopes[0][params[i].name] =
          LocalVar{slot, ptypes[i].type, param_category(ptypes[i].mode), -1};
  }
  ctx.aliases.emplace_back();
  check_block(body, b);
  ctx.aliases.pop_back();
}

void CheckerImpl::check_param_copyable(const types::Param& p, Context& ctx,
                                       Solver& solver,
                                       const SourceLocation& loc) {
  if (p.mode != PassMode::kByValue || !reg.find_concept("Regular")) return;
  if (types::contains_error(p.type)) return;
  TypeRef n = ctx.graph.representative(solver.normalize(p.type));
  if (n->is_base() || n->is_pointer() || n->is_fun()) return;
  satisfy(types::model_constraint("Regular", {p.type}), ctx, solver, loc,
          "In pass-by-value parameter of type " + types::to_string(p.type),
          true);
}

InitPlan CheckerImpl::default_plan(TypeRef t, Context& ctx, Solver& solver,
                                   const SourceLocation& loc, bool report) {
  InitPlan plan;
  if (types::contains_error(t)) return plan;
  TypeRef n = solver.normalize(t);
  for (TypeRef m : ctx.graph.class_of(n)) {
    if (m->is_base()) {
      if (!m->is_void()) {
        plan.kind = InitPlan::Kind::kZero;
        plan.base = m->base;
      }
      return plan;
    }
  }
  for (TypeRef m : ctx.graph.class_of(n)) {
    if (m->is_pointer()) {
      plan.kind = InitPlan::Kind::kNull;
      return plan;
    }
    if (m->is_fun()) return plan;
    if (m->is_class()) {
      const ClassInfo* cls = find_class(ctx.scope, m->name);
      if (!cls) return plan;
      std::vector<Arg> none;
      Resolution r = resolve_ctor(m, *cls, none, loc, "@" + types::to_string(m) + "()",
                                  ctx, solver, false);
      if (!r.ok) {
        if (report)
          error(loc, "Type " + types::to_string(m) + " has no default constructor");
        return plan;
      }
      plan.kind = InitPlan::Kind::kClass;
      plan.ctor = r.cand.fn;
      plan.witnesses = r.at.witnesses;
      return plan;
    }
  }
  if (!reg.find_concept("DefaultConstructible")) {
    if (report)
      error(loc, "Cannot default-initialize a value of type " + types::to_string(t));
    return plan;
  }
  WitnessPtr w = satisfy(types::model_constraint("DefaultConstructible", {n}),
                         ctx, solver, loc,
                         "In default initialization of type " + types::to_string(t),
                         report);
  if (w) {
    plan.kind = InitPlan::Kind::kDict;
    plan.dict = w;
  }
  return plan;
}

void CheckerImpl::print_equalities(const std::string& owner, Context& ctx) {
  if (!opts.equalities) return;
  for (const auto& line : ctx.graph.describe())
    *opts.equalities << owner << ": " << line << "\n";
}

void CheckerImpl::check_function(FunDecl& f, const SourceLocation& loc,
                                 ScopeInfo* scope) {
  auto ctx = make_context(scope);
  ctx->type_params = f.type_params;
  Solver solver(reg, *ctx, opts.solver);
  std::vector<Constraint> where = resolve_where(f.where, *ctx, solver);
  add_where(reg, *ctx, where, &solver);
  if (!ctx->graph.consistent())
    error(loc, "Inconsistent type constraints in " + f.name + ": " +
                   ctx->graph.inconsistency());
  std::vector<types::Param> ps;
  for (const auto& p : f.params) {
    ps.push_back(resolve_param(p.type, *ctx, solver));
    check_param_copyable(ps.back(), *ctx, solver, p.loc);
  }
  types::Param ret{f.ret ? resolve_type(*f.ret, *ctx, solver) : types::void_type(),
                   f.ret_mode};
  TypeRef type = types::fun(f.type_params, where, ps, ret);

  FunctionInfo* fi = nullptr;
  auto& same_name = scope->funs[f.name];
  for (FunctionInfo* x : same_name) {
    if (!types::alpha_equal(x->type, type)) continue;
    if (x->has_body || !f.body) {
      if (x->has_body && f.body) {
        error(loc, "Function " + f.name + " is already defined with type " +
                       types::to_string(type));
        return;
      }
      if (!f.body) return;
    }
    fi = x;
  }
  if (!fi) {
    functions.emplace_back();
    fi = &functions.back();
    fi->name = f.name;
    fi->type = type;
    fi->loc = loc;
    fi->decl = &f;
    same_name.push_back(fi);
    declare_name(scope, f.name);
  }
  if (!f.annot) f.annot = std::make_shared<FunAnnot>();
  f.annot->info = fi;
  if (!f.body) {
    if (prelude)
      fi->intrinsic = lookup_intrinsic(f.name + " " + types::to_string(type));
    return;
  }
  if (fi->intrinsic != Intrinsic::kNone) {
    error(loc, "Cannot define the built-in operation " + f.name);
    return;
  }
  fi->decl = &f;
  fi->loc = loc;
  fi->has_body = true;
  ++stats.bodies_checked;
  if (!f.type_params.empty()) ++stats.generic_bodies_checked;
  check_fun_body(*fi, *f.body, *ctx, solver, f.params, ps);
  print_equalities(f.name, *ctx);
}

void CheckerImpl::check_ctor_body(FunctionInfo& fi, ClassInfo& cls,
                                  Context& ctx, Solver& solver) {
  CtorDecl& d = *const_cast<CtorDecl*>(fi.ctor_decl);
  Body b;
  b.ctx = &ctx;
  b.solver = &solver;
  b.layout = &fi.layout;
  b.ret_type = types::void_type();
  b.generic = !ctx.type_params.empty();
  b.new_slot();  // slot 0 refers to the object under construction
  b.scopes.emplace_back();
  for (std::size_t i = 0; i < cls.fields.size(); ++i)
    b.scopes[0][cls.fields[i].name] =
        LocalVar{0, cls.fields[i].type, Category::kMutLValue, static_cast<int>(i)};
  b.scopes.emplace_back();
  std::size_t nq = cls.params.size();
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    int slot = b.new_slot();
    fi.layout.param_slots.push_back(slot);
    const types::Param& p = fi.type->params[i];
    if (!d.params[i].name.empty())
      b.scopes[1][d.params[i].name] =
          LocalVar{slot, p.type, param_category(p.mode), -1};
  }
  (void)nq;
  ctx.aliases.emplace_back();
  std::set<int> seen;
  for (auto& init : d.inits) {
    int idx = cls.field_index(init.field);
    if (idx < 0) {
      error(init.loc, "Class " + cls.name + " has no field " + init.field);
      continue;
    }
    if (!seen.insert(idx).second)
      error(init.loc, "Field " + init.field + " is initialized twice");
    std::vector<Arg> args;
    bool bad = false;
    for (auto& a : init.args) {
      args.push_back(make_arg(*a, b));
      if (args.back().type && types::contains_error(args.back().type)) bad = true;
    }
    if (bad) continue;
    FieldInitInfo fii;
    fii.field = idx;
    fii.source = &init;
    std::string text = init.field + "(...)";
    if (construct_target(cls.fields[idx].type, args, init.loc, text, b,
                         &fii.target, &fii.args))
      fi.inits.push_back(fii);
  }
  check_block(d.body, b);
  ctx.aliases.pop_back();
}

void CheckerImpl::check_class(ClassDecl& c, const SourceLocation& loc,
                              ScopeInfo* scope) {
  if (scope->classes.count(c.name)) {
    error(loc, "Class " + c.name + " is already defined");
    return;
  }
  classes.emplace_back();
  ClassInfo& ci = classes.back();
  ci.name = c.name;
  ci.kind = c.kind;
  ci.params = c.type_params;
  ci.decl = &c;
  ci.loc = loc;
  scope->classes[c.name] = &ci;
  declare_name(scope, c.name);
  if (!c.annot) c.annot = std::make_shared<ClassAnnot>();
  c.annot->info = &ci;

  auto ctx = make_context(scope);
  ctx->type_params = c.type_params;
  Solver solver(reg, *ctx, opts.solver);
  ci.where = resolve_where(c.where, *ctx, solver);
  add_where(reg, *ctx, ci.where, &solver);

  for (auto& m : c.members) {
    if (auto* f = std::get_if<FieldDecl>(&m.node)) {
      if (ci.field_index(f->name) >= 0)
        error(m.loc, "Field " + f->name + " is declared twice");
      ci.fields.push_back(FieldInfo{f->name, resolve_type(*f->type, *ctx, solver)});
    }
  }

  std::vector<TypeRef> self_args;
  for (const auto& p : ci.params) self_args.push_back(types::var(p));
  TypeRef self = types::ctor(ci.name, self_args);

  struct Pending {
    FunctionInfo* fi;
    std::unique_ptr<Context> ctx;
    std::unique_ptr<Solver> solver;
  };
  std::vector<Pending> pending;
  bool has_copy = false;
  for (auto& m : c.members) {
    auto* d = std::get_if<CtorDecl>(&m.node);
    if (!d) continue;
    auto cctx = std::make_unique<Context>(*ctx);
    for (const auto& q : d->type_params) cctx->type_params.push_back(q);
    auto csolver = std::make_unique<Solver>(reg, *cctx, opts.solver);
    std::vector<Constraint> cw = resolve_where(d->where, *cctx, *csolver);
    add_where(reg, *cctx, cw, csolver.get());
    std::vector<types::Param> ps;
    for (const auto& p : d->params) {
      ps.push_back(resolve_param(p.type, *cctx, *csolver));
      check_param_copyable(ps.back(), *cctx, *csolver, p.loc);
    }
    if (d->type_params.empty() && ps.size() == 1 && ps[0].type == self)
      has_copy = true;
    std::vector<std::string> qs = ci.params;
    qs.insert(qs.end(), d->type_params.begin(), d->type_params.end());
    std::vector<Constraint> cs = ci.where;
    cs.insert(cs.end(), cw.begin(), cw.end());
    functions.emplace_back();
    FunctionInfo& fi = functions.back();
    fi.name = ci.name;
    fi.type = types::fun(qs, cs, ps, types::Param{types::void_type(), PassMode::kConstRef});
    fi.ctor_decl = d;
    fi.owner = FunctionInfo::Owner::kCtor;
    fi.cls = &ci;
    fi.loc = m.loc;
    fi.has_body = true;
    if (!d->annot) d->annot = std::make_shared<FunAnnot>();
    d->annot->info = &fi;
    ci.ctors.push_back(&fi);
    pending.push_back(Pending{&fi, std::move(cctx), std::move(csolver)});
  }
  auto implicit = [&](FunctionInfo::CtorKind kind, std::vector<types::Param> ps) {
    functions.emplace_back();
    FunctionInfo& fi = functions.back();
    fi.name = ci.name;
    fi.type = types::fun(ci.params, ci.where, ps,
                         types::Param{types::void_type(), PassMode::kConstRef});
    fi.owner = FunctionInfo::Owner::kCtor;
    fi.ctor_kind = kind;
    fi.cls = &ci;
    fi.loc = loc;
    fi.has_body = true;
    ci.ctors.push_back(&fi);
  };
  if (pending.empty()) implicit(FunctionInfo::CtorKind::kImplicitDefault, {});
  if (!has_copy)
    implicit(FunctionInfo::CtorKind::kImplicitCopy,
             {types::Param{self, PassMode::kConstRef}});

  for (const FieldInfo& f : ci.fields)
    ci.field_defaults.push_back(default_plan(f.type, *ctx, solver, loc, false));

  for (auto& p : pending) {
    ++stats.bodies_checked;
    if (!p.ctx->type_params.empty()) ++stats.generic_bodies_checked;
    check_ctor_body(*p.fi, ci, *p.ctx, *p.solver);
  }
}

void CheckerImpl::check_model(ModelDecl& m, const SourceLocation& loc,
                              ScopeInfo* scope) {
  const ConceptInfo* concept_info = reg.find_concept(m.concept_name);
  if (!concept_info) {
    error(loc, "Unknown concept " + m.concept_name);
    return;
  }
  models.emplace_back();
  ModelInfo& mi = models.back();
  mi.id = next_model_id++;
  mi.params = m.type_params;
  mi.concept_name = concept_info->name;
  mi.concept_info = concept_info;
  mi.decl = &m;
  mi.loc = loc;
  mi.scope_path = scope->path;
  if (!m.annot) m.annot = std::make_shared<ModelAnnot>();
  m.annot->info = &mi;

  auto ctx = make_context(scope);
  ctx->type_params = m.type_params;
  SolverOptions quiet = opts.solver;
  quiet.trace = nullptr;
  Solver solver(reg, *ctx, quiet);
  mi.where = resolve_where(m.where, *ctx, solver);
  add_where(reg, *ctx, mi.where, &solver);
  for (const auto& a : m.args) mi.head.push_back(resolve_type(*a, *ctx, solver));
  for (TypeRef h : mi.head)
    if (types::contains_error(h)) return;
  if (mi.head.size() != concept_info->params.size()) {
    error(loc, "Concept " + concept_info->name + " expects " +
                   std::to_string(concept_info->params.size()) + " type arguments");
    return;
  }
  std::string head_text = types::to_string(mi.head_constraint());
  std::string bad = validate_model_rule(mi.params, mi.head);
  if (!bad.empty()) {
    error(loc, "Type parameter " + bad + " of model " + head_text +
                   " does not occur in the model head");
    return;
  }
  ctx->in_model = &mi;
  ctx->self_model = &mi;

  // Associated type definitions.
  for (auto& d : m.members) {
    auto* a = std::get_if<TypeAliasDecl>(&d->node);
    if (!a) continue;
    if (mi.assoc.count(a->name)) {
      error(d->loc, "Associated type " + a->name + " is defined twice");
      continue;
    }
    mi.assoc[a->name] = resolve_type(*a->type, *ctx, solver);
  }
  for (const auto& a : concept_info->assoc)
    if (!mi.assoc.count(a)) {
      error(loc, "Model " + head_text + " does not define associated type " + a);
      mi.assoc[a] = types::error_type();
    }

  Subst s;
  for (std::size_t i = 0; i < concept_info->params.size(); ++i)
    s[concept_info->params[i]] = mi.head[i];

  for (const auto& [l, r] : concept_info->same_types) {
    TypeRef a = solver.normalize(types::substitute(s, l));
    TypeRef b = solver.normalize(types::substitute(s, r));
    if (!solver.same(a, b))
      error(loc, "Same type requirement violated, " + types::to_string(a) +
                     " != " + types::to_string(b));
  }

  for (const ParentLink& p : concept_info->parents) {
    Constraint g = solver.normalize(
        types::model_constraint(p.concept_name, types::substitute(s, p.args)));
    mi.parents.push_back(satisfy(g, *ctx, solver, loc, "In model " + head_text, true));
  }

  // Member function signatures.
  struct Member {
    FunctionInfo* fi;
    FunDecl* decl;
    std::vector<types::Param> ps;
    bool used = false;
  };
  std::vector<Member> members;
  for (auto& d : m.members) {
    auto* f = std::get_if<FunDecl>(&d->node);
    if (!f) continue;
    if (!f->type_params.empty()) {
      error(d->loc, "Model member functions cannot have type parameters");
      continue;
    }
    std::vector<types::Param> ps;
    for (const auto& p : f->params) ps.push_back(resolve_param(p.type, *ctx, solver));
    types::Param r{f->ret ? resolve_type(*f->ret, *ctx, solver) : types::void_type(),
                   f->ret_mode};
    functions.emplace_back();
    FunctionInfo& fi = functions.back();
    fi.name = f->name;
    fi.type = types::fun({}, {}, ps, r);
    fi.decl = f;
    fi.owner = FunctionInfo::Owner::kModelMember;
    fi.model = &mi;
    fi.loc = d->loc;
    fi.has_body = f->body.has_value();
    if (!f->annot) f->annot = std::make_shared<FunAnnot>();
    f->annot->info = &fi;
    if (!f->body) error(d->loc, "Model member " + f->name + " needs a body");
    members.push_back(Member{&fi, f, ps});
  }

  auto ret_ok = [&](const types::Param& have, const types::Param& want, Conv* cv) {
    *cv = Conv{};
    if (want.type->is_void()) return true;
    if (want.mode == PassMode::kMutRef)
      return have.mode == PassMode::kMutRef && solver.same(have.type, want.type);
    return coercible(have.type, want.type, *ctx, solver, cv);
  };

  mi.members.resize(concept_info->ops.size());
  for (std::size_t i = 0; i < concept_info->ops.size(); ++i) {
    const ConceptOp& op = concept_info->ops[i];
    TypeRef req = solver.normalize(types::substitute(s, op.sig));
    MemberImpl& impl = mi.members[i];
    std::string req_text = fun_text(op.name, req);

    // A member definition.
    for (Member& mem : members) {
      if (mem.fi->name != op.name || mem.ps.size() != req->params.size()) continue;
      bool match = true;
      for (std::size_t k = 0; k < mem.ps.size() && match; ++k)
        match = mem.ps[k].mode == req->params[k].mode &&
                solver.same(mem.ps[k].type, req->params[k].type);
      if (!match) continue;
      mem.used = true;
      Conv cv;
      if (!ret_ok(mem.fi->type->ret, req->ret, &cv)) {
        error(mem.fi->loc, "Model member " + fun_text(op.name, mem.fi->type) +
                               " does not match requirement " + req_text);
      }
      impl.kind = MemberImpl::Kind::kCall;
      impl.target.kind = CallTarget::Kind::kFunction;
      impl.target.fn = mem.fi;
      impl.target.type = mem.fi->type;
      for (const auto& p : req->params) impl.args.push_back(ArgPass{p.mode, {}});
      impl.ret_conv = cv;
      break;
    }
    if (impl.kind != MemberImpl::Kind::kMissing) continue;

    std::vector<Arg> args;
    for (const auto& p : req->params) {
      Arg a;
      a.type = p.type;
      a.cat = p.mode == PassMode::kMutRef
                  ? Category::kMutLValue
                  : (p.mode == PassMode::kByValue ? Category::kRValue
                                                  : Category::kConstLValue);
      args.push_back(a);
    }
    std::string call = op.name + "(...)";
    auto try_cands = [&](std::vector<Cand> cands) {
      if (cands.empty()) return false;
      Resolution r = resolve(call, cands, args, loc, *ctx, solver, false);
      if (!r.ok) return false;
      Conv cv;
      if (!ret_ok(r.at.ret, req->ret, &cv)) return false;
      impl.kind = MemberImpl::Kind::kCall;
      impl.target = target_of(r);
      impl.args = r.at.passes;
      impl.ret_conv = cv;
      return true;
    };

    // An operation made available by the model's where clause.
    std::vector<Cand> sur;
    for (std::size_t k = 0; k < ctx->surrogates.size(); ++k)
      if (ctx->surrogates[k].name == op.name) {
        Cand c;
        c.kind = Cand::Kind::kSurrogate;
        c.surrogate = static_cast<int>(k);
        sur.push_back(c);
      }
    if (try_cands(sur)) continue;

    // A function in scope.
    std::vector<Cand> lex;
    for (const FunctionInfo* f : visible_functions(scope, op.name)) {
      Cand c;
      c.kind = Cand::Kind::kFunction;
      c.fn = f;
      lex.push_back(c);
    }
    if (op.name == "operator=" && req->params.size() == 2) {
      Cand c;
      c.kind = Cand::Kind::kBuiltinAssign;
      lex.push_back(c);
    }
    if (try_cands(lex)) continue;

    if (op.default_fn) {
      impl.kind = MemberImpl::Kind::kDefault;
      impl.default_fn = op.default_fn;
      continue;
    }
    error(loc, "Model " + head_text + " does not satisfy the requirement " +
                   req_text);
  }
  for (const Member& mem : members)
    if (!mem.used)
      error(mem.fi->loc, mem.fi->name + " is not an operation of concept " +
                             concept_info->name);

  scope->rules.push_back(&mi);
  if (scope->in_private) scope->private_rules.insert(&mi);

  for (Member& mem : members) {
    if (!mem.decl->body) continue;
    ++stats.bodies_checked;
    if (!mi.params.empty()) ++stats.generic_bodies_checked;
    check_fun_body(*mem.fi, *mem.decl->body, *ctx, solver, mem.decl->params,
                   mem.ps);
  }

  if (concept_info->name == "DefaultConstructible" && mi.head.size() == 1)
    mi.default_plan = default_plan(mi.head[0], *ctx, solver, loc, true);
}

}  // namespace g::sema
