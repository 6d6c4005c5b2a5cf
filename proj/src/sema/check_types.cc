#include <variant>

#include "checker_impl.h"

namespace g::sema {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string location_text(const SourceLocation& loc) {
  return loc.filename() + ":" + std::to_string(loc.line);
}

void CheckerImpl::error(const SourceLocation& loc, const std::string& msg,
                        const std::string& goal) {
  sink.error(loc, msg, goal);
}

ClassInfo* CheckerImpl::find_class(ScopeInfo* scope, const std::string& name) {
  for (ScopeInfo* s = scope; s; s = s->parent) {
    auto it = s->classes.find(name);
    if (it != s->classes.end()) return it->second;
    for (ScopeInfo* o : s->opened) {
      auto jt = o->classes.find(name);
      if (jt != o->classes.end() && !o->private_names.count(name))
        return jt->second;
    }
  }
  return nullptr;
}

const TypeRef* CheckerImpl::find_alias(ScopeInfo* scope,
                                       const std::string& name) {
  for (ScopeInfo* s = scope; s; s = s->parent) {
    auto it = s->type_aliases.find(name);
    if (it != s->type_aliases.end()) return &it->second;
    for (ScopeInfo* o : s->opened) {
      auto jt = o->type_aliases.find(name);
      if (jt != o->type_aliases.end() && !o->private_names.count(name))
        return &jt->second;
    }
  }
  return nullptr;
}

TypeRef CheckerImpl::lookup_assoc(const std::string& name, Context& ctx,
                                  Solver& solver) {
  if (const ModelInfo* m = ctx.in_model) {
    auto it = m->assoc.find(name);
    if (it != m->assoc.end()) return it->second;
    TypeRef p = canonical_proj(reg, m->concept_name, m->head, name);
    if (p) return solver.normalize(p);
  }
  if (const ConceptInfo* c = ctx.in_concept) {
    std::vector<TypeRef> args;
    for (const auto& p : c->params) args.push_back(types::var(p));
    TypeRef p = canonical_proj(reg, c->name, args, name);
    if (p) return p;
  }
  return nullptr;
}

bool CheckerImpl::check_class_use(const ClassInfo& cls,
                                  const std::vector<TypeRef>& args,
                                  Context& ctx, Solver& solver,
                                  const SourceLocation& loc,
                                  std::vector<WitnessPtr>* witnesses,
                                  bool report) {
  for (TypeRef a : args)
    if (types::contains_error(a)) return false;
  Subst s;
  for (std::size_t i = 0; i < cls.params.size() && i < args.size(); ++i)
    s[cls.params[i]] = args[i];
  std::string text = types::to_string(types::ctor(cls.name, args));
  bool ok = true;
  for (const Constraint& c : cls.where) {
    Constraint g = solver.normalize(types::substitute(s, c));
    if (g.same_type) {
      if (!solver.same(g.args[0], g.args[1])) {
        if (report)
          error(loc, "Same type requirement violated, " +
                         types::to_string(g.args[0]) + " != " +
                         types::to_string(g.args[1]));
        ok = false;
      }
      continue;
    }
    WitnessPtr w = satisfy(g, ctx, solver, loc, "In type " + text, report);
    if (!w) {
      ok = false;
      continue;
    }
    if (witnesses) witnesses->push_back(w);
  }
  return ok;
}

std::string CheckerImpl::missing_model_text(const std::string& application,
                                            const SolveResult& r) {
  if (r.status == SolveResult::Status::kNoModel && !r.message.empty())
    return r.message;
  if (r.status == SolveResult::Status::kNoModel)
    return application + ",\nModel " + types::to_string(r.failed) +
           "\nneeded to satisfy requirement, but it is not defined.";
  return application + ",\n" + r.message;
}

WitnessPtr CheckerImpl::satisfy(const Constraint& goal, Context& ctx,
                                Solver& solver, const SourceLocation& loc,
                                const std::string& where_text, bool report) {
  for (TypeRef a : goal.args)
    if (types::contains_error(a)) return nullptr;
  long before = solver.lookups();
  SolveResult r = solver.satisfy(goal);
  stats.solver_lookups += solver.lookups() - before;
  if (r.ok()) {
    if (r.witness->kind == Witness::Kind::kRule && !ctx.type_params.empty()) {
      std::set<std::string> fv;
      for (TypeRef a : goal.args) types::free_vars(a, fv);
      for (const auto& p : ctx.type_params)
        if (fv.count(p)) {
          ++stats.generic_rule_uses;
          break;
        }
    }
    return r.witness;
  }
  if (report) error(loc, missing_model_text(where_text, r), types::to_string(r.failed));
  return nullptr;
}

std::optional<Constraint> CheckerImpl::resolve_model_constraint(
    const std::string& concept_name,
    const std::vector<syntax::TypeExprPtr>& args, const SourceLocation& loc,
    Context& ctx, Solver& solver, bool check_wf) {
  const ConceptInfo* c = reg.find_concept(concept_name);
  if (!c) {
    error(loc, "Unknown concept " + concept_name);
    return std::nullopt;
  }
  std::vector<TypeRef> ts;
  for (const auto& a : args) ts.push_back(resolve_type(*a, ctx, solver, check_wf));
  if (ts.size() != c->params.size()) {
    error(loc, "Concept " + concept_name + " expects " +
                   std::to_string(c->params.size()) + " type arguments, got " +
                   std::to_string(ts.size()));
    return std::nullopt;
  }
  return types::model_constraint(concept_name, ts);
}

std::vector<Constraint> CheckerImpl::resolve_where(
    const std::vector<syntax::Constraint>& where, Context& ctx, Solver& solver,
    bool check_wf) {
  std::vector<Constraint> out;
  for (const auto& c : where) {
    if (const auto* mc = std::get_if<syntax::ModelConstraint>(&c.node)) {
      auto r = resolve_model_constraint(mc->concept_name, mc->args, c.loc, ctx,
                                        solver, check_wf);
      if (r) out.push_back(*r);
    } else {
      const auto& st = std::get<syntax::SameTypeConstraint>(c.node);
      TypeRef a = resolve_type(*st.lhs, ctx, solver, check_wf);
      TypeRef b = resolve_type(*st.rhs, ctx, solver, check_wf);
      out.push_back(types::same_type_constraint(a, b));
    }
  }
  return out;
}

types::Param CheckerImpl::resolve_param(const syntax::ParamType& p,
                                        Context& ctx, Solver& solver,
                                        bool check_wf) {
  return types::Param{resolve_type(*p.type, ctx, solver, check_wf), p.mode};
}

TypeRef CheckerImpl::resolve_type(const syntax::TypeExpr& t, Context& ctx,
                                  Solver& solver, bool check_wf) {
  using namespace syntax;
  return std::visit(
      overloaded{
          [&](const NamedType& n) -> TypeRef {
            for (auto it = ctx.aliases.rbegin(); it != ctx.aliases.rend(); ++it) {
              auto f = it->find(n.name);
              if (f != it->end()) return f->second;
            }
            if (ctx.is_type_param(n.name)) return types::var(n.name);
            if (TypeRef a = lookup_assoc(n.name, ctx, solver)) return a;
            if (n.name == "int") return types::int_type();
            if (n.name == "bool") return types::bool_type();
            if (n.name == "char") return types::char_type();
            if (n.name == "float") return types::float_type();
            if (n.name == "double") return types::double_type();
            if (n.name == "void") return types::void_type();
            if (const TypeRef* a = find_alias(ctx.scope, n.name)) return *a;
            if (ClassInfo* c = find_class(ctx.scope, n.name)) {
              if (!c->params.empty()) {
                error(t.loc, "Class " + n.name + " expects " +
                                 std::to_string(c->params.size()) +
                                 " type arguments");
                return types::error_type();
              }
              if (check_wf) check_class_use(*c, {}, ctx, solver, t.loc, nullptr, true);
              return types::ctor(n.name, {});
            }
            error(t.loc, "Unknown type " + n.name);
            return types::error_type();
          },
          [&](const AppliedType& a) -> TypeRef {
            ClassInfo* c = find_class(ctx.scope, a.name);
            if (!c) {
              error(t.loc, "Unknown class " + a.name);
              return types::error_type();
            }
            std::vector<TypeRef> args;
            for (const auto& x : a.args)
              args.push_back(resolve_type(*x, ctx, solver, check_wf));
            if (args.size() != c->params.size()) {
              error(t.loc, "Class " + a.name + " expects " +
                               std::to_string(c->params.size()) +
                               " type arguments, got " +
                               std::to_string(args.size()));
              return types::error_type();
            }
            if (check_wf) check_class_use(*c, args, ctx, solver, t.loc, nullptr, true);
            return types::ctor(a.name, args);
          },
          [&](const PointerType& p) -> TypeRef {
            TypeRef inner = resolve_type(*p.pointee, ctx, solver, check_wf);
            if (inner->is_error()) return inner;
            return types::pointer(inner);
          },
          [&](const FunType& f) -> TypeRef {
            auto saved = ctx.type_params;
            for (const auto& q : f.type_params) ctx.type_params.push_back(q);
            bool wf = check_wf && f.type_params.empty();
            std::vector<Constraint> cs = resolve_where(f.where, ctx, solver, wf);
            std::vector<types::Param> ps;
            for (const auto& p : f.params) ps.push_back(resolve_param(p, ctx, solver, wf));
            types::Param r{f.ret ? resolve_type(*f.ret, ctx, solver, wf)
                                 : types::void_type(),
                           f.ret_mode};
            ctx.type_params = saved;
            return types::fun(f.type_params, cs, ps, r);
          },
          [&](const ProjectionType& p) -> TypeRef {
            const ConceptInfo* c = reg.find_concept(p.concept_name);
            if (!c) {
              error(t.loc, "Unknown concept " + p.concept_name);
              return types::error_type();
            }
            std::vector<TypeRef> args;
            for (const auto& x : p.args)
              args.push_back(resolve_type(*x, ctx, solver, check_wf));
            if (args.size() != c->params.size()) {
              error(t.loc, "Concept " + p.concept_name + " expects " +
                               std::to_string(c->params.size()) +
                               " type arguments");
              return types::error_type();
            }
            if (p.path.size() != 1) {
              error(t.loc, "Nested associated type paths are not supported");
              return types::error_type();
            }
            TypeRef r = canonical_proj(reg, p.concept_name, args, p.path[0]);
            if (!r) {
              error(t.loc, p.path[0] + " is not an associated type of " +
                               p.concept_name);
              return types::error_type();
            }
            return solver.normalize(r);
          },
      },
      t.node);
}

}  // namespace g::sema
