#include <algorithm>
#include <sstream>

#include "checker_impl.h"

namespace g::sema {

using types::Kind;

namespace {

// Lower-bound unifier for type argument deduction. Each flexible variable
// has an optional fixed binding (from invariant positions) and an optional
// lower bound (from argument positions, raised along the coercion order).
class Deducer {
 public:
  Deducer(CheckerImpl& ck, Context& ctx, Solver& solver)
      : ck_(ck), ctx_(ctx), solver_(solver) {}

  void add_var(const std::string& v) {
    if (!entries_.count(v)) {
      entries_[v];
      order_.push_back(v);
    }
  }

  bool is_flex(TypeRef t) const {
    return t->is_var() && entries_.count(t->name);
  }

  bool has_flex(TypeRef t) const {
    std::set<std::string> fv = types::free_vars(t);
    for (const auto& v : fv)
      if (entries_.count(v)) return true;
    return false;
  }

  bool proj_has_flex(TypeRef t) const {
    if (t->is_proj()) return has_flex(t);
    for (TypeRef a : t->args)
      if (proj_has_flex(a)) return true;
    if (t->is_fun()) {
      for (const auto& p : t->params)
        if (proj_has_flex(p.type)) return true;
      if (proj_has_flex(t->ret.type)) return true;
    }
    return false;
  }

  TypeRef resolve(TypeRef t) const {
    for (int round = 0; round < 16 && has_flex(t); ++round) {
      Subst s;
      for (const auto& [v, e] : entries_)
        if (e.fixed) s[v] = e.fixed;
      if (s.empty()) break;
      TypeRef n = types::substitute(s, t);
      if (n == t) break;
      t = n;
    }
    return t;
  }

  // Substitutes the best current guess (fixed, else lower bound).
  TypeRef current(TypeRef t) const {
    for (int round = 0; round < 16 && has_flex(t); ++round) {
      Subst s;
      for (const auto& [v, e] : entries_) {
        if (e.fixed)
          s[v] = e.fixed;
        else if (e.lb)
          s[v] = e.lb;
      }
      if (s.empty()) break;
      TypeRef n = types::substitute(s, t);
      if (n == t) break;
      t = n;
    }
    return t;
  }

  bool fail(const std::string& msg) {
    if (error.empty()) error = msg;
    return false;
  }

  bool mismatch(TypeRef a, TypeRef p) {
    return fail("Type (" + types::to_string(a) + ") does not match type (" +
                types::to_string(p) + ")");
  }

  TypeRef lub(TypeRef a, TypeRef b) {
    if (solver_.same(a, b)) return a;
    TypeRef ra = ctx_.graph.representative(solver_.normalize(a));
    TypeRef rb = ctx_.graph.representative(solver_.normalize(b));
    if (types::is_numeric(ra) && types::is_numeric(rb)) {
      if (ra->base == types::Base::kInt) return rb;
      if (rb->base == types::Base::kInt) return ra;
    }
    return nullptr;
  }

  bool lower(TypeRef a, TypeRef p) {
    p = resolve(p);
    if (!has_flex(p)) return true;
    if (is_flex(p)) {
      Entry& e = entries_[p->name];
      if (e.fixed) {
        if (is_flex(e.fixed)) return lower(a, e.fixed);
        return true;
      }
      if (!e.lb) {
        e.lb = a;
        return true;
      }
      TypeRef l = lub(e.lb, a);
      if (!l)
        return fail("Incomparable lower bounds " + types::to_string(e.lb) +
                    " and " + types::to_string(a) + " for type parameter " +
                    types::display_name(p->name));
      e.lb = l;
      return true;
    }
    if (p->is_proj()) return true;
    TypeRef an = solver_.normalize(a);
    if (p->is_fun()) {
      TypeRef af = ctx_.graph.find_with_head(an, "", 0, true);
      if (!af) return mismatch(a, p);
      if (af->is_poly_fun() && !p->is_poly_fun()) {
        Subst inst;
        std::vector<Constraint> cs;
        TypeRef m = types::instantiate_fresh(af, &inst, &cs);
        for (const auto& [q, v] : inst) add_var(v->name);
        return eq(m, p) || mismatch(a, p);
      }
      return eq(af, p) || mismatch(a, p);
    }
    if (p->kind == Kind::kCtor) {
      TypeRef ac = ctx_.graph.find_with_head(an, p->name, p->args.size(), false);
      if (!ac) return mismatch(a, p);
      for (std::size_t i = 0; i < p->args.size(); ++i)
        if (!eq(ac->args[i], p->args[i])) return mismatch(a, p);
      return true;
    }
    return mismatch(a, p);
  }

  bool eq(TypeRef a, TypeRef b) {
    a = resolve(a);
    b = resolve(b);
    if (a == b) return true;
    if (is_flex(a)) return bind(a, b);
    if (is_flex(b)) return bind(b, a);
    bool fa = has_flex(a);
    bool fb = has_flex(b);
    if (!fa && !fb) return solver_.same(a, b);
    if ((a->is_proj() && fa) || (b->is_proj() && fb)) {
      pending_.emplace_back(a, b);
      return true;
    }
    if (!fa) std::swap(a, b), std::swap(fa, fb);
    // a has flexible variables; look in b's class for a matching head.
    if (!fb) {
      TypeRef bn = solver_.normalize(b);
      TypeRef m = a->is_fun()
                      ? ctx_.graph.find_with_head(bn, "", 0, true)
                      : (a->kind == Kind::kCtor
                             ? ctx_.graph.find_with_head(bn, a->name,
                                                         a->args.size(), false)
                             : nullptr);
      if (!m) return false;
      b = m;
    }
    if (a->kind == Kind::kCtor && b->kind == Kind::kCtor) {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!eq(a->args[i], b->args[i])) return false;
      return true;
    }
    if (a->is_fun() && b->is_fun()) {
      TypeRef ac = types::alpha_canonical(a);
      TypeRef bc = types::alpha_canonical(b);
      if (ac->quantifiers != bc->quantifiers ||
          ac->params.size() != bc->params.size() ||
          ac->constraints.size() != bc->constraints.size() ||
          ac->ret.mode != bc->ret.mode)
        return false;
      for (std::size_t i = 0; i < ac->params.size(); ++i) {
        if (ac->params[i].mode != bc->params[i].mode) return false;
        if (!eq(ac->params[i].type, bc->params[i].type)) return false;
      }
      for (std::size_t i = 0; i < ac->constraints.size(); ++i) {
        const auto& x = ac->constraints[i];
        const auto& y = bc->constraints[i];
        if (x.same_type != y.same_type || x.concept_name != y.concept_name ||
            x.args.size() != y.args.size())
          return false;
        for (std::size_t k = 0; k < x.args.size(); ++k)
          if (!eq(x.args[k], y.args[k])) return false;
      }
      return eq(ac->ret.type, bc->ret.type);
    }
    return false;
  }

  bool bind(TypeRef v, TypeRef t) {
    if (t == v) return true;
    TypeRef rt = resolve(t);
    if (rt == v) return true;
    if (types::occurs(v->name, rt)) return false;
    Entry& e = entries_[v->name];
    if (e.fixed) return eq(e.fixed, t);
    e.fixed = t;
    return true;
  }

  bool finish(Subst& out) {
    Subst s;
    for (const auto& v : order_) {
      const Entry& e = entries_[v];
      if (e.fixed)
        s[v] = e.fixed;
      else if (e.lb)
        s[v] = e.lb;
    }
    for (int round = 0; round < 32; ++round) {
      bool changed = false;
      for (auto& [v, t] : s) {
        TypeRef n = types::substitute(s, t);
        if (n != t) {
          t = n;
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (const auto& v : order_) {
      auto it = s.find(v);
      if (it == s.end() || has_flex(it->second))
        return fail("Cannot deduce type argument " + types::display_name(v));
    }
    for (const auto& v : order_) {
      const Entry& e = entries_[v];
      if (e.fixed && e.lb) {
        TypeRef lb = solver_.normalize(types::substitute(s, e.lb));
        TypeRef fx = solver_.normalize(s[v]);
        Conv c;
        if (!ck_.coercible(lb, fx, ctx_, solver_, &c)) return mismatch(lb, fx);
      }
    }
    for (const auto& [a, b] : pending_) {
      TypeRef x = solver_.normalize(types::substitute(s, a));
      TypeRef y = solver_.normalize(types::substitute(s, b));
      if (!solver_.same(x, y)) return mismatch(x, y);
    }
    out = s;
    return true;
  }

  std::string error;

 private:
  struct Entry {
    TypeRef fixed = nullptr;
    TypeRef lb = nullptr;
  };
  CheckerImpl& ck_;
  Context& ctx_;
  Solver& solver_;
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
  std::vector<std::pair<TypeRef, TypeRef>> pending_;
};

Category category_for(syntax::PassMode m) {
  return m == syntax::PassMode::kMutRef ? Category::kMutLValue
                                        : Category::kConstLValue;
}

}  // namespace

std::vector<const FunctionInfo*> CheckerImpl::visible_functions(
    ScopeInfo* scope, const std::string& name) {
  std::vector<const FunctionInfo*> out;
  std::set<const FunctionInfo*> seen;
  for (ScopeInfo* s = scope; s; s = s->parent) {
    auto it = s->funs.find(name);
    if (it != s->funs.end())
      for (const FunctionInfo* f : it->second)
        if (seen.insert(f).second) out.push_back(f);
    for (ScopeInfo* o : s->opened) {
      if (o->private_names.count(name)) continue;
      auto jt = o->funs.find(name);
      if (jt != o->funs.end())
        for (const FunctionInfo* f : jt->second)
          if (seen.insert(f).second) out.push_back(f);
    }
  }
  return out;
}

bool CheckerImpl::coercible(TypeRef from, TypeRef to, Context& ctx,
                            Solver& solver, Conv* conv) {
  *conv = Conv{};
  if (!from || !to) return false;
  if (types::contains_error(from) || types::contains_error(to)) return true;
  if (solver.same(from, to)) return true;
  TypeRef f = ctx.graph.representative(solver.normalize(from));
  TypeRef t = ctx.graph.representative(solver.normalize(to));
  if (types::is_numeric(f) && types::is_numeric(t)) {
    using B = types::Base;
    bool ok = (f->base == B::kInt &&
               (t->base == B::kFloat || t->base == B::kDouble)) ||
              (f->base == B::kFloat && t->base == B::kDouble) ||
              (f->base == B::kDouble && t->base == B::kFloat);
    if (ok) {
      conv->kind = Conv::Kind::kNumeric;
      conv->to = t->base;
      return true;
    }
    return false;
  }
  TypeRef ff = ctx.graph.find_with_head(solver.normalize(from), "", 0, true);
  TypeRef tf = ctx.graph.find_with_head(solver.normalize(to), "", 0, true);
  if (ff && tf && ff->is_poly_fun()) {
    Subst inst;
    std::vector<Constraint> cs;
    TypeRef m = types::instantiate_fresh(ff, &inst, &cs);
    Deducer d(*this, ctx, solver);
    for (const auto& [q, v] : inst) d.add_var(v->name);
    if (!d.eq(m, tf)) return false;
    Subst theta;
    if (!d.finish(theta)) return false;
    Conv c;
    c.kind = Conv::Kind::kInst;
    for (const Constraint& k : cs) {
      Constraint g = solver.normalize(types::substitute(theta, k));
      if (g.same_type) {
        if (!solver.same(g.args[0], g.args[1])) return false;
        continue;
      }
      SolveResult r = solver.satisfy(g);
      if (!r.ok()) return false;
      c.witnesses.push_back(r.witness);
    }
    *conv = c;
    return true;
  }
  return false;
}

TypeRef CheckerImpl::cand_type(const Cand& c, Context& ctx) const {
  switch (c.kind) {
    case Cand::Kind::kFunction: return c.type ? c.type : c.fn->type;
    case Cand::Kind::kSurrogate: return ctx.surrogates[c.surrogate].sig;
    case Cand::Kind::kValue: return c.type;
    case Cand::Kind::kBuiltinAssign: return nullptr;
  }
  return nullptr;
}

std::string CheckerImpl::describe_cand(const Cand& c, Context& ctx) const {
  switch (c.kind) {
    case Cand::Kind::kFunction:
      return c.fn->name + " " + types::to_string(c.fn->type) + " (" +
             location_text(c.fn->loc) + ")";
    case Cand::Kind::kSurrogate: {
      const Surrogate& s = ctx.surrogates[c.surrogate];
      return s.name + " " + types::to_string(s.sig) + " (from " +
             types::to_string(ctx.facts[s.fact].c) + ")";
    }
    case Cand::Kind::kValue:
      return "value of type " + types::to_string(c.type);
    case Cand::Kind::kBuiltinAssign:
      return "built-in assignment";
  }
  return "?";
}

bool CheckerImpl::is_concrete_for_assign(TypeRef t, Context& ctx,
                                         Solver& solver) {
  if (types::contains_error(t)) return true;
  TypeRef n = solver.normalize(t);
  for (TypeRef m : ctx.graph.class_of(n)) {
    if (m->is_base() && !m->is_void()) return true;
    if (m->kind == Kind::kCtor || m->is_fun()) return true;
  }
  return false;
}

Attempt CheckerImpl::attempt(const Cand& c, const std::vector<Arg>& args,
                             Context& ctx, Solver& solver,
                             const std::string& call_text) {
  Attempt at;
  auto fail = [&](Attempt::Fail f, const std::string& msg) {
    at.ok = false;
    at.fail = f;
    at.message = msg;
    return at;
  };

  if (c.kind == Cand::Kind::kBuiltinAssign) {
    if (args.size() != 2) return fail(Attempt::Fail::kArity, "assignment");
    if (!args[0].type || !args[1].type)
      return fail(Attempt::Fail::kMismatch, "Cannot assign an overloaded function");
    if (!is_concrete_for_assign(args[0].type, ctx, solver))
      return fail(Attempt::Fail::kMismatch,
                  "No assignment operator for type " +
                      types::to_string(args[0].type));
    if (args[0].cat != Category::kMutLValue)
      return fail(Attempt::Fail::kMismatch,
                  "Cannot assign to a read-only value in " + call_text);
    Conv cv;
    if (!coercible(args[1].type, args[0].type, ctx, solver, &cv))
      return fail(Attempt::Fail::kMismatch,
                  "Type (" + types::to_string(args[1].type) +
                      ") does not match type (" +
                      types::to_string(args[0].type) + ")");
    at.ok = true;
    at.params = {args[0].type, args[0].type};
    at.passes = {ArgPass{syntax::PassMode::kMutRef, {}},
                 ArgPass{syntax::PassMode::kConstRef, cv}};
    at.exact = cv.kind != Conv::Kind::kNumeric;
    at.ret = types::Param{args[0].type, syntax::PassMode::kMutRef};
    return at;
  }

  TypeRef F = cand_type(c, ctx);
  if (!F || !F->is_fun()) {
    if (F && types::contains_error(F)) return fail(Attempt::Fail::kMismatch, "");
    return fail(Attempt::Fail::kMismatch,
                "Expression of type " + (F ? types::to_string(F) : "?") +
                    " is not a function");
  }
  if (F->params.size() != args.size())
    return fail(Attempt::Fail::kArity,
                "Function " + call_text + " expects " +
                    std::to_string(F->params.size()) + " arguments");

  Subst inst;
  std::vector<Constraint> cs;
  TypeRef mono = F;
  if (F->is_poly_fun())
    mono = types::instantiate_fresh(F, &inst, &cs);
  else
    cs = F->constraints;

  Deducer d(*this, ctx, solver);
  for (const auto& q : F->quantifiers) d.add_var(inst[q]->name);

  std::vector<std::size_t> sets;
  std::vector<std::size_t> projs;
  for (std::size_t i = 0; i < args.size(); ++i) {
    TypeRef p = mono->params[i].type;
    if (!args[i].type) {
      sets.push_back(i);
      continue;
    }
    if (d.proj_has_flex(p)) {
      projs.push_back(i);
      continue;
    }
    if (!d.lower(args[i].type, p))
      return fail(Attempt::Fail::kMismatch, d.error);
  }
  for (std::size_t i : projs) {
    TypeRef p = solver.normalize(d.current(mono->params[i].type));
    if (!d.lower(args[i].type, p)) return fail(Attempt::Fail::kMismatch, d.error);
  }
  Subst theta;
  if (!d.finish(theta)) {
    Attempt::Fail f = d.error.rfind("Cannot deduce", 0) == 0
                          ? Attempt::Fail::kDeduce
                          : Attempt::Fail::kMismatch;
    return fail(f, d.error + (f == Attempt::Fail::kDeduce
                                  ? " in application " + call_text
                                  : std::string()));
  }

  std::vector<TypeRef> arg_types;
  at.chosen.assign(args.size(), nullptr);
  for (std::size_t i = 0; i < args.size(); ++i) {
    arg_types.push_back(args[i].type);
    if (args[i].type) continue;
    TypeRef P =
        solver.normalize(types::substitute(theta, mono->params[i].type));
    if (d.has_flex(P))
      return fail(Attempt::Fail::kDeduce,
                  "Cannot resolve overloaded function argument in " + call_text);
    const FunctionInfo* pick = nullptr;
    int count = 0;
    for (const FunctionInfo* o : args[i].overloads) {
      Conv cv;
      if (coercible(o->type, P, ctx, solver, &cv)) {
        pick = o;
        ++count;
      }
    }
    if (count != 1)
      return fail(Attempt::Fail::kMismatch,
                  "Cannot resolve overloaded function argument in " + call_text);
    at.chosen[i] = pick;
    arg_types[i] = pick->type;
  }

  at.exact = true;
  for (std::size_t i = 0; i < args.size(); ++i) {
    TypeRef P =
        solver.normalize(types::substitute(theta, mono->params[i].type));
    at.params.push_back(P);
    syntax::PassMode mode = mono->params[i].mode;
    if (mode == syntax::PassMode::kMutRef) {
      if (args[i].cat != Category::kMutLValue)
        return fail(Attempt::Fail::kMismatch,
                    "Argument " + std::to_string(i + 1) + " of " + call_text +
                        " must be a mutable lvalue of type " +
                        types::to_string(P));
      if (!solver.same(arg_types[i], P))
        return fail(Attempt::Fail::kMismatch,
                    "Type (" + types::to_string(arg_types[i]) +
                        ") does not match type (" + types::to_string(P) + ")");
      at.passes.push_back(ArgPass{mode, {}});
      continue;
    }
    Conv cv;
    if (!coercible(arg_types[i], P, ctx, solver, &cv))
      return fail(Attempt::Fail::kMismatch,
                  "Type (" + types::to_string(arg_types[i]) +
                      ") does not match type (" + types::to_string(P) + ")");
    if (cv.kind == Conv::Kind::kNumeric) at.exact = false;
    at.passes.push_back(ArgPass{mode, cv});
  }
  at.ret = types::Param{
      solver.normalize(types::substitute(theta, mono->ret.type)),
      mono->ret.mode};

  for (const Constraint& k : cs) {
    Constraint g = solver.normalize(types::substitute(theta, k));
    if (g.same_type) {
      if (!solver.same(g.args[0], g.args[1]))
        return fail(Attempt::Fail::kConstraint,
                    "Same type requirement violated, " +
                        types::to_string(g.args[0]) + " != " +
                        types::to_string(g.args[1]));
      continue;
    }
    SolveResult r = solver.satisfy(g);
    if (!r.ok()) {
      at.goal = types::to_string(r.failed);
      return fail(Attempt::Fail::kConstraint,
                  missing_model_text("In application " + call_text, r));
    }
    if (r.witness->kind == Witness::Kind::kRule && !ctx.type_params.empty()) {
      std::set<std::string> fv;
      for (TypeRef a : g.args) types::free_vars(a, fv);
      for (const auto& p : ctx.type_params)
        if (fv.count(p)) {
          ++stats.generic_rule_uses;
          break;
        }
    }
    at.witnesses.push_back(r.witness);
  }

  if (c.kind == Cand::Kind::kSurrogate) {
    const Surrogate& s = ctx.surrogates[c.surrogate];
    const Fact& f = ctx.facts[s.fact];
    auto w = std::make_shared<Witness>();
    w->kind = Witness::Kind::kFact;
    w->root = f.root;
    w->path = f.path;
    w->goal = f.c;
    at.witnesses = {w};
    at.op = s.op;
  }

  for (const auto& q : F->quantifiers)
    at.theta[q] = solver.normalize(types::substitute(theta, inst[q]));
  at.ok = true;
  return at;
}

bool CheckerImpl::callable_from(const Cand& g, const Cand& f, Context& ctx) {
  TypeRef Ff = cand_type(f, ctx);
  if (!Ff || !Ff->is_fun()) return true;
  Context hyp = ctx;
  SolverOptions quiet = opts.solver;
  quiet.trace = nullptr;
  Solver s(reg, hyp, quiet);
  Subst inst;
  std::vector<Constraint> cs;
  TypeRef m = Ff;
  if (Ff->is_poly_fun())
    m = types::instantiate_fresh(Ff, &inst, &cs);
  else
    cs = Ff->constraints;
  add_where(reg, hyp, cs, &s);
  std::vector<Arg> args;
  for (const auto& p : m->params) {
    Arg a;
    a.type = p.type;
    a.cat = category_for(p.mode);
    args.push_back(a);
  }
  int saved = stats.generic_rule_uses;
  Attempt at = attempt(g, args, hyp, s, "");
  stats.generic_rule_uses = saved;
  return at.ok;
}

CallTarget CheckerImpl::target_of(const Resolution& r) const {
  CallTarget t;
  switch (r.cand.kind) {
    case Cand::Kind::kFunction:
      t.kind = CallTarget::Kind::kFunction;
      t.fn = r.cand.fn;
      t.witnesses = r.at.witnesses;
      break;
    case Cand::Kind::kSurrogate:
      t.kind = CallTarget::Kind::kDictOp;
      t.dict = r.at.witnesses.at(0);
      t.op = r.at.op;
      break;
    case Cand::Kind::kValue:
      t.kind = CallTarget::Kind::kValue;
      t.witnesses = r.at.witnesses;
      break;
    case Cand::Kind::kBuiltinAssign:
      t.kind = CallTarget::Kind::kBuiltinAssign;
      break;
  }
  std::vector<types::Param> ps;
  for (std::size_t i = 0; i < r.at.params.size(); ++i)
    ps.push_back(types::Param{r.at.params[i], r.at.passes[i].mode});
  if (r.at.ret.type) t.type = types::mono_fun(ps, r.at.ret);
  return t;
}

Resolution CheckerImpl::resolve(const std::string& call_text,
                                std::vector<Cand> cands, std::vector<Arg>& args,
                                const SourceLocation& loc, Context& ctx,
                                Solver& solver, bool report) {
  Resolution res;
  std::vector<std::pair<Cand, Attempt>> tried;
  for (const Cand& c : cands) tried.emplace_back(c, attempt(c, args, ctx, solver, call_text));

  std::vector<std::size_t> viable;
  for (std::size_t i = 0; i < tried.size(); ++i)
    if (tried[i].second.ok) viable.push_back(i);

  if (viable.empty()) {
    if (!report) return res;
    std::vector<std::size_t> arity_ok;
    for (std::size_t i = 0; i < tried.size(); ++i)
      if (tried[i].second.fail != Attempt::Fail::kArity) arity_ok.push_back(i);
    if (cands.empty()) {
      error(loc, "No function matches the application " + call_text);
    } else if (arity_ok.size() == 1) {
      const Attempt& a = tried[arity_ok[0]].second;
      if (!a.message.empty()) error(loc, a.message, a.goal);
    } else if (arity_ok.empty()) {
      error(loc, "No overload accepts " + std::to_string(args.size()) +
                     " arguments in application " + call_text);
    } else {
      std::vector<std::size_t> constrained;
      for (std::size_t i : arity_ok)
        if (tried[i].second.fail == Attempt::Fail::kConstraint)
          constrained.push_back(i);
      if (constrained.size() == 1) {
        const Attempt& a = tried[constrained[0]].second;
        error(loc, a.message, a.goal);
      } else {
        std::string msg = "No viable overload in application " + call_text +
                          "; candidates are:";
        for (std::size_t i : arity_ok)
          msg += "\n  " + describe_cand(tried[i].first, ctx);
        error(loc, msg);
      }
    }
    return res;
  }

  std::vector<std::size_t> pool;
  for (std::size_t i : viable)
    if (tried[i].second.exact) pool.push_back(i);
  if (pool.empty()) pool = viable;

  bool any_user = false;
  for (std::size_t i : pool) any_user = any_user || !tried[i].first.intrinsic();
  if (any_user) {
    std::vector<std::size_t> users;
    for (std::size_t i : pool)
      if (!tried[i].first.intrinsic()) users.push_back(i);
    pool = users;
  } else if (pool.size() > 1) {
    // Usual arithmetic conversions among built-in numeric operators.
    bool numeric = !args.empty();
    types::Base common = types::Base::kInt;
    for (const Arg& a : args) {
      if (!a.type) {
        numeric = false;
        break;
      }
      TypeRef r = ctx.graph.representative(solver.normalize(a.type));
      if (!types::is_numeric(r)) {
        numeric = false;
        break;
      }
      if (r->base == types::Base::kDouble) common = types::Base::kDouble;
      if (r->base == types::Base::kFloat && common == types::Base::kInt)
        common = types::Base::kFloat;
    }
    if (numeric) {
      std::vector<std::size_t> keep;
      for (std::size_t i : pool) {
        bool all = true;
        for (TypeRef p : tried[i].second.params)
          all = all && p->is_base(common);
        if (all) keep.push_back(i);
      }
      if (keep.size() == 1) pool = keep;
    }
  }

  std::vector<std::size_t> best;
  if (pool.size() == 1) {
    best = pool;
  } else {
    std::map<std::pair<std::size_t, std::size_t>, bool> cf;
    auto callable = [&](std::size_t g, std::size_t f) {
      auto key = std::make_pair(g, f);
      auto it = cf.find(key);
      if (it != cf.end()) return it->second;
      bool v = callable_from(tried[g].first, tried[f].first, ctx);
      cf[key] = v;
      return v;
    };
    for (std::size_t i : pool) {
      bool dom = true;
      for (std::size_t j : pool) {
        if (i == j) continue;
        if (!(callable(j, i) && !callable(i, j))) {
          dom = false;
          break;
        }
      }
      if (dom) best.push_back(i);
    }
    if (best.size() != 1) {
      // Prefer binding mutable lvalues to mutable reference parameters.
      std::vector<std::size_t> tie = pool;
      auto score = [&](std::size_t i, std::size_t k) {
        return args[k].cat == Category::kMutLValue &&
               tried[i].second.passes[k].mode == syntax::PassMode::kMutRef;
      };
      std::vector<std::size_t> winners;
      for (std::size_t i : tie) {
        bool beats_all = true;
        for (std::size_t j : tie) {
          if (i == j) continue;
          bool ge = true;
          bool gt = false;
          for (std::size_t k = 0; k < args.size(); ++k) {
            if (score(j, k) && !score(i, k)) ge = false;
            if (score(i, k) && !score(j, k)) gt = true;
          }
          bool mutual = callable(i, j) && callable(j, i);
          if (!(ge && gt && mutual)) {
            beats_all = false;
            break;
          }
        }
        if (beats_all) winners.push_back(i);
      }
      if (winners.size() == 1) best = winners;
    }
    if (best.size() != 1) {
      // Requirements that coincide under the where clause's same-type
      // constraints name one operation; the first constraint supplies it.
      bool all_same = true;
      for (std::size_t i : pool) {
        if (tried[i].first.kind != Cand::Kind::kSurrogate) all_same = false;
        for (std::size_t j : pool)
          if (i != j && all_same && !(callable(i, j) && callable(j, i)))
            all_same = false;
        if (!all_same) break;
      }
      if (all_same) best = {pool.front()};
    }
  }

  if (best.size() != 1) {
    if (report) {
      std::string msg = "Ambiguous overload in application " + call_text +
                        "; candidates are:";
      for (std::size_t i : pool) msg += "\n  " + describe_cand(tried[i].first, ctx);
      error(loc, msg);
    }
    return res;
  }

  res.ok = true;
  res.cand = tried[best[0]].first;
  res.at = tried[best[0]].second;
  if (report && opts.solver.trace && !call_text.empty())
    *opts.solver.trace << "overload " << call_text << " at "
                       << location_text(loc) << ": "
                       << describe_cand(res.cand, ctx) << "\n";
  return res;
}

}  // namespace g::sema
