#include "g/sema/solver.h"

#include <algorithm>

namespace g::sema {

using types::Kind;

TypeRef canonical_proj(const Registry& reg, const std::string& concept_name,
                       const std::vector<TypeRef>& args,
                       const std::string& member) {
  const ConceptInfo* c = reg.find_concept(concept_name);
  if (!c || c->params.size() != args.size()) return nullptr;
  for (const auto& a : c->assoc)
    if (a == member) return types::proj(concept_name, args, member);
  Subst s;
  for (std::size_t i = 0; i < c->params.size(); ++i) s[c->params[i]] = args[i];
  for (const auto& p : c->parents) {
    if (!p.refines) continue;
    TypeRef r = canonical_proj(reg, p.concept_name,
                               types::substitute(s, p.args), member);
    if (r) return r;
  }
  return nullptr;
}

std::vector<const ModelInfo*> visible_rules(const ScopeInfo* scope) {
  std::vector<const ModelInfo*> out;
  std::set<const ModelInfo*> seen;
  auto add = [&](const ModelInfo* m) {
    if (seen.insert(m).second) out.push_back(m);
  };
  for (const ScopeInfo* s = scope; s; s = s->parent) {
    for (const ModelInfo* m : s->rules) add(m);
    for (const ScopeInfo* o : s->opened)
      for (const ModelInfo* m : o->rules)
        if (!o->private_rules.count(m)) add(m);
  }
  return out;
}

std::string validate_model_rule(const std::vector<std::string>& params,
                                const std::vector<TypeRef>& head) {
  std::set<std::string> fv;
  for (TypeRef t : head) types::free_vars(t, fv);
  for (const auto& p : params)
    if (!fv.count(p)) return p;
  return {};
}

namespace {

bool refines_transitively(const Registry& reg, const std::string& a,
                          const std::string& b, int depth = 0) {
  const ConceptInfo* ci = reg.find_concept(a);
  if (!ci || depth > 64) return false;
  for (const ParentLink& p : ci->parents) {
    if (!p.refines) continue;
    if (p.concept_name == b || refines_transitively(reg, p.concept_name, b, depth + 1))
      return true;
  }
  return false;
}

}  // namespace

void add_fact(const Registry& reg, Context& ctx, const Constraint& c, int root,
              std::vector<int> path, Solver* n) {
  for (const Fact& f : ctx.facts) {
    if (f.c.concept_name != c.concept_name || f.c.args.size() != c.args.size())
      continue;
    bool same = true;
    for (std::size_t i = 0; i < c.args.size() && same; ++i)
      same = types::alpha_equal(f.c.args[i], c.args[i]);
    if (same) return;
  }
  const ConceptInfo* concept_info = reg.find_concept(c.concept_name);
  int index = static_cast<int>(ctx.facts.size());
  ctx.facts.push_back(Fact{c, root, path});
  if (!concept_info || concept_info->params.size() != c.args.size()) return;

  Subst s;
  for (std::size_t i = 0; i < concept_info->params.size(); ++i)
    s[concept_info->params[i]] = c.args[i];
  auto norm = [&](TypeRef t) {
    t = types::substitute(s, t);
    return n ? n->normalize(t) : t;
  };

  for (const auto& [l, r] : concept_info->same_types)
    ctx.graph.assert_equal(norm(l), norm(r));

  for (std::size_t i = 0; i < concept_info->ops.size(); ++i) {
    const ConceptOp& op = concept_info->ops[i];
    TypeRef sig = norm(op.sig);
    bool dup = false;
    for (Surrogate& o : ctx.surrogates) {
      if (o.name != op.name || o.sig->params.size() != sig->params.size())
        continue;
      bool eq = true;
      for (std::size_t k = 0; k < sig->params.size() && eq; ++k)
        eq = o.sig->params[k].mode == sig->params[k].mode &&
             ctx.graph.equal(o.sig->params[k].type, sig->params[k].type);
      if (eq) {
        // A refining concept's redeclaration (such as a mutable
        // operator*) replaces the one it refines.
        const std::string& prev = ctx.facts[o.fact].c.concept_name;
        if (refines_transitively(reg, c.concept_name, prev))
          o = Surrogate{op.name, sig, index, static_cast<int>(i)};
        dup = true;
        break;
      }
    }
    if (!dup)
      ctx.surrogates.push_back(
          Surrogate{op.name, sig, index, static_cast<int>(i)});
  }

  for (std::size_t k = 0; k < concept_info->parents.size(); ++k) {
    const ParentLink& p = concept_info->parents[k];
    std::vector<int> sub = path;
    sub.push_back(static_cast<int>(k));
    Constraint pc = types::model_constraint(p.concept_name,
                                            types::substitute(s, p.args));
    if (n) pc = n->normalize(pc);
    add_fact(reg, ctx, pc, root, sub, n);
  }
}

void add_where(const Registry& reg, Context& ctx,
               const std::vector<Constraint>& where, Solver* n) {
  for (const Constraint& c : where) {
    if (c.same_type) {
      TypeRef a = n ? n->normalize(c.args[0]) : c.args[0];
      TypeRef b = n ? n->normalize(c.args[1]) : c.args[1];
      ctx.graph.assert_equal(a, b);
    } else {
      int root = ctx.num_roots++;
      add_fact(reg, ctx, n ? n->normalize(c) : c, root, {}, n);
    }
  }
}

Solver::Solver(const Registry& reg, Context& ctx, const SolverOptions& opts)
    : reg_(reg), ctx_(ctx), opts_(opts) {}

namespace {

struct Level {
  int& n;
  explicit Level(int& x) : n(x) { ++n; }
  ~Level() { --n; }
};

}  // namespace

SolveResult Solver::satisfy(const Constraint& goal) {
  bool top = level_ == 0;
  Level lv(level_);
  if (top) {
    memo_.clear();
    active_.clear();
    trace_lines_.clear();
  }
  SolveResult r = solve(goal, 0);
  if (top && opts_.trace) {
    for (const auto& l : trace_lines_) *opts_.trace << l << "\n";
    trace_lines_.clear();
  }
  return r;
}

TypeRef Solver::deep_rep(TypeRef t, int depth) {
  if (depth > 32 || t->is_error()) return t;
  TypeRef r = ctx_.graph.representative(t);
  if (r->kind == Kind::kCtor) {
    std::vector<TypeRef> args;
    for (TypeRef a : r->args) args.push_back(deep_rep(a, depth + 1));
    return types::ctor(r->name, args);
  }
  return r;
}

std::string Solver::key_of(const Constraint& goal) {
  std::string k = goal.concept_name + "<";
  for (std::size_t i = 0; i < goal.args.size(); ++i) {
    if (i) k += ",";
    TypeRef r = deep_rep(goal.args[i]);
    k += types::to_string(r) + "#" + std::to_string(r->id);
  }
  return k + ">";
}

SolveResult Solver::solve(const Constraint& raw, int depth) {
  ++lookups_;
  Constraint goal = normalize(raw);
  std::size_t line = trace_lines_.size();
  bool tracing = opts_.trace != nullptr;
  if (tracing) trace_lines_.emplace_back();
  auto finish = [&](SolveResult r, const std::string& outcome) {
    if (tracing)
      trace_lines_[line] = std::string(2 * depth, ' ') +
                           types::to_string(goal) + ": " + outcome;
    return r;
  };

  if (depth > opts_.depth_limit) {
    SolveResult r;
    r.status = SolveResult::Status::kDepth;
    r.failed = goal;
    r.message = "Model lookup for " + types::to_string(goal) +
                " exceeded the depth limit of " +
                std::to_string(opts_.depth_limit);
    return finish(r, "fail");
  }

  std::string key = key_of(goal);
  auto mit = memo_.find(key);
  if (mit != memo_.end()) return finish(mit->second, "memo");
  if (active_.count(key)) {
    SolveResult r;
    r.status = SolveResult::Status::kNoModel;
    r.failed = goal;
    return finish(r, "fail");
  }

  for (const Fact& f : ctx_.facts) {
    if (f.c.concept_name != goal.concept_name ||
        f.c.args.size() != goal.args.size())
      continue;
    bool eq = true;
    for (std::size_t i = 0; i < goal.args.size() && eq; ++i)
      eq = same(f.c.args[i], goal.args[i]);
    if (!eq) continue;
    auto w = std::make_shared<Witness>();
    w->kind = Witness::Kind::kFact;
    w->root = f.root;
    w->path = f.path;
    w->goal = goal;
    SolveResult r;
    r.witness = w;
    memo_[key] = r;
    return finish(r, "fact");
  }

  active_.insert(key);
  std::vector<Candidate> cands;
  bool head_matched = false;
  SolveResult first_failure;
  bool have_failure = false;

  for (const ModelInfo* rule : visible_rules(ctx_.scope)) {
    if (rule->concept_name != goal.concept_name ||
        rule->head.size() != goal.args.size())
      continue;
    Subst ren;
    std::set<std::string> flex;
    for (const auto& p : rule->params) {
      std::string f = types::fresh_name(p);
      ren[p] = types::var(f);
      flex.insert(f);
    }
    Subst theta;
    bool ok = true;
    for (std::size_t i = 0; i < goal.args.size() && ok; ++i)
      ok = match(types::substitute(ren, rule->head[i]), goal.args[i], flex,
                 theta);
    if (!ok) continue;
    head_matched = true;

    std::vector<WitnessPtr> subs;
    bool good = true;
    for (const Constraint& wc : rule->where) {
      Constraint c = normalize(
          types::substitute(theta, types::substitute(ren, wc)));
      if (c.same_type) {
        if (!same(c.args[0], c.args[1])) {
          good = false;
          if (!have_failure) {
            have_failure = true;
            first_failure.status = SolveResult::Status::kNoModel;
            first_failure.failed = c;
            first_failure.message = "Same type requirement violated, " +
                                    types::to_string(c.args[0]) + " != " +
                                    types::to_string(c.args[1]);
          }
          break;
        }
        continue;
      }
      SolveResult r = solve(c, depth + 1);
      if (!r.ok()) {
        good = false;
        if (!have_failure || r.status == SolveResult::Status::kDepth) {
          have_failure = true;
          first_failure = r;
        }
        break;
      }
      subs.push_back(r.witness);
    }
    if (!good) continue;
    Subst full;
    for (const auto& p : rule->params)
      full[p] = types::substitute(theta, ren[p]);
    cands.push_back(Candidate{rule, full, subs});
  }
  active_.erase(key);

  SolveResult result;
  std::string outcome = "fail";
  if (cands.empty()) {
    if (head_matched && have_failure) {
      result = first_failure;
    } else {
      result.status = SolveResult::Status::kNoModel;
      result.failed = goal;
    }
  } else {
    std::vector<std::size_t> best;
    if (cands.size() == 1) {
      best.push_back(0);
    } else {
      for (std::size_t i = 0; i < cands.size(); ++i) {
        bool dominates = true;
        for (std::size_t j = 0; j < cands.size() && dominates; ++j) {
          if (i == j) continue;
          dominates = more_specific(*cands[i].rule, *cands[j].rule) &&
                      !more_specific(*cands[j].rule, *cands[i].rule);
        }
        if (dominates) best.push_back(i);
      }
    }
    if (best.size() == 1) {
      const Candidate& c = cands[best[0]];
      auto w = std::make_shared<Witness>();
      w->kind = Witness::Kind::kRule;
      w->rule = c.rule;
      w->theta = c.theta;
      w->subs = c.subs;
      w->goal = goal;
      result.witness = w;
      outcome = "matched " + types::to_string(c.rule->head_constraint()) +
                " (" + c.rule->loc.filename() + ":" +
                std::to_string(c.rule->loc.line) + ")";
    } else {
      result.status = SolveResult::Status::kAmbiguous;
      result.failed = goal;
      result.message = "Ambiguous models for " + types::to_string(goal) + ":";
      for (const auto& c : cands)
        result.message += "\n  " + types::to_string(c.rule->head_constraint()) +
                          " (" + c.rule->loc.filename() + ":" +
                          std::to_string(c.rule->loc.line) + ")";
      outcome = "ambiguous";
    }
  }
  memo_[key] = result;
  return finish(result, outcome);
}

Constraint Solver::normalize(const Constraint& c) {
  Constraint out = c;
  for (auto& a : out.args) a = normalize(a);
  return out;
}

TypeRef Solver::normalize(TypeRef t) { return normalize_at(t, 0); }

TypeRef Solver::normalize_at(TypeRef t, int depth) {
  if (!types::contains_proj(t) || depth > 64) return t;
  switch (t->kind) {
    case Kind::kVar:
    case Kind::kBase:
    case Kind::kError:
      return t;
    case Kind::kCtor: {
      std::vector<TypeRef> args;
      for (TypeRef a : t->args) args.push_back(normalize_at(a, depth));
      return types::ctor(t->name, args);
    }
    case Kind::kFun: {
      std::vector<Constraint> cs;
      for (const auto& c : t->constraints) {
        Constraint n = c;
        for (auto& a : n.args) a = normalize_at(a, depth);
        cs.push_back(n);
      }
      std::vector<types::Param> ps;
      for (const auto& p : t->params)
        ps.push_back(types::Param{normalize_at(p.type, depth), p.mode});
      types::Param r{normalize_at(t->ret.type, depth), t->ret.mode};
      return types::fun(t->quantifiers, cs, ps, r);
    }
    case Kind::kProj: {
      std::vector<TypeRef> args;
      for (TypeRef a : t->args) args.push_back(normalize_at(a, depth));
      const ModelInfo* self = ctx_.self_model;
      if (self && self->concept_name == t->name &&
          self->head.size() == args.size()) {
        bool eq = true;
        for (std::size_t i = 0; i < args.size() && eq; ++i)
          eq = ctx_.graph.equal(self->head[i], args[i]);
        auto it = self->assoc.find(t->member);
        if (eq && it != self->assoc.end())
          return normalize_at(it->second, depth + 1);
      }
      bool top = level_ == 0;
      Level lv(level_);
      if (top) {
        memo_.clear();
        active_.clear();
      }
      std::ostream* saved = opts_.trace;
      opts_.trace = nullptr;
      std::vector<std::string> saved_lines;
      saved_lines.swap(trace_lines_);
      SolveResult r = solve(types::model_constraint(t->name, args), 0);
      trace_lines_.swap(saved_lines);
      opts_.trace = saved;
      if (r.ok() && r.witness->kind == Witness::Kind::kRule) {
        auto it = r.witness->rule->assoc.find(t->member);
        if (it != r.witness->rule->assoc.end())
          return normalize_at(types::substitute(r.witness->theta, it->second),
                              depth + 1);
      }
      return types::proj(t->name, args, t->member);
    }
  }
  return t;
}

bool Solver::same(TypeRef a, TypeRef b) {
  if (a == b) return true;
  return ctx_.graph.equal(normalize(a), normalize(b));
}

bool Solver::match(TypeRef p, TypeRef t, const std::set<std::string>& flex,
                   Subst& theta) {
  if (p->is_var() && flex.count(p->name)) {
    auto it = theta.find(p->name);
    if (it != theta.end()) return same(it->second, t);
    theta[p->name] = t;
    return true;
  }
  std::set<std::string> fv = types::free_vars(p);
  bool has_flex = false;
  for (const auto& v : fv) has_flex = has_flex || flex.count(v);
  if (!has_flex) return same(p, t);

  t = normalize(t);
  switch (p->kind) {
    case Kind::kCtor: {
      TypeRef m = ctx_.graph.find_with_head(t, p->name, p->args.size(), false);
      if (!m) return false;
      for (std::size_t i = 0; i < p->args.size(); ++i)
        if (!match(p->args[i], m->args[i], flex, theta)) return false;
      return true;
    }
    case Kind::kFun: {
      TypeRef m = ctx_.graph.find_with_head(t, "", 0, true);
      if (!m) return false;
      TypeRef pc = types::alpha_canonical(p);
      TypeRef mc = types::alpha_canonical(m);
      if (pc->quantifiers != mc->quantifiers ||
          pc->params.size() != mc->params.size() ||
          pc->constraints.size() != mc->constraints.size() ||
          pc->ret.mode != mc->ret.mode)
        return false;
      for (std::size_t i = 0; i < pc->params.size(); ++i) {
        if (pc->params[i].mode != mc->params[i].mode) return false;
        if (!match(pc->params[i].type, mc->params[i].type, flex, theta))
          return false;
      }
      for (std::size_t i = 0; i < pc->constraints.size(); ++i) {
        const auto& a = pc->constraints[i];
        const auto& b = mc->constraints[i];
        if (a.same_type != b.same_type || a.concept_name != b.concept_name ||
            a.args.size() != b.args.size())
          return false;
        for (std::size_t k = 0; k < a.args.size(); ++k)
          if (!match(a.args[k], b.args[k], flex, theta)) return false;
      }
      return match(pc->ret.type, mc->ret.type, flex, theta);
    }
    case Kind::kProj: {
      for (TypeRef m : ctx_.graph.class_of(t)) {
        if (!m->is_proj() || m->name != p->name || m->member != p->member ||
            m->args.size() != p->args.size())
          continue;
        Subst trial = theta;
        bool ok = true;
        for (std::size_t i = 0; i < p->args.size() && ok; ++i)
          ok = match(p->args[i], m->args[i], flex, trial);
        if (ok) {
          theta = trial;
          return true;
        }
      }
      return false;
    }
    default:
      return false;
  }
}

bool Solver::implies(const std::vector<Constraint>& assumptions,
                     const std::vector<Constraint>& goals) {
  Context hyp = ctx_;
  SolverOptions quiet = opts_;
  quiet.trace = nullptr;
  Solver s(reg_, hyp, quiet);
  add_where(reg_, hyp, assumptions, &s);
  for (const Constraint& g : goals) {
    Constraint c = s.normalize(g);
    if (c.same_type) {
      if (!s.same(c.args[0], c.args[1])) return false;
    } else if (!s.satisfy(c).ok()) {
      return false;
    }
  }
  return true;
}

bool Solver::more_specific(const ModelInfo& a, const ModelInfo& b) {
  if (&a == &b) return false;
  if (a.head.size() != b.head.size()) return false;
  Subst ra;
  Subst rb;
  std::set<std::string> flex;
  for (const auto& p : a.params) ra[p] = types::var(types::fresh_name(p));
  for (const auto& p : b.params) {
    std::string f = types::fresh_name(p);
    rb[p] = types::var(f);
    flex.insert(f);
  }
  Subst theta;
  for (std::size_t i = 0; i < a.head.size(); ++i)
    if (!match(types::substitute(rb, b.head[i]),
               types::substitute(ra, a.head[i]), flex, theta))
      return false;
  std::vector<Constraint> assume;
  for (const auto& c : a.where) assume.push_back(types::substitute(ra, c));
  std::vector<Constraint> goals;
  for (const auto& c : b.where)
    goals.push_back(types::substitute(theta, types::substitute(rb, c)));
  return implies(assume, goals);
}

}  // namespace g::sema
