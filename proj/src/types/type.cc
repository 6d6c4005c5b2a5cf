#include "g/types/type.h"

#include <atomic>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace g::types {
namespace {

class TypeTable {
 public:
  TypeRef intern(Type t) {
    std::string key = make_key(t);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second.get();
    t.id = next_id_++;
    auto owned = std::make_unique<Type>(std::move(t));
    TypeRef r = owned.get();
    table_.emplace(std::move(key), std::move(owned));
    return r;
  }

 private:
  static void add_id(std::string& k, TypeRef t) {
    k += std::to_string(t ? t->id : 0);
    k += ',';
  }
  static std::string make_key(const Type& t) {
    std::string k;
    k += static_cast<char>('0' + static_cast<int>(t.kind));
    k += t.name;
    k += '|';
    k += static_cast<char>('0' + static_cast<int>(t.base));
    k += t.member;
    k += '|';
    for (TypeRef a : t.args) add_id(k, a);
    k += '|';
    for (const auto& q : t.quantifiers) k += q + ",";
    k += '|';
    for (const auto& c : t.constraints) {
      k += c.same_type ? "=" : c.concept_name;
      k += '(';
      for (TypeRef a : c.args) add_id(k, a);
      k += ')';
    }
    k += '|';
    for (const auto& p : t.params) {
      add_id(k, p.type);
      k += static_cast<char>('0' + static_cast<int>(p.mode));
    }
    k += '|';
    add_id(k, t.ret.type);
    k += static_cast<char>('0' + static_cast<int>(t.ret.mode));
    return k;
  }

  std::mutex mu_;
  std::unordered_map<std::string, std::unique_ptr<Type>> table_;
  std::uint64_t next_id_ = 1;
};

TypeTable& table() {
  static TypeTable* t = new TypeTable;
  return *t;
}

}  // namespace

bool Constraint::operator<(const Constraint& o) const {
  if (same_type != o.same_type) return same_type < o.same_type;
  if (concept_name != o.concept_name) return concept_name < o.concept_name;
  if (args.size() != o.args.size()) return args.size() < o.args.size();
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i]->id != o.args[i]->id) return args[i]->id < o.args[i]->id;
  return false;
}

TypeRef var(const std::string& name) {
  Type t;
  t.kind = Kind::kVar;
  t.name = name;
  return table().intern(std::move(t));
}

TypeRef base(Base b) {
  Type t;
  t.kind = Kind::kBase;
  t.base = b;
  return table().intern(std::move(t));
}

TypeRef int_type() { return base(Base::kInt); }
TypeRef bool_type() { return base(Base::kBool); }
TypeRef char_type() { return base(Base::kChar); }
TypeRef float_type() { return base(Base::kFloat); }
TypeRef double_type() { return base(Base::kDouble); }
TypeRef void_type() { return base(Base::kVoid); }

TypeRef error_type() {
  Type t;
  t.kind = Kind::kError;
  return table().intern(std::move(t));
}

TypeRef ctor(const std::string& name, std::vector<TypeRef> args) {
  Type t;
  t.kind = Kind::kCtor;
  t.name = name;
  t.args = std::move(args);
  return table().intern(std::move(t));
}

TypeRef pointer(TypeRef pointee) { return ctor("*", {pointee}); }

TypeRef fun(std::vector<std::string> quantifiers,
            std::vector<Constraint> constraints, std::vector<Param> params,
            Param ret) {
  Type t;
  t.kind = Kind::kFun;
  t.quantifiers = std::move(quantifiers);
  t.constraints = std::move(constraints);
  t.params = std::move(params);
  if (!ret.type) ret.type = void_type();
  // A void result has no pass mode.
  if (ret.type->is_void()) ret.mode = PassMode::kConstRef;
  t.ret = ret;
  return table().intern(std::move(t));
}

TypeRef mono_fun(std::vector<Param> params, Param ret) {
  return fun({}, {}, std::move(params), ret);
}

TypeRef proj(const std::string& concept_name, std::vector<TypeRef> args,
             const std::string& member) {
  Type t;
  t.kind = Kind::kProj;
  t.name = concept_name;
  t.args = std::move(args);
  t.member = member;
  return table().intern(std::move(t));
}

Constraint model_constraint(const std::string& concept_name,
                            std::vector<TypeRef> args) {
  Constraint c;
  c.concept_name = concept_name;
  c.args = std::move(args);
  return c;
}

Constraint same_type_constraint(TypeRef a, TypeRef b) {
  Constraint c;
  c.same_type = true;
  c.args = {a, b};
  return c;
}

const char* base_name(Base b) {
  switch (b) {
    case Base::kInt: return "int";
    case Base::kBool: return "bool";
    case Base::kChar: return "char";
    case Base::kFloat: return "float";
    case Base::kDouble: return "double";
    case Base::kVoid: return "void";
  }
  return "?";
}

bool is_numeric(TypeRef t) {
  return t->is_base(Base::kInt) || t->is_base(Base::kFloat) ||
         t->is_base(Base::kDouble) || t->is_base(Base::kChar);
}

std::string display_name(const std::string& var_name) {
  auto pos = var_name.find('#');
  return pos == std::string::npos ? var_name : var_name.substr(0, pos);
}

std::string to_string(const std::vector<TypeRef>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ",";
    out += to_string(ts[i]);
  }
  return out;
}

std::string to_string(const Constraint& c) {
  if (c.same_type)
    return to_string(c.args[0]) + " == " + to_string(c.args[1]);
  return c.concept_name + "<" + to_string(c.args) + ">";
}

std::string to_string(TypeRef t) {
  if (!t) return "<null>";
  switch (t->kind) {
    case Kind::kVar: return display_name(t->name);
    case Kind::kBase: return base_name(t->base);
    case Kind::kError: return "<error>";
    case Kind::kCtor:
      if (t->is_pointer()) {
        std::string inner = to_string(t->pointee());
        if (t->pointee()->is_fun()) inner = "(" + inner + ")";
        return inner + "*";
      }
      if (t->args.empty()) return t->name;
      return t->name + "<" + to_string(t->args) + ">";
    case Kind::kProj:
      return t->name + "<" + to_string(t->args) + ">." + t->member;
    case Kind::kFun: {
      std::string out = "fun";
      if (!t->quantifiers.empty()) {
        out += "<";
        for (std::size_t i = 0; i < t->quantifiers.size(); ++i) {
          if (i) out += ",";
          out += display_name(t->quantifiers[i]);
        }
        out += ">";
      }
      if (!t->constraints.empty()) {
        out += " where {";
        for (std::size_t i = 0; i < t->constraints.size(); ++i) {
          if (i) out += ", ";
          out += to_string(t->constraints[i]);
        }
        out += "} ";
      }
      out += "(";
      for (std::size_t i = 0; i < t->params.size(); ++i) {
        if (i) out += ",";
        out += to_string(t->params[i].type);
        out += syntax::pass_mode_suffix(t->params[i].mode);
      }
      out += ")";
      if (!t->ret.type->is_void()) {
        out += "->";
        std::string r = to_string(t->ret.type);
        if (t->ret.type->is_fun()) r = "(" + r + ")";
        out += r;
        out += syntax::pass_mode_suffix(t->ret.mode);
      }
      return out;
    }
  }
  return "?";
}

std::string fresh_name(const std::string& hint) {
  static std::atomic<unsigned long> counter{0};
  return display_name(hint) + "#" + std::to_string(++counter);
}

void free_vars(TypeRef t, std::set<std::string>& out) {
  switch (t->kind) {
    case Kind::kVar: out.insert(t->name); return;
    case Kind::kBase:
    case Kind::kError: return;
    case Kind::kCtor:
    case Kind::kProj:
      for (TypeRef a : t->args) free_vars(a, out);
      return;
    case Kind::kFun: {
      std::set<std::string> inner;
      for (const auto& c : t->constraints)
        for (TypeRef a : c.args) free_vars(a, inner);
      for (const auto& p : t->params) free_vars(p.type, inner);
      free_vars(t->ret.type, inner);
      for (const auto& q : t->quantifiers) inner.erase(q);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

std::set<std::string> free_vars(TypeRef t) {
  std::set<std::string> out;
  free_vars(t, out);
  return out;
}

bool occurs(const std::string& name, TypeRef t) {
  return free_vars(t).count(name) != 0;
}

bool contains_error(TypeRef t) {
  if (t->is_error()) return true;
  for (TypeRef a : t->args)
    if (contains_error(a)) return true;
  for (const auto& p : t->params)
    if (contains_error(p.type)) return true;
  if (t->is_fun() && contains_error(t->ret.type)) return true;
  return false;
}

bool contains_proj(TypeRef t) {
  if (t->is_proj()) return true;
  for (TypeRef a : t->args)
    if (contains_proj(a)) return true;
  for (const auto& c : t->constraints)
    for (TypeRef a : c.args)
      if (contains_proj(a)) return true;
  for (const auto& p : t->params)
    if (contains_proj(p.type)) return true;
  if (t->is_fun() && contains_proj(t->ret.type)) return true;
  return false;
}

std::vector<TypeRef> substitute(const Subst& s,
                                const std::vector<TypeRef>& ts) {
  std::vector<TypeRef> out;
  out.reserve(ts.size());
  for (TypeRef t : ts) out.push_back(substitute(s, t));
  return out;
}

Constraint substitute(const Subst& s, const Constraint& c) {
  Constraint out = c;
  out.args = substitute(s, c.args);
  return out;
}

TypeRef substitute(const Subst& s, TypeRef t) {
  if (s.empty()) return t;
  switch (t->kind) {
    case Kind::kVar: {
      auto it = s.find(t->name);
      return it == s.end() ? t : it->second;
    }
    case Kind::kBase:
    case Kind::kError: return t;
    case Kind::kCtor: return ctor(t->name, substitute(s, t->args));
    case Kind::kProj: return proj(t->name, substitute(s, t->args), t->member);
    case Kind::kFun: {
      Subst inner = s;
      for (const auto& q : t->quantifiers) inner.erase(q);
      std::set<std::string> range_vars;
      for (const auto& [k, v] : inner) {
        (void)k;
        free_vars(v, range_vars);
      }
      std::vector<std::string> qs = t->quantifiers;
      for (auto& q : qs) {
        if (range_vars.count(q)) {
          std::string fresh = fresh_name(q);
          inner[q] = var(fresh);
          q = fresh;
        }
      }
      std::vector<Constraint> cs;
      for (const auto& c : t->constraints) cs.push_back(substitute(inner, c));
      std::vector<Param> ps;
      for (const auto& p : t->params)
        ps.push_back({substitute(inner, p.type), p.mode});
      Param r{substitute(inner, t->ret.type), t->ret.mode};
      return fun(std::move(qs), std::move(cs), std::move(ps), r);
    }
  }
  return t;
}

namespace {

TypeRef canon(TypeRef t, std::map<std::string, std::string>& env,
              int depth) {
  switch (t->kind) {
    case Kind::kVar: {
      auto it = env.find(t->name);
      return it == env.end() ? t : var(it->second);
    }
    case Kind::kBase:
    case Kind::kError: return t;
    case Kind::kCtor: {
      std::vector<TypeRef> as;
      for (TypeRef a : t->args) as.push_back(canon(a, env, depth));
      return ctor(t->name, std::move(as));
    }
    case Kind::kProj: {
      std::vector<TypeRef> as;
      for (TypeRef a : t->args) as.push_back(canon(a, env, depth));
      return proj(t->name, std::move(as), t->member);
    }
    case Kind::kFun: {
      auto saved = env;
      std::vector<std::string> qs;
      for (std::size_t i = 0; i < t->quantifiers.size(); ++i) {
        std::string n = "%" + std::to_string(depth + i);
        env[t->quantifiers[i]] = n;
        qs.push_back(n);
      }
      int d = depth + static_cast<int>(qs.size());
      std::vector<Constraint> cs;
      for (const auto& c : t->constraints) {
        Constraint cc = c;
        for (auto& a : cc.args) a = canon(a, env, d);
        cs.push_back(cc);
      }
      std::vector<Param> ps;
      for (const auto& p : t->params) ps.push_back({canon(p.type, env, d), p.mode});
      Param r{canon(t->ret.type, env, d), t->ret.mode};
      env = saved;
      return fun(std::move(qs), std::move(cs), std::move(ps), r);
    }
  }
  return t;
}

}  // namespace

TypeRef alpha_canonical(TypeRef t) {
  std::map<std::string, std::string> env;
  return canon(t, env, 0);
}

bool alpha_equal(TypeRef a, TypeRef b) {
  return a == b || alpha_canonical(a) == alpha_canonical(b);
}

TypeRef instantiate_fresh(TypeRef f, Subst* subst,
                          std::vector<Constraint>* constraints) {
  Subst s;
  for (const auto& q : f->quantifiers) s[q] = var(fresh_name(q));
  std::vector<Param> ps;
  for (const auto& p : f->params) ps.push_back({substitute(s, p.type), p.mode});
  Param r{substitute(s, f->ret.type), f->ret.mode};
  if (constraints) {
    constraints->clear();
    for (const auto& c : f->constraints)
      constraints->push_back(substitute(s, c));
  }
  if (subst) *subst = s;
  return mono_fun(std::move(ps), r);
}

}  // namespace g::types
