#ifndef G_TYPES_TYPE_H_
#define G_TYPES_TYPE_H_

// Semantic types. Every type is hash-consed: structurally identical types
// (same names, same children) are the same object, so identity comparison
// is exact syntactic equality. Alpha-equivalence and equalities implied by
// same-type constraints are handled separately (alpha_equal and
// CongruenceGraph).

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "g/syntax/ast.h"

namespace g::types {

using syntax::PassMode;

enum class Kind { kVar, kBase, kCtor, kFun, kProj, kError };
enum class Base { kInt, kBool, kChar, kFloat, kDouble, kVoid };

struct Type;
using TypeRef = const Type*;

// A where-clause constraint over semantic types. For same-type constraints
// `args` holds exactly the two sides.
struct Constraint {
  bool same_type = false;
  std::string concept_name;
  std::vector<TypeRef> args;

  bool operator==(const Constraint& o) const {
    return same_type == o.same_type && concept_name == o.concept_name &&
           args == o.args;
  }
  bool operator<(const Constraint& o) const;
};

struct Param {
  TypeRef type = nullptr;
  PassMode mode = PassMode::kConstRef;
  bool operator==(const Param& o) const {
    return type == o.type && mode == o.mode;
  }
};

struct Type {
  Kind kind = Kind::kError;
  std::uint64_t id = 0;
  std::string name;  // variable, constructor, or projected concept name
  Base base = Base::kVoid;
  std::vector<TypeRef> args;  // constructor or projection arguments
  std::string member;         // projected member
  std::vector<std::string> quantifiers;
  std::vector<Constraint> constraints;
  std::vector<Param> params;
  Param ret;

  bool is_var() const { return kind == Kind::kVar; }
  bool is_base(Base b) const { return kind == Kind::kBase && base == b; }
  bool is_base() const { return kind == Kind::kBase; }
  bool is_void() const { return is_base(Base::kVoid); }
  bool is_pointer() const { return kind == Kind::kCtor && name == "*"; }
  bool is_fun() const { return kind == Kind::kFun; }
  bool is_poly_fun() const { return is_fun() && !quantifiers.empty(); }
  bool is_class() const { return kind == Kind::kCtor && name != "*"; }
  bool is_proj() const { return kind == Kind::kProj; }
  bool is_error() const { return kind == Kind::kError; }
  TypeRef pointee() const { return args.at(0); }
};

TypeRef var(const std::string& name);
TypeRef base(Base b);
TypeRef int_type();
TypeRef bool_type();
TypeRef char_type();
TypeRef float_type();
TypeRef double_type();
TypeRef void_type();
TypeRef error_type();
TypeRef ctor(const std::string& name, std::vector<TypeRef> args);
TypeRef pointer(TypeRef pointee);
TypeRef fun(std::vector<std::string> quantifiers,
            std::vector<Constraint> constraints, std::vector<Param> params,
            Param ret);
TypeRef mono_fun(std::vector<Param> params, Param ret);
TypeRef proj(const std::string& concept_name, std::vector<TypeRef> args,
             const std::string& member);

Constraint model_constraint(const std::string& concept_name,
                            std::vector<TypeRef> args);
Constraint same_type_constraint(TypeRef a, TypeRef b);

const char* base_name(Base b);
bool is_numeric(TypeRef t);

// Rendering used in diagnostics: `list<int>`, `int*`, `fun<T>(T)->T`,
// `C<int>.bar`. Generated suffixes on fresh variables are not shown.
std::string to_string(TypeRef t);
std::string to_string(const Constraint& c);
std::string to_string(const std::vector<TypeRef>& ts);

using Subst = std::map<std::string, TypeRef>;

// Capture-avoiding substitution of type variables.
TypeRef substitute(const Subst& s, TypeRef t);
Constraint substitute(const Subst& s, const Constraint& c);
std::vector<TypeRef> substitute(const Subst& s, const std::vector<TypeRef>& ts);

void free_vars(TypeRef t, std::set<std::string>& out);
std::set<std::string> free_vars(TypeRef t);
bool occurs(const std::string& name, TypeRef t);
bool contains_error(TypeRef t);
bool contains_proj(TypeRef t);

// A fresh variable name derived from `hint`; it prints as `hint`.
std::string fresh_name(const std::string& hint);
std::string display_name(const std::string& var_name);

// Renames bound quantifiers to positional names so that alpha-equivalent
// types become identical. Quantifier order is preserved.
TypeRef alpha_canonical(TypeRef t);
bool alpha_equal(TypeRef a, TypeRef b);

// Instantiates the quantifiers of `f` with fresh variables. Returns the
// substitution used and the monomorphic body (quantifiers and constraints
// removed; the renamed constraints are returned in `constraints`).
TypeRef instantiate_fresh(TypeRef f, Subst* subst,
                          std::vector<Constraint>* constraints);

}  // namespace g::types

#endif  // G_TYPES_TYPE_H_
