#ifndef G_SEMA_ENTITIES_H_
#define G_SEMA_ENTITIES_H_

// Checked declarations and the annotations the checker attaches to the
// AST. The interpreter consumes these; it never looks names up itself.

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "g/diagnostic.h"
#include "g/sema/intrinsics.h"
#include "g/syntax/ast.h"
#include "g/types/type.h"

namespace g::sema {

using types::Constraint;
using types::Subst;
using types::TypeRef;

struct ConceptInfo;
struct ClassInfo;
struct ModelInfo;
struct FunctionInfo;
struct Witness;
using WitnessPtr = std::shared_ptr<const Witness>;

// How to obtain a dictionary at run time. Fact witnesses are relative to
// the root dictionaries of the enclosing function, model or class
// context: root `root`, then parent links `path` in order. Rule
// witnesses build a dictionary for `rule` from sub-witnesses, one per
// model constraint in the rule's where clause.
struct Witness {
  enum class Kind { kFact, kRule };
  Kind kind = Kind::kFact;
  int root = -1;
  std::vector<int> path;
  const ModelInfo* rule = nullptr;
  Subst theta;  // rule parameters to goal subterms
  std::vector<WitnessPtr> subs;
  Constraint goal;
};

// Default initialization of a value of some type.
struct InitPlan {
  enum class Kind { kUninit, kZero, kNull, kClass, kDict };
  Kind kind = Kind::kUninit;
  types::Base base = types::Base::kInt;
  const FunctionInfo* ctor = nullptr;  // kClass: a zero-argument constructor
  std::vector<WitnessPtr> witnesses;   // kClass: class + ctor constraints
  WitnessPtr dict;                     // kDict: a DefaultConstructible model
};

struct Conv {
  enum class Kind { kNone, kNumeric, kInst };
  Kind kind = Kind::kNone;
  types::Base to = types::Base::kInt;
  std::vector<WitnessPtr> witnesses;  // kInst: constraints of the instance
};

struct ArgPass {
  syntax::PassMode mode = syntax::PassMode::kConstRef;
  Conv conv;
};

struct CallTarget {
  enum class Kind {
    kNone,
    kFunction,       // fn with where-clause witnesses
    kDictOp,         // concept operation `op` through dictionary `dict`
    kValue,          // call the value of the callee expression
    kBuiltinAssign,  // memberwise/scalar assignment
    kPrintf,
    kCopy,           // copy of an existing value
    kDefault,        // default construction by `plan`
  };
  Kind kind = Kind::kNone;
  const FunctionInfo* fn = nullptr;
  std::vector<WitnessPtr> witnesses;
  WitnessPtr dict;
  int op = -1;
  InitPlan plan;
  TypeRef type = nullptr;  // instantiated callee type
};

// A required operation's implementation inside a model.
struct MemberImpl {
  enum class Kind { kMissing, kCall, kDefault };
  Kind kind = Kind::kMissing;
  CallTarget target;  // relative to the model's where-clause roots
  std::vector<ArgPass> args;
  Conv ret_conv;
  const FunctionInfo* default_fn = nullptr;
};

struct ParentLink {
  bool refines = true;
  std::string concept_name;
  std::vector<TypeRef> args;  // over the concept's parameters
};

struct ConceptOp {
  std::string name;
  TypeRef sig = nullptr;  // monomorphic function type over the parameters
  const syntax::FunDecl* decl = nullptr;
  FunctionInfo* default_fn = nullptr;
  SourceLocation loc;
};

struct ConceptInfo {
  std::string name;
  std::vector<std::string> params;
  SourceLocation loc;
  std::vector<std::string> assoc;
  std::vector<ParentLink> parents;
  std::vector<ConceptOp> ops;
  std::vector<std::pair<TypeRef, TypeRef>> same_types;
  bool complete = false;
};

struct FieldInfo {
  std::string name;
  TypeRef type = nullptr;
};

struct ClassInfo {
  std::string name;
  syntax::ClassKind kind = syntax::ClassKind::kStruct;
  std::vector<std::string> params;
  std::vector<Constraint> where;
  std::vector<FieldInfo> fields;
  std::vector<FunctionInfo*> ctors;  // user and implicit
  std::vector<InitPlan> field_defaults;
  const syntax::ClassDecl* decl = nullptr;
  SourceLocation loc;

  int field_index(const std::string& n) const {
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (fields[i].name == n) return static_cast<int>(i);
    return -1;
  }
};

struct ModelInfo {
  int id = 0;
  std::vector<std::string> params;
  std::vector<Constraint> where;
  std::string concept_name;
  const ConceptInfo* concept_info = nullptr;
  std::vector<TypeRef> head;
  std::map<std::string, TypeRef> assoc;
  std::vector<MemberImpl> members;    // one per concept op
  std::vector<WitnessPtr> parents;    // one per concept parent link
  InitPlan default_plan;              // DefaultConstructible models
  const syntax::ModelDecl* decl = nullptr;
  SourceLocation loc;
  std::string scope_path;

  Constraint head_constraint() const {
    return types::model_constraint(concept_name, head);
  }
};

struct FieldInitInfo {
  int field = -1;
  const syntax::FieldInit* source = nullptr;
  CallTarget target;  // kCopy, kDefault or a constructor
  std::vector<ArgPass> args;
};

// Variable slots of a function body; each local lives in its own cell.
struct FrameLayout {
  int num_slots = 0;
  std::vector<int> param_slots;
  std::vector<int> capture_slots;
};

struct FunctionInfo {
  enum class Owner { kFree, kModelMember, kConceptDefault, kCtor };
  enum class CtorKind { kUser, kImplicitDefault, kImplicitCopy };
  std::string name;
  TypeRef type = nullptr;  // quantified function type
  const syntax::FunDecl* decl = nullptr;
  const syntax::CtorDecl* ctor_decl = nullptr;
  Intrinsic intrinsic = Intrinsic::kNone;
  Owner owner = Owner::kFree;
  CtorKind ctor_kind = CtorKind::kUser;
  const ClassInfo* cls = nullptr;
  const ModelInfo* model = nullptr;
  const ConceptInfo* concept_info = nullptr;
  SourceLocation loc;
  FrameLayout layout;
  // Constructor init list, in the order written.
  std::vector<FieldInitInfo> inits;
  FunctionInfo* definition = nullptr;  // a forward signature's body
  bool has_body = false;
  std::string qualified_name() const;
};

struct FunExprInfo {
  FrameLayout layout;
  TypeRef type = nullptr;
};

enum class Category { kRValue, kConstLValue, kMutLValue };

struct ExprAnnot {
  TypeRef type = nullptr;
  Category cat = Category::kRValue;

  // VarRef
  enum class Ref { kNone, kLocal, kGlobal, kFunction, kBool, kField };
  Ref ref = Ref::kNone;
  int slot = -1;
  const FunctionInfo* fn = nullptr;
  bool bool_value = false;

  // Calls, operators, construction
  CallTarget target;
  std::vector<ArgPass> args;

  // MemberExpr
  int field = -1;

  // CondExpr branches
  Conv then_conv;
  Conv else_conv;

  // FunExpr
  std::shared_ptr<FunExprInfo> fun_expr;

  // NewExpr array element initialization
  InitPlan elem_plan;
  TypeRef elem_type = nullptr;

  // ModelMemberExpr
  WitnessPtr dict;
  int op = -1;
};

struct StmtAnnot {
  int slot = -1;
  Conv conv;  // return statement coercion
  ArgPass pass;
};

struct FunAnnot {
  FunctionInfo* info = nullptr;
};

struct ClassAnnot {
  ClassInfo* info = nullptr;
};

struct ModelAnnot {
  ModelInfo* info = nullptr;
};

struct GlobalVar {
  std::string name;
  TypeRef type = nullptr;
  int index = 0;
  const syntax::GlobalLetDecl* decl = nullptr;
};

}  // namespace g::sema

#endif  // G_SEMA_ENTITIES_H_
