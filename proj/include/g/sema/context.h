#ifndef G_SEMA_CONTEXT_H_
#define G_SEMA_CONTEXT_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "g/sema/entities.h"
#include "g/types/congruence.h"

namespace g::sema {

// A lexical scope: the global scope or a module.
struct ScopeInfo {
  std::string name;
  std::string path;  // dotted, empty for the global scope
  ScopeInfo* parent = nullptr;
  std::map<std::string, std::vector<FunctionInfo*>> funs;
  std::map<std::string, GlobalVar*> globals;
  std::map<std::string, TypeRef> type_aliases;
  std::map<std::string, ClassInfo*> classes;
  std::map<std::string, ScopeInfo*> modules;
  std::vector<const ModelInfo*> rules;
  std::set<const ModelInfo*> private_rules;
  std::set<std::string> private_names;
  std::vector<ScopeInfo*> opened;
  bool in_private = false;
  std::string defining_file;
};

struct Registry {
  std::map<std::string, ConceptInfo*> concepts;

  const ConceptInfo* find_concept(const std::string& n) const {
    auto it = concepts.find(n);
    return it == concepts.end() ? nullptr : it->second;
  }
};

// An assumption available in a generic context. `root` is the index of
// the where-clause constraint it came from and `path` the parent links
// followed from there.
struct Fact {
  Constraint c;
  int root = 0;
  std::vector<int> path;
};

// A concept operation made callable by a fact.
struct Surrogate {
  std::string name;
  TypeRef sig = nullptr;
  int fact = 0;
  int op = 0;
};

struct Context {
  ScopeInfo* scope = nullptr;
  std::vector<std::string> type_params;
  std::vector<Fact> facts;
  int num_roots = 0;
  std::vector<Surrogate> surrogates;
  types::CongruenceGraph graph;
  const ConceptInfo* in_concept = nullptr;
  const ModelInfo* self_model = nullptr;
  const ModelInfo* in_model = nullptr;
  std::vector<std::map<std::string, TypeRef>> aliases;
  bool hide_surrogates = false;

  bool is_type_param(const std::string& n) const {
    for (const auto& p : type_params)
      if (p == n) return true;
    return false;
  }
};

// The projection `C<args>.member` re-expressed on the concept that
// declares `member`, following refinements. Null if no such member.
TypeRef canonical_proj(const Registry& reg, const std::string& concept_name,
                       const std::vector<TypeRef>& args,
                       const std::string& member);

// Rules visible from a scope, innermost first.
std::vector<const ModelInfo*> visible_rules(const ScopeInfo* scope);

}  // namespace g::sema

#endif  // G_SEMA_CONTEXT_H_
