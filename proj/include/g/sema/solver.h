#ifndef G_SEMA_SOLVER_H_
#define G_SEMA_SOLVER_H_

// Model lookup. A goal C<args> is discharged by a fact of the current
// context or by a model rule whose head matches (modulo the context's
// type equalities) and whose where clause can be discharged in turn.

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "g/sema/context.h"

namespace g::sema {

struct SolverOptions {
  int depth_limit = 512;
  std::ostream* trace = nullptr;
};

struct SolveResult {
  enum class Status { kOk, kNoModel, kAmbiguous, kDepth };
  Status status = Status::kOk;
  WitnessPtr witness;
  Constraint failed;  // innermost goal without a model
  std::string message;
  bool ok() const { return status == Status::kOk; }
};

class Solver {
 public:
  Solver(const Registry& reg, Context& ctx, const SolverOptions& opts);

  SolveResult satisfy(const Constraint& goal);

  // Resolves projections whose arguments have a model rule.
  TypeRef normalize(TypeRef t);
  Constraint normalize(const Constraint& c);
  bool same(TypeRef a, TypeRef b);

  // One-way matching of `pattern` against `target` modulo the context's
  // equalities. Only variables in `flex` may be bound.
  bool match(TypeRef pattern, TypeRef target,
             const std::set<std::string>& flex, Subst& theta);

  // Every goal holds in the context extended with the assumptions.
  bool implies(const std::vector<Constraint>& assumptions,
               const std::vector<Constraint>& goals);

  // The head of `a` is an instance of the head of `b` and the where
  // clause of `a` implies the correspondingly instantiated clause of `b`.
  bool more_specific(const ModelInfo& a, const ModelInfo& b);

  int lookups() const { return lookups_; }

 private:
  struct Candidate {
    const ModelInfo* rule;
    Subst theta;
    std::vector<WitnessPtr> subs;
  };

  SolveResult solve(const Constraint& goal, int depth);
  std::string key_of(const Constraint& goal);
  TypeRef normalize_at(TypeRef t, int depth);
  TypeRef deep_rep(TypeRef t, int depth = 0);

  const Registry& reg_;
  Context& ctx_;
  SolverOptions opts_;
  std::map<std::string, SolveResult> memo_;
  std::set<std::string> active_;
  std::vector<std::string> trace_lines_;
  int lookups_ = 0;
  int level_ = 0;
};

// Adds `c` and everything it refines or requires to the context, asserting
// the concepts' same-type constraints and registering surrogates.
void add_fact(const Registry& reg, Context& ctx, const Constraint& c, int root,
              std::vector<int> path, Solver* normalizer);

// Adds a where clause: model constraints become root facts in order and
// same-type constraints become equalities.
void add_where(const Registry& reg, Context& ctx,
               const std::vector<Constraint>& where, Solver* normalizer);

// A model rule is only well-formed when each type parameter occurs in its
// head. Returns the offending parameter or an empty string.
std::string validate_model_rule(const std::vector<std::string>& params,
                                const std::vector<TypeRef>& head);

}  // namespace g::sema

#endif  // G_SEMA_SOLVER_H_
