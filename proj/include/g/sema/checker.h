#ifndef G_SEMA_CHECKER_H_
#define G_SEMA_CHECKER_H_

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "g/diagnostic.h"
#include "g/sema/entities.h"
#include "g/sema/solver.h"
#include "g/syntax/ast.h"

namespace g::sema {

struct CheckOptions {
  SolverOptions solver;
  std::ostream* equalities = nullptr;  // per-function type equalities
};

// A deduced application, kept for inspection by tools and tests.
struct DeductionRecord {
  std::string callee;
  SourceLocation loc;
  Subst theta;                      // callee quantifiers
  std::vector<TypeRef> arg_types;   // as written
  std::vector<TypeRef> param_types; // after instantiation
  TypeRef ret = nullptr;
};

struct CheckStats {
  int bodies_checked = 0;
  int generic_bodies_checked = 0;
  // Model rules consulted for goals over a generic body's own type
  // parameters; surrogates cover those, so this stays at zero unless a
  // corpus program deliberately relies on a conditional model.
  int generic_rule_uses = 0;
  long solver_lookups = 0;
};

class CheckerImpl;

// Checks compilation units in order against one shared environment.
// Annotations are written into the AST, which must outlive the checker's
// results.
class Checker {
 public:
  explicit Checker(CheckOptions opts = {});
  ~Checker();
  Checker(const Checker&) = delete;
  Checker& operator=(const Checker&) = delete;

  void check_unit(syntax::Program& program, const std::string& file,
                  bool is_prelude = false);

  const DiagnosticSink& diagnostics() const;
  const FunctionInfo* find_global_function(const std::string& name) const;
  const std::vector<GlobalVar*>& globals() const;
  const std::vector<DeductionRecord>& deductions() const;
  const CheckStats& stats() const;

 private:
  std::unique_ptr<CheckerImpl> impl_;
};

}  // namespace g::sema

#endif  // G_SEMA_CHECKER_H_
