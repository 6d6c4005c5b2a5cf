#ifndef G_DRIVER_DRIVER_H_
#define G_DRIVER_DRIVER_H_

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "g/diagnostic.h"
#include "g/interp/interpreter.h"
#include "g/sema/checker.h"
#include "g/syntax/ast.h"

namespace g::driver {

struct ToolConfig {
  enum class Command { kCheck, kRun };
  Command command = Command::kCheck;
  std::string entry = "main";
  int solver_depth = 512;
  bool trace_solver = false;
  bool print_ast = false;
  bool print_equalities = false;
  bool no_prelude = false;
  std::vector<std::string> search_paths;
  int max_call_depth = 5000;
};

struct CompilationUnit {
  std::string path;
  syntax::Program ast;
  std::vector<std::string> deps;  // resolved paths of `use` targets
  bool checked = false;
};

struct ResolveResult {
  std::vector<std::unique_ptr<CompilationUnit>> units;  // dependencies first
  std::vector<Diagnostic> diagnostics;
  int exit_code = 0;  // 0, 1 (parse error or cycle) or 2 (missing file)
};

// Loads `root` and everything it reaches through `use "file"`, in
// depth-first post-order. A file is looked up next to the file that uses
// it, then in each search path. Each file is loaded once.
ResolveResult resolve_uses(const std::string& root,
                           const std::vector<std::string>& search_paths);

const std::string& prelude_source();
inline constexpr const char* kPreludeName = "<prelude>";

// One check or run over a root file. Results stay inspectable after the
// call.
class Session {
 public:
  Session(ToolConfig config, std::ostream& out, std::ostream& err);
  ~Session();

  int check(const std::string& root);
  // Checks, then runs the entry function.
  int run(const std::string& root);

  const sema::Checker* checker() const { return checker_.get(); }
  const interp::Interpreter* interpreter() const { return interp_.get(); }
  const std::vector<std::unique_ptr<CompilationUnit>>& units() const {
    return units_;
  }
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  const interp::RunResult& run_result() const { return result_; }

 private:
  ToolConfig config_;
  std::ostream& out_;
  std::ostream& err_;
  syntax::Program prelude_;
  std::vector<std::unique_ptr<CompilationUnit>> units_;
  std::vector<Diagnostic> diags_;
  std::unique_ptr<sema::Checker> checker_;
  std::unique_ptr<interp::Interpreter> interp_;
  interp::RunResult result_;
};

int cmd_check(const ToolConfig& config, const std::string& root,
              std::ostream& out, std::ostream& err);
int cmd_run(const ToolConfig& config, const std::string& root,
            std::ostream& out, std::ostream& err);

}  // namespace g::driver

#endif  // G_DRIVER_DRIVER_H_
