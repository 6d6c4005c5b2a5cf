#ifndef G_DIAGNOSTIC_H_
#define G_DIAGNOSTIC_H_

#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace g {

struct SourceLocation {
  std::shared_ptr<const std::string> file;
  int line = 1;
  int column = 1;

  const std::string& filename() const;
};

enum class Severity { kError, kNote };

// A located message. The rendered form is "FILE:LINE:" followed by a newline
// and the message text.
struct Diagnostic {
  SourceLocation loc;
  Severity severity = Severity::kError;
  std::string message;
  // For missing-model failures: the goal that could not be satisfied.
  std::string goal;

  std::string render() const;
};

class DiagnosticSink {
 public:
  void error(const SourceLocation& loc, std::string message,
             std::string goal = {});
  void add(Diagnostic d) { diags_.push_back(std::move(d)); }
  void append(const std::vector<Diagnostic>& ds);

  const std::vector<Diagnostic>& all() const { return diags_; }
  std::size_t error_count() const;
  bool has_errors() const { return error_count() != 0; }
  void clear() { diags_.clear(); }

 private:
  std::vector<Diagnostic> diags_;
};

void print_diagnostics(std::ostream& out, const std::vector<Diagnostic>& ds);

}  // namespace g

#endif  // G_DIAGNOSTIC_H_
