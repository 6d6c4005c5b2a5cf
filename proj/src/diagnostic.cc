#include "g/diagnostic.h"

#include <algorithm>

namespace g {

const std::string& SourceLocation::filename() const {
  static const std::string kUnknown = "<unknown>";
  return file ? *file : kUnknown;
}

std::string Diagnostic::render() const {
  std::string out = loc.filename() + ":" + std::to_string(loc.line) + ":\n";
  out += message;
  out += '\n';
  return out;
}

void DiagnosticSink::error(const SourceLocation& loc, std::string message,
                           std::string goal) {
  diags_.push_back(
      Diagnostic{loc, Severity::kError, std::move(message), std::move(goal)});
}

void DiagnosticSink::append(const std::vector<Diagnostic>& ds) {
  diags_.insert(diags_.end(), ds.begin(), ds.end());
}

std::size_t DiagnosticSink::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(diags_.begin(), diags_.end(), [](const Diagnostic& d) {
        return d.severity == Severity::kError;
      }));
}

void print_diagnostics(std::ostream& out, const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds) out << d.render();
}

}  // namespace g
