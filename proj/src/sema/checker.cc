#include "g/sema/checker.h"

#include "checker_impl.h"

namespace g::sema {

Checker::Checker(CheckOptions opts) : impl_(std::make_unique<CheckerImpl>(opts)) {}
Checker::~Checker() = default;

void Checker::check_unit(syntax::Program& program, const std::string& file,
                         bool is_prelude) {
  impl_->check_unit(program, file, is_prelude);
}

const DiagnosticSink& Checker::diagnostics() const { return impl_->sink; }

const FunctionInfo* Checker::find_global_function(const std::string& name) const {
  auto it = impl_->global->funs.find(name);
  if (it == impl_->global->funs.end()) return nullptr;
  for (const FunctionInfo* f : it->second)
    if (f->has_body) return f;
  return it->second.empty() ? nullptr : it->second.front();
}

const std::vector<GlobalVar*>& Checker::globals() const { return impl_->globals; }

const std::vector<DeductionRecord>& Checker::deductions() const {
  return impl_->deductions;
}

const CheckStats& Checker::stats() const { return impl_->stats; }

}  // namespace g::sema
