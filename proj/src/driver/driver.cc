#include "g/driver/driver.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "g/syntax/parser.h"
#include "g/syntax/printer.h"

namespace g::driver {

namespace fs = std::filesystem;

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return static_cast<bool>(in) || in.eof();
}

std::string key_of(const std::string& path) {
  std::error_code ec;
  fs::path p = fs::weakly_canonical(path, ec);
  return ec ? fs::path(path).lexically_normal().string() : p.string();
}

class Resolver {
 public:
  Resolver(const std::vector<std::string>& search) : search_(search) {}

  ResolveResult result;

  std::string locate(const std::string& name, const std::string& from) {
    std::vector<fs::path> tries;
    if (fs::path(name).is_absolute()) {
      tries.push_back(name);
    } else {
      tries.push_back(fs::path(from).parent_path() / name);
      for (const auto& dir : search_) tries.push_back(fs::path(dir) / name);
    }
    for (const auto& t : tries) {
      std::error_code ec;
      if (fs::is_regular_file(t, ec)) return t.lexically_normal().string();
    }
    return {};
  }

  void error(const SourceLocation& loc, std::string msg, int code) {
    result.diagnostics.push_back(Diagnostic{loc, Severity::kError, std::move(msg), {}});
    if (result.exit_code != 2) result.exit_code = code;
  }

  void load(const std::string& path, const SourceLocation& from) {
    std::string key = key_of(path);
    if (done_.count(key)) return;
    if (active_.count(key)) {
      error(from, "Cyclic use of file " + path, 1);
      return;
    }
    std::string text;
    if (!read_file(path, text)) {
      error(from, "Cannot read file " + path, 2);
      return;
    }
    active_.insert(key);
    auto unit = std::make_unique<CompilationUnit>();
    unit->path = path;
    syntax::ParseResult pr = syntax::parse_source(text, path);
    if (!pr.ok()) {
      result.diagnostics.insert(result.diagnostics.end(), pr.diagnostics.begin(),
                                pr.diagnostics.end());
      if (result.exit_code == 0) result.exit_code = 1;
    }
    unit->ast = std::move(pr.program);
    for (const auto& d : unit->ast) {
      const auto* u = std::get_if<syntax::UseFileDecl>(&d->node);
      if (!u) continue;
      std::string target = locate(u->file, path);
      if (target.empty()) {
        error(d->loc, "Cannot find file " + u->file, 2);
        continue;
      }
      unit->deps.push_back(target);
      load(target, d->loc);
    }
    active_.erase(key);
    done_.insert(key);
    result.units.push_back(std::move(unit));
  }

 private:
  const std::vector<std::string>& search_;
  std::set<std::string> active_;
  std::set<std::string> done_;
};

}  // namespace

ResolveResult resolve_uses(const std::string& root,
                           const std::vector<std::string>& search_paths) {
  Resolver r(search_paths);
  SourceLocation loc;
  loc.file = std::make_shared<const std::string>(root);
  std::error_code ec;
  if (!fs::is_regular_file(root, ec)) {
    r.error(loc, "Cannot read file " + root, 2);
    return std::move(r.result);
  }
  r.load(root, loc);
  return std::move(r.result);
}

Session::Session(ToolConfig config, std::ostream& out, std::ostream& err)
    : config_(std::move(config)), out_(out), err_(err) {}

Session::~Session() = default;

int Session::check(const std::string& root) {
  ResolveResult rr = resolve_uses(root, config_.search_paths);
  units_ = std::move(rr.units);
  diags_ = rr.diagnostics;
  if (rr.exit_code != 0) {
    print_diagnostics(err_, diags_);
    return rr.exit_code;
  }
  if (config_.print_ast)
    for (const auto& u : units_) out_ << syntax::dump_ast(u->ast);

  sema::CheckOptions opts;
  opts.solver.depth_limit = config_.solver_depth;
  if (config_.trace_solver) opts.solver.trace = &out_;
  if (config_.print_equalities) opts.equalities = &out_;
  checker_ = std::make_unique<sema::Checker>(opts);

  if (!config_.no_prelude) {
    syntax::ParseResult pr = syntax::parse_source(prelude_source(), kPreludeName);
    if (!pr.ok()) {
      diags_ = pr.diagnostics;
      print_diagnostics(err_, diags_);
      return 1;
    }
    prelude_ = std::move(pr.program);
    checker_->check_unit(prelude_, kPreludeName, true);
  }
  for (auto& u : units_) {
    checker_->check_unit(u->ast, u->path);
    u->checked = true;
  }
  diags_ = checker_->diagnostics().all();
  print_diagnostics(err_, diags_);
  return checker_->diagnostics().has_errors() ? 1 : 0;
}

int Session::run(const std::string& root) {
  int rc = check(root);
  if (rc != 0) return rc;
  interp::InterpOptions io;
  io.max_call_depth = config_.max_call_depth;
  interp_ = std::make_unique<interp::Interpreter>(*checker_, out_, io);
  result_ = interp_->run(config_.entry);
  out_.flush();
  if (result_.fault) err_ << result_.fault_text << "\n";
  return result_.exit_code;
}

int cmd_check(const ToolConfig& config, const std::string& root,
              std::ostream& out, std::ostream& err) {
  Session s(config, out, err);
  return s.check(root);
}

int cmd_run(const ToolConfig& config, const std::string& root,
            std::ostream& out, std::ostream& err) {
  Session s(config, out, err);
  return s.run(root);
}

}  // namespace g::driver
