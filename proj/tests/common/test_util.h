#ifndef G_TESTS_TEST_UTIL_H_
#define G_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "g/driver/driver.h"

namespace g::testing {

// A source file written to a scratch directory and checked or run
// through a driver session. The session stays alive for inspection.
struct Program {
  std::string path;
  std::ostringstream out;
  std::ostringstream err;
  std::unique_ptr<driver::Session> session;
  int code = -1;

  const sema::Checker& checker() const { return *session->checker(); }
  const interp::Interpreter& interp() const { return *session->interpreter(); }
};

inline std::string scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "g_unit_tests";
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline std::string write_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::path(scratch_dir()) / name;
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p) << text;
  return p.string();
}

inline std::unique_ptr<Program> load(const std::string& path, bool run,
                                     driver::ToolConfig cfg = {}) {
  auto p = std::make_unique<Program>();
  p->path = path;
  p->session = std::make_unique<driver::Session>(cfg, p->out, p->err);
  p->code = run ? p->session->run(path) : p->session->check(path);
  return p;
}

inline std::unique_ptr<Program> check(const std::string& name, const std::string& text,
                                      driver::ToolConfig cfg = {}) {
  return load(write_file(name, text), false, cfg);
}

inline std::unique_ptr<Program> run(const std::string& name, const std::string& text,
                                    driver::ToolConfig cfg = {}) {
  return load(write_file(name, text), true, cfg);
}

inline std::string corpus(const std::string& rel) {
  return std::string(G_SOURCE_DIR) + "/corpus/" + rel;
}

}  // namespace g::testing

#endif  // G_TESTS_TEST_UTIL_H_
