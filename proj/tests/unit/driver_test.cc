#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "test_util.h"

namespace g {
namespace {

using testing::write_file;

std::string base(const std::string& p) {
  return std::filesystem::path(p).filename().string();
}

TEST(Driver, UsesLoadOnceDependenciesFirst) {
  write_file("dag/d.g", "concept D<T> { };\n");
  write_file("dag/c.g", "use \"d.g\";\nfun c() -> int@ { return 1; }\n");
  write_file("dag/a.g", "use \"c.g\";\nfun a() -> int@ { return c() + 1; }\n");
  write_file("dag/b.g", "use \"c.g\";\nuse \"d.g\";\nfun b() -> int@ { return c() + 2; }\n");
  std::string root = write_file(
      "dag/root.g", "use \"a.g\";\nuse \"b.g\";\nfun main() -> int@ { return a() * b(); }\n");

  auto rr = driver::resolve_uses(root, {});
  ASSERT_EQ(rr.exit_code, 0);
  ASSERT_EQ(rr.units.size(), 5u);
  std::vector<std::string> order;
  for (const auto& u : rr.units) order.push_back(base(u->path));
  EXPECT_EQ(order, (std::vector<std::string>{"d.g", "c.g", "a.g", "b.g", "root.g"}));

  auto p = testing::load(root, true);
  EXPECT_EQ(p->code, 6) << p->err.str();
  for (const auto& u : p->session->units()) EXPECT_TRUE(u->checked);
}

TEST(Driver, SelfUseIsACycle) {
  std::string f = write_file("cyc/self.g", "use \"self.g\";\n");
  auto p = testing::load(f, false);
  EXPECT_EQ(p->code, 1);
  EXPECT_NE(p->err.str().find("Cyclic use of file"), std::string::npos) << p->err.str();
}

TEST(Driver, MutualUseIsACycle) {
  write_file("cyc/x.g", "use \"y.g\";\n");
  write_file("cyc/y.g", "use \"x.g\";\n");
  auto p = testing::load(testing::scratch_dir() + "/cyc/x.g", false);
  EXPECT_EQ(p->code, 1);
  EXPECT_NE(p->err.str().find("Cyclic use of file"), std::string::npos) << p->err.str();
}

TEST(Driver, MissingUseTargetIsAnIoError) {
  auto p = testing::check("missing_use.g", "use \"nowhere.g\";\n");
  EXPECT_EQ(p->code, 2);
  EXPECT_NE(p->err.str().find("Cannot find file nowhere.g"), std::string::npos);
}

TEST(Driver, MissingRootIsAnIoError) {
  auto p = testing::load(testing::scratch_dir() + "/absent.g", false);
  EXPECT_EQ(p->code, 2);
}

TEST(Driver, ParseErrorIsAStaticError) {
  auto p = testing::check("syntax.g", "fun main( -> int@ { return 0; }\n");
  EXPECT_EQ(p->code, 1);
}

TEST(Driver, SearchPathsAreTriedAfterTheUsingFile) {
  write_file("lib/helper.g", "fun helper() -> int@ { return 4; }\n");
  std::string root = write_file("app/main.g",
                                "use \"helper.g\";\nfun main() -> int@ { return helper(); }\n");
  auto without = testing::load(root, true);
  EXPECT_EQ(without->code, 2);
  driver::ToolConfig cfg;
  cfg.search_paths.push_back(testing::scratch_dir() + "/lib");
  auto with = testing::load(root, true, cfg);
  EXPECT_EQ(with->code, 4) << with->err.str();
}

TEST(Driver, NoPreludeLeavesOnlyBuiltins) {
  driver::ToolConfig cfg;
  cfg.no_prelude = true;
  auto p = testing::check("bare.g", "concept Regular<T> { };\nfun f() -> int@ { return 1; }\n",
                          cfg);
  EXPECT_EQ(p->code, 0) << p->err.str();
  auto q = testing::check("dup.g", "concept Regular<T> { };\n");
  EXPECT_EQ(q->code, 1);
}

TEST(Driver, PrintAstDumpsEachUnit) {
  driver::ToolConfig cfg;
  cfg.print_ast = true;
  auto p = testing::check("ast.g", "fun f() -> int@ { return 1; }\n", cfg);
  EXPECT_EQ(p->code, 0);
  EXPECT_FALSE(p->out.str().empty());
}

int shell(const std::string& args) {
  std::string cmd = std::string(G_BINARY) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(Cli, ExitCodes) {
  std::string ok = write_file("cli/ok.g", "fun main() -> int@ { return 3; }\n");
  std::string bad = write_file("cli/bad.g", "fun main() -> int@ { return true; }\n");
  std::string fault = write_file("cli/fault.g",
                                 "fun main() -> int@ { let a = new int[1]; return a[1]; }\n");
  EXPECT_EQ(shell("check " + ok), 0);
  EXPECT_EQ(shell("run " + ok), 3);
  EXPECT_EQ(shell("check " + bad), 1);
  EXPECT_EQ(shell("run " + fault), 101);
  EXPECT_EQ(shell("run " + testing::scratch_dir() + "/cli/none.g"), 2);
  EXPECT_EQ(shell("frobnicate"), 2);
  EXPECT_EQ(shell("run"), 2);
  EXPECT_EQ(shell("check --solver-depth 0 " + ok), 2);
  EXPECT_EQ(shell("--help"), 0);
}

TEST(Cli, TraceGoesToStdout) {
  std::string f = write_file("cli/trace.g", R"(
fun id<T>(T x) -> T { return x; }
fun main() -> int@ { return id(0); }
)");
  std::string cmd = std::string(G_BINARY) + " check --trace-solver " + f + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string text;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) text += buf;
  pclose(pipe);
  EXPECT_NE(text.find("overload id(0) at "), std::string::npos) << text;
}

}  // namespace
}  // namespace g
