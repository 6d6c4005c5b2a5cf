#include <gtest/gtest.h>

#include "test_util.h"

namespace g {
namespace {

using testing::run;

TEST(Interp, ExitCodeIsMainsResult) {
  auto p = run("exit.g", "fun main() -> int@ { return 6 * 7; }\n");
  EXPECT_EQ(p->code, 42);
}

TEST(Interp, OutOfBoundsDereferenceFaults) {
  auto p = run("oob.g", R"(fun main() -> int@ {
  let a = new int[8];
  return *(a + 9);
}
)");
  EXPECT_EQ(p->code, 101);
  EXPECT_TRUE(p->session->run_result().fault);
  EXPECT_EQ(p->err.str(), p->path + ":3: runtime fault: pointer dereference out of "
                                    "bounds (offset 9, size 8)\n");
}

TEST(Interp, PointerArithmeticWithinABlock) {
  auto p = run("ptr.g", R"(fun main() -> int@ {
  let a = new int[8];
  for (let i = 0; i != 8; ++i) a[i] = i * i;
  let b = a + 5;
  if (a - a != 0 or b - a != 5 or *b != 25 or not (a < b)) return 1;
  let e = a + 8;
  return e - b;
}
)");
  EXPECT_EQ(p->code, 3) << p->err.str();
}

TEST(Interp, ComparingPointersIntoDifferentBlocksFaults) {
  auto p = run("blocks.g", R"(fun main() -> int@ {
  let a = new int[2];
  let b = new int[2];
  if (a < b) return 1;
  return 0;
}
)");
  EXPECT_EQ(p->code, 101);
}

TEST(Interp, DivisionByZeroFaults) {
  auto p = run("div.g", "fun main() -> int@ { let z = 0; return 1 / z; }\n");
  EXPECT_EQ(p->code, 101);
  EXPECT_NE(p->err.str().find("runtime fault"), std::string::npos);
}

TEST(Interp, UninitializedReadFaults) {
  auto p = run("uninit.g", "fun main() -> int@ { let a = new int*[1]; return *a[0]; }\n");
  EXPECT_EQ(p->code, 101);
}

TEST(Interp, ByValueParametersCopy) {
  auto p = run("copy.g", R"(
struct cell { int v; };
model Regular<cell> { };
fun bump(cell@ c) -> int@ { c.v = c.v + 1; return c.v; }
fun bump_in_place(cell! c) -> int@ { c.v = c.v + 10; return c.v; }
fun main() -> int@ {
  let c = @cell();
  c.v = 1;
  let r = bump(c);
  if (r != 2 or c.v != 1) return 1;
  bump_in_place(c);
  return c.v;
}
)");
  EXPECT_EQ(p->code, 11) << p->err.str();
}

TEST(Interp, LetCopiesStructs) {
  auto p = run("let.g", R"(
struct cell { int v; };
fun main() -> int@ {
  let a = @cell();
  a.v = 3;
  let b = a;
  b.v = 4;
  return a.v * 10 + b.v;
}
)");
  EXPECT_EQ(p->code, 34) << p->err.str();
}

TEST(Interp, CallCountsPerFunction) {
  auto p = run("count.g", R"(
fun fib(int n) -> int@ { if (n < 2) return n; return fib(n - 1) + fib(n - 2); }
fun main() -> int@ { return fib(10) - 55; }
)");
  ASSERT_EQ(p->code, 0) << p->err.str();
  EXPECT_EQ(p->interp().calls("fib"), 177);
  EXPECT_EQ(p->interp().calls("main"), 1);
  EXPECT_EQ(p->interp().fallback_lookups(), 0);
}

TEST(Interp, Printf) {
  auto p = run("printf.g", R"(fun main() -> int@ {
  printf("%d|%5d|%x|%c|%s|%.2f|%%\n", -3, 42, 255, 'z', "hi", 1.5);
  return 0;
}
)");
  EXPECT_EQ(p->code, 0) << p->err.str();
  EXPECT_EQ(p->out.str(), "-3|   42|ff|z|hi|1.50|%\n");
}

TEST(Interp, RunawayRecursionFaults) {
  auto p = run("deep.g", R"(
fun down(int n) -> int@ { return down(n + 1); }
fun main() -> int@ { return down(0); }
)");
  EXPECT_EQ(p->code, 101);
  EXPECT_NE(p->err.str().find("call depth limit exceeded"), std::string::npos);
}

TEST(Interp, ClosuresCaptureByValue) {
  auto p = run("closure.g", R"(
fun call(fun(int)->int@ f, int x) -> int@ { return f(x); }
fun main() -> int@ {
  let k = 5;
  let f = fun(int x) k=k : x + k;
  k = 100;
  return call(f, 2);
}
)");
  EXPECT_EQ(p->code, 7) << p->err.str();
}

TEST(Interp, ConstructorsRunInitListThenBody) {
  auto p = run("ctor.g", R"(
class acc {
  acc(int start) : v(start) { v = v * 2; }
  int v;
};
fun main() -> int@ { let a = @acc(4); return a.v; }
)");
  EXPECT_EQ(p->code, 8) << p->err.str();
}

TEST(Interp, DictionariesFollowTheCallSite) {
  auto p = run("dict.g", R"(
concept Id<T> { fun tag(T) -> int@; };
fun get<T> where { Id<T> } (T x) -> int@ { return tag(x); }
module A {
  model Id<int> { fun tag(int x) -> int@ { return 1; } };
  fun a() -> int@ { return get(0); }
}
module B {
  model Id<int> { fun tag(int x) -> int@ { return 2; } };
  fun b() -> int@ { return get(0); }
}
fun main() -> int@ { return A.a() * 10 + B.b(); }
)");
  EXPECT_EQ(p->code, 12) << p->err.str();
}

TEST(Interp, EntryMustExist) {
  driver::ToolConfig cfg;
  cfg.entry = "start";
  auto p = run("entry.g", "fun start() -> int@ { return 9; }\n", cfg);
  EXPECT_EQ(p->code, 9);
  auto q = run("noentry.g", "fun other() -> int@ { return 9; }\n");
  EXPECT_NE(q->code, 0);
}

}  // namespace
}  // namespace g
