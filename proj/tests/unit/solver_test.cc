#include <gtest/gtest.h>

#include "g/sema/solver.h"
#include "g/types/type.h"
#include "test_util.h"

namespace g {
namespace {

using testing::check;
using testing::run;

const char* kAckModels = R"(
struct zero { };
struct suc<n> { };
concept Ack<x,y> { type result; };
model <y> Ack<zero,y> { type result = suc<y>; };
model <x> where { Ack<x, suc<zero> > }
Ack<suc<x>, zero> { type result = Ack<x, suc<zero> >.result; };
model <x,y> where { Ack<suc<x>,y>, Ack<x, Ack<suc<x>,y>.result > }
Ack< suc<x>,suc<y> > {
  type result = Ack<x, Ack<suc<x>,y>.result >.result;
};
fun foo(int) { }
)";

long ack(long m, long n) {
  if (m == 0) return n + 1;
  if (n == 0) return ack(m - 1, 1);
  return ack(m - 1, ack(m, n - 1));
}

std::string numeral(long n) {
  std::string s = "zero";
  for (long i = 0; i < n; ++i) s = "suc<" + s + ">";
  return s;
}

std::string numeral_spaced(long n) {
  std::string s = "zero";
  for (long i = 0; i < n; ++i) s = "suc< " + s + " >";
  return s;
}

TEST(Solver, AckermannModelsComputeAckermann) {
  for (long m = 0; m <= 3; ++m) {
    for (long n = 0; n <= (m == 3 ? 1 : 3); ++n) {
      std::string src = std::string(kAckModels) + "fun main() -> int@ {\n  foo(@Ack<" +
                        numeral_spaced(m) + ", " + numeral_spaced(n) + ">.result());\n}\n";
      auto p = check("ack.g", src);
      EXPECT_EQ(p->code, 1) << m << "," << n;
      EXPECT_NE(p->err.str().find("Type (" + numeral(ack(m, n)) +
                                  ") does not match type (int)"),
                std::string::npos)
          << "Ack(" << m << "," << n << "): " << p->err.str();
    }
  }
}

TEST(Solver, DivergentRulesHitTheDepthLimit) {
  driver::ToolConfig cfg;
  cfg.solver_depth = 20;
  auto p = check("loop.g", R"(
struct zero { };
struct suc<n> { };
concept Loop<x> { };
model <x> where { Loop<suc<x>> } Loop<x> { };
fun need<T> where { Loop<T> } (T x) { }
fun main() -> int@ { need(@zero()); return 0; }
)", cfg);
  EXPECT_EQ(p->code, 1);
  EXPECT_NE(p->err.str().find("exceeded the depth limit of 20"), std::string::npos)
      << p->err.str();
}

TEST(Solver, SelfDependentRuleIsNotAModel) {
  auto p = check("cyc.g", R"(
concept P<x> { };
model <x> where { P<x> } P<x> { };
fun need<T> where { P<T> } (T x) { }
fun main() -> int@ { need(1); return 0; }
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_NE(p->err.str().find("Model P<int>\nneeded to satisfy requirement, but it is "
                              "not defined."),
            std::string::npos)
      << p->err.str();
}

TEST(Solver, IncomparableRulesAreAmbiguous) {
  auto p = check("amb.g", R"(
concept C<a, b> { };
model <T> C<T, int> { };
model <T> C<int, T> { };
fun need<A, B> where { C<A, B> } (A x, B y) { }
fun main() -> int@ { need(1, 2); return 0; }
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_NE(p->err.str().find("Ambiguous models for C<int,int>"), std::string::npos)
      << p->err.str();
}

TEST(Solver, MostSpecificRuleWins) {
  auto p = run("spec.g", R"(
concept C<T> { fun f(T) -> int@; };
model <T> C<T> { fun f(T x) -> int@ { return 1; } };
model <T> C<T*> { fun f(T* x) -> int@ { return 2; } };
fun g<T> where { C<T> } (T x) -> int@ { return f(x); }
fun main() -> int@ { let p = new int[1]; return g(p) * 10 + g(3); }
)");
  EXPECT_EQ(p->code, 21) << p->err.str();
}

TEST(Solver, ConditionalModelNeedsItsWhereClause) {
  auto p = check("cond.g", R"(
concept Comparable<T> { fun operator==(T,T)->bool@; };
model Comparable<int> { };
struct box<T> { };
struct opaque { };
model <T> where { Comparable<T> }
Comparable< box<T> > {
  fun operator==(box<T> x, box<T> y) -> bool@ { return true; }
};
fun same<C> where { Comparable<C> } (C a, C b) -> bool@ { return a == b; }
fun main() -> int@ {
  same(@box<int>(), @box<int>());
  same(@box<opaque>(), @box<opaque>());
  return 0;
}
)");
  EXPECT_EQ(p->code, 1);
  std::string e = p->err.str();
  EXPECT_EQ(e.find("box<int>"), std::string::npos) << e;
  EXPECT_NE(e.find("Model Comparable<opaque>"), std::string::npos) << e;
}

TEST(Solver, NonGenericModelBeatsGenericRuleAtTheCallSite) {
  auto p = run("fact.g", R"(
concept C<T> { fun f(T) -> int@; };
model <T> C<T> { fun f(T x) -> int@ { return 1; } };
model C<int> { fun f(int x) -> int@ { return 2; } };
fun g<T> where { C<T> } (T x) -> int@ { return f(x); }
fun main() -> int@ { return g(0); }
)");
  EXPECT_EQ(p->code, 2) << p->err.str();
}

TEST(Solver, RuleParametersMustOccurInTheHead) {
  using types::ctor;
  using types::var;
  EXPECT_EQ(sema::validate_model_rule({"T"}, {ctor("list", {var("T")})}), "");
  EXPECT_EQ(sema::validate_model_rule({"T", "U"}, {ctor("list", {var("T")})}), "U");
  auto p = check("badrule.g", R"(
concept C<a> { };
struct list<T> { };
model <T, U> C< list<T> > { };
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_NE(p->err.str().find("U"), std::string::npos) << p->err.str();
}

TEST(Solver, TraceShowsFactsAndRules) {
  driver::ToolConfig cfg;
  cfg.trace_solver = true;
  auto p = check("trace.g", R"(
concept C<T> { };
model <T> C<T*> { };
fun need<T> where { C<T> } (T x) { }
fun main() -> int@ { need(new int[1]); return 0; }
)", cfg);
  EXPECT_EQ(p->code, 0) << p->err.str();
  EXPECT_NE(p->out.str().find("C<int*>"), std::string::npos) << p->out.str();
}

}  // namespace
}  // namespace g
