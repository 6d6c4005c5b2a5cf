#include <gtest/gtest.h>

#include "g/types/type.h"
#include "test_util.h"

namespace g {
namespace {

using testing::check;
using testing::run;

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

TEST(Checker, MissingModelMessage) {
  auto p = check("missing.g", R"(
concept C<T> { };
fun need<T> where { C<T> } (T x) { }
fun main() -> int@ { need(true); return 0; }
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_TRUE(has(p->err.str(), "missing.g:4:\nIn application need(true),\nModel C<bool>\n"
                                "needed to satisfy requirement, but it is not defined.\n"))
      << p->err.str();
}

TEST(Checker, SameTypeRequirementCheckedAfterDeduction) {
  auto p = check("same.g", R"(
fun f<T, S> where { T == S } (T a, S b) -> T { return a; }
fun main() -> int@ { f(1, 2); f(1, true); return 0; }
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_TRUE(has(p->err.str(), "Same type requirement violated, int != bool"))
      << p->err.str();
  EXPECT_EQ(p->checker().diagnostics().error_count(), 1u);
}

TEST(Checker, ConditionalBranchesMustAgree) {
  auto p = check("cond.g", R"(
struct a { };
fun main() -> int@ { let x = true ? 1 : @a(); return 0; }
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_TRUE(has(p->err.str(), "The two branches of the conditional expression must "
                                "have the same type or one must be coercible to the "
                                "other."))
      << p->err.str();
}

TEST(Checker, ConditionalBranchesMayCoerce) {
  auto p = run("coerce.g", "fun main() -> int@ { return d2i(true ? 1 : 2.5); }\n");
  EXPECT_EQ(p->code, 1) << p->err.str();
}

TEST(Checker, ReturnTypeMismatch) {
  auto p = check("ret.g", "fun f() -> int@ { return true; }\n");
  EXPECT_EQ(p->code, 1);
  EXPECT_TRUE(has(p->err.str(), "Type (bool) does not match type (int)")) << p->err.str();
}

TEST(Checker, SurrogatesAreTheOnlyOperationsInAGenericBody) {
  auto ok = check("sur.g", R"(
concept Show<T> { fun show(T) -> int@; };
fun twice<T> where { Show<T> } (T x) -> int@ { return show(x) + show(x); }
)");
  EXPECT_EQ(ok->code, 0) << ok->err.str();
  auto bad = check("nosur.g", R"(
fun show(int x) -> int@ { return x; }
fun twice<T>(T x) -> int@ { return show(x); }
)");
  EXPECT_EQ(bad->code, 1);
}

TEST(Checker, ModelMustProvideEveryOperation) {
  auto p = check("member.g", R"(
struct s { };
concept Show<T> { fun show(T) -> int@; };
model Show<s> { };
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_TRUE(has(p->err.str(), "show")) << p->err.str();
}

TEST(Checker, ConceptDefaultFillsAMissingOperation) {
  auto p = run("default.g", R"(
struct s { };
concept Show<T> { fun show(T x) -> int@ { return 7; } };
model Show<s> { };
fun use_it<T> where { Show<T> } (T x) -> int@ { return show(x); }
fun main() -> int@ { return use_it(@s()); }
)");
  EXPECT_EQ(p->code, 7) << p->err.str();
}

TEST(Checker, DeductionRecordForApply) {
  auto p = check("apply.g", R"(
fun apply<T>(fun(T)->T f, T x) -> T { return f(x); }
fun id<U>(U a) -> U { return a; }
fun main() -> int@ { return apply(id, 0); }
)");
  ASSERT_EQ(p->code, 0) << p->err.str();
  const sema::DeductionRecord* rec = nullptr;
  for (const auto& d : p->checker().deductions())
    if (d.callee == "apply") rec = &d;
  ASSERT_NE(rec, nullptr);
  ASSERT_EQ(rec->param_types.size(), 2u);
  EXPECT_EQ(types::to_string(rec->param_types[0]), "fun(int)->int");
  EXPECT_EQ(types::to_string(rec->param_types[1]), "int");
  EXPECT_EQ(types::to_string(rec->ret), "int");
}

TEST(Checker, FirstClassPolymorphicParameter) {
  auto p = run("poly.g", R"(
fun foo(fun<T>(T)->T f) -> int@ { return f(1) + d2i(f(-1.0)); }
fun id<T>(T x) -> T { return x; }
fun main() -> int@ { return foo(id) + 5; }
)");
  EXPECT_EQ(p->code, 5) << p->err.str();
}

TEST(Checker, PrintEqualities) {
  driver::ToolConfig cfg;
  cfg.print_equalities = true;
  auto p = check("eq.g", R"(
concept C<U> { type bar; };
fun f<S, T> where { C<S>, S == T, C<T>.bar == int } (S a) -> T { return a; }
)", cfg);
  EXPECT_EQ(p->code, 0) << p->err.str();
  EXPECT_TRUE(has(p->out.str(), "f")) << p->out.str();
  EXPECT_TRUE(has(p->out.str(), "= int")) << p->out.str();
}

TEST(Checker, AssociatedTypesAreNotInjective) {
  auto p = check("assoc.g", R"(
concept C<U> { type bar; };
fun foo<S, T> where { C<S>, C<T>, C<S>.bar == C<T>.bar } (S a) -> T { return a; }
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_TRUE(has(p->err.str(), "Type (S) does not match type (T)")) << p->err.str();
}

TEST(Checker, CongruenceThroughConstructors) {
  auto p = check("bar.g", R"(
struct bar<U> { };
fun f<S, T> where { bar<S> == bar<T> } (S a) -> T { return a; }
fun g<S, T> where { S == T } (fun(S)->S h) -> (fun(T)->T)@ { return h; }
)");
  EXPECT_EQ(p->code, 0) << p->err.str();
}

TEST(Checker, ErrorsAreReportedPerUnit) {
  auto p = check("two.g", R"(
fun f() -> int@ { return true; }
fun g() -> bool@ { return 1; }
)");
  EXPECT_EQ(p->code, 1);
  EXPECT_EQ(p->checker().diagnostics().error_count(), 2u) << p->err.str();
}

}  // namespace
}  // namespace g
