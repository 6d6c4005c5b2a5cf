#include <gtest/gtest.h>

#include <cstdio>
#include <random>
#include <sstream>

#include "g/syntax/parser.h"
#include "g/syntax/printer.h"

namespace g::syntax {
namespace {

const char* kInputIterator = R"(
concept InputIterator<X> {
  type value;
  type difference;
  refines EqualityComparable<X>;
  refines Regular<X>; // Regular refines Assignable and CopyConstructible
  require SignedIntegral<difference>;
  fun operator*(X b) -> value@;
  fun operator++(X! c) -> X!;
};
)";

const char* kMerge = R"(
fun merge<Iter1,Iter2,Iter3>
where { InputIterator<Iter1>, InputIterator<Iter2>,
        LessThanComparable<InputIterator<Iter1>.value>,
        InputIterator<Iter1>.value == InputIterator<Iter2>.value,
        OutputIterator<Iter3, InputIterator<Iter1>.value> }
(Iter1@ first1, Iter1 last1, Iter2@ first2, Iter2 last2, Iter3@ result)
  -> Iter3@
{
  while (first1 != last1 and first2 != last2) {
    if (*first2 < *first1) {
      result << *first2; ++first2;
    } else {
      result << *first1; ++first1;
    }
  }
  return copy(first2, last2, copy(first1, last1, result));
}
)";

Program parse_ok(const std::string& src) {
  ParseResult r = parse_source(src, "test.g");
  for (const auto& d : r.diagnostics) ADD_FAILURE() << d.render();
  return std::move(r.program);
}

TEST(Parser, InputIteratorConcept) {
  Program p = parse_ok(kInputIterator);
  ASSERT_EQ(p.size(), 1u);
  auto* c = std::get_if<ConceptDecl>(&p[0]->node);
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->name, "InputIterator");
  int assoc = 0, composition = 0, sigs = 0;
  for (const auto& m : c->members) {
    if (std::holds_alternative<AssocTypeMember>(m.node)) ++assoc;
    if (std::holds_alternative<RefinesMember>(m.node) ||
        std::holds_alternative<RequireMember>(m.node))
      ++composition;
    if (auto* f = std::get_if<FunDecl>(&m.node); f && !f->body) ++sigs;
  }
  EXPECT_EQ(assoc, 2);
  EXPECT_EQ(composition, 3);
  EXPECT_EQ(sigs, 2);
  auto& inc = std::get<FunDecl>(c->members.back().node);
  EXPECT_EQ(inc.name, "operator++");
  EXPECT_EQ(inc.params[0].type.mode, PassMode::kMutRef);
  EXPECT_EQ(inc.ret_mode, PassMode::kMutRef);
}

TEST(Parser, MergeSignature) {
  Program p = parse_ok(kMerge);
  ASSERT_EQ(p.size(), 1u);
  auto& f = std::get<FunDecl>(p[0]->node);
  EXPECT_EQ(f.type_params.size(), 3u);
  EXPECT_EQ(f.where.size(), 5u);
  EXPECT_TRUE(std::holds_alternative<SameTypeConstraint>(f.where[3].node));
  EXPECT_EQ(f.params[0].type.mode, PassMode::kByValue);
  EXPECT_EQ(f.params[1].type.mode, PassMode::kConstRef);
  ASSERT_TRUE(f.body.has_value());
  EXPECT_EQ(f.body->size(), 2u);
}

TEST(Parser, MergeRoundTrip) {
  Program p = parse_ok(kMerge);
  std::string printed = pretty_print(p);
  Program q = parse_ok(printed);
  EXPECT_TRUE(ast_equal(p, q)) << printed;
}

TEST(Parser, EmptyProgram) {
  Program p = parse_ok("");
  EXPECT_TRUE(p.empty());
  EXPECT_EQ(pretty_print(p), "");
}

TEST(Parser, ModelWithoutBodyFailsAtEnd) {
  ParseResult r = parse_source("model C<T,U>", "t.g");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_NE(r.diagnostics[0].message.find("end of input"), std::string::npos);
  EXPECT_NE(r.diagnostics[0].message.find("'{'"), std::string::npos);
}

TEST(Parser, RecoveryReportsSeveralErrors) {
  ParseResult r = parse_source(
      "fun f() -> int@ { return 1 }\n"
      "fun g() -> int@ { return 2; }\n"
      "struct s { int; };\n"
      "fun h() -> int@ { return 3; }\n",
      "t.g");
  EXPECT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].loc.line, 1);
  EXPECT_EQ(r.diagnostics[1].loc.line, 3);
  ASSERT_EQ(r.program.size(), 2u);
  EXPECT_EQ(std::get<FunDecl>(r.program[0]->node).name, "g");
  EXPECT_EQ(std::get<FunDecl>(r.program[1]->node).name, "h");
}

TEST(Parser, ShiftBindsLooserThanConditional) {
  ExprPtr e = parse_expr_text("result << *first == old ? neu : *first");
  ASSERT_TRUE(e);
  auto& b = std::get<BinaryExpr>(e->node);
  EXPECT_EQ(b.op, "<<");
  EXPECT_TRUE(std::holds_alternative<CondExpr>(b.rhs->node));
}

TEST(Parser, ArithmeticPrecedence) {
  ExprPtr e = parse_expr_text("sum - (n * (n-1))/2");
  ASSERT_TRUE(e);
  auto& b = std::get<BinaryExpr>(e->node);
  EXPECT_EQ(b.op, "-");
  EXPECT_EQ(std::get<BinaryExpr>(b.rhs->node).op, "/");
}

TEST(Parser, FunctionExpressions) {
  ExprPtr e = parse_expr_text("fun(int x) p=&sum { *p = *p + x; }");
  ASSERT_TRUE(e);
  auto& f = std::get<FunExpr>(e->node);
  ASSERT_EQ(f.captures.size(), 1u);
  EXPECT_EQ(f.captures[0].name, "p");
  EXPECT_EQ(f.body.size(), 1u);
  ExprPtr g = parse_expr_text("fun(T a,T b) c=cmp: c(a, b)");
  ASSERT_TRUE(g);
  EXPECT_TRUE(std::get<FunExpr>(g->node).expr_body);
}

TEST(Parser, ModelMemberAndInstantiation) {
  ExprPtr e = parse_expr_text("model EqualityComparable<T>.operator==");
  ASSERT_TRUE(e);
  EXPECT_EQ(std::get<ModelMemberExpr>(e->node).member, "operator==");
  ExprPtr i = parse_expr_text("id<|int|>(3)");
  ASSERT_TRUE(i);
  auto& call = std::get<CallExpr>(i->node);
  EXPECT_TRUE(std::holds_alternative<InstExpr>(call.callee->node));
}

TEST(Parser, Types) {
  TypeExprPtr t = parse_type_text("fun<T>(T)->T");
  ASSERT_TRUE(t);
  EXPECT_EQ(std::get<FunType>(t->node).type_params.size(), 1u);
  TypeExprPtr p = parse_type_text("Ack<x, Ack<suc<x>,y>.result >.result");
  ASSERT_TRUE(p);
  auto& proj = std::get<ProjectionType>(p->node);
  EXPECT_EQ(proj.concept_name, "Ack");
  EXPECT_EQ(proj.path, std::vector<std::string>{"result"});
  TypeExprPtr ptr = parse_type_text("list_node<T>*");
  ASSERT_TRUE(ptr);
  EXPECT_TRUE(std::holds_alternative<PointerType>(ptr->node));
  TypeExprPtr paren = parse_type_text("(fun(T)->T)");
  ASSERT_TRUE(paren);
  EXPECT_TRUE(std::holds_alternative<FunType>(paren->node));
}

TEST(Parser, ClassMembers) {
  Program p = parse_ok(R"(
class vg_out_edge_iter {
  vg_out_edge_iter() { }
  vg_out_edge_iter(int src, slist_iterator<int> iter)
    : src(src), iter(iter) { }
  ~vg_out_edge_iter() { }
  slist_iterator<int> iter;
  int src;
};
)");
  ASSERT_EQ(p.size(), 1u);
  auto& c = std::get<ClassDecl>(p[0]->node);
  ASSERT_EQ(c.members.size(), 5u);
  EXPECT_TRUE(std::holds_alternative<CtorDecl>(c.members[0].node));
  EXPECT_EQ(std::get<CtorDecl>(c.members[1].node).inits.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<DtorDecl>(c.members[2].node));
  EXPECT_TRUE(std::holds_alternative<FieldDecl>(c.members[3].node));
}

TEST(Parser, ModulesAndDirectives) {
  Program p = parse_ok(R"(
use "slist.g";
module A {
  public:
  fun f() -> int@ { return 0; }
  private:
  type T = int;
}
scope B = A;
import A.Monoid<int>;
use A;
let black = 0;
)");
  ASSERT_EQ(p.size(), 6u);
  EXPECT_EQ(std::get<UseFileDecl>(p[0]->node).file, "slist.g");
  EXPECT_EQ(std::get<ModuleDecl>(p[1]->node).decls.size(), 4u);
  auto& imp = std::get<ImportDecl>(p[3]->node);
  EXPECT_EQ(imp.path, std::vector<std::string>{"A"});
  EXPECT_EQ(imp.concept_name, "Monoid");
}

TEST(Parser, ChildLocationsWithinParent) {
  Program p = parse_ok(kMerge);
  std::string dump = dump_ast(p, true);
  // Lines are emitted parent-first in source order, so each node's
  // position must not precede its parent's.
  std::vector<std::pair<int, std::pair<int, int>>> stack;
  std::istringstream in(dump);
  std::string line;
  while (std::getline(in, line)) {
    auto at = line.rfind(" @");
    if (at == std::string::npos) continue;
    int depth = static_cast<int>(line.find_first_not_of(' ')) / 2;
    int l = 0, c = 0;
    std::sscanf(line.c_str() + at + 2, "%d:%d", &l, &c);
    while (!stack.empty() && stack.back().first >= depth) stack.pop_back();
    if (!stack.empty()) {
      EXPECT_LE(stack.back().second, std::make_pair(l, c)) << line;
    }
    stack.push_back({depth, {l, c}});
  }
}

// Random expression trees: print, reparse, compare.
class ExprGen {
 public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  ExprPtr gen(int depth) {
    SourceLocation l;
    int choice = depth <= 0 ? pick(4) : pick(17);
    switch (choice) {
      case 0: return make_expr(l, IntLit{pick(100)});
      case 1: return make_expr(l, VarRef{name()});
      case 2: return make_expr(l, FloatLit{1.5, "1.5"});
      case 3: return make_expr(l, StringLit{"s \"q\"\n"});
      case 4: {
        static const char* ops[] = {"=",  "<<", "or", "and", "==", "!=", "<",
                                    ">",  "<=", ">=", "+",   "-",  "*",  "/",
                                    "%"};
        return make_expr(l, BinaryExpr{ops[pick(15)], gen(depth - 1),
                                       gen(depth - 1)});
      }
      case 5: {
        static const char* ops[] = {"*", "&", "-", "++", "--", "not"};
        return make_expr(l, UnaryExpr{ops[pick(6)], gen(depth - 1)});
      }
      case 6:
        return make_expr(l, CondExpr{gen(depth - 1), gen(depth - 1),
                                     gen(depth - 1)});
      case 7: {
        CallExpr c;
        c.callee = gen(depth - 1);
        int n = pick(3);
        for (int i = 0; i < n; ++i) c.args.push_back(gen(depth - 1));
        return make_expr(l, std::move(c));
      }
      case 8: return make_expr(l, IndexExpr{gen(depth - 1), gen(depth - 1)});
      case 9:
        return make_expr(l, MemberExpr{gen(depth - 1), name(), pick(2) == 1});
      case 10: {
        InstExpr i;
        i.fn = gen(depth - 1);
        i.type_args.push_back(type(2));
        return make_expr(l, std::move(i));
      }
      case 11: {
        ConstructExpr c;
        c.type = type(1);
        c.args.push_back(gen(depth - 1));
        return make_expr(l, std::move(c));
      }
      case 12: {
        NewExpr n;
        n.type = type(1);
        if (pick(2)) n.array_size = gen(depth - 1);
        return make_expr(l, std::move(n));
      }
      case 13: {
        ModelMemberExpr m;
        m.concept_name = "C";
        m.args.push_back(type(1));
        m.member = pick(2) ? "operator==" : "f";
        return make_expr(l, std::move(m));
      }
      case 14: {
        FunExpr f;
        Param p;
        p.type.type = type(1);
        p.name = "x";
        f.params.push_back(std::move(p));
        f.expr_body = gen(depth - 1);
        return make_expr(l, std::move(f));
      }
      case 15: {
        FunExpr f;
        Capture c;
        c.name = "p";
        c.init = gen(depth - 1);
        f.captures.push_back(std::move(c));
        SourceLocation sl;
        f.body.push_back(make_stmt(sl, ReturnStmt{gen(depth - 1)}));
        return make_expr(l, std::move(f));
      }
      default: return make_expr(l, CharLit{'a'});
    }
  }

  TypeExprPtr type(int depth) {
    SourceLocation l;
    int choice = depth <= 0 ? 0 : pick(5);
    switch (choice) {
      case 0: return make_type(l, NamedType{name()});
      case 1: {
        AppliedType a;
        a.name = "list";
        a.args.push_back(type(depth - 1));
        return make_type(l, std::move(a));
      }
      case 2: return make_type(l, PointerType{type(depth - 1)});
      case 3: {
        FunType f;
        ParamType p;
        p.type = type(depth - 1);
        p.mode = static_cast<PassMode>(pick(3));
        f.params.push_back(std::move(p));
        if (pick(2)) {
          f.ret = type(depth - 1);
          f.ret_mode = static_cast<PassMode>(pick(3));
        }
        return make_type(l, std::move(f));
      }
      default: {
        ProjectionType p;
        p.concept_name = "C";
        p.args.push_back(type(depth - 1));
        p.path = {"value"};
        return make_type(l, std::move(p));
      }
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string name() {
    static const char* names[] = {"a", "b", "first", "T", "x1"};
    return names[pick(5)];
  }
  std::mt19937 rng_;
};

TEST(ParserProperty, RandomExpressionsRoundTrip) {
  ExprGen gen(20240611);
  for (int i = 0; i < 3000; ++i) {
    ExprPtr e = gen.gen(1 + i % 5);
    std::string once = print_expr(*e);
    std::vector<Diagnostic> diags;
    ExprPtr reparsed = parse_expr_text(once, &diags);
    ASSERT_TRUE(reparsed) << once << "\n"
                          << (diags.empty() ? "" : diags[0].message);
    Program a, b;
    SourceLocation l;
    a.push_back(make_decl(l, GlobalLetDecl{"v", std::move(e), nullptr}));
    b.push_back(make_decl(l, GlobalLetDecl{"v", std::move(reparsed), nullptr}));
    ASSERT_EQ(dump_ast(a), dump_ast(b)) << once;
  }
}

TEST(ParserProperty, RandomTypesRoundTrip) {
  ExprGen gen(99);
  for (int i = 0; i < 2000; ++i) {
    TypeExprPtr t = gen.type(1 + i % 4);
    std::string once = print_type(*t);
    TypeExprPtr reparsed = parse_type_text(once);
    ASSERT_TRUE(reparsed) << once;
    EXPECT_EQ(print_type(*reparsed), once);
  }
}

}  // namespace
}  // namespace g::syntax
