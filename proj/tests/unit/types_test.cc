#include <gtest/gtest.h>

#include <random>

#include "g/types/congruence.h"
#include "g/types/type.h"
#include "congruence_oracle.h"

namespace g::types {
namespace {

using testing::add_subterms;
using testing::Oracle;
using testing::TermGen;

TypeRef T(const char* n) { return var(n); }
Param cref(TypeRef t) { return {t, PassMode::kConstRef}; }

TypeRef id_type(const char* v) {
  return fun({v}, {}, {cref(T(v))}, cref(T(v)));
}

TEST(Types, InterningIsStructural) {
  EXPECT_EQ(ctor("list", {int_type()}), ctor("list", {int_type()}));
  EXPECT_NE(ctor("list", {int_type()}), ctor("list", {bool_type()}));
  EXPECT_EQ(pointer(int_type()), ctor("*", {int_type()}));
}

TEST(Types, Printing) {
  EXPECT_EQ(to_string(pointer(int_type())), "int*");
  EXPECT_EQ(to_string(ctor("pair", {int_type(), double_type()})),
            "pair<int,double>");
  EXPECT_EQ(to_string(id_type("T")), "fun<T>(T)->T");
  EXPECT_EQ(to_string(mono_fun({cref(T("T")), cref(T("T"))},
                               {bool_type(), PassMode::kByValue})),
            "fun(T,T)->bool@");
  EXPECT_EQ(to_string(proj("C", {int_type()}, "bar")), "C<int>.bar");
  EXPECT_EQ(to_string(var(fresh_name("T"))), "T");
  EXPECT_EQ(to_string(mono_fun({{int_type(), PassMode::kMutRef}}, {})),
            "fun(int!)");
}

TEST(Types, AlphaEqualIgnoresNames) {
  EXPECT_TRUE(alpha_equal(id_type("T"), id_type("U")));
}

TEST(Types, AlphaEqualRespectsOrder) {
  TypeRef a = fun({"S", "T"}, {}, {cref(T("S")), cref(T("T"))}, cref(T("T")));
  TypeRef b = fun({"T", "S"}, {}, {cref(T("S")), cref(T("T"))}, cref(T("T")));
  EXPECT_FALSE(alpha_equal(a, b));
  EXPECT_TRUE(alpha_equal(int_type(), int_type()));
}

TEST(Types, AlphaEqualDistinguishesFreeVariables) {
  TypeRef a = mono_fun({cref(T("S"))}, cref(T("S")));
  TypeRef b = mono_fun({cref(T("T"))}, cref(T("T")));
  EXPECT_FALSE(alpha_equal(a, b));
}

TEST(Types, SubstituteReplacesFreeVariables) {
  Subst s{{"T", int_type()}};
  TypeRef f = mono_fun({cref(T("T"))}, cref(T("T")));
  EXPECT_EQ(substitute(s, f), mono_fun({cref(int_type())}, cref(int_type())));
}

TEST(Types, SubstituteRespectsShadowing) {
  Subst s{{"T", int_type()}};
  EXPECT_EQ(substitute(s, id_type("T")), id_type("T"));
}

TEST(Types, SubstituteAvoidsCapture) {
  // {S -> T} applied to fun<T>(T, S) -> S must not capture the free T.
  Subst s{{"S", T("T")}};
  TypeRef f = fun({"T"}, {}, {cref(T("T")), cref(T("S"))}, cref(T("S")));
  TypeRef r = substitute(s, f);
  ASSERT_EQ(r->quantifiers.size(), 1u);
  EXPECT_NE(r->quantifiers[0], "T");
  EXPECT_EQ(r->params[1].type, T("T"));
  EXPECT_EQ(r->params[0].type, var(r->quantifiers[0]));
}

TEST(Types, SubstituteAckermannHead) {
  Subst s{{"y", ctor("suc", {ctor("zero", {})})}};
  TypeRef head = ctor("Ack", {ctor("zero", {}), T("y")});
  EXPECT_EQ(to_string(substitute(s, head)), "Ack<zero,suc<zero>>");
}

TEST(Types, SubstitutionIsIdempotentOnGroundRanges) {
  Subst s{{"T", int_type()}, {"U", pointer(bool_type())}};
  TypeRef t = ctor("pair", {T("T"), pointer(T("U"))});
  EXPECT_EQ(substitute(s, substitute(s, t)), substitute(s, t));
}

// The four directional cases.
TEST(Congruence, UpwardThroughFunctionTypes) {
  CongruenceGraph g;
  g.assert_equal(T("S"), T("T"));
  EXPECT_TRUE(g.equal(mono_fun({cref(T("S"))}, cref(T("S"))),
                      mono_fun({cref(T("T"))}, cref(T("T")))));
}

TEST(Congruence, DownwardThroughConstructors) {
  CongruenceGraph g;
  g.assert_equal(ctor("bar", {T("S")}), ctor("bar", {T("T")}));
  EXPECT_TRUE(g.equal(T("S"), T("T")));
}

TEST(Congruence, ProjectionsAreNotInjective) {
  CongruenceGraph g;
  g.assert_equal(proj("C", {int_type()}, "bar"),
                 proj("C", {float_type()}, "bar"));
  EXPECT_FALSE(g.equal(int_type(), float_type()));
  EXPECT_TRUE(g.consistent());
}

TEST(Congruence, Transitivity) {
  CongruenceGraph g;
  g.assert_equal(T("R"), T("S"));
  g.assert_equal(T("S"), T("T"));
  EXPECT_TRUE(g.equal(T("R"), T("T")));
}

TEST(Congruence, FreshGraphKeepsDistinctTermsApart) {
  CongruenceGraph g;
  EXPECT_FALSE(g.equal(T("S"), T("T")));
  EXPECT_FALSE(g.equal(proj("D", {T("T")}, "bar"), proj("D", {T("T")}, "zow")));
  EXPECT_TRUE(g.equal(id_type("T"), id_type("U")));
}

TEST(Congruence, ProjectionsPropagateUpward) {
  CongruenceGraph g;
  TypeRef a = proj("C", {T("S")}, "bar");
  TypeRef b = proj("C", {T("T")}, "bar");
  EXPECT_FALSE(g.equal(a, b));
  g.assert_equal(T("S"), T("T"));
  EXPECT_TRUE(g.equal(a, b));
}

TEST(Congruence, BaseClashIsInconsistent) {
  CongruenceGraph g;
  g.assert_equal(T("T"), int_type());
  g.assert_equal(T("T"), double_type());
  EXPECT_FALSE(g.consistent());
}

TEST(Congruence, RepresentativePrefersBaseTypes) {
  CongruenceGraph g;
  TypeRef p = proj("InputIterator", {T("I")}, "value");
  g.assert_equal(p, int_type());
  EXPECT_EQ(g.representative(p), int_type());
  EXPECT_EQ(g.describe().size(), 1u);
  EXPECT_EQ(g.describe()[0], "InputIterator<I>.value = int");
}

TEST(Congruence, MatchesBruteForceOracle) {
  TermGen gen(20240601);
  int instances = 0;
  int nontrivial = 0;
  while (instances < 1500) {
    std::vector<TypeRef> roots;
    std::vector<TypeRef> terms;
    int nroots = gen.pick_int(2, 6);
    for (int i = 0; i < nroots; ++i) {
      TypeRef t = gen.gen(2);
      roots.push_back(t);
      add_subterms(t, terms);
    }
    if (terms.size() > 12) continue;
    ++instances;

    std::vector<std::pair<TypeRef, TypeRef>> asserts;
    int nassert = gen.pick_int(0, 6);
    for (int i = 0; i < nassert; ++i) {
      TypeRef a = terms[gen.pick_int(0, static_cast<int>(terms.size()) - 1)];
      TypeRef b = terms[gen.pick_int(0, static_cast<int>(terms.size()) - 1)];
      asserts.emplace_back(a, b);
    }

    Oracle oracle;
    oracle.terms = terms;
    oracle.close(asserts);

    CongruenceGraph g;
    for (TypeRef t : terms) g.equal(t, t);
    for (auto [a, b] : asserts) g.assert_equal(a, b);

    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = 0; j < terms.size(); ++j) {
        bool expected = oracle.eq[i][j];
        if (expected && i != j) ++nontrivial;
        ASSERT_EQ(g.equal(terms[i], terms[j]), expected)
            << "instance " << instances << ": " << to_string(terms[i])
            << " vs " << to_string(terms[j]);
      }
    }
  }
  EXPECT_GT(nontrivial, 1000);
}

// Terms interned after the assertions must still see the closure.
TEST(Congruence, LateTermsSeeEarlierAssertions) {
  TermGen gen(99);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<TypeRef> terms;
    for (int i = 0; i < 4; ++i) add_subterms(gen.gen(2), terms);
    if (terms.size() > 12) continue;
    std::vector<std::pair<TypeRef, TypeRef>> asserts;
    for (int i = 0; i < 3; ++i)
      asserts.emplace_back(
          terms[gen.pick_int(0, static_cast<int>(terms.size()) - 1)],
          terms[gen.pick_int(0, static_cast<int>(terms.size()) - 1)]);
    Oracle oracle;
    oracle.terms = terms;
    oracle.close(asserts);
    CongruenceGraph g;
    for (auto [a, b] : asserts) g.assert_equal(a, b);
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = 0; j < terms.size(); ++j)
        ASSERT_EQ(g.equal(terms[i], terms[j]), oracle.eq[i][j]);
  }
}

TEST(Congruence, EquivalenceLaws) {
  TermGen gen(7);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<TypeRef> terms;
    for (int i = 0; i < 5; ++i) add_subterms(gen.gen(2), terms);
    CongruenceGraph g;
    for (int i = 0; i < 4; ++i)
      g.assert_equal(terms[gen.pick_int(0, static_cast<int>(terms.size()) - 1)],
                     terms[gen.pick_int(0, static_cast<int>(terms.size()) - 1)]);
    for (TypeRef t : terms) g.representative(t);
    auto before = g.describe();
    for (TypeRef a : terms) {
      ASSERT_TRUE(g.equal(a, a));
      for (TypeRef b : terms) {
        ASSERT_EQ(g.equal(a, b), g.equal(b, a));
        if (!g.equal(a, b)) continue;
        for (TypeRef c : terms)
          if (g.equal(b, c)) ASSERT_TRUE(g.equal(a, c));
      }
    }
    EXPECT_EQ(g.describe(), before);
  }
}

}  // namespace
}  // namespace g::types
