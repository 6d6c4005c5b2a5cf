// One line per acceptance criterion; exits non-zero if any fails.
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "congruence_oracle.h"
#include "g/syntax/parser.h"
#include "g/syntax/printer.h"
#include "g/types/congruence.h"
#include "test_util.h"

namespace {

namespace fs = std::filesystem;
using g::testing::corpus;
using g::testing::load;

struct Verdict {
  bool pass = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      why = what;
    }
  }
};

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::unique_ptr<g::testing::Program> check(const std::string& rel, bool trace = false) {
  g::driver::ToolConfig cfg;
  cfg.trace_solver = trace;
  return load(corpus(rel), false, cfg);
}

std::unique_ptr<g::testing::Program> run(const std::string& rel, bool trace = false) {
  g::driver::ToolConfig cfg;
  cfg.trace_solver = trace;
  return load(corpus(rel), true, cfg);
}

// The trace line for the overload chosen at `call`.
std::string chosen(const std::string& trace, const std::string& call) {
  std::istringstream in(trace);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("overload " + call + " at ", 0) == 0) return line;
  return {};
}

Verdict stable_sort_golden() {
  Verdict v;
  auto p = check("errors/stable_sort_error.g");
  v.require(p->code == 1, "exit " + std::to_string(p->code));
  std::string want = corpus("errors/stable_sort_error.g") +
                     ":6:\nIn application stable_sort(begin(v), end(v)),\n"
                     "Model MutableRandomAccessIterator<mutable_list_iter<int>>\n"
                     "needed to satisfy requirement, but it is not defined.\n";
  v.require(p->err.str() == want, "diagnostic was: " + p->err.str());
  return v;
}

Verdict replace_copy() {
  Verdict v;
  auto bad = check("errors/replace_copy_error.g");
  v.require(bad->code == 1, "buggy version exit " + std::to_string(bad->code));
  v.require(has(bad->err.str(), "two branches of the conditional expression"),
            "buggy version diagnostic: " + bad->err.str());
  auto lib = check("stl/basic_algorithms.g");
  v.require(lib->code == 0, "fixed version does not check: " + lib->err.str());
  auto good = run("programs/replace_copy_main.g");
  v.require(good->code == 0, "fixed version exit " + std::to_string(good->code));
  v.require(good->out.str() == "1 9 3 9 5 9 \n", "fixed version printed " + good->out.str());
  return v;
}

Verdict overloads() {
  Verdict v;
  auto a = run("overload/most_specific.g", true);
  v.require(a->code == 0, "foo(3) did not pick foo(int)");
  v.require(has(chosen(a->out.str(), "foo(3)"), ": foo fun(int)->int@"),
            "trace: " + chosen(a->out.str(), "foo(3)"));
  auto b = check("overload/float_double_ambiguous.g");
  v.require(b->code == 1 && has(b->err.str(), "Ambiguous overload in application foo(3)"),
            "double/float: " + b->err.str());
  auto c = check("overload/two_generic_ambiguous.g");
  v.require(c->code == 1 && has(c->err.str(), "Ambiguous overload in application foo(3, 4)"),
            "two generics: " + c->err.str());
  auto d = run("overload/exact_over_coercive.g", true);
  v.require(d->code == 0, "exact match lost to a coercion");
  v.require(has(chosen(d->out.str(), "foo(3)"), ": foo fun<T>(T)->int@"),
            "trace: " + chosen(d->out.str(), "foo(3)"));
  return v;
}

Verdict advance_dispatch() {
  Verdict v;
  auto p = run("stl/advance_demo.g", true);
  v.require(p->code == 0, "exit " + std::to_string(p->code));
  std::string t = p->out.str();
  v.require(has(chosen(t, "advance(in_iter, 2)"), "where {InputIterator<Iter>}"),
            "slist: " + chosen(t, "advance(in_iter, 2)"));
  v.require(has(chosen(t, "advance(rand_iter, 2)"), "where {RandomAccessIterator<Iter>}"),
            "int*: " + chosen(t, "advance(rand_iter, 2)"));
  return v;
}

struct CopyCalls {
  long slow = 0;
  long fast = 0;
};

CopyCalls copy_calls(const g::interp::Interpreter& in) {
  CopyCalls c;
  for (const auto& [fn, n] : in.call_counts()) {
    if (fn->name != "copy") continue;
    if (has(g::types::to_string(fn->type), "RandomAccessIterator")) c.fast += n;
    else c.slow += n;
  }
  return c;
}

Verdict surrogate_dispatch() {
  Verdict v;
  auto plain = run("programs/merge_plain.g");
  auto idiom = run("programs/merge_copy_range.g");
  v.require(plain->code == 0 && idiom->code == 0, "a merge program failed");
  if (!v.pass) return v;
  CopyCalls a = copy_calls(plain->interp());
  CopyCalls b = copy_calls(idiom->interp());
  v.require(a.slow == 2 && a.fast == 0,
            "plain merge: slow " + std::to_string(a.slow) + ", fast " + std::to_string(a.fast));
  v.require(b.fast == 2 && b.slow == 0,
            "CopyRange merge: slow " + std::to_string(b.slow) + ", fast " +
                std::to_string(b.fast));
  v.require(plain->out.str() == idiom->out.str(), "outputs differ");
  v.require(plain->out.str() == "1 2 3 4 5 6 7 8 9 10 \n", "merged " + plain->out.str());
  return v;
}

Verdict same_type_timing() {
  Verdict v;
  auto p = check("typing/foo_1_foo_2.g");
  v.require(p->code == 1, "exit " + std::to_string(p->code));
  const auto& ds = p->session->diagnostics();
  v.require(ds.size() == 1, std::to_string(ds.size()) + " diagnostics");
  if (ds.size() == 1) {
    v.require(ds[0].loc.line == 8, "error on line " + std::to_string(ds[0].loc.line));
    v.require(ds[0].message == "Same type requirement violated, double != int",
              "message: " + ds[0].message);
  }
  auto q = run("typing/foo_2.g");
  v.require(q->code == 0, "foo_2 program exit " + std::to_string(q->code));
  return v;
}

long ack(long m, long n) {
  if (m == 0) return n + 1;
  if (n == 0) return ack(m - 1, 1);
  return ack(m - 1, ack(m, n - 1));
}

Verdict ackermann() {
  Verdict v;
  long k = ack(2, 3);
  std::string tower = "zero";
  for (long i = 0; i < k; ++i) tower = "suc<" + tower + ">";
  auto p = check("typing/ackermann.g");
  v.require(k == 9, "oracle gave " + std::to_string(k));
  v.require(p->code == 1, "exit " + std::to_string(p->code));
  v.require(has(p->err.str(), "Type (" + tower + ") does not match type (int)"),
            "diagnostic: " + p->err.str());
  return v;
}

Verdict congruence() {
  using namespace g::types;
  using g::testing::add_subterms;
  Verdict v;
  g::testing::TermGen gen(4242);
  int instances = 0;
  while (instances < 1000 && v.pass) {
    std::vector<TypeRef> terms;
    int nroots = gen.pick_int(2, 6);
    for (int i = 0; i < nroots; ++i) add_subterms(gen.gen(2), terms);
    if (terms.size() > 12) continue;
    ++instances;
    std::vector<std::pair<TypeRef, TypeRef>> asserts;
    int nassert = gen.pick_int(0, 6);
    auto any = [&] { return terms[gen.pick_int(0, static_cast<int>(terms.size()) - 1)]; };
    for (int i = 0; i < nassert; ++i) asserts.emplace_back(any(), any());
    g::testing::Oracle oracle;
    oracle.terms = terms;
    oracle.close(asserts);
    CongruenceGraph graph;
    for (auto [a, b] : asserts) graph.assert_equal(a, b);
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = 0; j < terms.size(); ++j)
        v.require(graph.equal(terms[i], terms[j]) == oracle.eq[i][j],
                  "instance " + std::to_string(instances) + ": " + to_string(terms[i]) +
                      " vs " + to_string(terms[j]));
  }

  auto cref = [](TypeRef t) { return Param{t, PassMode::kConstRef}; };
  TypeRef S = var("S"), T = var("T");
  {
    CongruenceGraph gr;
    gr.assert_equal(S, T);
    v.require(gr.equal(mono_fun({cref(S)}, cref(S)), mono_fun({cref(T)}, cref(T))),
              "S = T does not give fun(S)->S = fun(T)->T");
    v.require(gr.equal(proj("C", {S}, "bar"), proj("C", {T}, "bar")),
              "S = T does not give C<S>.bar = C<T>.bar");
  }
  {
    CongruenceGraph gr;
    gr.assert_equal(ctor("bar", {S}), ctor("bar", {T}));
    v.require(gr.equal(S, T), "bar<S> = bar<T> does not give S = T");
  }
  {
    CongruenceGraph gr;
    gr.assert_equal(proj("C", {S}, "bar"), proj("C", {T}, "bar"));
    v.require(!gr.equal(S, T), "C<S>.bar = C<T>.bar gave S = T");
  }
  return v;
}

Verdict deduction() {
  Verdict v;
  auto p = check("functions/apply.g");
  v.require(p->code == 0, "apply(id, 0) does not check: " + p->err.str());
  const g::sema::DeductionRecord* rec = nullptr;
  if (p->session->checker())
    for (const auto& d : p->checker().deductions())
      if (d.callee == "apply") rec = &d;
  v.require(rec != nullptr, "no deduction recorded for apply");
  if (rec) {
    using g::types::to_string;
    v.require(rec->param_types.size() == 2, "arity");
    if (rec->param_types.size() == 2) {
      v.require(to_string(rec->param_types[0]) == "fun(int)->int",
                "alpha = " + to_string(rec->param_types[0]));
      v.require(to_string(rec->param_types[1]) == "int",
                "beta = " + to_string(rec->param_types[1]));
    }
    v.require(rec->ret && to_string(rec->ret) == "int", "gamma");
  }
  auto r = run("functions/apply.g");
  v.require(r->code == 0, "apply program exit " + std::to_string(r->code));
  auto acc = run("programs/accumulate_main.g");
  v.require(acc->code == 0, "accumulate main exit " + std::to_string(acc->code));
  auto fe = run("programs/for_each_main.g");
  v.require(fe->code == 0, "for_each main exit " + std::to_string(fe->code));
  return v;
}

// The example graph, built by push_front onto each vertex's list.
std::string bfs_oracle() {
  int n = 7;
  std::vector<std::deque<int>> adj(n);
  std::vector<std::pair<int, int>> pushes = {{0, 1}, {0, 4}, {1, 2}, {1, 3},
                                             {3, 4}, {3, 6}, {4, 5}};
  for (auto [u, w] : pushes) adj[u].push_front(w);
  std::vector<bool> seen(n, false);
  std::deque<int> q{0};
  seen[0] = true;
  std::string order = "0 ";
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : adj[u]) {
      if (seen[w]) continue;
      seen[w] = true;
      order += std::to_string(w) + " ";
      q.push_back(w);
    }
  }
  return order + "\n";
}

Verdict bfs() {
  Verdict v;
  std::string want = bfs_oracle();
  v.require(want == "0 4 1 5 3 2 6 \n", "oracle order " + want);
  auto p = run("bgl/bfs_example.g");
  v.require(p->code == 0, "exit " + std::to_string(p->code) + ": " + p->err.str());
  v.require(p->out.str() == want, "printed " + p->out.str());
  return v;
}

Verdict scoped_models() {
  Verdict v;
  int data[] = {1, 2, 3, 4};
  int sum = 0, product = 1;
  for (int x : data) {
    sum += x;
    product *= x;
  }
  auto p = run("programs/overlapping_models.g");
  v.require(p->code == 0, "exit " + std::to_string(p->code));
  std::string want =
      "sum " + std::to_string(sum) + "\nproduct " + std::to_string(product) + "\n";
  v.require(sum == 10 && product == 24, "oracle");
  v.require(p->out.str() == want, "printed " + p->out.str());
  return v;
}

Verdict round_trip() {
  Verdict v;
  int files = 0;
  std::vector<std::string> paths;
  for (const auto& e : fs::recursive_directory_iterator(corpus("")))
    if (e.path().extension() == ".g") paths.push_back(e.path().string());
  for (const auto& path : paths) {
    ++files;
    auto first = g::syntax::parse_source(read_text(path), path);
    v.require(first.ok(), path + " does not parse");
    if (!first.ok()) continue;
    std::string printed = g::syntax::pretty_print(first.program);
    auto second = g::syntax::parse_source(printed, path);
    v.require(second.ok(), path + ": printed source does not parse");
    if (!second.ok()) continue;
    v.require(g::syntax::ast_equal(first.program, second.program),
              path + ": AST changed after printing");
    v.require(g::syntax::pretty_print(second.program) == printed,
              path + ": printing is not stable");
  }
  v.require(files >= 40, "only " + std::to_string(files) + " corpus files");
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*check)();
  };
  const Criterion criteria[] = {
      {"stable_sort misuse golden diagnostic", stable_sort_golden},
      {"replace_copy buggy and fixed", replace_copy},
      {"overload resolution examples", overloads},
      {"concept-based dispatch of advance", advance_dispatch},
      {"merge calls slow copy, CopyRange merge calls fast copy", surrogate_dispatch},
      {"same-type constraints checked after deduction", same_type_timing},
      {"compile-time Ackermann", ackermann},
      {"congruence closure matches brute-force oracle", congruence},
      {"deduction of apply(id, 0); accumulate and for_each", deduction},
      {"breadth-first search discovery order", bfs},
      {"lexically scoped overlapping models", scoped_models},
      {"parse, print, parse round-trip over the corpus", round_trip},
  };
  int failed = 0;
  int i = 0;
  for (const auto& c : criteria) {
    ++i;
    Verdict v = c.check();
    std::cout << (v.pass ? "PASS " : "FAIL ") << i << ". " << c.name;
    if (!v.pass) {
      std::cout << ": " << v.why;
      ++failed;
    }
    std::cout << "\n";
  }
  std::cout << (12 - failed) << "/12 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
