#ifndef G_TESTS_CONGRUENCE_ORACLE_H_
#define G_TESTS_CONGRUENCE_ORACLE_H_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "g/types/type.h"

namespace g::testing {

using types::Kind;
using types::TypeRef;

// Brute-force oracle: equality matrix over a fixed subterm-closed set,
// closed under symmetry, transitivity, congruence and constructor
// injectivity until nothing changes.
struct Oracle {
  std::vector<TypeRef> terms;
  std::vector<std::vector<bool>> eq;

  int index(TypeRef t) const {
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (terms[i] == t) return static_cast<int>(i);
    return -1;
  }

  static std::string head(TypeRef t) {
    switch (t->kind) {
      case Kind::kCtor: return "c" + t->name + std::to_string(t->args.size());
      case Kind::kProj: return "p" + t->name + t->member;
      case Kind::kFun: return "f" + std::to_string(t->params.size());
      default: return "a" + std::to_string(t->id);
    }
  }
  static std::vector<TypeRef> kids(TypeRef t) {
    if (t->is_fun()) {
      std::vector<TypeRef> k;
      for (const auto& p : t->params) k.push_back(p.type);
      k.push_back(t->ret.type);
      return k;
    }
    return t->args;
  }
  static bool injective(TypeRef t) {
    return t->kind == Kind::kCtor || t->kind == Kind::kFun;
  }

  void close(const std::vector<std::pair<TypeRef, TypeRef>>& asserts) {
    std::size_t n = terms.size();
    eq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) eq[i][i] = true;
    for (auto [a, b] : asserts) {
      int i = index(a), j = index(b);
      eq[i][j] = eq[j][i] = true;
    }
    bool changed = true;
    auto set = [&](std::size_t i, std::size_t j) {
      if (!eq[i][j]) {
        eq[i][j] = eq[j][i] = true;
        changed = true;
      }
    };
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (eq[i][k] && eq[k][j]) set(i, j);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || head(terms[i]) != head(terms[j])) continue;
          auto ki = kids(terms[i]);
          auto kj = kids(terms[j]);
          if (ki.empty()) continue;
          if (eq[i][j] && injective(terms[i])) {
            for (std::size_t c = 0; c < ki.size(); ++c)
              set(index(ki[c]), index(kj[c]));
          }
          bool all = true;
          for (std::size_t c = 0; c < ki.size(); ++c)
            all = all && eq[index(ki[c])][index(kj[c])];
          if (all) set(i, j);
        }
      }
    }
  }
};

class TermGen {
 public:
  explicit TermGen(unsigned seed) : rng_(seed) {}

  TypeRef gen(int depth) {
    using namespace types;
    auto cref = [](TypeRef t) { return Param{t, PassMode::kConstRef}; };
    int pick = pick_int(0, depth <= 0 ? 2 : 7);
    switch (pick) {
      case 0: return var(std::string(1, "STUV"[pick_int(0, 3)]));
      case 1: return var(std::string(1, "STUV"[pick_int(0, 3)]));
      case 2: return pick_int(0, 1) ? int_type() : float_type();
      case 3: return ctor("bar", {gen(depth - 1)});
      case 4: return ctor("pair", {gen(depth - 1), gen(depth - 1)});
      case 5: return proj("C", {gen(depth - 1)}, "bar");
      case 6: return pointer(gen(depth - 1));
      default: return mono_fun({cref(gen(depth - 1))}, cref(gen(depth - 1)));
    }
  }
  int pick_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

 private:
  std::mt19937 rng_;
};

inline void add_subterms(TypeRef t, std::vector<TypeRef>& out) {
  for (TypeRef k : Oracle::kids(t)) add_subterms(k, out);
  for (TypeRef u : out)
    if (u == t) return;
  out.push_back(t);
}

}  // namespace g::testing

#endif  // G_TESTS_CONGRUENCE_ORACLE_H_
