#ifndef G_INTERP_INTERPRETER_H_
#define G_INTERP_INTERPRETER_H_

// Tree-walking evaluator over checked ASTs. Generic functions receive
// their where-clause models as dictionaries; every concept operation in a
// generic body is dispatched through one.

#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "g/diagnostic.h"
#include "g/sema/checker.h"

namespace g::interp {

struct Block;
struct Closure;
struct Dict;
using BlockPtr = std::shared_ptr<Block>;
using DictPtr = std::shared_ptr<Dict>;

struct Value {
  enum class Kind {
    kUninit, kInt, kBool, kChar, kFloat, kDouble, kUnit, kPointer, kObject,
    kClosure,
  };
  Kind kind = Kind::kUninit;
  long long i = 0;  // int, bool, char
  double d = 0;     // float, double
  // Pointer: null when block is empty.
  BlockPtr block;
  long long offset = 0;
  std::vector<int> path;  // pointer into a field
  // Object
  const sema::ClassInfo* cls = nullptr;
  std::vector<Value> fields;
  std::shared_ptr<const Closure> closure;

  static Value make_int(long long v);
  static Value make_bool(bool v);
  static Value make_char(char v);
  static Value make_float(double v);
  static Value make_double(double v);
  static Value unit();
  static Value null_pointer();
};

struct Block {
  std::vector<Value> cells;
};

// A storage location: a cell of a block, then a path of field indices.
struct Place {
  BlockPtr block;
  std::size_t index = 0;
  std::vector<int> path;

  Place field(int f) const {
    Place p = *this;
    p.path.push_back(f);
    return p;
  }
};

struct Dict {
  const sema::ModelInfo* model = nullptr;
  std::vector<DictPtr> where;             // the rule's where-clause models
  mutable std::vector<DictPtr> parents;   // filled on demand
};

struct Closure {
  enum class Kind { kFunction, kFunExpr, kDictOp };
  Kind kind = Kind::kFunction;
  const sema::FunctionInfo* fn = nullptr;
  std::vector<DictPtr> dicts;
  const syntax::FunExpr* fun_expr = nullptr;
  std::shared_ptr<sema::FunExprInfo> info;
  std::vector<Value> captures;
  DictPtr dict;
  int op = -1;
};

struct RuntimeFault {
  SourceLocation loc;
  std::string message;
};

struct RunResult {
  int exit_code = 0;
  bool fault = false;
  std::string fault_text;  // "FILE:LINE: runtime fault: MSG"
};

struct InterpOptions {
  int max_call_depth = 20000;
};

class Interpreter {
 public:
  Interpreter(const sema::Checker& checker, std::ostream& out,
              InterpOptions opts = {});
  ~Interpreter();
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  // Initializes globals, then calls `entry` (which takes no arguments).
  RunResult run(const std::string& entry = "main");

  // Number of times a function body was entered.
  long calls(const sema::FunctionInfo* f) const;
  // Summed over every function with this name.
  long calls(const std::string& name) const;
  std::vector<std::pair<const sema::FunctionInfo*, long>> call_counts() const;
  // Concept operations that fell back to a name lookup; always zero.
  long fallback_lookups() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace g::interp

#endif  // G_INTERP_INTERPRETER_H_
