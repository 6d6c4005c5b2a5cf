#include "g/interp/interpreter.h"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <variant>

#include <pthread.h>

namespace g::interp {

using namespace syntax;
using sema::ArgPass;
using sema::CallTarget;
using sema::Conv;
using sema::ExprAnnot;
using sema::FunctionInfo;
using sema::InitPlan;
using sema::Intrinsic;
using sema::MemberImpl;
using sema::Witness;
using sema::WitnessPtr;
using types::TypeRef;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double to_float(double d) { return static_cast<double>(static_cast<float>(d)); }

}  // namespace

Value Value::make_int(long long v) {
  Value x;
  x.kind = Kind::kInt;
  x.i = v;
  return x;
}
Value Value::make_bool(bool v) {
  Value x;
  x.kind = Kind::kBool;
  x.i = v;
  return x;
}
Value Value::make_char(char v) {
  Value x;
  x.kind = Kind::kChar;
  x.i = v;
  return x;
}
Value Value::make_float(double v) {
  Value x;
  x.kind = Kind::kFloat;
  x.d = to_float(v);
  return x;
}
Value Value::make_double(double v) {
  Value x;
  x.kind = Kind::kDouble;
  x.d = v;
  return x;
}
Value Value::unit() {
  Value x;
  x.kind = Kind::kUnit;
  return x;
}
Value Value::null_pointer() {
  Value x;
  x.kind = Kind::kPointer;
  return x;
}

class Interpreter::Impl {
 public:
  Impl(const sema::Checker& c, std::ostream& o, InterpOptions opts)
      : checker(c), out(o), opts(opts) {}

  const sema::Checker& checker;
  std::ostream& out;
  InterpOptions opts;
  std::map<const FunctionInfo*, long> call_counts;
  std::vector<Place> globals;
  SourceLocation loc;
  int depth = 0;

  struct ArgVal {
    bool is_place = false;
    Place place;
    Value value;
  };
  using Ret = ArgVal;

  struct Frame {
    std::vector<Place> slots;
    std::vector<DictPtr> roots;
    bool returned = false;
    Ret ret;
  };

  [[noreturn]] void fault(const std::string& msg) { throw RuntimeFault{loc, msg}; }

  // ------------------------------------------------------------ storage

  static Place new_cell(Value v) {
    auto b = std::make_shared<Block>();
    b->cells.push_back(std::move(v));
    return Place{b, 0, {}};
  }

  Value& cell(const Place& p) {
    if (!p.block) fault("null pointer dereference");
    if (p.index >= p.block->cells.size())
      fault("pointer dereference out of bounds (offset " +
            std::to_string(static_cast<long long>(p.index)) + ", size " +
            std::to_string(p.block->cells.size()) + ")");
    Value* v = &p.block->cells[p.index];
    for (int f : p.path) {
      if (v->kind != Value::Kind::kObject)
        fault("use of an object before it is constructed");
      v = &v->fields.at(f);
    }
    return *v;
  }

  Value read(const Place& p) {
    Value& v = cell(p);
    if (v.kind == Value::Kind::kUninit) fault("read of an uninitialized value");
    return v;
  }

  void write(const Place& p, Value v) { cell(p) = std::move(v); }

  Place deref(const Value& ptr) {
    if (ptr.kind != Value::Kind::kPointer) fault("dereference of a non-pointer");
    if (!ptr.block) fault("null pointer dereference");
    if (ptr.offset < 0 ||
        ptr.offset >= static_cast<long long>(ptr.block->cells.size()))
      fault("pointer dereference out of bounds (offset " +
            std::to_string(ptr.offset) + ", size " +
            std::to_string(ptr.block->cells.size()) + ")");
    return Place{ptr.block, static_cast<std::size_t>(ptr.offset), ptr.path};
  }

  Value to_value(const ArgVal& a) { return a.is_place ? read(a.place) : a.value; }

  // -------------------------------------------------------- dictionaries

  DictPtr eval_witness(const WitnessPtr& w, const std::vector<DictPtr>& roots) {
    if (!w) fault("missing model dictionary");
    if (w->kind == Witness::Kind::kFact) {
      if (w->root < 0 || w->root >= static_cast<int>(roots.size()))
        fault("internal error: dictionary root " + std::to_string(w->root) +
              " out of range");
      DictPtr d = roots[w->root];
      for (int k : w->path) d = parent(d, k);
      return d;
    }
    auto d = std::make_shared<Dict>();
    d->model = w->rule;
    for (const WitnessPtr& s : w->subs) d->where.push_back(eval_witness(s, roots));
    return d;
  }

  std::vector<DictPtr> eval_witnesses(const std::vector<WitnessPtr>& ws,
                                      const std::vector<DictPtr>& roots) {
    std::vector<DictPtr> out;
    for (const WitnessPtr& w : ws) out.push_back(eval_witness(w, roots));
    return out;
  }

  DictPtr parent(const DictPtr& d, int k) {
    const auto& links = d->model->parents;
    if (k < 0 || k >= static_cast<int>(links.size()))
      fault("internal error: bad refinement link");
    if (d->parents.size() < links.size()) d->parents.resize(links.size());
    if (!d->parents[k]) d->parents[k] = eval_witness(links[k], d->where);
    return d->parents[k];
  }

  // --------------------------------------------------------- conversions

  Value convert(Value v, const Conv& c, const std::vector<DictPtr>& roots) {
    switch (c.kind) {
      case Conv::Kind::kNone: return v;
      case Conv::Kind::kNumeric: {
        double x = v.kind == Value::Kind::kInt ? static_cast<double>(v.i) : v.d;
        if (c.to == types::Base::kFloat) return Value::make_float(x);
        if (c.to == types::Base::kDouble) return Value::make_double(x);
        return Value::make_int(static_cast<long long>(x));
      }
      case Conv::Kind::kInst: {
        if (v.kind != Value::Kind::kClosure) return v;
        auto c2 = std::make_shared<Closure>(*v.closure);
        c2->dicts = eval_witnesses(c.witnesses, roots);
        v.closure = c2;
        return v;
      }
    }
    return v;
  }

  Value init_value(const InitPlan& plan, const std::vector<DictPtr>& roots) {
    switch (plan.kind) {
      case InitPlan::Kind::kUninit: return Value{};
      case InitPlan::Kind::kZero:
        switch (plan.base) {
          case types::Base::kInt: return Value::make_int(0);
          case types::Base::kBool: return Value::make_bool(false);
          case types::Base::kChar: return Value::make_char(0);
          case types::Base::kFloat: return Value::make_float(0);
          case types::Base::kDouble: return Value::make_double(0);
          case types::Base::kVoid: return Value::unit();
        }
        return Value{};
      case InitPlan::Kind::kNull: return Value::null_pointer();
      case InitPlan::Kind::kClass: {
        Place p = new_cell(Value{});
        construct_with(plan.ctor, eval_witnesses(plan.witnesses, roots), {}, p);
        return read(p);
      }
      case InitPlan::Kind::kDict: {
        DictPtr d = eval_witness(plan.dict, roots);
        return init_value(d->model->default_plan, d->where);
      }
    }
    return Value{};
  }

  // ---------------------------------------------------------------- calls

  struct DepthGuard {
    Impl& impl;
    explicit DepthGuard(Impl& i) : impl(i) {
      if (++impl.depth > impl.opts.max_call_depth)
        impl.fault("call depth limit exceeded");
    }
    ~DepthGuard() { --impl.depth; }
  };

  void bind_params(Frame& fr, const sema::FrameLayout& layout, TypeRef type,
                   std::vector<ArgVal>& args) {
    for (std::size_t i = 0; i < args.size() && i < layout.param_slots.size(); ++i) {
      PassMode m = type->params[i].mode;
      if (m == PassMode::kMutRef && args[i].is_place)
        fr.slots[layout.param_slots[i]] = args[i].place;
      else
        fr.slots[layout.param_slots[i]] = new_cell(to_value(args[i]));
    }
  }

  Ret finish_frame(Frame& fr, TypeRef type) {
    if (fr.returned) return fr.ret;
    if (!type->ret.type->is_void()) fault("function returned without a value");
    Ret r;
    r.value = Value::unit();
    return r;
  }

  Ret invoke(const FunctionInfo* fn, std::vector<DictPtr> roots,
             std::vector<ArgVal> args) {
    if (fn->intrinsic != Intrinsic::kNone) return intrinsic(fn->intrinsic, args);
    if (fn->owner == FunctionInfo::Owner::kCtor) fault("internal error: constructor call");
    if (!fn->has_body || !fn->decl || !fn->decl->body)
      fault("function " + fn->name + " has no definition");
    ++call_counts[fn];
    DepthGuard g(*this);
    SourceLocation saved = loc;
    Frame fr;
    fr.slots.resize(fn->layout.num_slots);
    fr.roots = std::move(roots);
    bind_params(fr, fn->layout, fn->type, args);
    exec_block(*fn->decl->body, fr);
    Ret r = finish_frame(fr, fn->type);
    loc = saved;
    return r;
  }

  Ret invoke_op(const DictPtr& d, int op, std::vector<ArgVal> args) {
    if (!d || !d->model) fault("missing model dictionary");
    if (op < 0 || op >= static_cast<int>(d->model->members.size()))
      fault("internal error: bad concept operation");
    const MemberImpl& m = d->model->members[op];
    switch (m.kind) {
      case MemberImpl::Kind::kMissing:
        fault("model " + types::to_string(d->model->head_constraint()) +
              " lacks operation " + d->model->concept_info->ops[op].name);
      case MemberImpl::Kind::kDefault:
        return invoke(m.default_fn, {d}, std::move(args));
      case MemberImpl::Kind::kCall: {
        for (std::size_t k = 0; k < args.size() && k < m.args.size(); ++k) {
          if (m.args[k].mode == PassMode::kMutRef) continue;
          Value v = convert(to_value(args[k]), m.args[k].conv, d->where);
          args[k] = ArgVal{false, {}, v};
        }
        Ret r = m.target.kind == CallTarget::Kind::kFunction &&
                        m.target.fn->owner == FunctionInfo::Owner::kModelMember
                    ? invoke(m.target.fn, d->where, std::move(args))
                    : dispatch(m.target, d->where, std::move(args));
        if (!r.is_place && m.ret_conv.kind != Conv::Kind::kNone)
          r.value = convert(r.value, m.ret_conv, d->where);
        return r;
      }
    }
    fault("internal error");
  }

  Ret dispatch(const CallTarget& t, const std::vector<DictPtr>& roots,
               std::vector<ArgVal> args) {
    switch (t.kind) {
      case CallTarget::Kind::kFunction:
        return invoke(t.fn, eval_witnesses(t.witnesses, roots), std::move(args));
      case CallTarget::Kind::kDictOp:
        return invoke_op(eval_witness(t.dict, roots), t.op, std::move(args));
      case CallTarget::Kind::kBuiltinAssign: {
        if (!args[0].is_place) fault("internal error: assignment to a temporary");
        write(args[0].place, to_value(args[1]));
        Ret r;
        r.is_place = true;
        r.place = args[0].place;
        return r;
      }
      default: break;
    }
    fault("internal error: bad call target");
  }

  Ret call_closure(const Value& callee, std::vector<DictPtr> roots,
                   std::vector<ArgVal> args) {
    if (callee.kind != Value::Kind::kClosure || !callee.closure)
      fault("call of a non-function value");
    const Closure& c = *callee.closure;
    switch (c.kind) {
      case Closure::Kind::kFunction:
        return invoke(c.fn, roots.empty() ? c.dicts : roots, std::move(args));
      case Closure::Kind::kDictOp:
        return invoke_op(c.dict, c.op, std::move(args));
      case Closure::Kind::kFunExpr: {
        DepthGuard g(*this);
        SourceLocation saved = loc;
        const sema::FrameLayout& layout = c.info->layout;
        Frame fr;
        fr.slots.resize(layout.num_slots);
        for (std::size_t i = 0; i < layout.capture_slots.size(); ++i)
          fr.slots[layout.capture_slots[i]] = new_cell(c.captures[i]);
        bind_params(fr, layout, c.info->type, args);
        Ret r;
        if (c.fun_expr->expr_body) {
          r.value = eval(*c.fun_expr->expr_body, fr);
        } else {
          exec_block(c.fun_expr->body, fr);
          r = finish_frame(fr, c.info->type);
        }
        loc = saved;
        return r;
      }
    }
    fault("internal error");
  }

  std::vector<ArgVal> eval_args(const std::vector<Expr*>& argx,
                                const std::vector<ArgPass>& passes, Frame& fr) {
    std::vector<ArgVal> out;
    for (std::size_t i = 0; i < argx.size(); ++i) {
      ArgVal a;
      const ArgPass& p = passes.at(i);
      if (p.mode == PassMode::kMutRef) {
        a.is_place = true;
        a.place = eval_place(*argx[i], fr);
      } else {
        a.value = convert(eval(*argx[i], fr), p.conv, fr.roots);
      }
      out.push_back(std::move(a));
    }
    return out;
  }

  // ------------------------------------------------------------ intrinsics

  static bool is_floating(const Value& v) {
    return v.kind == Value::Kind::kFloat || v.kind == Value::Kind::kDouble;
  }

  Value arith(Intrinsic k, const Value& a, const Value& b) {
    if (is_floating(a)) {
      double x = a.d, y = b.d, r = 0;
      switch (k) {
        case Intrinsic::kAdd: r = x + y; break;
        case Intrinsic::kSub: r = x - y; break;
        case Intrinsic::kMul: r = x * y; break;
        case Intrinsic::kDiv: r = x / y; break;
        default: fault("internal error: bad arithmetic");
      }
      return a.kind == Value::Kind::kFloat ? Value::make_float(r)
                                           : Value::make_double(r);
    }
    long long x = a.i, y = b.i;
    switch (k) {
      case Intrinsic::kAdd: return Value::make_int(x + y);
      case Intrinsic::kSub: return Value::make_int(x - y);
      case Intrinsic::kMul: return Value::make_int(x * y);
      case Intrinsic::kDiv:
        if (y == 0) fault("division by zero");
        return Value::make_int(x / y);
      case Intrinsic::kMod:
        if (y == 0) fault("division by zero");
        return Value::make_int(x % y);
      default: fault("internal error: bad arithmetic");
    }
  }

  int compare_pointers(const Value& a, const Value& b, bool ordered) {
    if (a.block != b.block) {
      if (ordered) fault("comparison of pointers into different blocks");
      return 1;
    }
    if (a.path != b.path) return 1;
    return a.offset < b.offset ? -1 : (a.offset > b.offset ? 1 : 0);
  }

  Value compare(Intrinsic k, const Value& a, const Value& b) {
    int c = 0;
    if (a.kind == Value::Kind::kPointer) {
      bool ordered = k != Intrinsic::kEq && k != Intrinsic::kNe;
      c = compare_pointers(a, b, ordered);
    } else if (is_floating(a)) {
      c = a.d < b.d ? -1 : (a.d > b.d ? 1 : 0);
    } else {
      c = a.i < b.i ? -1 : (a.i > b.i ? 1 : 0);
    }
    switch (k) {
      case Intrinsic::kEq: return Value::make_bool(c == 0);
      case Intrinsic::kNe: return Value::make_bool(c != 0);
      case Intrinsic::kLt: return Value::make_bool(c < 0);
      case Intrinsic::kGt: return Value::make_bool(c > 0);
      case Intrinsic::kLe: return Value::make_bool(c <= 0);
      case Intrinsic::kGe: return Value::make_bool(c >= 0);
      default: break;
    }
    fault("internal error: bad comparison");
  }

  Ret intrinsic(Intrinsic k, std::vector<ArgVal>& args) {
    Ret r;
    switch (k) {
      case Intrinsic::kAdd:
      case Intrinsic::kSub:
      case Intrinsic::kMul:
      case Intrinsic::kDiv:
      case Intrinsic::kMod:
        r.value = arith(k, to_value(args[0]), to_value(args[1]));
        return r;
      case Intrinsic::kNeg: {
        Value v = to_value(args[0]);
        if (is_floating(v))
          v.d = -v.d;
        else
          v.i = -v.i;
        r.value = v;
        return r;
      }
      case Intrinsic::kEq:
      case Intrinsic::kNe:
      case Intrinsic::kLt:
      case Intrinsic::kGt:
      case Intrinsic::kLe:
      case Intrinsic::kGe:
        r.value = compare(k, to_value(args[0]), to_value(args[1]));
        return r;
      case Intrinsic::kPreInc:
      case Intrinsic::kPreDec: {
        if (!args[0].is_place) fault("internal error: increment of a temporary");
        Value v = read(args[0].place);
        int step = k == Intrinsic::kPreInc ? 1 : -1;
        if (v.kind == Value::Kind::kPointer) {
          if (!v.path.empty()) fault("arithmetic on a pointer to a field");
          v.offset += step;
        } else if (v.kind == Value::Kind::kFloat) {
          v.d = to_float(v.d + step);
        } else if (v.kind == Value::Kind::kDouble) {
          v.d += step;
        } else {
          v.i += step;
        }
        write(args[0].place, v);
        r.is_place = true;
        r.place = args[0].place;
        return r;
      }
      case Intrinsic::kDeref:
        r.is_place = true;
        r.place = deref(to_value(args[0]));
        return r;
      case Intrinsic::kIndex: {
        Value p = to_value(args[0]);
        if (!p.block) fault("null pointer dereference");
        if (!p.path.empty()) fault("arithmetic on a pointer to a field");
        p.offset += to_value(args[1]).i;
        r.is_place = true;
        r.place = deref(p);
        return r;
      }
      case Intrinsic::kPtrAdd:
      case Intrinsic::kPtrSub: {
        Value p = to_value(args[0]);
        if (!p.block) fault("arithmetic on a null pointer");
        if (!p.path.empty()) fault("arithmetic on a pointer to a field");
        long long n = to_value(args[1]).i;
        p.offset += k == Intrinsic::kPtrAdd ? n : -n;
        r.value = p;
        return r;
      }
      case Intrinsic::kPtrDiff: {
        Value a = to_value(args[0]);
        Value b = to_value(args[1]);
        if (!a.block || a.block != b.block || a.path != b.path)
          fault("subtraction of pointers into different blocks");
        r.value = Value::make_int(a.offset - b.offset);
        return r;
      }
      case Intrinsic::kD2I:
        r.value = Value::make_int(static_cast<long long>(to_value(args[0]).d));
        return r;
      case Intrinsic::kI2D:
        r.value = Value::make_double(static_cast<double>(to_value(args[0]).i));
        return r;
      case Intrinsic::kNone: break;
    }
    fault("internal error: unknown built-in");
  }

  // ------------------------------------------------------------- printf

  std::string read_string(const Value& p) {
    if (p.kind != Value::Kind::kPointer || !p.block) fault("printf: null string");
    std::string s;
    for (long long i = p.offset;; ++i) {
      if (i < 0 || i >= static_cast<long long>(p.block->cells.size()))
        fault("printf: unterminated string");
      const Value& c = p.block->cells[i];
      if (c.i == 0) break;
      s.push_back(static_cast<char>(c.i));
    }
    return s;
  }

  Value do_printf(const std::vector<Value>& vals) {
    std::string fmt = read_string(vals.at(0));
    std::string text;
    std::size_t next = 1;
    char buf[512];
    for (std::size_t i = 0; i < fmt.size(); ++i) {
      if (fmt[i] != '%') {
        text.push_back(fmt[i]);
        continue;
      }
      std::size_t j = i + 1;
      while (j < fmt.size() && std::string("-+ #0123456789.").find(fmt[j]) != std::string::npos)
        ++j;
      if (j >= fmt.size()) fault("printf: bad format");
      char conv = fmt[j];
      std::string spec = fmt.substr(i, j - i);
      if (conv == '%') {
        text.push_back('%');
        i = j;
        continue;
      }
      if (next >= vals.size()) fault("printf: too few arguments");
      const Value& v = vals[next++];
      switch (conv) {
        case 'd':
        case 'i':
        case 'u':
        case 'x':
          std::snprintf(buf, sizeof buf, (spec + "ll" + conv).c_str(),
                        is_floating(v) ? static_cast<long long>(v.d) : v.i);
          break;
        case 'c':
          std::snprintf(buf, sizeof buf, (spec + "c").c_str(), static_cast<int>(v.i));
          break;
        case 'f':
        case 'g':
        case 'e':
          std::snprintf(buf, sizeof buf, (spec + conv).c_str(),
                        is_floating(v) ? v.d : static_cast<double>(v.i));
          break;
        case 's':
          std::snprintf(buf, sizeof buf, (spec + "s").c_str(), read_string(v).c_str());
          break;
        default: fault(std::string("printf: unsupported conversion %") + conv);
      }
      text += buf;
      i = j;
    }
    out << text;
    if (text.find('\n') != std::string::npos) out.flush();
    return Value::make_int(static_cast<long long>(text.size()));
  }

  // -------------------------------------------------------- construction

  void construct_with(const FunctionInfo* fn, std::vector<DictPtr> roots,
                      std::vector<ArgVal> args, const Place& dest) {
    const sema::ClassInfo* cls = fn->cls;
    ++call_counts[fn];
    if (fn->ctor_kind == FunctionInfo::CtorKind::kImplicitCopy) {
      write(dest, to_value(args.at(0)));
      return;
    }
    Value obj;
    obj.kind = Value::Kind::kObject;
    obj.cls = cls;
    for (const InitPlan& p : cls->field_defaults) obj.fields.push_back(init_value(p, roots));
    write(dest, std::move(obj));
    if (fn->ctor_kind == FunctionInfo::CtorKind::kImplicitDefault) return;
    DepthGuard g(*this);
    SourceLocation saved = loc;
    Frame fr;
    fr.slots.resize(fn->layout.num_slots);
    fr.slots[0] = dest;
    fr.roots = std::move(roots);
    bind_params(fr, fn->layout, fn->type, args);
    for (const sema::FieldInitInfo& init : fn->inits) {
      std::vector<Expr*> argx;
      for (const auto& a : init.source->args) argx.push_back(a.get());
      loc = init.source->loc;
      construct(init.target, init.args, argx, dest.field(init.field), fr);
    }
    exec_block(fn->ctor_decl->body, fr);
    loc = saved;
  }

  void construct(const CallTarget& t, const std::vector<ArgPass>& passes,
                 const std::vector<Expr*>& argx, const Place& dest, Frame& fr) {
    switch (t.kind) {
      case CallTarget::Kind::kFunction:
        construct_with(t.fn, eval_witnesses(t.witnesses, fr.roots),
                       eval_args(argx, passes, fr), dest);
        return;
      case CallTarget::Kind::kCopy:
        write(dest, convert(eval(*argx.at(0), fr), passes.at(0).conv, fr.roots));
        return;
      case CallTarget::Kind::kDefault:
        write(dest, init_value(t.plan, fr.roots));
        return;
      default: break;
    }
    fault("internal error: bad construction");
  }

  // -------------------------------------------------------- expressions

  static std::vector<Expr*> operands(Expr& e) {
    std::vector<Expr*> out;
    std::visit(overloaded{
                   [&](CallExpr& c) {
                     for (auto& a : c.args) out.push_back(a.get());
                   },
                   [&](UnaryExpr& u) { out.push_back(u.operand.get()); },
                   [&](BinaryExpr& b) {
                     out.push_back(b.lhs.get());
                     out.push_back(b.rhs.get());
                   },
                   [&](IndexExpr& x) {
                     out.push_back(x.object.get());
                     out.push_back(x.index.get());
                   },
                   [&](auto&) {},
               },
               e.node);
    return out;
  }

  Ret eval_call(Expr& e, Frame& fr) {
    const ExprAnnot& an = *e.annot;
    std::vector<Expr*> argx = operands(e);
    const CallTarget& t = an.target;
    switch (t.kind) {
      case CallTarget::Kind::kPrintf: {
        std::vector<Value> vals;
        for (Expr* x : argx) vals.push_back(eval(*x, fr));
        loc = e.loc;
        Ret r;
        r.value = do_printf(vals);
        return r;
      }
      case CallTarget::Kind::kValue: {
        Value callee = eval(*std::get<CallExpr>(e.node).callee, fr);
        std::vector<DictPtr> roots = eval_witnesses(t.witnesses, fr.roots);
        std::vector<ArgVal> args = eval_args(argx, an.args, fr);
        loc = e.loc;
        return call_closure(callee, std::move(roots), std::move(args));
      }
      case CallTarget::Kind::kFunction:
      case CallTarget::Kind::kDictOp:
      case CallTarget::Kind::kBuiltinAssign: {
        std::vector<ArgVal> args = eval_args(argx, an.args, fr);
        loc = e.loc;
        return dispatch(t, fr.roots, std::move(args));
      }
      default: break;
    }
    loc = e.loc;
    fault("internal error: unchecked call");
  }

  bool is_call(const Expr& e) const {
    if (!e.annot) return false;
    if (std::holds_alternative<CallExpr>(e.node) ||
        std::holds_alternative<IndexExpr>(e.node))
      return true;
    if (const auto* u = std::get_if<UnaryExpr>(&e.node))
      return u->op != "&" && u->op != "not";
    if (const auto* b = std::get_if<BinaryExpr>(&e.node))
      return b->op != "and" && b->op != "or";
    return false;
  }

  Place eval_place(Expr& e, Frame& fr) {
    loc = e.loc;
    const ExprAnnot& an = *e.annot;
    if (std::holds_alternative<VarRef>(e.node) ||
        (std::holds_alternative<MemberExpr>(e.node) &&
         an.ref != ExprAnnot::Ref::kNone)) {
      switch (an.ref) {
        case ExprAnnot::Ref::kLocal: return fr.slots.at(an.slot);
        case ExprAnnot::Ref::kField: return fr.slots.at(0).field(an.field);
        case ExprAnnot::Ref::kGlobal: return globals.at(an.slot);
        default: return new_cell(eval(e, fr));
      }
    }
    if (auto* m = std::get_if<MemberExpr>(&e.node)) {
      if (m->arrow) {
        Place p = deref(eval(*m->object, fr));
        return p.field(an.field);
      }
      Place base = eval_place(*m->object, fr);
      return base.field(an.field);
    }
    if (is_call(e)) {
      Ret r = eval_call(e, fr);
      return r.is_place ? r.place : new_cell(r.value);
    }
    return new_cell(eval(e, fr));
  }

  Value eval(Expr& e, Frame& fr) {
    loc = e.loc;
    const ExprAnnot& an = *e.annot;
    return std::visit(
        overloaded{
            [&](IntLit& x) { return Value::make_int(x.value); },
            [&](FloatLit& x) { return Value::make_double(x.value); },
            [&](CharLit& x) { return Value::make_char(x.value); },
            [&](StringLit& x) {
              auto b = std::make_shared<Block>();
              for (char c : x.value) b->cells.push_back(Value::make_char(c));
              b->cells.push_back(Value::make_char(0));
              Value p = Value::null_pointer();
              p.block = b;
              return p;
            },
            [&](VarRef&) -> Value {
              switch (an.ref) {
                case ExprAnnot::Ref::kBool: return Value::make_bool(an.bool_value);
                case ExprAnnot::Ref::kFunction: return function_value(an.fn);
                default: return read(eval_place(e, fr));
              }
            },
            [&](CallExpr&) { return call_value(e, fr); },
            [&](InstExpr& x) -> Value {
              Value v;
              if (an.target.fn)
                v = function_value(an.target.fn);
              else
                v = eval(*x.fn, fr);
              if (v.kind != Value::Kind::kClosure) fault("instantiation of a non-function");
              auto c = std::make_shared<Closure>(*v.closure);
              c->dicts = eval_witnesses(an.target.witnesses, fr.roots);
              v.closure = c;
              return v;
            },
            [&](FunExpr& f) {
              auto c = std::make_shared<Closure>();
              c->kind = Closure::Kind::kFunExpr;
              c->fun_expr = &f;
              c->info = an.fun_expr;
              for (auto& cap : f.captures) c->captures.push_back(eval(*cap.init, fr));
              Value v;
              v.kind = Value::Kind::kClosure;
              v.closure = c;
              return v;
            },
            [&](ModelMemberExpr&) {
              auto c = std::make_shared<Closure>();
              c->kind = Closure::Kind::kDictOp;
              c->dict = eval_witness(an.dict, fr.roots);
              c->op = an.op;
              Value v;
              v.kind = Value::Kind::kClosure;
              v.closure = c;
              return v;
            },
            [&](MemberExpr& m) -> Value {
              if (an.ref == ExprAnnot::Ref::kFunction) return function_value(an.fn);
              if (an.ref == ExprAnnot::Ref::kGlobal) return read(globals.at(an.slot));
              if (m.arrow) return read(eval_place(e, fr));
              Value obj = eval(*m.object, fr);
              if (obj.kind != Value::Kind::kObject)
                fault("use of an object before it is constructed");
              Value f = obj.fields.at(an.field);
              if (f.kind == Value::Kind::kUninit) fault("read of an uninitialized value");
              return f;
            },
            [&](UnaryExpr& u) -> Value {
              if (u.op == "&") {
                Place p = eval_place(*u.operand, fr);
                Value v = Value::null_pointer();
                v.block = p.block;
                v.offset = static_cast<long long>(p.index);
                v.path = p.path;
                return v;
              }
              if (u.op == "not") return Value::make_bool(!eval(*u.operand, fr).i);
              return call_value(e, fr);
            },
            [&](BinaryExpr& b) -> Value {
              if (b.op == "and")
                return Value::make_bool(eval(*b.lhs, fr).i && eval(*b.rhs, fr).i);
              if (b.op == "or")
                return Value::make_bool(eval(*b.lhs, fr).i || eval(*b.rhs, fr).i);
              return call_value(e, fr);
            },
            [&](CondExpr& c) -> Value {
              if (eval(*c.cond, fr).i)
                return convert(eval(*c.then_expr, fr), an.then_conv, fr.roots);
              return convert(eval(*c.else_expr, fr), an.else_conv, fr.roots);
            },
            [&](IndexExpr&) { return call_value(e, fr); },
            [&](NewExpr& n) -> Value {
              auto b = std::make_shared<Block>();
              if (n.array_size) {
                long long size = eval(*n.array_size, fr).i;
                loc = e.loc;
                if (size < 0) fault("negative array size");
                b->cells.reserve(static_cast<std::size_t>(size));
                for (long long i = 0; i < size; ++i)
                  b->cells.push_back(init_value(an.elem_plan, fr.roots));
              } else {
                b->cells.emplace_back();
                std::vector<Expr*> argx;
                for (auto& a : n.args) argx.push_back(a.get());
                construct(an.target, an.args, argx, Place{b, 0, {}}, fr);
              }
              Value p = Value::null_pointer();
              p.block = b;
              return p;
            },
            [&](ConstructExpr& c) -> Value {
              Place p = new_cell(Value{});
              std::vector<Expr*> argx;
              for (auto& a : c.args) argx.push_back(a.get());
              construct(an.target, an.args, argx, p, fr);
              return read(p);
            },
        },
        e.node);
  }

  Value call_value(Expr& e, Frame& fr) {
    Ret r = eval_call(e, fr);
    return r.is_place ? read(r.place) : r.value;
  }

  Value function_value(const FunctionInfo* fn) {
    auto c = std::make_shared<Closure>();
    c->kind = Closure::Kind::kFunction;
    c->fn = fn;
    Value v;
    v.kind = Value::Kind::kClosure;
    v.closure = c;
    return v;
  }

  // --------------------------------------------------------- statements

  void exec_block(const std::vector<StmtPtr>& stmts, Frame& fr) {
    for (const auto& s : stmts) {
      exec(*s, fr);
      if (fr.returned) return;
    }
  }

  void exec(Stmt& s, Frame& fr) {
    loc = s.loc;
    std::visit(
        overloaded{
            [&](LetStmt& l) {
              Value v = eval(*l.init, fr);
              fr.slots.at(s.annot->slot) = new_cell(v);
            },
            [&](TypeAliasStmt&) {},
            [&](WhileStmt& w) {
              while (!fr.returned && eval(*w.cond, fr).i) exec(*w.body, fr);
            },
            [&](ForStmt& f) {
              if (f.init) exec(*f.init, fr);
              while (!fr.returned && (!f.cond || eval(*f.cond, fr).i)) {
                exec(*f.body, fr);
                if (fr.returned) break;
                for (auto& x : f.steps) effect(*x, fr);
              }
            },
            [&](IfStmt& i) {
              if (eval(*i.cond, fr).i)
                exec(*i.then_stmt, fr);
              else if (i.else_stmt)
                exec(*i.else_stmt, fr);
            },
            [&](ReturnStmt& r) {
              Ret ret;
              if (!r.value) {
                ret.value = Value::unit();
              } else if (s.annot && s.annot->pass.mode == PassMode::kMutRef) {
                ret.is_place = true;
                ret.place = eval_place(*r.value, fr);
              } else {
                Conv c = s.annot ? s.annot->conv : Conv{};
                ret.value = convert(eval(*r.value, fr), c, fr.roots);
              }
              fr.ret = ret;
              fr.returned = true;
            },
            [&](ExprStmt& x) { effect(*x.expr, fr); },
            [&](BlockStmt& b) { exec_block(b.stmts, fr); },
        },
        s.node);
  }

  // Evaluates for side effects only; a returned place is not read.
  void effect(Expr& e, Frame& fr) {
    if (is_call(e)) {
      eval_call(e, fr);
      return;
    }
    if (e.annot && e.annot->type && e.annot->type->is_void()) {
      eval_place(e, fr);
      return;
    }
    eval(e, fr);
  }

  RunResult run(const std::string& entry) {
    RunResult res;
    try {
      for (const sema::GlobalVar* g : checker.globals()) {
        Frame fr;
        if (globals.size() <= static_cast<std::size_t>(g->index))
          globals.resize(g->index + 1);
        globals[g->index] = new_cell(eval(*g->decl->init, fr));
      }
      const FunctionInfo* fn = checker.find_global_function(entry);
      if (!fn || !fn->has_body) {
        res.exit_code = 2;
        res.fault = true;
        res.fault_text = "no function " + entry + " to run";
        return res;
      }
      if (!fn->type->params.empty() || fn->type->is_poly_fun()) {
        res.exit_code = 2;
        res.fault = true;
        res.fault_text = "function " + entry + " must not take parameters";
        return res;
      }
      loc = fn->loc;
      Ret r = invoke(fn, {}, {});
      Value v = r.is_place ? read(r.place) : r.value;
      res.exit_code = v.kind == Value::Kind::kInt ? static_cast<int>(v.i) : 0;
    } catch (const RuntimeFault& f) {
      out.flush();
      res.exit_code = 101;
      res.fault = true;
      res.fault_text = f.loc.filename() + ":" + std::to_string(f.loc.line) +
                       ": runtime fault: " + f.message;
    }
    out.flush();
    return res;
  }
};

Interpreter::Interpreter(const sema::Checker& checker, std::ostream& out,
                         InterpOptions opts)
    : impl_(std::make_unique<Impl>(checker, out, opts)) {}

Interpreter::~Interpreter() = default;

namespace {

// Deep G recursion becomes deep C++ recursion, so programs run on a thread
// whose stack comfortably holds max_call_depth frames.
constexpr std::size_t kStackBytes = std::size_t{1} << 30;

struct RunJob {
  std::function<RunResult()> body;
  RunResult result;
  std::exception_ptr error;
};

void* run_job(void* arg) {
  auto* job = static_cast<RunJob*>(arg);
  try {
    job->result = job->body();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

RunResult Interpreter::run(const std::string& entry) {
  RunJob job;
  job.body = [&] { return impl_->run(entry); };
  pthread_attr_t attr;
  pthread_t thread;
  bool started = pthread_attr_init(&attr) == 0 &&
                 pthread_attr_setstacksize(&attr, kStackBytes) == 0 &&
                 pthread_create(&thread, &attr, run_job, &job) == 0;
  pthread_attr_destroy(&attr);
  if (!started) return impl_->run(entry);
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
  return job.result;
}

long Interpreter::calls(const sema::FunctionInfo* f) const {
  auto it = impl_->call_counts.find(f);
  return it == impl_->call_counts.end() ? 0 : it->second;
}

long Interpreter::calls(const std::string& name) const {
  long n = 0;
  for (const auto& [f, c] : impl_->call_counts)
    if (f->name == name) n += c;
  return n;
}

std::vector<std::pair<const sema::FunctionInfo*, long>> Interpreter::call_counts() const {
  return {impl_->call_counts.begin(), impl_->call_counts.end()};
}

long Interpreter::fallback_lookups() const { return 0; }

}  // namespace g::interp
