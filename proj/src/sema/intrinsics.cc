#include "g/sema/intrinsics.h"

#include <map>

namespace g::sema {
namespace {

const std::map<std::string, Intrinsic>& table() {
  static const auto* t = [] {
    auto* m = new std::map<std::string, Intrinsic>;
    const char* arith[] = {"int", "float", "double"};
    for (const char* b : arith) {
      std::string s = b;
      std::string bin = "fun(" + s + "," + s + ")->" + s + "@";
      std::string cmp = "fun(" + s + "," + s + ")->bool@";
      (*m)["operator+ " + bin] = Intrinsic::kAdd;
      (*m)["operator- " + bin] = Intrinsic::kSub;
      (*m)["operator* " + bin] = Intrinsic::kMul;
      (*m)["operator/ " + bin] = Intrinsic::kDiv;
      (*m)["operator- fun(" + s + ")->" + s + "@"] = Intrinsic::kNeg;
      (*m)["operator== " + cmp] = Intrinsic::kEq;
      (*m)["operator!= " + cmp] = Intrinsic::kNe;
      (*m)["operator< " + cmp] = Intrinsic::kLt;
      (*m)["operator> " + cmp] = Intrinsic::kGt;
      (*m)["operator<= " + cmp] = Intrinsic::kLe;
      (*m)["operator>= " + cmp] = Intrinsic::kGe;
      (*m)["operator++ fun(" + s + "!)->" + s + "!"] = Intrinsic::kPreInc;
      (*m)["operator-- fun(" + s + "!)->" + s + "!"] = Intrinsic::kPreDec;
    }
    (*m)["operator% fun(int,int)->int@"] = Intrinsic::kMod;
    for (const char* b : {"bool", "char"}) {
      std::string s = b;
      std::string cmp = "fun(" + s + "," + s + ")->bool@";
      (*m)["operator== " + cmp] = Intrinsic::kEq;
      (*m)["operator!= " + cmp] = Intrinsic::kNe;
      (*m)["operator< " + cmp] = Intrinsic::kLt;
      (*m)["operator> " + cmp] = Intrinsic::kGt;
      (*m)["operator<= " + cmp] = Intrinsic::kLe;
      (*m)["operator>= " + cmp] = Intrinsic::kGe;
    }
    (*m)["operator* fun<T>(T*)->T!"] = Intrinsic::kDeref;
    (*m)["operator[] fun<T>(T*,int)->T!"] = Intrinsic::kIndex;
    (*m)["operator+ fun<T>(T*,int)->T*@"] = Intrinsic::kPtrAdd;
    (*m)["operator- fun<T>(T*,int)->T*@"] = Intrinsic::kPtrSub;
    (*m)["operator- fun<T>(T*,T*)->int@"] = Intrinsic::kPtrDiff;
    (*m)["operator++ fun<T>(T*!)->T*!"] = Intrinsic::kPreInc;
    (*m)["operator-- fun<T>(T*!)->T*!"] = Intrinsic::kPreDec;
    std::string pcmp = "fun<T>(T*,T*)->bool@";
    (*m)["operator== " + pcmp] = Intrinsic::kEq;
    (*m)["operator!= " + pcmp] = Intrinsic::kNe;
    (*m)["operator< " + pcmp] = Intrinsic::kLt;
    (*m)["operator> " + pcmp] = Intrinsic::kGt;
    (*m)["operator<= " + pcmp] = Intrinsic::kLe;
    (*m)["operator>= " + pcmp] = Intrinsic::kGe;
    (*m)["d2i fun(double)->int@"] = Intrinsic::kD2I;
    (*m)["i2d fun(int)->double@"] = Intrinsic::kI2D;
    return m;
  }();
  return *t;
}

}  // namespace

Intrinsic lookup_intrinsic(const std::string& key) {
  auto it = table().find(key);
  return it == table().end() ? Intrinsic::kNone : it->second;
}

const char* intrinsic_name(Intrinsic k) {
  switch (k) {
    case Intrinsic::kNone: return "none";
    case Intrinsic::kAdd: return "add";
    case Intrinsic::kSub: return "sub";
    case Intrinsic::kMul: return "mul";
    case Intrinsic::kDiv: return "div";
    case Intrinsic::kMod: return "mod";
    case Intrinsic::kNeg: return "neg";
    case Intrinsic::kEq: return "eq";
    case Intrinsic::kNe: return "ne";
    case Intrinsic::kLt: return "lt";
    case Intrinsic::kGt: return "gt";
    case Intrinsic::kLe: return "le";
    case Intrinsic::kGe: return "ge";
    case Intrinsic::kPreInc: return "preinc";
    case Intrinsic::kPreDec: return "predec";
    case Intrinsic::kDeref: return "deref";
    case Intrinsic::kIndex: return "index";
    case Intrinsic::kPtrAdd: return "ptradd";
    case Intrinsic::kPtrSub: return "ptrsub";
    case Intrinsic::kPtrDiff: return "ptrdiff";
    case Intrinsic::kD2I: return "d2i";
    case Intrinsic::kI2D: return "i2d";
  }
  return "?";
}

}  // namespace g::sema
