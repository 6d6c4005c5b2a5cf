#ifndef G_SEMA_INTRINSICS_H_
#define G_SEMA_INTRINSICS_H_

#include <string>

namespace g::sema {

// Operations implemented by the interpreter. The prelude declares their
// signatures as body-less functions; the checker binds each declaration
// to an entry here by name and printed type.
enum class Intrinsic {
  kNone,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kNeg,
  kEq,
  kNe,
  kLt,
  kGt,
  kLe,
  kGe,
  kPreInc,
  kPreDec,
  kDeref,
  kIndex,
  kPtrAdd,
  kPtrSub,
  kPtrDiff,
  kD2I,
  kI2D,
};

// `key` is the function name followed by its printed type, for example
// "operator+ fun(int,int)->int@".
Intrinsic lookup_intrinsic(const std::string& key);
const char* intrinsic_name(Intrinsic k);

}  // namespace g::sema

#endif  // G_SEMA_INTRINSICS_H_
