#ifndef G_TYPES_CONGRUENCE_H_
#define G_TYPES_CONGRUENCE_H_

#include <map>
#include <string>
#include <vector>

#include "g/types/type.h"

namespace g::types {

// Congruence closure over type terms. Equalities asserted with
// assert_equal are closed under reflexivity, symmetry, transitivity and
// congruence (equal arguments give equal applications). Type constructors
// and function types are also injective, so list<A> = list<B> yields A = B.
// Projections are not injective. Two distinct base types, or two
// applications with different heads, in one class make the graph
// inconsistent.
class CongruenceGraph {
 public:
  void assert_equal(TypeRef a, TypeRef b);
  bool equal(TypeRef a, TypeRef b);

  bool consistent() const { return inconsistency_.empty(); }
  const std::string& inconsistency() const { return inconsistency_; }

  // The preferred member of t's class: a base type, else a constructed
  // type, else a variable, else a projection. Ties go to the oldest term.
  TypeRef representative(TypeRef t);
  std::vector<TypeRef> class_of(TypeRef t);

  // A member of t's class that is a constructor application with the given
  // name and arity, or a function type when name is empty.
  TypeRef find_with_head(TypeRef t, const std::string& name,
                         std::size_t arity, bool function);

  // Classes with at least two members, each sorted, printed as
  // "a = b = c", lines sorted.
  std::vector<std::string> describe() const;

  std::size_t term_count() const { return nodes_.size(); }

 private:
  struct Node {
    TypeRef term;
    std::string head;
    std::vector<int> children;
    bool injective = false;
  };

  int node(TypeRef t);
  int find(int n) const;
  std::string signature(int n) const;
  void merge(int a, int b);
  int rank_of(TypeRef t) const;

  std::vector<Node> nodes_;
  std::map<TypeRef, int> index_;
  mutable std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> uses_;
  std::vector<std::vector<int>> ctors_;  // one injective node per head
  std::vector<int> base_of_;
  std::map<std::string, int> sig_table_;
  std::string inconsistency_;
};

}  // namespace g::types

#endif  // G_TYPES_CONGRUENCE_H_
