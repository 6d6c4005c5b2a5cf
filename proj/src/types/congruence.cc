#include "g/types/congruence.h"

#include <algorithm>
#include <deque>

namespace g::types {
namespace {

std::string fun_head(TypeRef t) {
  std::string h = "fun/" + std::to_string(t->quantifiers.size()) + "/";
  for (const auto& q : t->quantifiers) h += q + ",";
  h += "/";
  for (const auto& c : t->constraints)
    h += (c.same_type ? std::string("=") : c.concept_name) + "#" +
         std::to_string(c.args.size()) + ",";
  h += "/";
  for (const auto& p : t->params) h += std::to_string(static_cast<int>(p.mode));
  h += "->" + std::to_string(static_cast<int>(t->ret.mode));
  return h;
}

}  // namespace

int CongruenceGraph::find(int n) const {
  while (parent_[n] != n) {
    parent_[n] = parent_[parent_[n]];
    n = parent_[n];
  }
  return n;
}

int CongruenceGraph::rank_of(TypeRef t) const {
  switch (t->kind) {
    case Kind::kBase: return 0;
    case Kind::kCtor:
    case Kind::kFun: return 1;
    case Kind::kVar: return 2;
    case Kind::kProj: return 3;
    case Kind::kError: return 4;
  }
  return 5;
}

std::string CongruenceGraph::signature(int n) const {
  const Node& nd = nodes_[n];
  std::string s = nd.head;
  s += '(';
  for (int c : nd.children) {
    s += std::to_string(find(c));
    s += ',';
  }
  s += ')';
  return s;
}

int CongruenceGraph::node(TypeRef t) {
  t = alpha_canonical(t);
  auto it = index_.find(t);
  if (it != index_.end()) return it->second;

  Node nd;
  nd.term = t;
  switch (t->kind) {
    case Kind::kVar:
    case Kind::kBase:
    case Kind::kError:
      nd.head = "atom#" + std::to_string(t->id);
      break;
    case Kind::kCtor:
      nd.head = "ctor/" + t->name + "/" + std::to_string(t->args.size());
      nd.injective = true;
      for (TypeRef a : t->args) nd.children.push_back(node(a));
      break;
    case Kind::kProj:
      nd.head = "proj/" + t->name + "." + t->member + "/" +
                std::to_string(t->args.size());
      for (TypeRef a : t->args) nd.children.push_back(node(a));
      break;
    case Kind::kFun:
      nd.head = fun_head(t);
      nd.injective = true;
      for (const auto& c : t->constraints)
        for (TypeRef a : c.args) nd.children.push_back(node(a));
      for (const auto& p : t->params) nd.children.push_back(node(p.type));
      nd.children.push_back(node(t->ret.type));
      break;
  }

  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(nd);
  index_[t] = id;
  parent_.push_back(id);
  size_.push_back(1);
  members_.push_back({id});
  uses_.push_back({});
  ctors_.push_back(nd.injective ? std::vector<int>{id} : std::vector<int>{});
  base_of_.push_back(t->is_base() ? id : -1);
  for (int c : nodes_[id].children) {
    int r = find(c);
    uses_[r].push_back(id);
  }

  if (!nodes_[id].children.empty()) {
    std::string sig = signature(id);
    auto st = sig_table_.find(sig);
    if (st != sig_table_.end()) {
      merge(id, st->second);
    } else {
      sig_table_[sig] = id;
    }
  }
  return id;
}

void CongruenceGraph::merge(int a, int b) {
  std::deque<std::pair<int, int>> pending;
  pending.emplace_back(a, b);
  while (!pending.empty()) {
    auto [x, y] = pending.front();
    pending.pop_front();
    int rx = find(x);
    int ry = find(y);
    if (rx == ry) continue;

    int bx = base_of_[rx];
    int by = base_of_[ry];
    if (consistent()) {
      if (bx >= 0 && by >= 0 && bx != by) {
        inconsistency_ = to_string(nodes_[bx].term) + " != " +
                         to_string(nodes_[by].term);
      } else if ((bx >= 0 && !ctors_[ry].empty()) ||
                 (by >= 0 && !ctors_[rx].empty())) {
        int l = bx >= 0 ? bx : ctors_[rx][0];
        int r = bx >= 0 ? ctors_[ry][0] : by;
        inconsistency_ = to_string(nodes_[l].term) + " != " +
                         to_string(nodes_[r].term);
      }
    }
    for (int cy : ctors_[ry]) {
      bool matched = false;
      for (int cx : ctors_[rx]) {
        if (nodes_[cx].head != nodes_[cy].head) continue;
        matched = true;
        const auto& kx = nodes_[cx].children;
        const auto& ky = nodes_[cy].children;
        for (std::size_t i = 0; i < kx.size() && i < ky.size(); ++i)
          pending.emplace_back(kx[i], ky[i]);
      }
      if (!matched && !ctors_[rx].empty() && consistent())
        inconsistency_ = to_string(nodes_[ctors_[rx][0]].term) + " != " +
                         to_string(nodes_[cy].term);
    }

    int root = rx;
    int other = ry;
    if (size_[rx] < size_[ry]) std::swap(root, other);
    parent_[other] = root;
    size_[root] += size_[other];
    members_[root].insert(members_[root].end(), members_[other].begin(),
                          members_[other].end());
    members_[other].clear();
    for (int c : ctors_[other]) {
      bool dup = false;
      for (int k : ctors_[root]) dup = dup || nodes_[k].head == nodes_[c].head;
      if (!dup) ctors_[root].push_back(c);
    }
    ctors_[other].clear();
    if (base_of_[root] < 0) base_of_[root] = base_of_[other];

    std::vector<int> moved = std::move(uses_[other]);
    uses_[other].clear();
    for (int p : moved) {
      std::string sig = signature(p);
      auto st = sig_table_.find(sig);
      if (st != sig_table_.end() && find(st->second) != find(p)) {
        pending.emplace_back(p, st->second);
      } else if (st == sig_table_.end()) {
        sig_table_[sig] = p;
      }
      uses_[root].push_back(p);
    }
  }
}

void CongruenceGraph::assert_equal(TypeRef a, TypeRef b) {
  if (contains_error(a) || contains_error(b)) return;
  int x = node(a);
  int y = node(b);
  merge(x, y);
}

bool CongruenceGraph::equal(TypeRef a, TypeRef b) {
  if (a == b) return true;
  if (contains_error(a) || contains_error(b)) return true;
  if (alpha_equal(a, b)) return true;
  int x = node(a);
  int y = node(b);
  return find(x) == find(y);
}

TypeRef CongruenceGraph::representative(TypeRef t) {
  if (t->is_error()) return t;
  int r = find(node(t));
  int best = -1;
  for (int m : members_[r]) {
    if (best < 0 || rank_of(nodes_[m].term) < rank_of(nodes_[best].term) ||
        (rank_of(nodes_[m].term) == rank_of(nodes_[best].term) && m < best))
      best = m;
  }
  if (best < 0 || rank_of(nodes_[best].term) >= rank_of(alpha_canonical(t)))
    return t;
  return nodes_[best].term;
}

std::vector<TypeRef> CongruenceGraph::class_of(TypeRef t) {
  int r = find(node(t));
  std::vector<TypeRef> out;
  for (int m : members_[r]) out.push_back(nodes_[m].term);
  return out;
}

TypeRef CongruenceGraph::find_with_head(TypeRef t, const std::string& name,
                                        std::size_t arity, bool function) {
  auto matches = [&](TypeRef m) {
    if (function) return m->is_fun();
    return m->kind == Kind::kCtor && m->name == name && m->args.size() == arity;
  };
  if (matches(t)) return t;
  if (t->is_error()) return nullptr;
  int r = find(node(t));
  for (int m : members_[r])
    if (matches(nodes_[m].term)) return nodes_[m].term;
  return nullptr;
}

std::vector<std::string> CongruenceGraph::describe() const {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
    if (members_[i].size() < 2) continue;
    std::vector<std::string> names;
    for (int m : members_[i]) names.push_back(to_string(nodes_[m].term));
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    if (names.size() < 2) continue;
    std::string line;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (k) line += " = ";
      line += names[k];
    }
    lines.push_back(line);
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace g::types
