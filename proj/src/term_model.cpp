#include "minspace/term_model.hpp"

#include "minspace/error.hpp"

#include <algorithm>
#include <functional>

namespace minspace {

std::size_t CongruenceClosure::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k.head.family) << 40) ^ k.head.index);
  for (NodeId a : k.args) h = h * 1000003u ^ std::hash<NodeId>{}(a);
  return h;
}

CongruenceClosure::CongruenceClosure(Signature sig) : sig_(std::move(sig)) {}

CongruenceClosure::NodeId CongruenceClosure::find(NodeId n) {
  NodeId root = n;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[n] != root) {
    const NodeId next = parent_[n];
    parent_[n] = root;
    n = next;
  }
  return root;
}

CongruenceClosure::Key CongruenceClosure::key_of(NodeId n) {
  Key k{nodes_[n].head, nodes_[n].args};
  for (NodeId& a : k.args) a = find(a);
  return k;
}

CongruenceClosure::NodeId CongruenceClosure::intern_node(SymbolRef head, std::span<const NodeId> args) {
  if (static_cast<std::size_t>(sig_.arity(head)) != args.size() || sig_.kind(head) == SymbolKind::Relation ||
      head.is_variable())
    throw Error("arity-mismatch", "cannot intern '" + sig_.symbol_name(head) + "' with " +
                                      std::to_string(args.size()) + " argument(s)");
  Key exact{head, std::vector<NodeId>(args.begin(), args.end())};
  if (auto it = exact_.find(exact); it != exact_.end()) return it->second;

  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{head, exact.args});
  parent_.push_back(id);
  class_size_.push_back(1);
  uses_.emplace_back();
  exact_.emplace(std::move(exact), id);

  Key k = key_of(id);
  for (NodeId a : k.args) {
    auto& u = uses_[a];
    if (u.empty() || u.back() != id) u.push_back(id);
  }
  auto [it, inserted] = table_.emplace(std::move(k), id);
  if (!inserted) {
    pending_.emplace_back(it->second, id);
    propagate();
  }
  return id;
}

CongruenceClosure::NodeId CongruenceClosure::intern(const Term& t) {
  std::vector<NodeId> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(intern(a));
  return intern_node(t.head, args);
}

void CongruenceClosure::merge(NodeId a, NodeId b) {
  pending_.emplace_back(a, b);
  propagate();
}

void CongruenceClosure::propagate() {
  while (!pending_.empty()) {
    auto [a, b] = pending_.back();
    pending_.pop_back();
    NodeId ra = find(a);
    NodeId rb = find(b);
    if (ra == rb) continue;
    // The larger class keeps its representative; ties go to the older node.
    if (class_size_[ra] < class_size_[rb] || (class_size_[ra] == class_size_[rb] && rb < ra)) std::swap(ra, rb);
    parent_[rb] = ra;
    class_size_[ra] += class_size_[rb];
    std::vector<NodeId> moved = std::move(uses_[rb]);
    uses_[rb].clear();
    for (NodeId u : moved) {
      Key k = key_of(u);
      auto [it, inserted] = table_.emplace(std::move(k), u);
      if (!inserted && find(it->second) != find(u)) pending_.emplace_back(it->second, u);
      uses_[ra].push_back(u);
    }
  }
}

void CongruenceClosure::assert_relation(SymbolRef relation, std::span<const NodeId> args) {
  if (sig_.kind(relation) != SymbolKind::Relation || static_cast<std::size_t>(sig_.arity(relation)) != args.size())
    throw Error("arity-mismatch", "bad relation tuple for '" + sig_.symbol_name(relation) + "'");
  relations_.emplace_back(relation, std::vector<NodeId>(args.begin(), args.end()));
}

bool CongruenceClosure::relation_holds(SymbolRef relation, std::span<const NodeId> args) {
  for (auto& [r, tuple] : relations_) {
    if (r != relation) continue;
    bool same = true;
    for (std::size_t i = 0; same && i < tuple.size(); ++i) same = find(tuple[i]) == find(args[i]);
    if (same) return true;
  }
  return false;
}

std::size_t CongruenceClosure::class_count() {
  std::size_t n = 0;
  for (NodeId i = 0; i < nodes_.size(); ++i)
    if (find(i) == i) ++n;
  return n;
}

CongruenceClosure close(const Presentation& p) {
  CongruenceClosure cc(p.signature);
  for (const Atom& a : p.atoms) {
    std::vector<CongruenceClosure::NodeId> ids;
    ids.reserve(a.args.size());
    for (const Term& t : a.args) ids.push_back(cc.intern(t));
    if (a.kind == Atom::Kind::Eq)
      cc.merge(ids[0], ids[1]);
    else
      cc.assert_relation(a.relation, ids);
  }
  return cc;
}

bool entails_eq(CongruenceClosure& cc, const Term& s, const Term& t) {
  const auto a = cc.intern(s);
  const auto b = cc.intern(t);
  return cc.equivalent(a, b);
}

bool holds_atom(CongruenceClosure& cc, const Atom& a) {
  if (a.kind == Atom::Kind::Eq) return entails_eq(cc, a.args[0], a.args[1]);
  std::vector<CongruenceClosure::NodeId> ids;
  ids.reserve(a.args.size());
  for (const Term& t : a.args) ids.push_back(cc.intern(t));
  return cc.relation_holds(a.relation, ids);
}

Consistency consistent(const Signature& sig, std::span<const Literal> literals) {
  Consistency out;
  out.witness.signature = sig;
  for (const Literal& l : literals)
    if (l.positive) out.witness.atoms.push_back(l.atom);
  CongruenceClosure cc = close(out.witness);
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (literals[i].positive) continue;
    if (holds_atom(cc, literals[i].atom)) {
      out.consistent = false;
      out.clash_index = i;
      out.clash = literals[i];
      return out;
    }
  }
  out.consistent = true;
  return out;
}

} // namespace minspace
