#pragma once

#include "minspace/syntax.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace minspace {

struct Literal {
  Atom atom;
  bool positive = true;
};

/// Finite set of positive ground atoms over a signature.
struct Presentation {
  Signature signature;
  std::vector<Atom> atoms;
};

/// Incremental ground congruence closure.
///
/// Nodes form a hash-consed subterm graph; classes live in a union-find with
/// a signature table keyed by (head, argument classes). Terms interned after
/// the asserted equations have been closed never cause merges of existing
/// classes, so class representatives observed by callers stay stable.
///
/// Not thread-safe: queries may extend the graph.
class CongruenceClosure {
public:
  using NodeId = std::uint32_t;

  explicit CongruenceClosure(Signature sig);

  [[nodiscard]] const Signature& signature() const noexcept { return sig_; }

  NodeId intern(const Term& t);
  /// Interns head(args...). Arguments may be any node ids, including
  /// non-representatives.
  NodeId intern_node(SymbolRef head, std::span<const NodeId> args);

  void merge(NodeId a, NodeId b);
  void assert_relation(SymbolRef relation, std::span<const NodeId> args);

  [[nodiscard]] NodeId find(NodeId n);
  [[nodiscard]] bool equivalent(NodeId a, NodeId b) { return find(a) == find(b); }
  [[nodiscard]] bool relation_holds(SymbolRef relation, std::span<const NodeId> args);

  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
  [[nodiscard]] std::size_t class_count();
  [[nodiscard]] SymbolRef head(NodeId n) const { return nodes_[n].head; }
  [[nodiscard]] std::span<const NodeId> args(NodeId n) const { return nodes_[n].args; }

private:
  struct Node {
    SymbolRef head;
    std::vector<NodeId> args;
  };

  struct Key {
    SymbolRef head;
    std::vector<NodeId> args;
    friend bool operator==(const Key&, const Key&) = default;
  };

  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Key key_of(NodeId n);
  void propagate();

  Signature sig_;
  std::vector<Node> nodes_;
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> class_size_;
  std::vector<std::vector<NodeId>> uses_; // by representative
  std::unordered_map<Key, NodeId, KeyHash> table_;
  std::unordered_map<Key, NodeId, KeyHash> exact_; // structural hash-consing
  std::vector<std::pair<NodeId, NodeId>> pending_;
  std::vector<std::pair<SymbolRef, std::vector<NodeId>>> relations_;
};

/// Least congruence containing the presented equations, with relation tuples
/// recorded for class-wise lookup.
[[nodiscard]] CongruenceClosure close(const Presentation& p);

[[nodiscard]] bool entails_eq(CongruenceClosure& cc, const Term& s, const Term& t);
[[nodiscard]] bool holds_atom(CongruenceClosure& cc, const Atom& a);

struct Consistency {
  bool consistent = false;
  /// First violated negative literal in input order, when inconsistent.
  std::optional<std::size_t> clash_index;
  std::optional<Literal> clash;
  /// Positive part of the input; a term model of it satisfies every literal.
  Presentation witness;
};

[[nodiscard]] Consistency consistent(const Signature& sig, std::span<const Literal> literals);

} // namespace minspace
