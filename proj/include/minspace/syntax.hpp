#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minspace {

enum class SymbolKind : std::uint8_t { Constant, Function, Relation, Variable };

/// A named family of symbols sharing one kind and arity. An unindexed family
/// is a single symbol printed by its bare name; an indexed family holds
/// `name[0]`, `name[1]`, ... up to `size` (or without bound when `size` is
/// empty, i.e. an omega-indexed family).
struct Family {
  std::string name;
  SymbolKind kind = SymbolKind::Constant;
  int arity = 0;
  bool indexed = false;
  std::optional<std::size_t> size; // empty means omega
};

inline constexpr std::uint32_t kVariableFamily = 0xFFFFFFFFu;

struct SymbolRef {
  std::uint32_t family = 0;
  std::uint64_t index = 0;

  friend auto operator<=>(const SymbolRef&, const SymbolRef&) = default;

  [[nodiscard]] bool is_variable() const noexcept { return family == kVariableFamily; }
  static SymbolRef variable(std::uint64_t id) noexcept { return {kVariableFamily, id}; }
};

struct EnumerationOptions {
  /// Only indices below the cutoff are used for omega-indexed families.
  std::optional<std::size_t> index_cutoff;
};

class Signature {
public:
  Signature() = default;
  explicit Signature(std::vector<Family> families);

  [[nodiscard]] const std::vector<Family>& families() const noexcept { return families_; }
  [[nodiscard]] const Family& family(SymbolRef s) const { return families_.at(s.family); }
  [[nodiscard]] SymbolKind kind(SymbolRef s) const;
  [[nodiscard]] int arity(SymbolRef s) const;
  [[nodiscard]] std::string symbol_name(SymbolRef s) const;

  /// Finds a declared symbol. An unindexed family is matched by a bare name
  /// only; an indexed one requires an in-range index.
  [[nodiscard]] std::optional<SymbolRef> lookup(std::string_view base,
                                                std::optional<std::uint64_t> index) const;
  [[nodiscard]] std::optional<std::uint32_t> family_index(std::string_view base) const;

  [[nodiscard]] bool is_locally_finite() const;
  [[nodiscard]] bool is_finite() const { return is_locally_finite(); }

  /// Symbols of one kind in canonical order. Throws when an omega family has
  /// to be listed without a cutoff.
  [[nodiscard]] std::vector<SymbolRef> symbols(SymbolKind kind, const EnumerationOptions& opts = {}) const;

  /// Canonical symbol order: base name, then numeric index.
  [[nodiscard]] std::strong_ordering compare(SymbolRef a, SymbolRef b) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Signature& a, const Signature& b);

private:
  std::vector<Family> families_;
  std::vector<std::uint32_t> rank_; // family -> position in name order
};

/// Ground (or, inside quantified sentences, open) term.
struct Term {
  SymbolRef head;
  std::vector<Term> args;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  enum class Kind : std::uint8_t { Eq, Rel };

  Kind kind = Kind::Eq;
  SymbolRef relation; // Rel only
  std::vector<Term> args; // Eq: {lhs, rhs}

  static Atom eq(Term lhs, Term rhs);
  static Atom rel(SymbolRef relation, std::vector<Term> args);

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Quantifier-free sentence. And/Or nodes are binary.
struct Sentence {
  enum class Kind : std::uint8_t { Atomic, Not, And, Or };

  Kind kind = Kind::Atomic;
  Atom atom;
  std::vector<Sentence> children;

  static Sentence atomic(Atom a);
  static Sentence negation(Sentence s);
  static Sentence conjunction(Sentence a, Sentence b);
  static Sentence disjunction(Sentence a, Sentence b);

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

/// Prenex sentence with a single quantifier block over a quantifier-free
/// matrix; variables appear in the matrix as SymbolRef::variable(i).
struct QuantifiedSentence {
  enum class Quantifier : std::uint8_t { Forall, Exists };

  Quantifier quantifier = Quantifier::Forall;
  std::vector<std::string> variables;
  Sentence matrix;
};

// Length measure: symbol occurrences, plus one for "=" or a relation head.
[[nodiscard]] std::size_t length(const Term& t);
[[nodiscard]] std::size_t length(const Atom& a);

[[nodiscard]] Term constant(SymbolRef c);
[[nodiscard]] Term apply(SymbolRef f, std::vector<Term> args);

/// Prefix-token lexicographic order. Token streams of terms are prefix-free,
/// so this is a total order compatible with concatenation.
[[nodiscard]] std::strong_ordering compare_tokens(const Signature& sig, const Term& a, const Term& b);
/// Canonical order on terms and atoms: length first, then tokens ("=" sorts
/// before every relation symbol).
[[nodiscard]] std::strong_ordering compare_terms(const Signature& sig, const Term& a, const Term& b);
[[nodiscard]] std::strong_ordering compare_atoms(const Signature& sig, const Atom& a, const Atom& b);

// Printing. `variables` names SymbolRef::variable(i) occurrences.
[[nodiscard]] std::string to_string(const Signature& sig, const Term& t,
                                    std::span<const std::string> variables = {});
[[nodiscard]] std::string to_string(const Signature& sig, const Atom& a,
                                    std::span<const std::string> variables = {});
[[nodiscard]] std::string to_string(const Signature& sig, const Sentence& s,
                                    std::span<const std::string> variables = {});
[[nodiscard]] std::string to_string(const Signature& sig, const QuantifiedSentence& q);

// Parsing. All throw ParseError on malformed text and Error for semantic
// violations (unknown symbol, arity mismatch, duplicate names).
[[nodiscard]] Signature parse_signature(std::string_view text);
[[nodiscard]] Term parse_term(std::string_view text, const Signature& sig);
[[nodiscard]] Atom parse_atom(std::string_view text, const Signature& sig);
[[nodiscard]] Sentence parse_sentence(std::string_view text, const Signature& sig);
[[nodiscard]] QuantifiedSentence parse_quantified(std::string_view text, const Signature& sig);

[[nodiscard]] bool is_locally_finite(const Signature& sig);

/// All ground terms of length <= max_length in canonical order.
[[nodiscard]] std::vector<Term> enumerate_terms(const Signature& sig, std::size_t max_length,
                                                const EnumerationOptions& opts = {});
/// All atomic sentences of length <= max_length in canonical order. Both
/// orientations of an equation are listed.
[[nodiscard]] std::vector<Atom> enumerate_atomic(const Signature& sig, std::size_t max_length,
                                                 const EnumerationOptions& opts = {});

/// Hash-consed pool of ground terms grown one length at a time. Every
/// length bucket is kept in canonical order.
class TermPool {
public:
  using Id = std::uint32_t;

  struct Node {
    SymbolRef head;
    std::vector<Id> args;
    std::uint32_t length = 0;
  };

  /// Atom over pool terms.
  struct AtomIds {
    Atom::Kind kind = Atom::Kind::Eq;
    SymbolRef relation;
    std::vector<Id> args;
  };

  static constexpr std::size_t kDefaultNodeLimit = 4'000'000;

  TermPool(Signature sig, EnumerationOptions opts = {}, std::size_t node_limit = kDefaultNodeLimit);

  /// Ensures every term of length <= max_length is present.
  void grow_to(std::size_t max_length);

  [[nodiscard]] std::size_t max_length() const noexcept { return by_length_.size() - 1; }
  [[nodiscard]] std::span<const Id> of_length(std::size_t len) const;
  /// All terms with length <= max_length(), in token order (not length-first).
  [[nodiscard]] std::span<const Id> token_sorted() const noexcept { return token_sorted_; }
  [[nodiscard]] const Node& node(Id id) const { return nodes_[id]; }
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] Term term(Id id) const;
  [[nodiscard]] std::strong_ordering compare(Id a, Id b) const;
  [[nodiscard]] const Signature& signature() const noexcept { return sig_; }

  /// All atoms of exactly `len` in canonical order. Grows the pool as needed.
  [[nodiscard]] std::vector<AtomIds> atoms_of_length(std::size_t len);
  /// Relation atoms only, of exactly `len`, in canonical order.
  [[nodiscard]] std::vector<AtomIds> relation_atoms_of_length(std::size_t len);
  [[nodiscard]] Atom atom(const AtomIds& a) const;

private:
  void build_length(std::size_t len);

  Signature sig_;
  EnumerationOptions opts_;
  std::size_t node_limit_;
  std::vector<Node> nodes_;
  std::vector<std::vector<Id>> by_length_;
  std::vector<Id> token_sorted_;
  std::vector<SymbolRef> term_heads_;
  std::vector<SymbolRef> relations_;
};

} // namespace minspace
