#pragma once

#include "minspace/syntax.hpp"
#include "minspace/term_model.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minspace {

/// Canonical representative of an element: a table index, a congruence class
/// id, a freely reduced word, or a normal-form vector depending on the
/// backend. Two handles from the same structure are equal iff the elements
/// are equal.
struct ElementHandle {
  std::vector<std::int64_t> repr;

  friend auto operator<=>(const ElementHandle&, const ElementHandle&) = default;
};

struct ElementHandleHash {
  std::size_t operator()(const ElementHandle& h) const noexcept;
};

/// Oracle for a minimal structure: every element is the value of a ground
/// term, reached through `apply` starting from the constants.
class MinimalStructure {
public:
  explicit MinimalStructure(Signature sig) : sig_(std::move(sig)) {}
  virtual ~MinimalStructure() = default;

  MinimalStructure(const MinimalStructure&) = default;
  MinimalStructure& operator=(const MinimalStructure&) = delete;

  [[nodiscard]] const Signature& signature() const noexcept { return sig_; }
  [[nodiscard]] virtual std::string backend() const = 0;

  /// Value of `symbol` (constant or function) on argument handles.
  [[nodiscard]] virtual ElementHandle apply(SymbolRef symbol, std::span<const ElementHandle> args) const = 0;
  [[nodiscard]] virtual bool holds_relation(SymbolRef relation, std::span<const ElementHandle> args) const = 0;

  /// Deep copy; lets each worker own a backend with lazy internal state.
  [[nodiscard]] virtual std::unique_ptr<MinimalStructure> clone() const = 0;

  [[nodiscard]] ElementHandle eval(const Term& t) const;
  [[nodiscard]] bool holds(const Atom& a) const;

private:
  Signature sig_;
};

using StructurePtr = std::shared_ptr<const MinimalStructure>;

/// Concrete finite structure. It may be non-minimal (see `core`).
class FiniteTable final : public MinimalStructure {
public:
  /// Requires a finite signature; every symbol must be assigned before use.
  FiniteTable(Signature sig, std::size_t size);

  [[nodiscard]] std::string backend() const override { return "table"; }
  [[nodiscard]] std::size_t size() const noexcept { return size_; }

  void set_constant(SymbolRef c, std::size_t value);
  /// Row-major table over size^arity argument tuples.
  void set_function(SymbolRef f, std::vector<std::size_t> table);
  void set_relation(SymbolRef r, const std::vector<std::vector<std::size_t>>& tuples);
  /// Throws unless every constant and function is assigned and in range.
  void validate() const;

  [[nodiscard]] std::size_t constant(SymbolRef c) const;
  [[nodiscard]] std::size_t value(SymbolRef f, std::span<const std::size_t> args) const;
  [[nodiscard]] bool related(SymbolRef r, std::span<const std::size_t> args) const;
  [[nodiscard]] std::vector<std::vector<std::size_t>> relation_tuples(SymbolRef r) const;
  [[nodiscard]] const std::vector<std::size_t>& function_table(SymbolRef f) const;

  [[nodiscard]] ElementHandle apply(SymbolRef symbol, std::span<const ElementHandle> args) const override;
  [[nodiscard]] bool holds_relation(SymbolRef relation, std::span<const ElementHandle> args) const override;
  [[nodiscard]] std::unique_ptr<MinimalStructure> clone() const override;

  [[nodiscard]] std::size_t eval_index(const Term& t) const;
  /// Evaluates terms that may contain variables bound by `assignment`.
  [[nodiscard]] std::size_t eval_index(const Term& t, std::span<const std::size_t> assignment) const;

private:
  [[nodiscard]] std::size_t offset(SymbolRef s, std::span<const std::size_t> args) const;

  std::size_t size_;
  std::map<SymbolRef, std::vector<std::size_t>> functions_; // constants have one cell
  std::map<SymbolRef, std::vector<char>> relations_;
};

/// Term model of a presentation: elements are congruence classes of ground
/// terms, relations hold exactly on tuples congruent to asserted ones.
/// Confine an instance to one thread; `clone` for parallel use.
class FinitelyPresented final : public MinimalStructure {
public:
  explicit FinitelyPresented(Presentation p);

  [[nodiscard]] std::string backend() const override { return "presented"; }
  [[nodiscard]] const Presentation& presentation() const noexcept { return presentation_; }

  [[nodiscard]] ElementHandle apply(SymbolRef symbol, std::span<const ElementHandle> args) const override;
  [[nodiscard]] bool holds_relation(SymbolRef relation, std::span<const ElementHandle> args) const override;
  [[nodiscard]] std::unique_ptr<MinimalStructure> clone() const override;

private:
  Presentation presentation_;
  mutable CongruenceClosure cc_;
};

/// Signature of C-marked groups: `const e; fn inv/1; fn mul/2;` plus one
/// constant per marker.
[[nodiscard]] Signature group_signature(const std::vector<std::string>& markers);

/// Marker constants of a group signature (every constant except `e`).
[[nodiscard]] std::vector<SymbolRef> group_markers(const Signature& sig);

/// Free group on the markers; elements are freely reduced words.
class FreeGroupMarked final : public MinimalStructure {
public:
  explicit FreeGroupMarked(const std::vector<std::string>& markers);

  [[nodiscard]] std::string backend() const override { return "free_group"; }
  [[nodiscard]] ElementHandle apply(SymbolRef symbol, std::span<const ElementHandle> args) const override;
  [[nodiscard]] bool holds_relation(SymbolRef, std::span<const ElementHandle>) const override { return false; }
  [[nodiscard]] std::unique_ptr<MinimalStructure> clone() const override;

private:
  std::map<SymbolRef, std::int64_t> letter_; // marker -> generator number (1-based)
  SymbolRef e_, inv_, mul_;
};

/// Z^n modulo a relation lattice, marked by the standard generators.
/// Elements are reduced modulo the lattice's Hermite normal form.
class AbelianMarked final : public MinimalStructure {
public:
  /// `relators` are integer row vectors of length markers.size().
  AbelianMarked(const std::vector<std::string>& markers, const std::vector<std::vector<std::int64_t>>& relators);

  [[nodiscard]] std::string backend() const override { return "abelian"; }
  [[nodiscard]] ElementHandle apply(SymbolRef symbol, std::span<const ElementHandle> args) const override;
  [[nodiscard]] bool holds_relation(SymbolRef, std::span<const ElementHandle>) const override { return false; }
  [[nodiscard]] std::unique_ptr<MinimalStructure> clone() const override;

  /// Hermite normal form rows (upper echelon, positive pivots, entries above
  /// each pivot reduced into [0, pivot)).
  [[nodiscard]] const std::vector<std::vector<std::int64_t>>& lattice() const noexcept { return hnf_; }
  [[nodiscard]] std::vector<std::int64_t> normalize(std::vector<std::int64_t> v) const;
  [[nodiscard]] const std::vector<std::vector<std::int64_t>>& relators() const noexcept { return relators_; }

private:
  std::size_t rank_;
  std::vector<std::vector<std::int64_t>> relators_;
  std::vector<std::vector<std::int64_t>> hnf_;
  std::vector<std::size_t> pivot_col_;
  std::map<SymbolRef, std::size_t> generator_;
  SymbolRef e_, inv_, mul_;
};

/// Hermite normal form of the lattice spanned by `rows` (zero rows dropped).
[[nodiscard]] std::vector<std::vector<std::int64_t>> hermite_normal_form(std::vector<std::vector<std::int64_t>> rows,
                                                                       std::size_t columns);

/// Term model of a consistent literal set. Throws Error("inconsistent")
/// naming the clash otherwise.
[[nodiscard]] std::shared_ptr<FinitelyPresented> term_model(const Signature& sig, std::span<const Literal> literals);

/// Explicit finite table of a minimal structure whose universe has at most
/// `max_size` elements, found by closing the constants under all functions.
/// Empty if the closure exceeds the bound. Requires a finite signature.
[[nodiscard]] std::optional<FiniteTable> materialize(const MinimalStructure& m, std::size_t max_size);

/// Substructure generated by the empty set, renumbered in discovery order.
[[nodiscard]] FiniteTable core(const FiniteTable& m);
[[nodiscard]] bool is_minimal(const FiniteTable& m);

/// Isomorphism of minimal finite structures via the map t^M -> t^N.
/// Throws Error("not-minimal") on non-minimal input.
[[nodiscard]] bool iso_check(const FiniteTable& m, const FiniteTable& n);

/// The group-axiom instances on marker constants: (a*b)*c = a*(b*c),
/// c*e = c, e*c = c, c*c^-1 = e, c^-1*c = e.
[[nodiscard]] std::vector<Atom> theta_atoms(const Signature& sig, std::span<const SymbolRef> markers);
[[nodiscard]] bool satisfies_theta(const MinimalStructure& m, std::span<const SymbolRef> markers);

/// Exhaustive evaluation of a universal (or existential) sentence over the
/// whole universe of a finite table. `jobs > 1` splits the first variable's
/// range across OpenMP threads.
[[nodiscard]] bool eval_quantified(const FiniteTable& m, const QuantifiedSentence& q, int jobs = 1);
[[nodiscard]] bool eval_universal(const FiniteTable& m, const QuantifiedSentence& q, int jobs = 1);

/// Truth of a quantifier-free sentence (with free variables bound by
/// `assignment`) in a finite table.
[[nodiscard]] bool eval_open(const FiniteTable& m, const Sentence& s, std::span<const std::size_t> assignment);

} // namespace minspace
