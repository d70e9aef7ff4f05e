#pragma once

#include "minspace/structures.hpp"
#include "minspace/syntax.hpp"
#include "minspace/term_model.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minspace {

/// Truth of a quantifier-free sentence in a structure.
[[nodiscard]] bool evaluate(const Sentence& phi, const MinimalStructure& m);

/// Consistent sign pattern over the atoms of length <= level.
struct MType {
  std::size_t level = 0;
  std::vector<Atom> atoms;
  std::vector<bool> signs;
  Presentation witness;

  [[nodiscard]] std::vector<Literal> literals() const;
};

inline constexpr std::size_t kDefaultTypeBudget = 22;

struct TypeOptions {
  std::size_t budget = kDefaultTypeBudget;
  int jobs = 1;
};

/// Depth-first over the canonical atom order, positive sign first, pruning
/// every inconsistent prefix. Throws "locally-infinite" or "budget-exceeded".
[[nodiscard]] std::vector<MType> enumerate_m_types_serial(const Signature& sig, std::size_t m,
                                                          std::size_t budget = kDefaultTypeBudget);
/// Same output; consistent prefixes of a few atoms are completed by
/// independent workers and concatenated in prefix order.
[[nodiscard]] std::vector<MType> enumerate_m_types_parallel(const Signature& sig, std::size_t m, std::size_t budget,
                                                            int jobs);
[[nodiscard]] std::vector<MType> enumerate_m_types(const Signature& sig, std::size_t m, const TypeOptions& opts = {});

struct CoverCertificate {
  Signature signature;
  std::size_t level = 0;
  std::vector<Atom> atoms;
  std::vector<MType> types;
};

[[nodiscard]] CoverCertificate cover_certificate(const Signature& sig, std::size_t m, const TypeOptions& opts = {});

[[nodiscard]] bool ball_membership(const MinimalStructure& m, const MType& t);

/// Indices of the certificate's balls containing `m` (exactly one when the
/// certificate is a partition).
[[nodiscard]] std::vector<std::size_t> locate(const MinimalStructure& m, const CoverCertificate& cert);

struct SeparatedFamily {
  std::string family;
  /// Common length of the separating atoms.
  std::size_t atom_length = 0;
  std::vector<Atom> thetas;
  std::vector<std::shared_ptr<FinitelyPresented>> structures;
};

/// k structures over a signature with an omega-indexed family, the i-th
/// satisfying theta_i and falsifying every other theta_j. `family` picks
/// the family by name; `length` asks for a given atom length.
[[nodiscard]] SeparatedFamily separated_family(const Signature& sig, std::size_t k,
                                               const std::optional<std::string>& family = std::nullopt,
                                               std::optional<std::size_t> length = std::nullopt);

/// Membership in the class of C-marked groups. Throws "infinite-markers"
/// when C is infinite: the Theta instances can still be checked one by one
/// but no single sentence defines the class.
[[nodiscard]] bool in_gc(const MinimalStructure& m);

/// Replaces SymbolRef::variable(i) by terms[i].
[[nodiscard]] Term substitute(const Term& t, std::span<const Term> terms);
[[nodiscard]] Sentence substitute(const Sentence& s, std::span<const Term> terms);

struct ExistentialWitness {
  std::vector<Term> terms;
  /// The matrix instantiated at `terms`; a ground sentence true in the structure.
  Sentence instance;
};

/// Searches ground-term tuples (terms of length <= cutoff, canonical order,
/// first tuple wins) realizing an existential sentence in a finite table.
[[nodiscard]] std::optional<ExistentialWitness> existential_witness(const FiniteTable& m,
                                                                    const QuantifiedSentence& q, std::size_t cutoff);

} // namespace minspace
