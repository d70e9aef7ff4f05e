#pragma once

#include "minspace/structures.hpp"
#include "minspace/syntax.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minspace {

inline constexpr std::size_t kDefaultCap = 12;

/// Distance between minimal structures: exactly 0 (isomorphism certified),
/// exactly 1/m, or at most 1/m when agreement was verified through the cap
/// without an isomorphism certificate.
struct Distance {
  enum class Kind : std::uint8_t { ExactZero, ExactOneOver, AtMostOneOver };

  Kind kind = Kind::ExactZero;
  std::size_t m = 0;

  static Distance zero() { return {Kind::ExactZero, 0}; }
  static Distance one_over(std::size_t m) { return {Kind::ExactOneOver, m}; }
  static Distance at_most(std::size_t m) { return {Kind::AtMostOneOver, m}; }

  [[nodiscard]] bool exact() const noexcept { return kind != Kind::AtMostOneOver; }
  /// "0", "1/4" or "<=1/12".
  [[nodiscard]] std::string to_string() const;
  static Distance parse(const std::string& text);

  friend bool operator==(const Distance&, const Distance&) = default;
};

/// A value in {0} ∪ {1/m}; m == 0 encodes zero.
struct Reciprocal {
  std::size_t m = 0;
  friend std::strong_ordering operator<=>(Reciprocal a, Reciprocal b);
  friend bool operator==(Reciprocal, Reciprocal) = default;
};

[[nodiscard]] Reciprocal lower_value(const Distance& d);
[[nodiscard]] Reciprocal upper_value(const Distance& d);

struct ScanOptions {
  EnumerationOptions enumeration;
  /// Largest universe materialized when looking for an isomorphism certificate.
  std::size_t materialize_limit = 256;
};

/// Scans atoms of increasing length on two structures, evaluating each
/// ground term once per structure.
class AtomScanner {
public:
  AtomScanner(const MinimalStructure& a, const MinimalStructure& b, ScanOptions opts = {});
  ~AtomScanner();
  AtomScanner(const AtomScanner&) = delete;
  AtomScanner& operator=(const AtomScanner&) = delete;

  /// Least atom (length first, then canonical order) of length <= max_length
  /// on which the structures differ.
  [[nodiscard]] std::optional<Atom> first_disagreement(std::size_t max_length);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// True iff the structures agree on every atomic sentence of length <= m.
[[nodiscard]] bool m_close(const MinimalStructure& a, const MinimalStructure& b, std::size_t m,
                           const ScanOptions& opts = {});

/// Length-least disagreement within lengths <= m_cap + 1, the range that
/// `distance` inspects.
[[nodiscard]] std::optional<Atom> first_disagreement(const MinimalStructure& a, const MinimalStructure& b,
                                                     std::size_t m_cap = kDefaultCap, const ScanOptions& opts = {});

struct DistanceResult {
  Distance distance;
  std::optional<Atom> witness;
};

/// If the least disagreement has length l <= m_cap + 1, the distance is
/// exactly 1/(l-1). Otherwise it is 0 when both structures materialize to
/// isomorphic finite tables, and at most 1/m_cap if not.
[[nodiscard]] DistanceResult distance(const MinimalStructure& a, const MinimalStructure& b,
                                      std::size_t m_cap = kDefaultCap, const ScanOptions& opts = {});

struct Triple {
  StructurePtr first, second, third;
};

struct UltrametricReport {
  std::size_t triples = 0;
  std::size_t symmetry_failures = 0;
  std::size_t violations = 0;
  /// Triples in which at least one distance was only an upper bound.
  std::size_t conservative = 0;
  std::vector<std::string> details;

  [[nodiscard]] bool ok() const noexcept { return violations == 0 && symmetry_failures == 0; }
};

/// Checks d(M,Q) <= max(d(M,N), d(N,Q)) and symmetry for every triple; an
/// upper bound 1/m_cap is compatible with every smaller value.
[[nodiscard]] UltrametricReport check_semi_ultrametric(std::span<const Triple> triples,
                                                       std::size_t m_cap = kDefaultCap,
                                                       const ScanOptions& opts = {});

using DistanceTable = std::vector<std::vector<DistanceResult>>;

/// Pairwise distances. The serial version evaluates the given structures in
/// place; the parallel one gives each pair private clones.
[[nodiscard]] DistanceTable distance_matrix_serial(std::span<const StructurePtr> items, std::size_t m_cap,
                                                   const ScanOptions& opts = {});
[[nodiscard]] DistanceTable distance_matrix_parallel(std::span<const StructurePtr> items, std::size_t m_cap,
                                                     int jobs, const ScanOptions& opts = {});
[[nodiscard]] DistanceTable distance_matrix(std::span<const StructurePtr> items, std::size_t m_cap, int jobs = 1,
                                            const ScanOptions& opts = {});

struct CauchyReport {
  std::vector<Distance> consecutive;
  /// stable_from[m-1]: least index i such that every consecutive distance
  /// from i on is at most 1/m; empty when no such index exists.
  std::vector<std::optional<std::size_t>> stable_from;
};

/// Finite-prefix Cauchy report. In an ultrametric space consecutive
/// distances bound every later pair.
[[nodiscard]] CauchyReport cauchy_report(const DistanceTable& table, std::size_t m_cap);

} // namespace minspace
