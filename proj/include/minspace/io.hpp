#pragma once

#include "minspace/gromov_hausdorff.hpp"
#include "minspace/stone.hpp"
#include "minspace/structures.hpp"
#include "minspace/term_model.hpp"
#include "minspace/ultrametric.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace minspace {

using Json = nlohmann::ordered_json;

/// Whole file as text; throws Error("io-error").
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// A structure file. Backends:
///   (default)   signature, `atom <sentence>;` and `not <atom>;` lines
///   table       signature, `size n;`, `c = 0;`, `f = <row-major>;`, `P = (0,1) (1,1);`
///   abelian     `markers c1 c2;` and `relator 3 0;` lines
///   free_group  `markers c1 c2;`
struct StructureFile {
  std::string backend;
  Signature signature;
  /// Literal list of a presented structure, in file order.
  std::vector<Literal> literals;
  /// Null when the literals are inconsistent.
  StructurePtr structure;
  std::shared_ptr<const FiniteTable> table;
};

[[nodiscard]] StructureFile parse_structure(std::string_view text);
[[nodiscard]] StructureFile load_structure(const std::filesystem::path& path);
/// As load_structure, failing with Error("inconsistent") when no structure exists.
[[nodiscard]] StructurePtr load_model(const std::filesystem::path& path);

/// True when the text has only signature statements.
[[nodiscard]] bool is_signature_text(std::string_view text);

/// Labeled CSV matrix: a header row (empty first cell, then labels), then one
/// row per label. Entries are rationals, exact decimals or `inf`.
[[nodiscard]] FiniteSemiMetric parse_metric_csv(std::string_view text);
[[nodiscard]] FiniteSemiMetric load_metric(const std::filesystem::path& path);
[[nodiscard]] std::string to_csv(const FiniteSemiMetric& x);

/// "1/2,1,3/2"; throws Error("bad-number").
[[nodiscard]] std::vector<Rational> parse_rational_list(std::string_view text);
[[nodiscard]] std::vector<std::size_t> parse_count_list(std::string_view text);
/// Label list resolved against a space; throws Error("unknown-label").
[[nodiscard]] std::vector<std::size_t> resolve_labels(const FiniteSemiMetric& x, std::string_view text);

// JSON views. Atoms and sentences are printed with the canonical printer.
[[nodiscard]] Json consistency_json(const Signature& sig, const Consistency& c);
[[nodiscard]] Json distance_json(const Signature& sig, const DistanceResult& r, std::size_t m_cap);
[[nodiscard]] Json cover_json(const CoverCertificate& cert);
[[nodiscard]] Json separated_json(const Signature& sig, const SeparatedFamily& fam);
[[nodiscard]] Json metric_json(const FiniteSemiMetric& x);
[[nodiscard]] Json gh_json(const FiniteSemiMetric& x, const FiniteSemiMetric& y, const GhResult& r);
[[nodiscard]] Json net_json(const FiniteSemiMetric& x, const EpsNet& net);
[[nodiscard]] Json nu_json(const FiniteSemiMetric& x, const NuReport& r);
[[nodiscard]] Json encoding_json(const SemiMetricEncoding& e);
[[nodiscard]] Json violations_json(const std::vector<AxiomViolation>& v);
[[nodiscard]] Json net_verdict_json(const Rational& eps, const NetVerdict& v);
[[nodiscard]] Json cauchy_json(const DistanceTable& table, const CauchyReport& r);

} // namespace minspace
