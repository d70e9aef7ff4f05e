#pragma once

#include "minspace/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace minspace {

/// Labeled square matrix of nonnegative rationals or infinity. Construction
/// only checks shape and signs; `problems` lists violated semi-metric laws.
class FiniteSemiMetric {
public:
  FiniteSemiMetric() = default;
  FiniteSemiMetric(std::vector<std::string> labels, std::vector<std::vector<Extended>> d);

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const Extended& d(std::size_t i, std::size_t j) const { return d_[i][j]; }
  [[nodiscard]] const std::vector<std::vector<Extended>>& matrix() const noexcept { return d_; }

  /// Nonzero diagonal, asymmetry and triangle failures, in scan order.
  [[nodiscard]] std::vector<std::string> problems() const;
  /// Throws Error("not-semi-metric") naming the first problem.
  void require_valid() const;
  [[nodiscard]] bool all_finite() const;

  friend bool operator==(const FiniteSemiMetric&, const FiniteSemiMetric&) = default;

private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Extended>> d_;
};

/// Points 0..n-1 with labels "0", "1", ...
[[nodiscard]] FiniteSemiMetric make_metric(std::vector<std::vector<Extended>> d);

[[nodiscard]] Extended diameter(const FiniteSemiMetric& x);

struct Quotient {
  FiniteSemiMetric space;
  /// Original point -> class; classes are numbered by least member.
  std::vector<std::size_t> class_of;
};

/// Identifies points at distance 0. Each class keeps its least member's label.
[[nodiscard]] Quotient quotient(const FiniteSemiMetric& x);

/// max(max_a min_b d(a,b), max_b min_a d(a,b)). Throws "empty-subset".
[[nodiscard]] Extended hausdorff_distance(const FiniteSemiMetric& z, std::span<const std::size_t> a,
                                          std::span<const std::size_t> b);

inline constexpr std::size_t kDefaultGhBudget = 6;

struct GhResult {
  Rational distance;
  /// Pairs (x, y) of original indices; both projections are onto.
  std::vector<std::pair<std::size_t, std::size_t>> correspondence;
};

/// Max distortion of a correspondence.
[[nodiscard]] Rational distortion(const FiniteSemiMetric& x, const FiniteSemiMetric& y,
                                  std::span<const std::pair<std::size_t, std::size_t>> r);

/// Exact d_GH = min over correspondences of half the distortion, computed on
/// the quotients. The certificate is the first optimal correspondence in
/// search order, expanded back to the original points. Throws
/// "budget-exceeded" when a quotient has more than `budget` points and
/// "infinite-distance" on infinite entries.
[[nodiscard]] GhResult gh_distance_serial(const FiniteSemiMetric& x, const FiniteSemiMetric& y,
                                          std::size_t budget = kDefaultGhBudget);
/// Same result; the first point's partner is split across workers.
[[nodiscard]] GhResult gh_distance_parallel(const FiniteSemiMetric& x, const FiniteSemiMetric& y, int jobs,
                                            std::size_t budget = kDefaultGhBudget);
[[nodiscard]] GhResult gh_distance_exact(const FiniteSemiMetric& x, const FiniteSemiMetric& y,
                                         std::size_t budget = kDefaultGhBudget, int jobs = 1);

/// |diam X - diam Y| / 2 and max(diam X, diam Y) / 2.
[[nodiscard]] Rational gh_lower_bound(const FiniteSemiMetric& x, const FiniteSemiMetric& y);
[[nodiscard]] Rational gh_upper_bound(const FiniteSemiMetric& x, const FiniteSemiMetric& y);

struct EpsNet {
  Rational radius;
  std::vector<std::size_t> centers;
};

/// Greedy farthest-point net from point 0; ties go to the least index.
[[nodiscard]] EpsNet eps_net(const FiniteSemiMetric& x, const Rational& eps);

/// True iff closed eps-balls around `centers` cover x.
[[nodiscard]] bool covers(const FiniteSemiMetric& x, std::span<const std::size_t> centers, const Rational& eps);

struct NuBound {
  Rational n0;
  /// Ascending eps values with their ball counts n_eps.
  std::vector<std::pair<Rational, std::size_t>> grid;
};

struct NuEntry {
  Rational eps;
  std::size_t allowed = 0;
  bool ok = false;
  /// Greedy net, or an exact minimum cover when greedy was too large.
  std::vector<std::size_t> centers;
  bool exact_search = false;
};

struct NuReport {
  bool ok = false;
  Extended diameter;
  bool diameter_ok = false;
  std::vector<NuEntry> entries;
};

inline constexpr std::size_t kExactCoverLimit = 12;

[[nodiscard]] NuReport check_nu_bounded(const FiniteSemiMetric& x, const NuBound& nu);

/// Least-size cover by closed eps-balls, lexicographically first among the
/// least; empty if |X| exceeds kExactCoverLimit.
[[nodiscard]] std::optional<std::vector<std::size_t>> minimum_cover(const FiniteSemiMetric& x, const Rational& eps);

/// Centers repeated cyclically to exactly `count` markers (count >= 1).
[[nodiscard]] std::vector<std::size_t> pad_markers(std::span<const std::size_t> centers, std::size_t count);

struct SemiMetricEncoding {
  std::vector<std::string> labels;
  std::vector<Rational> grid;
  /// relation[g][i][j] is R_{grid[g]}(i, j).
  std::vector<std::vector<std::vector<bool>>> relation;
  /// Marker points C_eps for some grid values.
  std::map<Rational, std::vector<std::size_t>> markers;

  [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
  [[nodiscard]] std::optional<std::size_t> grid_index(const Rational& eps) const;
};

/// R_eps holds iff d <= eps. Throws "bad-grid" unless the grid is nonempty,
/// strictly ascending and nonnegative, and every marker key is on the grid.
[[nodiscard]] SemiMetricEncoding encode(const FiniteSemiMetric& x, std::vector<Rational> grid,
                                        std::map<Rational, std::vector<std::size_t>> markers = {});

/// d(x,x) = 0; otherwise the least grid eps with R_eps, or infinity. The
/// result need not satisfy the semi-metric laws (see `problems`).
[[nodiscard]] FiniteSemiMetric decode(const SemiMetricEncoding& e);

struct AxiomViolation {
  std::string axiom; // "a" .. "f"
  std::string detail;
};

/// Grid instances of the axioms: (a) R_delta(x,y) implies R_eps(y,x) for
/// delta <= eps, (b) R_eps o R_delta within R_eta when eps + delta < eta,
/// (c) reflexivity, (d) R_delta within R_eps for delta < eps.
[[nodiscard]] std::vector<AxiomViolation> check_gamma(const SemiMetricEncoding& e);

/// (e) R_{n0} total and (f) every point R_eps-related to a marker in C_eps.
/// Throws "grid-mismatch" if n0 or a nu grid value is not on the encoding
/// grid and "marker-count" if |C_eps| != n_eps.
[[nodiscard]] std::vector<AxiomViolation> check_gamma_nu(const SemiMetricEncoding& e, const NuBound& nu);

struct NetDisagreement {
  std::size_t i = 0;
  std::size_t a = 0, b = 0; // marker positions
  bool x_holds = false, y_holds = false;
};

struct NetVerdict {
  bool agree = false;
  /// Largest m with m*eps < n0 (so n0 <= (m+1)*eps).
  std::size_t m = 0;
  std::size_t atoms_checked = 0;
  /// 5*eps/2 when the nets agree.
  std::optional<Rational> bound;
  std::optional<NetDisagreement> disagreement;
};

/// Compares R_{i eps}(a, b), i = 1..m, on the marked nets. Requires equal
/// marker counts ("marker-mismatch"), marker lists that are eps-nets
/// ("not-a-net"), diameters <= n0 ("diameter-bound") and eps < n0 ("bad-eps").
[[nodiscard]] NetVerdict net_compare(const FiniteSemiMetric& x, const FiniteSemiMetric& y, const Rational& eps,
                                     std::span<const std::size_t> x_markers, std::span<const std::size_t> y_markers,
                                     const Rational& n0);

} // namespace minspace
