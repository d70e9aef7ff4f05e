#include "minspace/gromov_hausdorff.hpp"

#include "minspace/error.hpp"

#include <algorithm>
#include <numeric>

namespace minspace {

FiniteSemiMetric::FiniteSemiMetric(std::vector<std::string> labels, std::vector<std::vector<Extended>> d)
    : labels_(std::move(labels)), d_(std::move(d)) {
  if (d_.size() != labels_.size()) throw Error("bad-metric", "matrix rows do not match the labels");
  for (const auto& row : d_) {
    if (row.size() != labels_.size()) throw Error("bad-metric", "matrix is not square");
    for (const Extended& v : row)
      if (!v.is_infinite() && v.value() < 0) throw Error("bad-metric", "negative distance");
  }
}

std::vector<std::string> FiniteSemiMetric::problems() const {
  std::vector<std::string> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(d_[i][i] == Extended(0))) out.push_back("d(" + labels_[i] + "," + labels_[i] + ") is not 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(d_[i][j] == d_[j][i])) out.push_back("d(" + labels_[i] + "," + labels_[j] + ") is not symmetric");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d_[i][k] > d_[i][j] + d_[j][k])
          out.push_back("d(" + labels_[i] + "," + labels_[k] + ") > d(" + labels_[i] + "," + labels_[j] + ") + d(" +
                        labels_[j] + "," + labels_[k] + ")");
  return out;
}

void FiniteSemiMetric::require_valid() const {
  const auto p = problems();
  if (!p.empty()) throw Error("not-semi-metric", p.front());
}

bool FiniteSemiMetric::all_finite() const {
  for (const auto& row : d_)
    for (const Extended& v : row)
      if (v.is_infinite()) return false;
  return true;
}

FiniteSemiMetric make_metric(std::vector<std::vector<Extended>> d) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d.size(); ++i) labels.push_back(std::to_string(i));
  return FiniteSemiMetric(std::move(labels), std::move(d));
}

Extended diameter(const FiniteSemiMetric& x) {
  Extended best(0);
  for (const auto& row : x.matrix())
    for (const Extended& v : row) best = std::max(best, v);
  return best;
}

Quotient quotient(const FiniteSemiMetric& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (x.d(i, j) == Extended(0) || x.d(j, i) == Extended(0)) {
        const std::size_t a = find(i);
        const std::size_t b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  Quotient q;
  q.class_of.assign(n, 0);
  std::vector<std::size_t> reps;
  std::vector<std::size_t> class_of_root(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (class_of_root[r] == n) {
      class_of_root[r] = reps.size();
      reps.push_back(i);
    }
    q.class_of[i] = class_of_root[r];
  }
  std::vector<std::string> labels;
  std::vector<std::vector<Extended>> d(reps.size(), std::vector<Extended>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a) {
    labels.push_back(x.labels()[reps[a]]);
    for (std::size_t b = 0; b < reps.size(); ++b) d[a][b] = x.d(reps[a], reps[b]);
  }
  q.space = FiniteSemiMetric(std::move(labels), std::move(d));
  return q;
}

Extended hausdorff_distance(const FiniteSemiMetric& z, std::span<const std::size_t> a,
                            std::span<const std::size_t> b) {
  if (a.empty() || b.empty()) throw Error("empty-subset", "Hausdorff distance needs nonempty subsets");
  auto directed = [&](std::span<const std::size_t> from, std::span<const std::size_t> to) {
    Extended worst(0);
    for (std::size_t p : from) {
      Extended nearest = Extended::infinity();
      for (std::size_t q : to) nearest = std::min(nearest, z.d(p, q));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

Rational distortion(const FiniteSemiMetric& x, const FiniteSemiMetric& y,
                    std::span<const std::pair<std::size_t, std::size_t>> r) {
  Rational worst = 0;
  for (const auto& [a, b] : r)
    for (const auto& [c, e] : r) worst = std::max(worst, abs_diff(x.d(a, c).value(), y.d(b, e).value()));
  return worst;
}

// ---------------------------------------------------------------------------
// Exact Gromov-Hausdorff search

namespace {

using Pair = std::pair<std::size_t, std::size_t>;

/// Decision search: is there a correspondence whose pairwise distortions
/// all have rank <= limit? Correspondences are built as the graph of a map
/// X -> Y plus one extra pair for every point of Y the map misses.
class GhSearch {
public:
  GhSearch(const FiniteSemiMetric& x, const FiniteSemiMetric& y) : n_(x.size()), p_(y.size()) {
    std::vector<Rational> values;
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t c = 0; c < n_; ++c)
        for (std::size_t b = 0; b < p_; ++b)
          for (std::size_t e = 0; e < p_; ++e) values.push_back(abs_diff(x.d(a, c).value(), y.d(b, e).value()));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    values_ = values;
    rank_.assign(n_ * p_ * n_ * p_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < p_; ++b)
        for (std::size_t c = 0; c < n_; ++c)
          for (std::size_t e = 0; e < p_; ++e) {
            const Rational v = abs_diff(x.d(a, c).value(), y.d(b, e).value());
            rank_[index(a, b, c, e)] = static_cast<std::uint32_t>(
                std::lower_bound(values_.begin(), values_.end(), v) - values_.begin());
          }
  }

  [[nodiscard]] std::size_t levels() const noexcept { return values_.size(); }
  [[nodiscard]] const Rational& value(std::size_t rank) const { return values_[rank]; }
  [[nodiscard]] std::size_t x_size() const noexcept { return n_; }
  [[nodiscard]] std::size_t y_size() const noexcept { return p_; }

  /// First correspondence in search order within `limit`, optionally with
  /// the partner of x = 0 fixed.
  [[nodiscard]] std::optional<std::vector<Pair>> find(std::size_t limit, std::optional<std::size_t> first) const {
    std::vector<Pair> chosen;
    std::vector<std::size_t> hits(p_, 0);
    if (first) {
      if (!compatible(chosen, 0, *first, limit)) return std::nullopt;
      chosen.emplace_back(0, *first);
      ++hits[*first];
      if (assign_x(1, chosen, hits, limit)) return chosen;
      return std::nullopt;
    }
    if (assign_x(0, chosen, hits, limit)) return chosen;
    return std::nullopt;
  }

private:
  [[nodiscard]] std::size_t index(std::size_t a, std::size_t b, std::size_t c, std::size_t e) const {
    return ((a * p_ + b) * n_ + c) * p_ + e;
  }

  [[nodiscard]] bool compatible(const std::vector<Pair>& chosen, std::size_t a, std::size_t b,
                                std::size_t limit) const {
    for (const auto& [c, e] : chosen)
      if (rank_[index(a, b, c, e)] > limit) return false;
    return true;
  }

  bool assign_x(std::size_t a, std::vector<Pair>& chosen, std::vector<std::size_t>& hits, std::size_t limit) const {
    if (a == n_) return assign_y(0, chosen, limit, hits);
    // Forward check: every later point still needs some partner.
    for (std::size_t later = a + 1; later < n_; ++later) {
      bool any = false;
      for (std::size_t b = 0; b < p_ && !any; ++b) any = compatible(chosen, later, b, limit);
      if (!any) return false;
    }
    for (std::size_t b = 0; b < p_; ++b) {
      if (!compatible(chosen, a, b, limit)) continue;
      chosen.emplace_back(a, b);
      ++hits[b];
      if (assign_x(a + 1, chosen, hits, limit)) return true;
      --hits[b];
      chosen.pop_back();
    }
    return false;
  }

  bool assign_y(std::size_t b, std::vector<Pair>& chosen, std::size_t limit, const std::vector<std::size_t>& hits) const {
    while (b < p_ && hits[b] > 0) ++b;
    if (b == p_) return true;
    for (std::size_t a = 0; a < n_; ++a) {
      if (!compatible(chosen, a, b, limit)) continue;
      chosen.emplace_back(a, b);
      if (assign_y(b + 1, chosen, limit, hits)) return true;
      chosen.pop_back();
    }
    return false;
  }

  std::size_t n_, p_;
  std::vector<Rational> values_;
  std::vector<std::uint32_t> rank_;
};

struct Prepared {
  Quotient qx, qy;
};

Prepared prepare(const FiniteSemiMetric& x, const FiniteSemiMetric& y, std::size_t budget) {
  if (x.size() == 0 || y.size() == 0) throw Error("empty-space", "metric spaces must be nonempty");
  if (!x.all_finite() || !y.all_finite())
    throw Error("infinite-distance", "exact Gromov-Hausdorff distance needs finite distances");
  Prepared p{quotient(x), quotient(y)};
  if (p.qx.space.size() > budget || p.qy.space.size() > budget)
    throw Error("budget-exceeded", "quotients have " + std::to_string(p.qx.space.size()) + " and " +
                                       std::to_string(p.qy.space.size()) + " points; exact search allows " +
                                       std::to_string(budget));
  return p;
}

GhResult finish(const Prepared& p, const GhSearch& search, std::size_t rank, const std::vector<Pair>& found) {
  GhResult out;
  out.distance = search.value(rank) / 2;
  for (const auto& [cx, cy] : found)
    for (std::size_t i = 0; i < p.qx.class_of.size(); ++i) {
      if (p.qx.class_of[i] != cx) continue;
      for (std::size_t j = 0; j < p.qy.class_of.size(); ++j)
        if (p.qy.class_of[j] == cy) out.correspondence.emplace_back(i, j);
    }
  std::sort(out.correspondence.begin(), out.correspondence.end());
  out.correspondence.erase(std::unique(out.correspondence.begin(), out.correspondence.end()),
                           out.correspondence.end());
  return out;
}

template <typename Decide>
GhResult bisect(const Prepared& p, const GhSearch& search, Decide&& decide) {
  // The largest value bounds every distortion, so it is always feasible.
  std::size_t lo = 0;
  std::size_t hi = search.levels() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (decide(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  auto found = decide(lo);
  return finish(p, search, lo, *found);
}

} // namespace

GhResult gh_distance_serial(const FiniteSemiMetric& x, const FiniteSemiMetric& y, std::size_t budget) {
  const Prepared p = prepare(x, y, budget);
  const GhSearch search(p.qx.space, p.qy.space);
  return bisect(p, search, [&](std::size_t limit) { return search.find(limit, std::nullopt); });
}

GhResult gh_distance_parallel(const FiniteSemiMetric& x, const FiniteSemiMetric& y, int jobs, std::size_t budget) {
  const Prepared p = prepare(x, y, budget);
  const GhSearch search(p.qx.space, p.qy.space);
  const std::size_t branches = search.y_size();
  auto decide = [&](std::size_t limit) {
    std::vector<std::optional<std::vector<Pair>>> results(branches);
#pragma omp parallel for num_threads(jobs > 0 ? jobs : 1) schedule(dynamic)
    for (long long b = 0; b < static_cast<long long>(branches); ++b)
      results[static_cast<std::size_t>(b)] = search.find(limit, static_cast<std::size_t>(b));
    // The least branch with a solution is the one serial search finds.
    for (auto& r : results)
      if (r) return r;
    return std::optional<std::vector<Pair>>{};
  };
  return bisect(p, search, decide);
}

GhResult gh_distance_exact(const FiniteSemiMetric& x, const FiniteSemiMetric& y, std::size_t budget, int jobs) {
  if (jobs <= 1) return gh_distance_serial(x, y, budget);
  return gh_distance_parallel(x, y, jobs, budget);
}

Rational gh_lower_bound(const FiniteSemiMetric& x, const FiniteSemiMetric& y) {
  return abs_diff(diameter(x).value(), diameter(y).value()) / 2;
}

Rational gh_upper_bound(const FiniteSemiMetric& x, const FiniteSemiMetric& y) {
  return std::max(diameter(x).value(), diameter(y).value()) / 2;
}

// ---------------------------------------------------------------------------
// Nets and covers

EpsNet eps_net(const FiniteSemiMetric& x, const Rational& eps) {
  EpsNet net{eps, {}};
  const std::size_t n = x.size();
  if (n == 0) return net;
  const Extended radius(eps);
  std::vector<Extended> nearest(n, Extended::infinity());
  std::size_t next = 0;
  while (true) {
    net.centers.push_back(next);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], x.d(next, i));
    std::optional<std::size_t> far;
    for (std::size_t i = 0; i < n; ++i)
      if (nearest[i] > radius && (!far || nearest[i] > nearest[*far])) far = i;
    if (!far) break;
    next = *far;
  }
  return net;
}

bool covers(const FiniteSemiMetric& x, std::span<const std::size_t> centers, const Rational& eps) {
  const Extended radius(eps);
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool hit = false;
    for (std::size_t c : centers) hit = hit || x.d(c, i) <= radius;
    if (!hit) return false;
  }
  return true;
}

std::optional<std::vector<std::size_t>> minimum_cover(const FiniteSemiMetric& x, const Rational& eps) {
  const std::size_t n = x.size();
  if (n > kExactCoverLimit) return std::nullopt;
  if (n == 0) return std::vector<std::size_t>{};
  const Extended radius(eps);
  std::vector<std::uint32_t> ball(n, 0);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i)
      if (x.d(c, i) <= radius) ball[c] |= 1u << i;
  const std::uint32_t all = (1u << n) - 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      std::uint32_t mask = 0;
      for (std::size_t c : pick) mask |= ball[c];
      if (mask == all) return pick;
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> pad_markers(std::span<const std::size_t> centers, std::size_t count) {
  if (centers.empty() || count < centers.size()) throw Error("marker-count", "cannot pad markers to that count");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(centers[i % centers.size()]);
  return out;
}

NuReport check_nu_bounded(const FiniteSemiMetric& x, const NuBound& nu) {
  NuReport report;
  report.diameter = diameter(x);
  report.diameter_ok = report.diameter <= Extended(nu.n0);
  report.ok = report.diameter_ok;
  for (const auto& [eps, allowed] : nu.grid) {
    NuEntry entry;
    entry.eps = eps;
    entry.allowed = allowed;
    entry.centers = eps_net(x, eps).centers;
    if (entry.centers.size() > allowed) {
      if (auto best = minimum_cover(x, eps)) {
        entry.centers = *best;
        entry.exact_search = true;
      }
    }
    entry.ok = entry.centers.size() <= allowed;
    report.ok = report.ok && entry.ok;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Semi-metric structure encoding

std::optional<std::size_t> SemiMetricEncoding::grid_index(const Rational& eps) const {
  const auto it = std::lower_bound(grid.begin(), grid.end(), eps);
  if (it == grid.end() || *it != eps) return std::nullopt;
  return static_cast<std::size_t>(it - grid.begin());
}

SemiMetricEncoding encode(const FiniteSemiMetric& x, std::vector<Rational> grid,
                          std::map<Rational, std::vector<std::size_t>> markers) {
  if (grid.empty()) throw Error("bad-grid", "the grid is empty");
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (grid[g] < 0) throw Error("bad-grid", "grid values must be nonnegative");
    if (g > 0 && !(grid[g - 1] < grid[g])) throw Error("bad-grid", "grid must be strictly ascending");
  }
  SemiMetricEncoding e;
  e.labels = x.labels();
  e.grid = std::move(grid);
  const std::size_t n = x.size();
  for (const Rational& eps : e.grid) {
    const Extended bound(eps);
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i][j] = x.d(i, j) <= bound;
    e.relation.push_back(std::move(r));
  }
  for (const auto& [eps, points] : markers) {
    if (!e.grid_index(eps)) throw Error("bad-grid", "marker set for " + to_string(eps) + " is off the grid");
    for (std::size_t p : points)
      if (p >= n) throw Error("bad-marker", "marker point out of range");
  }
  e.markers = std::move(markers);
  return e;
}

FiniteSemiMetric decode(const SemiMetricEncoding& e) {
  const std::size_t n = e.size();
  std::vector<std::vector<Extended>> d(n, std::vector<Extended>(n, Extended::infinity()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        d[i][j] = Extended(0);
        continue;
      }
      for (std::size_t g = 0; g < e.grid.size(); ++g)
        if (e.relation[g][i][j]) {
          d[i][j] = Extended(e.grid[g]);
          break;
        }
    }
  return FiniteSemiMetric(e.labels, std::move(d));
}

namespace {

std::string rel_text(const SemiMetricEncoding& e, std::size_t g, std::size_t i, std::size_t j) {
  return "R_" + to_string(e.grid[g]) + "(" + e.labels[i] + "," + e.labels[j] + ")";
}

} // namespace

std::vector<AxiomViolation> check_gamma(const SemiMetricEncoding& e) {
  std::vector<AxiomViolation> out;
  const std::size_t n = e.size();
  const std::size_t k = e.grid.size();
  for (std::size_t d = 0; d < k; ++d)
    for (std::size_t g = d; g < k; ++g)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (e.relation[d][i][j] && !e.relation[g][j][i])
            out.push_back({"a", rel_text(e, d, i, j) + " holds but " + rel_text(e, g, j, i) + " does not"});
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        if (!(e.grid[a] + e.grid[b] < e.grid[c])) continue;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (!e.relation[a][i][j]) continue;
            for (std::size_t l = 0; l < n; ++l)
              if (e.relation[b][j][l] && !e.relation[c][i][l])
                out.push_back({"b", rel_text(e, a, i, j) + " and " + rel_text(e, b, j, l) + " hold but " +
                                        rel_text(e, c, i, l) + " does not"});
          }
      }
  for (std::size_t g = 0; g < k; ++g)
    for (std::size_t i = 0; i < n; ++i)
      if (!e.relation[g][i][i]) out.push_back({"c", rel_text(e, g, i, i) + " does not hold"});
  for (std::size_t d = 0; d < k; ++d)
    for (std::size_t g = d + 1; g < k; ++g)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (e.relation[d][i][j] && !e.relation[g][i][j])
            out.push_back({"d", rel_text(e, d, i, j) + " holds but " + rel_text(e, g, i, j) + " does not"});
  return out;
}

std::vector<AxiomViolation> check_gamma_nu(const SemiMetricEncoding& e, const NuBound& nu) {
  std::vector<AxiomViolation> out;
  const auto top = e.grid_index(nu.n0);
  if (!top) throw Error("grid-mismatch", "n0 = " + to_string(nu.n0) + " is not on the grid");
  const std::size_t n = e.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!e.relation[*top][i][j]) out.push_back({"e", rel_text(e, *top, i, j) + " does not hold"});
  for (const auto& [eps, count] : nu.grid) {
    const auto g = e.grid_index(eps);
    if (!g) throw Error("grid-mismatch", "eps = " + to_string(eps) + " is not on the grid");
    const auto it = e.markers.find(eps);
    const std::size_t have = it == e.markers.end() ? 0 : it->second.size();
    if (have != count)
      throw Error("marker-count", "C_" + to_string(eps) + " has " + std::to_string(have) + " markers, nu requires " +
                                      std::to_string(count));
    for (std::size_t i = 0; i < n; ++i) {
      bool hit = false;
      for (std::size_t c : it->second) hit = hit || e.relation[*g][i][c];
      if (!hit) out.push_back({"f", e.labels[i] + " is not R_" + to_string(eps) + "-related to any marker"});
    }
  }
  return out;
}

NetVerdict net_compare(const FiniteSemiMetric& x, const FiniteSemiMetric& y, const Rational& eps,
                       std::span<const std::size_t> x_markers, std::span<const std::size_t> y_markers,
                       const Rational& n0) {
  if (x_markers.size() != y_markers.size() || x_markers.empty())
    throw Error("marker-mismatch", "marker lists must be nonempty and of equal length");
  for (std::size_t a : x_markers)
    if (a >= x.size()) throw Error("bad-marker", "marker point out of range");
  for (std::size_t b : y_markers)
    if (b >= y.size()) throw Error("bad-marker", "marker point out of range");
  if (!(eps > 0) || !(eps < n0)) throw Error("bad-eps", "need 0 < eps < n0");
  if (diameter(x) > Extended(n0) || diameter(y) > Extended(n0))
    throw Error("diameter-bound", "a diameter exceeds n0 = " + to_string(n0));
  if (!covers(x, x_markers, eps) || !covers(y, y_markers, eps))
    throw Error("not-a-net", "markers are not an eps-net of their space");

  NetVerdict v;
  // Least integer q >= n0/eps, then m = q - 1 gives m*eps < n0 <= (m+1)*eps.
  const Rational ratio = n0 / eps;
  auto q = boost::multiprecision::numerator(ratio) / boost::multiprecision::denominator(ratio);
  if (Rational(q) < ratio) q += 1;
  v.m = static_cast<std::size_t>(q - 1);
  const std::size_t k = x_markers.size();
  for (std::size_t i = 1; i <= v.m; ++i) {
    const Extended threshold(Rational(eps * i));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        ++v.atoms_checked;
        const bool xh = x.d(x_markers[a], x_markers[b]) <= threshold;
        const bool yh = y.d(y_markers[a], y_markers[b]) <= threshold;
        if (xh != yh && !v.disagreement) v.disagreement = NetDisagreement{i, a, b, xh, yh};
      }
  }
  v.agree = !v.disagreement;
  if (v.agree) v.bound = Rational(eps * 5) / 2;
  return v;
}

} // namespace minspace
