#include "minspace/ultrametric.hpp"

#include "minspace/error.hpp"

#include <unordered_map>

namespace minspace {

std::string Distance::to_string() const {
  switch (kind) {
    case Kind::ExactZero: return "0";
    case Kind::ExactOneOver: return "1/" + std::to_string(m);
    case Kind::AtMostOneOver: return "<=1/" + std::to_string(m);
  }
  return "?";
}

Distance Distance::parse(const std::string& text) {
  if (text == "0") return zero();
  auto number = [&](std::size_t from) {
    const std::string digits = text.substr(from);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error("bad-distance", "malformed distance '" + text + "'");
    return static_cast<std::size_t>(std::stoull(digits));
  };
  if (text.rfind("<=1/", 0) == 0) return at_most(number(4));
  if (text.rfind("1/", 0) == 0) return one_over(number(2));
  throw Error("bad-distance", "malformed distance '" + text + "'");
}

std::strong_ordering operator<=>(Reciprocal a, Reciprocal b) {
  if (a.m == b.m) return std::strong_ordering::equal;
  if (a.m == 0) return std::strong_ordering::less;
  if (b.m == 0) return std::strong_ordering::greater;
  return b.m <=> a.m;
}

Reciprocal lower_value(const Distance& d) {
  return d.kind == Distance::Kind::ExactOneOver ? Reciprocal{d.m} : Reciprocal{0};
}

Reciprocal upper_value(const Distance& d) {
  return d.kind == Distance::Kind::ExactZero ? Reciprocal{0} : Reciprocal{d.m};
}

// ---------------------------------------------------------------------------
// AtomScanner

struct AtomScanner::Impl {
  const MinimalStructure& a;
  const MinimalStructure& b;
  TermPool pool;
  // Per pool node: handle and dense element id in each structure.
  std::vector<ElementHandle> handle_a, handle_b;
  std::vector<std::uint32_t> id_a, id_b;
  std::unordered_map<ElementHandle, std::uint32_t, ElementHandleHash> intern_a, intern_b;
  // Per length: how many terms hit each element id (and each id pair).
  std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> count_a, count_b;
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> count_ab;
  std::size_t evaluated_length = 0;
  std::size_t scanned_length = 0; // every atom of length <= this agrees

  Impl(const MinimalStructure& x, const MinimalStructure& y, const ScanOptions& opts)
      : a(x), b(y), pool(x.signature(), opts.enumeration), count_a(1), count_b(1), count_ab(1) {
    if (!(x.signature() == y.signature()))
      throw Error("signature-mismatch", "structures have different signatures");
  }

  static std::uint64_t pair_key(std::uint32_t x, std::uint32_t y) { return (std::uint64_t{x} << 32) | y; }

  static std::uint32_t intern(std::unordered_map<ElementHandle, std::uint32_t, ElementHandleHash>& table,
                              const ElementHandle& h) {
    return table.emplace(h, static_cast<std::uint32_t>(table.size())).first->second;
  }

  void evaluate_to(std::size_t len) {
    pool.grow_to(len);
    while (evaluated_length < len) {
      const std::size_t l = ++evaluated_length;
      count_a.emplace_back();
      count_b.emplace_back();
      count_ab.emplace_back();
      for (TermPool::Id t : pool.of_length(l)) {
        if (handle_a.size() <= t) {
          handle_a.resize(pool.size());
          handle_b.resize(pool.size());
          id_a.resize(pool.size());
          id_b.resize(pool.size());
        }
        const auto& node = pool.node(t);
        std::vector<ElementHandle> args_a, args_b;
        args_a.reserve(node.args.size());
        args_b.reserve(node.args.size());
        for (TermPool::Id c : node.args) {
          args_a.push_back(handle_a[c]);
          args_b.push_back(handle_b[c]);
        }
        handle_a[t] = a.apply(node.head, args_a);
        handle_b[t] = b.apply(node.head, args_b);
        id_a[t] = intern(intern_a, handle_a[t]);
        id_b[t] = intern(intern_b, handle_b[t]);
        ++count_a[l][id_a[t]];
        ++count_b[l][id_b[t]];
        ++count_ab[l][pair_key(id_a[t], id_b[t])];
      }
    }
  }

  [[nodiscard]] std::uint32_t lookup(const std::unordered_map<std::uint32_t, std::uint32_t>& m, std::uint32_t k) const {
    const auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  }

  // Some term of length k is equal to s in exactly one of the structures.
  [[nodiscard]] bool splits(TermPool::Id s, std::size_t k) const {
    const std::uint32_t ia = id_a[s];
    const std::uint32_t ib = id_b[s];
    const auto both_it = count_ab[k].find(pair_key(ia, ib));
    const std::uint32_t both = both_it == count_ab[k].end() ? 0 : both_it->second;
    return lookup(count_a[k], ia) != both || lookup(count_b[k], ib) != both;
  }

  std::optional<Atom> equation_at(std::size_t len) {
    if (len < 3) return std::nullopt;
    evaluate_to(len - 2);
    for (TermPool::Id s : pool.token_sorted()) {
      const std::size_t ls = pool.node(s).length;
      if (ls > len - 2) continue;
      const std::size_t k = len - 1 - ls;
      if (!splits(s, k)) continue;
      for (TermPool::Id t : pool.of_length(k))
        if ((id_a[t] == id_a[s]) != (id_b[t] == id_b[s])) return Atom::eq(pool.term(s), pool.term(t));
    }
    return std::nullopt;
  }

  std::optional<Atom> relation_at(std::size_t len) {
    if (len < 2) return std::nullopt;
    evaluate_to(len - 1);
    for (const auto& atom : pool.relation_atoms_of_length(len)) {
      std::vector<ElementHandle> args_a, args_b;
      for (TermPool::Id t : atom.args) {
        args_a.push_back(handle_a[t]);
        args_b.push_back(handle_b[t]);
      }
      if (a.holds_relation(atom.relation, args_a) != b.holds_relation(atom.relation, args_b)) return pool.atom(atom);
    }
    return std::nullopt;
  }
};

AtomScanner::AtomScanner(const MinimalStructure& a, const MinimalStructure& b, ScanOptions opts)
    : impl_(std::make_unique<Impl>(a, b, opts)) {}

AtomScanner::~AtomScanner() = default;

std::optional<Atom> AtomScanner::first_disagreement(std::size_t max_length) {
  Impl& s = *impl_;
  while (s.scanned_length < max_length) {
    const std::size_t len = s.scanned_length + 1;
    // Equations precede relational atoms of the same length.
    if (auto eq = s.equation_at(len)) return eq;
    if (auto rel = s.relation_at(len)) return rel;
    s.scanned_length = len;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

bool m_close(const MinimalStructure& a, const MinimalStructure& b, std::size_t m, const ScanOptions& opts) {
  AtomScanner scanner(a, b, opts);
  return !scanner.first_disagreement(m).has_value();
}

std::optional<Atom> first_disagreement(const MinimalStructure& a, const MinimalStructure& b, std::size_t m_cap,
                                       const ScanOptions& opts) {
  AtomScanner scanner(a, b, opts);
  return scanner.first_disagreement(m_cap + 1);
}

DistanceResult distance(const MinimalStructure& a, const MinimalStructure& b, std::size_t m_cap,
                        const ScanOptions& opts) {
  if (m_cap == 0) throw Error("bad-cap", "m_cap must be positive");
  AtomScanner scanner(a, b, opts);
  if (auto w = scanner.first_disagreement(m_cap + 1)) {
    const std::size_t len = length(*w);
    // Relation symbols have arity >= 1, so every atom has length >= 2.
    return DistanceResult{Distance::one_over(len - 1), std::move(w)};
  }
  if (a.signature().is_locally_finite()) {
    auto ta = materialize(a, opts.materialize_limit);
    if (ta) {
      auto tb = materialize(b, opts.materialize_limit);
      if (tb && iso_check(*ta, *tb)) return DistanceResult{Distance::zero(), std::nullopt};
    }
  }
  return DistanceResult{Distance::at_most(m_cap), std::nullopt};
}

UltrametricReport check_semi_ultrametric(std::span<const Triple> triples, std::size_t m_cap,
                                         const ScanOptions& opts) {
  UltrametricReport report;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const Triple& t = triples[i];
    const Distance mn = distance(*t.first, *t.second, m_cap, opts).distance;
    const Distance nm = distance(*t.second, *t.first, m_cap, opts).distance;
    const Distance nq = distance(*t.second, *t.third, m_cap, opts).distance;
    const Distance mq = distance(*t.first, *t.third, m_cap, opts).distance;
    ++report.triples;
    if (!(mn == nm)) {
      ++report.symmetry_failures;
      report.details.push_back("triple " + std::to_string(i) + ": d(M,N)=" + mn.to_string() +
                               " but d(N,M)=" + nm.to_string());
    }
    if (!mn.exact() || !nq.exact() || !mq.exact()) ++report.conservative;
    const Reciprocal bound = std::max(upper_value(mn), upper_value(nq));
    if (lower_value(mq) > bound) {
      ++report.violations;
      report.details.push_back("triple " + std::to_string(i) + ": d(M,Q)=" + mq.to_string() + " exceeds max(" +
                               mn.to_string() + ", " + nq.to_string() + ")");
    }
  }
  return report;
}

DistanceTable distance_matrix_serial(std::span<const StructurePtr> items, std::size_t m_cap,
                                     const ScanOptions& opts) {
  const std::size_t n = items.size();
  DistanceTable table(n, std::vector<DistanceResult>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      table[i][j] = distance(*items[i], *items[j], m_cap, opts);
      table[j][i] = table[i][j];
    }
  return table;
}

DistanceTable distance_matrix_parallel(std::span<const StructurePtr> items, std::size_t m_cap, int jobs,
                                       const ScanOptions& opts) {
  const std::size_t n = items.size();
  DistanceTable table(n, std::vector<DistanceResult>(n));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  // Lazy backends are not thread-safe; every pair works on its own copies.
  std::vector<std::unique_ptr<MinimalStructure>> prototypes;
  for (const auto& s : items) prototypes.push_back(s->clone());
  const auto count = static_cast<long long>(pairs.size());
  std::exception_ptr failure;
#pragma omp parallel for num_threads(jobs > 0 ? jobs : 1) schedule(dynamic)
  for (long long p = 0; p < count; ++p) {
    try {
      const auto [i, j] = pairs[static_cast<std::size_t>(p)];
      std::unique_ptr<MinimalStructure> a;
      std::unique_ptr<MinimalStructure> b;
#pragma omp critical(minspace_clone)
      {
        a = prototypes[i]->clone();
        b = prototypes[j]->clone();
      }
      table[i][j] = distance(*a, *b, m_cap, opts);
    } catch (...) {
#pragma omp critical(minspace_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) table[j][i] = table[i][j];
  return table;
}

DistanceTable distance_matrix(std::span<const StructurePtr> items, std::size_t m_cap, int jobs,
                              const ScanOptions& opts) {
  if (jobs <= 1) return distance_matrix_serial(items, m_cap, opts);
  return distance_matrix_parallel(items, m_cap, jobs, opts);
}

CauchyReport cauchy_report(const DistanceTable& table, std::size_t m_cap) {
  CauchyReport report;
  for (std::size_t i = 0; i + 1 < table.size(); ++i) report.consecutive.push_back(table[i][i + 1].distance);
  for (std::size_t m = 1; m <= m_cap; ++m) {
    const Reciprocal target{m};
    std::optional<std::size_t> from;
    // Scan backwards for the start of the longest suffix within 1/m.
    std::size_t i = report.consecutive.size();
    while (i > 0 && upper_value(report.consecutive[i - 1]) <= target) --i;
    if (i < report.consecutive.size()) from = i;
    report.stable_from.push_back(from);
  }
  return report;
}

} // namespace minspace
