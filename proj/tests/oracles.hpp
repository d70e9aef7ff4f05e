#pragma once
// Brute-force reference procedures. None of them calls the library's
// enumeration, congruence closure, scanner or search code.

#include "minspace/gromov_hausdorff.hpp"
#include "minspace/structures.hpp"
#include "minspace/syntax.hpp"
#include "minspace/term_model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace minspace;

// ---------------------------------------------------------------------------
// Syntax: generate all trees by depth, then filter by length.

inline std::vector<std::string> tokens(const Signature& sig, const Term& t) {
  std::vector<std::string> out{sig.symbol_name(t.head)};
  for (const Term& a : t.args) {
    auto sub = tokens(sig, a);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

inline std::size_t size_of(const Term& t) {
  std::size_t n = 1;
  for (const Term& a : t.args) n += size_of(a);
  return n;
}

struct TermLess {
  bool operator()(const Term& a, const Term& b) const {
    if (a.head != b.head) return a.head < b.head;
    return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end(), *this);
  }
};

/// Trees of depth <= depth; with max_size, larger trees are dropped as soon
/// as they are built.
inline std::vector<Term> trees_of_depth(const Signature& sig, std::size_t depth,
                                        std::size_t max_size = static_cast<std::size_t>(-1)) {
  std::vector<Term> level;
  for (SymbolRef c : sig.symbols(SymbolKind::Constant)) level.push_back(constant(c));
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Term> next = level;
    std::set<Term, TermLess> seen(level.begin(), level.end());
    for (SymbolRef s : sig.symbols(SymbolKind::Function)) {
      std::vector<std::size_t> pick(static_cast<std::size_t>(sig.arity(s)), 0);
      while (true) {
        std::vector<Term> args;
        for (std::size_t i : pick) args.push_back(level[i]);
        Term t = apply(s, std::move(args));
        if (size_of(t) <= max_size && seen.insert(t).second) next.push_back(std::move(t));
        std::size_t pos = pick.size();
        while (pos > 0 && ++pick[pos - 1] == level.size()) pick[--pos] = 0;
        if (pos == 0) break;
      }
    }
    level = std::move(next);
  }
  return level;
}

inline std::vector<Term> terms_up_to(const Signature& sig, std::size_t m) {
  std::vector<Term> out;
  for (Term& t : trees_of_depth(sig, m, m))
    if (size_of(t) <= m) out.push_back(std::move(t));
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) {
    const std::size_t la = size_of(a), lb = size_of(b);
    if (la != lb) return la < lb;
    return tokens(sig, a) < tokens(sig, b);
  });
  return out;
}

inline std::size_t atom_size(const Atom& a) {
  std::size_t n = 1;
  for (const Term& t : a.args) n += size_of(t);
  return n;
}

inline std::vector<std::string> atom_tokens(const Signature& sig, const Atom& a) {
  std::vector<std::string> out{a.kind == Atom::Kind::Eq ? "=" : sig.symbol_name(a.relation)};
  for (const Term& t : a.args) {
    auto sub = tokens(sig, t);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

/// Names are plain identifiers here, and '=' sorts below every letter.
inline std::vector<Atom> atoms_up_to(const Signature& sig, std::size_t m) {
  const auto terms = terms_up_to(sig, m);
  std::vector<Atom> out;
  for (const Term& s : terms)
    for (const Term& t : terms) {
      Atom a = Atom::eq(s, t);
      if (atom_size(a) <= m) out.push_back(std::move(a));
    }
  for (SymbolRef r : sig.symbols(SymbolKind::Relation)) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(sig.arity(r)), 0);
    if (terms.empty()) continue;
    while (true) {
      std::vector<Term> args;
      for (std::size_t i : pick) args.push_back(terms[i]);
      Atom a = Atom::rel(r, std::move(args));
      if (atom_size(a) <= m) out.push_back(std::move(a));
      std::size_t pos = pick.size();
      while (pos > 0 && ++pick[pos - 1] == terms.size()) pick[--pos] = 0;
      if (pos == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), [&](const Atom& a, const Atom& b) {
    const std::size_t la = atom_size(a), lb = atom_size(b);
    if (la != lb) return la < lb;
    return atom_tokens(sig, a) < atom_tokens(sig, b);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Congruence: iterate the congruence rule to a fixpoint on every term of
// depth <= depth and length <= max_size, plus the presented subterms. The
// universe is subterm-closed, so the fixpoint is exact on it.

class Saturation {
public:
  Saturation(const Presentation& p, std::size_t depth, std::size_t max_size = static_cast<std::size_t>(-1))
      : sig_(p.signature) {
    for (Term& t : trees_of_depth(sig_, depth, max_size)) add(std::move(t));
    for (const Atom& a : p.atoms)
      for (const Term& t : a.args) add_closed(t);
    parent_.resize(terms_.size());
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    for (const Atom& a : p.atoms) {
      if (a.kind == Atom::Kind::Eq)
        unite(id(a.args[0]), id(a.args[1]));
      else
        relations_.emplace_back(a.relation, ids(a.args));
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::pair<SymbolRef, std::vector<std::size_t>>, std::size_t> seen;
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        std::vector<std::size_t> key;
        for (const Term& a : terms_[i].args) key.push_back(find(index_.at(a)));
        auto [it, fresh] = seen.emplace(std::make_pair(terms_[i].head, key), i);
        if (!fresh && find(it->second) != find(i)) {
          unite(it->second, i);
          changed = true;
        }
      }
    }
  }

  [[nodiscard]] bool knows(const Term& t) const { return index_.count(t) > 0; }

  [[nodiscard]] bool equal(const Term& s, const Term& t) { return find(id(s)) == find(id(t)); }

  [[nodiscard]] bool holds(const Atom& a) {
    if (a.kind == Atom::Kind::Eq) return equal(a.args[0], a.args[1]);
    const auto args = ids(a.args);
    for (const auto& [r, tuple] : relations_) {
      if (r != a.relation) continue;
      bool same = true;
      for (std::size_t i = 0; i < tuple.size(); ++i) same = same && find(tuple[i]) == find(args[i]);
      if (same) return true;
    }
    return false;
  }

  [[nodiscard]] std::size_t universe() const { return terms_.size(); }

private:
  void add(Term t) {
    if (index_.count(t)) return;
    index_.emplace(t, terms_.size());
    terms_.push_back(std::move(t));
  }
  void add_closed(const Term& t) {
    for (const Term& a : t.args) add_closed(a);
    add(t);
  }
  std::size_t id(const Term& t) const { return index_.at(t); }
  std::vector<std::size_t> ids(const std::vector<Term>& ts) const {
    std::vector<std::size_t> out;
    for (const Term& t : ts) out.push_back(id(t));
    return out;
  }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  Signature sig_;
  std::vector<Term> terms_;
  std::map<Term, std::size_t, TermLess> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::pair<SymbolRef, std::vector<std::size_t>>> relations_;
};

// ---------------------------------------------------------------------------
// Finite-model search: lazily branch on every function value and relation
// tuple that the literals touch, for universes of size 1..max_size.

class ModelSearch {
public:
  ModelSearch(const Signature& sig, std::vector<Literal> lits) : sig_(sig), lits_(std::move(lits)) {
    for (const Literal& l : lits_)
      for (const Term& t : l.atom.args) collect(t);
  }

  [[nodiscard]] std::size_t distinct_subterms() const { return order_.size(); }

  [[nodiscard]] bool satisfiable(std::size_t max_size) {
    for (std::size_t n = 1; n <= max_size; ++n) {
      n_ = n;
      funcs_.clear();
      rels_.clear();
      value_.assign(order_.size(), 0);
      if (assign(0)) return true;
    }
    return false;
  }

private:
  void collect(const Term& t) {
    for (const Term& a : t.args) collect(a);
    if (pos_.count(t)) return;
    pos_.emplace(t, order_.size());
    order_.push_back(t);
  }

  using Key = std::pair<SymbolRef, std::vector<std::size_t>>;

  std::vector<std::size_t> arg_values(const Term& t) const {
    std::vector<std::size_t> out;
    for (const Term& a : t.args) out.push_back(value_[pos_.at(a)]);
    return out;
  }

  bool assign(std::size_t i) {
    if (i == order_.size()) return decide_relations(0);
    const Term& t = order_[i];
    Key key{t.head, arg_values(t)};
    if (auto it = funcs_.find(key); it != funcs_.end()) {
      value_[i] = it->second;
      return assign(i + 1);
    }
    for (std::size_t v = 0; v < n_; ++v) {
      funcs_[key] = v;
      value_[i] = v;
      if (assign(i + 1)) return true;
    }
    funcs_.erase(key);
    return false;
  }

  bool decide_relations(std::size_t li) {
    if (li == lits_.size()) return check();
    const Atom& a = lits_[li].atom;
    if (a.kind == Atom::Kind::Eq) return decide_relations(li + 1);
    std::vector<std::size_t> tuple;
    for (const Term& t : a.args) tuple.push_back(value_[pos_.at(t)]);
    Key key{a.relation, tuple};
    if (rels_.count(key)) return decide_relations(li + 1);
    for (bool v : {true, false}) {
      rels_[key] = v;
      if (decide_relations(li + 1)) return true;
    }
    rels_.erase(key);
    return false;
  }

  bool check() const {
    for (const Literal& l : lits_) {
      bool truth;
      if (l.atom.kind == Atom::Kind::Eq) {
        truth = value_[pos_.at(l.atom.args[0])] == value_[pos_.at(l.atom.args[1])];
      } else {
        std::vector<std::size_t> tuple;
        for (const Term& t : l.atom.args) tuple.push_back(value_[pos_.at(t)]);
        truth = rels_.at(Key{l.atom.relation, tuple});
      }
      if (truth != l.positive) return false;
    }
    return true;
  }

  Signature sig_;
  std::vector<Literal> lits_;
  std::vector<Term> order_; // subterms, children first
  std::map<Term, std::size_t, TermLess> pos_;
  std::size_t n_ = 1;
  std::vector<std::size_t> value_;
  std::map<Key, std::size_t> funcs_;
  std::map<Key, bool> rels_;
};

// ---------------------------------------------------------------------------
// Gromov-Hausdorff: every relation with onto projections.

inline Rational gh_brute_force(const FiniteSemiMetric& x, const FiniteSemiMetric& y) {
  const std::size_t n = x.size(), p = y.size();
  const std::size_t cells = n * p;
  std::optional<Rational> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
    std::vector<std::pair<std::size_t, std::size_t>> r;
    std::vector<bool> hx(n), hy(p);
    for (std::size_t c = 0; c < cells; ++c)
      if (mask >> c & 1) {
        r.emplace_back(c / p, c % p);
        hx[c / p] = true;
        hy[c % p] = true;
      }
    if (std::find(hx.begin(), hx.end(), false) != hx.end() || std::find(hy.begin(), hy.end(), false) != hy.end())
      continue;
    Rational worst = 0;
    for (const auto& [a, b] : r)
      for (const auto& [c, d] : r) {
        const Rational u = x.d(a, c).value(), v = y.d(b, d).value();
        worst = std::max(worst, u < v ? Rational(v - u) : Rational(u - v));
      }
    if (!best || worst < *best) best = worst;
  }
  return *best / 2;
}

/// Size of a smallest cover by closed eps-balls, over all center subsets.
inline std::size_t min_cover_brute_force(const FiniteSemiMetric& x, const Rational& eps) {
  const std::size_t n = x.size();
  std::size_t best = n;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      bool hit = false;
      for (std::size_t c = 0; c < n; ++c)
        if ((mask >> c & 1) && x.d(c, i) <= Extended(eps)) hit = true;
      ok = hit;
    }
    if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Abelian groups with big integers: vectors reduced by a lattice basis built
// with plain Euclidean row operations.

using BigInt = boost::multiprecision::cpp_int;

class BigLattice {
public:
  BigLattice(const std::vector<std::vector<std::int64_t>>& rows, std::size_t n) : n_(n) {
    std::vector<std::vector<BigInt>> work;
    for (const auto& r : rows) work.emplace_back(r.begin(), r.end());
    std::size_t row = 0;
    for (std::size_t col = 0; col < n_ && row < work.size(); ++col) {
      // Euclid down the column until one row holds the gcd.
      while (true) {
        std::optional<std::size_t> pivot;
        for (std::size_t i = row; i < work.size(); ++i)
          if (work[i][col] != 0 && (!pivot || abs(work[i][col]) < abs(work[*pivot][col]))) pivot = i;
        if (!pivot) break;
        std::swap(work[row], work[*pivot]);
        bool cleared = true;
        for (std::size_t i = row + 1; i < work.size(); ++i) {
          const BigInt q = work[i][col] / work[row][col];
          for (std::size_t k = 0; k < n_; ++k) work[i][k] -= q * work[row][k];
          if (work[i][col] != 0) cleared = false;
        }
        if (cleared) break;
      }
      if (work[row][col] == 0) continue;
      if (work[row][col] < 0)
        for (auto& v : work[row]) v = -v;
      basis_.push_back(work[row]);
      cols_.push_back(col);
      ++row;
    }
  }

  [[nodiscard]] bool contains(std::vector<BigInt> v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const BigInt& p = basis_[i][cols_[i]];
      if (v[cols_[i]] % p != 0) return false;
      const BigInt q = v[cols_[i]] / p;
      for (std::size_t k = 0; k < n_; ++k) v[k] -= q * basis_[i][k];
    }
    return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
  }

private:
  std::size_t n_;
  std::vector<std::vector<BigInt>> basis_;
  std::vector<std::size_t> cols_;
};

/// Exponent vector of a group term, generators in marker order.
inline std::vector<BigInt> abelian_vector(const Signature& sig, const Term& t,
                                          const std::vector<SymbolRef>& markers) {
  const std::string head = sig.symbol_name(t.head);
  if (head == "e") return std::vector<BigInt>(markers.size(), 0);
  if (head == "inv") {
    auto v = abelian_vector(sig, t.args[0], markers);
    for (auto& x : v) x = -x;
    return v;
  }
  if (head == "mul") {
    auto a = abelian_vector(sig, t.args[0], markers);
    const auto b = abelian_vector(sig, t.args[1], markers);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }
  std::vector<BigInt> v(markers.size(), 0);
  for (std::size_t i = 0; i < markers.size(); ++i)
    if (markers[i] == t.head) v[i] = 1;
  return v;
}

// ---------------------------------------------------------------------------
// Isomorphism of finite tables by trying every bijection.

inline bool iso_brute_force(const FiniteTable& m, const FiniteTable& n) {
  if (m.size() != n.size()) return false;
  const Signature& sig = m.signature();
  std::vector<std::size_t> perm(m.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool ok = true;
    for (SymbolRef c : sig.symbols(SymbolKind::Constant)) ok = ok && perm[m.constant(c)] == n.constant(c);
    for (SymbolRef f : sig.symbols(SymbolKind::Function)) {
      const auto arity = static_cast<std::size_t>(sig.arity(f));
      std::vector<std::size_t> args(arity, 0);
      while (ok) {
        std::vector<std::size_t> image;
        for (std::size_t a : args) image.push_back(perm[a]);
        ok = perm[m.value(f, args)] == n.value(f, image);
        std::size_t pos = arity;
        while (pos > 0 && ++args[pos - 1] == m.size()) args[--pos] = 0;
        if (pos == 0) break;
      }
    }
    for (SymbolRef r : sig.symbols(SymbolKind::Relation)) {
      const auto arity = static_cast<std::size_t>(sig.arity(r));
      std::vector<std::size_t> args(arity, 0);
      while (ok) {
        std::vector<std::size_t> image;
        for (std::size_t a : args) image.push_back(perm[a]);
        ok = m.related(r, args) == n.related(r, image);
        std::size_t pos = arity;
        while (pos > 0 && ++args[pos - 1] == m.size()) args[--pos] = 0;
        if (pos == 0) break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Quantifier-free evaluation through negation normal form.

inline bool eval_nnf(const Sentence& s, const MinimalStructure& m, bool negate) {
  switch (s.kind) {
    case Sentence::Kind::Atomic: return m.holds(s.atom) != negate;
    case Sentence::Kind::Not: return eval_nnf(s.children[0], m, !negate);
    case Sentence::Kind::And:
      if (negate) return eval_nnf(s.children[0], m, true) || eval_nnf(s.children[1], m, true);
      return eval_nnf(s.children[0], m, false) && eval_nnf(s.children[1], m, false);
    case Sentence::Kind::Or:
      if (negate) return eval_nnf(s.children[0], m, true) && eval_nnf(s.children[1], m, true);
      return eval_nnf(s.children[0], m, false) || eval_nnf(s.children[1], m, false);
  }
  return false;
}

/// Agreement on every atom of length <= m, by explicit enumeration.
inline bool agree_up_to(const MinimalStructure& a, const MinimalStructure& b, std::size_t m) {
  for (const Atom& x : atoms_up_to(a.signature(), m))
    if (a.holds(x) != b.holds(x)) return false;
  return true;
}

} // namespace oracle
