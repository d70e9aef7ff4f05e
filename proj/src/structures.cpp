#include "minspace/structures.hpp"

#include "minspace/error.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <unordered_map>

namespace minspace {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("overflow", "integer overflow in abelian normal form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("overflow", "integer overflow in abelian normal form");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error("overflow", "integer overflow in abelian normal form");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

SymbolRef require_symbol(const Signature& sig, const char* name, SymbolKind kind, int arity) {
  const auto ref = sig.lookup(name, std::nullopt);
  if (!ref || sig.kind(*ref) != kind || sig.arity(*ref) != arity)
    throw Error("signature-mismatch", std::string("group signature requires symbol '") + name + "'");
  return *ref;
}

// Iterates all tuples in [0, n)^arity in lexicographic order.
template <class F>
void for_each_tuple(std::size_t n, std::size_t arity, F&& f) {
  std::vector<std::size_t> t(arity, 0);
  if (arity == 0) {
    f(std::span<const std::size_t>(t));
    return;
  }
  if (n == 0) return;
  while (true) {
    f(std::span<const std::size_t>(t));
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++t[pos] < n) break;
      t[pos] = 0;
      if (pos == 0) return;
    }
  }
}

} // namespace

std::size_t ElementHandleHash::operator()(const ElementHandle& h) const noexcept {
  std::size_t x = h.repr.size();
  for (std::int64_t v : h.repr) x = x * 0x9E3779B97F4A7C15ull ^ std::hash<std::int64_t>{}(v);
  return x;
}

ElementHandle MinimalStructure::eval(const Term& t) const {
  if (t.head.is_variable()) throw Error("not-ground", "cannot evaluate a term with variables");
  std::vector<ElementHandle> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(eval(a));
  return apply(t.head, args);
}

bool MinimalStructure::holds(const Atom& a) const {
  if (a.kind == Atom::Kind::Eq) return eval(a.args[0]) == eval(a.args[1]);
  std::vector<ElementHandle> args;
  args.reserve(a.args.size());
  for (const Term& t : a.args) args.push_back(eval(t));
  return holds_relation(a.relation, args);
}

// ---------------------------------------------------------------------------
// FiniteTable

FiniteTable::FiniteTable(Signature sig, std::size_t size) : MinimalStructure(std::move(sig)), size_(size) {
  if (!signature().is_locally_finite())
    throw Error("infinite-signature", "finite tables require a finite signature");
  if (size == 0) throw Error("bad-table", "universe must be nonempty");
}

std::size_t FiniteTable::offset(SymbolRef s, std::span<const std::size_t> args) const {
  std::size_t off = 0;
  for (std::size_t a : args) {
    if (a >= size_) throw Error("bad-table", "element " + std::to_string(a) + " out of range");
    off = off * size_ + a;
  }
  (void)s;
  return off;
}

void FiniteTable::set_constant(SymbolRef c, std::size_t value) {
  if (signature().kind(c) != SymbolKind::Constant) throw Error("bad-table", signature().symbol_name(c) + " is not a constant");
  if (value >= size_) throw Error("bad-table", "constant value out of range");
  functions_[c] = {value};
}

void FiniteTable::set_function(SymbolRef f, std::vector<std::size_t> table) {
  if (signature().kind(f) != SymbolKind::Function) throw Error("bad-table", signature().symbol_name(f) + " is not a function");
  std::size_t cells = 1;
  for (int i = 0; i < signature().arity(f); ++i) cells *= size_;
  if (table.size() != cells)
    throw Error("bad-table", "table for " + signature().symbol_name(f) + " needs " + std::to_string(cells) + " entries");
  for (std::size_t v : table)
    if (v >= size_) throw Error("bad-table", "table value out of range for " + signature().symbol_name(f));
  functions_[f] = std::move(table);
}

void FiniteTable::set_relation(SymbolRef r, const std::vector<std::vector<std::size_t>>& tuples) {
  if (signature().kind(r) != SymbolKind::Relation) throw Error("bad-table", signature().symbol_name(r) + " is not a relation");
  const auto arity = static_cast<std::size_t>(signature().arity(r));
  std::size_t cells = 1;
  for (std::size_t i = 0; i < arity; ++i) cells *= size_;
  std::vector<char> flags(cells, 0);
  for (const auto& t : tuples) {
    if (t.size() != arity) throw Error("bad-table", "tuple arity mismatch for " + signature().symbol_name(r));
    flags[offset(r, t)] = 1;
  }
  relations_[r] = std::move(flags);
}

void FiniteTable::validate() const {
  for (SymbolKind k : {SymbolKind::Constant, SymbolKind::Function})
    for (SymbolRef s : signature().symbols(k))
      if (!functions_.count(s)) throw Error("bad-table", "symbol " + signature().symbol_name(s) + " is unassigned");
}

std::size_t FiniteTable::constant(SymbolRef c) const {
  const auto it = functions_.find(c);
  if (it == functions_.end()) throw Error("bad-table", "constant " + signature().symbol_name(c) + " is unassigned");
  return it->second[0];
}

std::size_t FiniteTable::value(SymbolRef f, std::span<const std::size_t> args) const {
  const auto it = functions_.find(f);
  if (it == functions_.end()) throw Error("bad-table", "symbol " + signature().symbol_name(f) + " is unassigned");
  return it->second[offset(f, args)];
}

bool FiniteTable::related(SymbolRef r, std::span<const std::size_t> args) const {
  const auto it = relations_.find(r);
  if (it == relations_.end()) return false;
  return it->second[offset(r, args)] != 0;
}

std::vector<std::vector<std::size_t>> FiniteTable::relation_tuples(SymbolRef r) const {
  std::vector<std::vector<std::size_t>> out;
  for_each_tuple(size_, static_cast<std::size_t>(signature().arity(r)), [&](std::span<const std::size_t> t) {
    if (related(r, t)) out.emplace_back(t.begin(), t.end());
  });
  return out;
}

const std::vector<std::size_t>& FiniteTable::function_table(SymbolRef f) const {
  const auto it = functions_.find(f);
  if (it == functions_.end()) throw Error("bad-table", "symbol " + signature().symbol_name(f) + " is unassigned");
  return it->second;
}

ElementHandle FiniteTable::apply(SymbolRef symbol, std::span<const ElementHandle> args) const {
  std::vector<std::size_t> idx;
  idx.reserve(args.size());
  for (const ElementHandle& h : args) idx.push_back(static_cast<std::size_t>(h.repr.at(0)));
  return ElementHandle{{static_cast<std::int64_t>(value(symbol, idx))}};
}

bool FiniteTable::holds_relation(SymbolRef relation, std::span<const ElementHandle> args) const {
  std::vector<std::size_t> idx;
  idx.reserve(args.size());
  for (const ElementHandle& h : args) idx.push_back(static_cast<std::size_t>(h.repr.at(0)));
  return related(relation, idx);
}

std::unique_ptr<MinimalStructure> FiniteTable::clone() const { return std::make_unique<FiniteTable>(*this); }

std::size_t FiniteTable::eval_index(const Term& t) const { return eval_index(t, {}); }

std::size_t FiniteTable::eval_index(const Term& t, std::span<const std::size_t> assignment) const {
  if (t.head.is_variable()) {
    if (t.head.index >= assignment.size()) throw Error("unbound-variable", "variable without assignment");
    return assignment[t.head.index];
  }
  if (t.args.empty()) return value(t.head, {});
  std::vector<std::size_t> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(eval_index(a, assignment));
  return value(t.head, args);
}

// ---------------------------------------------------------------------------
// FinitelyPresented

FinitelyPresented::FinitelyPresented(Presentation p)
    : MinimalStructure(p.signature), presentation_(std::move(p)), cc_(close(presentation_)) {}

ElementHandle FinitelyPresented::apply(SymbolRef symbol, std::span<const ElementHandle> args) const {
  std::vector<CongruenceClosure::NodeId> ids;
  ids.reserve(args.size());
  for (const ElementHandle& h : args) ids.push_back(static_cast<CongruenceClosure::NodeId>(h.repr.at(0)));
  const auto node = cc_.intern_node(symbol, ids);
  return ElementHandle{{static_cast<std::int64_t>(cc_.find(node))}};
}

bool FinitelyPresented::holds_relation(SymbolRef relation, std::span<const ElementHandle> args) const {
  std::vector<CongruenceClosure::NodeId> ids;
  ids.reserve(args.size());
  for (const ElementHandle& h : args) ids.push_back(static_cast<CongruenceClosure::NodeId>(h.repr.at(0)));
  return cc_.relation_holds(relation, ids);
}

std::unique_ptr<MinimalStructure> FinitelyPresented::clone() const {
  return std::make_unique<FinitelyPresented>(*this);
}

std::shared_ptr<FinitelyPresented> term_model(const Signature& sig, std::span<const Literal> literals) {
  Consistency c = consistent(sig, literals);
  if (!c.consistent) {
    throw Error("inconsistent", "literal set is inconsistent: clash on !(" + to_string(sig, c.clash->atom) + ")");
  }
  return std::make_shared<FinitelyPresented>(std::move(c.witness));
}

// ---------------------------------------------------------------------------
// Marked groups

Signature group_signature(const std::vector<std::string>& markers) {
  std::vector<Family> fams;
  fams.push_back(Family{"e", SymbolKind::Constant, 0, false, 1});
  fams.push_back(Family{"inv", SymbolKind::Function, 1, false, 1});
  fams.push_back(Family{"mul", SymbolKind::Function, 2, false, 1});
  for (const std::string& m : markers) fams.push_back(Family{m, SymbolKind::Constant, 0, false, 1});
  return Signature(std::move(fams));
}

std::vector<SymbolRef> group_markers(const Signature& sig) {
  std::vector<SymbolRef> out;
  for (SymbolRef c : sig.symbols(SymbolKind::Constant))
    if (sig.symbol_name(c) != "e") out.push_back(c);
  return out;
}

FreeGroupMarked::FreeGroupMarked(const std::vector<std::string>& markers) : MinimalStructure(group_signature(markers)) {
  e_ = require_symbol(signature(), "e", SymbolKind::Constant, 0);
  inv_ = require_symbol(signature(), "inv", SymbolKind::Function, 1);
  mul_ = require_symbol(signature(), "mul", SymbolKind::Function, 2);
  for (std::size_t i = 0; i < markers.size(); ++i)
    letter_[*signature().lookup(markers[i], std::nullopt)] = static_cast<std::int64_t>(i + 1);
}

ElementHandle FreeGroupMarked::apply(SymbolRef symbol, std::span<const ElementHandle> args) const {
  if (symbol == e_) return {};
  if (symbol == inv_) {
    ElementHandle out;
    out.repr.assign(args[0].repr.rbegin(), args[0].repr.rend());
    for (auto& x : out.repr) x = -x;
    return out;
  }
  if (symbol == mul_) {
    ElementHandle out = args[0];
    for (std::int64_t x : args[1].repr) {
      if (!out.repr.empty() && out.repr.back() == -x)
        out.repr.pop_back();
      else
        out.repr.push_back(x);
    }
    return out;
  }
  return ElementHandle{{letter_.at(symbol)}};
}

std::unique_ptr<MinimalStructure> FreeGroupMarked::clone() const { return std::make_unique<FreeGroupMarked>(*this); }

std::vector<std::vector<std::int64_t>> hermite_normal_form(std::vector<std::vector<std::int64_t>> rows,
                                                           std::size_t columns) {
  for (const auto& r : rows)
    if (r.size() != columns) throw Error("bad-lattice", "relator length does not match the number of markers");
  std::size_t top = 0;
  for (std::size_t col = 0; col < columns && top < rows.size(); ++col) {
    while (true) {
      // Smallest nonzero entry at or below `top` becomes the pivot.
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        const std::int64_t q = floor_div(rows[i][col], rows[top][col]);
        for (std::size_t j = col; j < columns; ++j) rows[i][j] = checked_sub(rows[i][j], checked_mul(q, rows[top][j]));
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0)
      for (auto& x : rows[top]) x = -x;
    for (std::size_t i = 0; i < top; ++i) {
      const std::int64_t q = floor_div(rows[i][col], rows[top][col]);
      if (q == 0) continue;
      for (std::size_t j = col; j < columns; ++j) rows[i][j] = checked_sub(rows[i][j], checked_mul(q, rows[top][j]));
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

AbelianMarked::AbelianMarked(const std::vector<std::string>& markers,
                             const std::vector<std::vector<std::int64_t>>& relators)
    : MinimalStructure(group_signature(markers)), rank_(markers.size()), relators_(relators) {
  e_ = require_symbol(signature(), "e", SymbolKind::Constant, 0);
  inv_ = require_symbol(signature(), "inv", SymbolKind::Function, 1);
  mul_ = require_symbol(signature(), "mul", SymbolKind::Function, 2);
  for (std::size_t i = 0; i < markers.size(); ++i) generator_[*signature().lookup(markers[i], std::nullopt)] = i;
  hnf_ = hermite_normal_form(relators, rank_);
  for (const auto& row : hnf_) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    pivot_col_.push_back(p);
  }
}

std::vector<std::int64_t> AbelianMarked::normalize(std::vector<std::int64_t> v) const {
  for (std::size_t i = 0; i < hnf_.size(); ++i) {
    const std::size_t p = pivot_col_[i];
    const std::int64_t q = floor_div(v[p], hnf_[i][p]);
    if (q == 0) continue;
    for (std::size_t j = p; j < rank_; ++j) v[j] = checked_sub(v[j], checked_mul(q, hnf_[i][j]));
  }
  return v;
}

ElementHandle AbelianMarked::apply(SymbolRef symbol, std::span<const ElementHandle> args) const {
  if (symbol == e_) return ElementHandle{std::vector<std::int64_t>(rank_, 0)};
  if (symbol == inv_) {
    std::vector<std::int64_t> v = args[0].repr;
    for (auto& x : v) x = checked_sub(0, x);
    return ElementHandle{normalize(std::move(v))};
  }
  if (symbol == mul_) {
    std::vector<std::int64_t> v = args[0].repr;
    for (std::size_t i = 0; i < rank_; ++i) v[i] = checked_add(v[i], args[1].repr[i]);
    return ElementHandle{normalize(std::move(v))};
  }
  std::vector<std::int64_t> v(rank_, 0);
  v[generator_.at(symbol)] = 1;
  return ElementHandle{normalize(std::move(v))};
}

std::unique_ptr<MinimalStructure> AbelianMarked::clone() const { return std::make_unique<AbelianMarked>(*this); }

// ---------------------------------------------------------------------------
// Finite structure utilities

std::optional<FiniteTable> materialize(const MinimalStructure& m, std::size_t max_size) {
  const Signature& sig = m.signature();
  if (!sig.is_locally_finite()) return std::nullopt;
  std::vector<ElementHandle> elements;
  std::unordered_map<ElementHandle, std::size_t, ElementHandleHash> index;
  auto add = [&](ElementHandle h) -> std::optional<std::size_t> {
    if (auto it = index.find(h); it != index.end()) return it->second;
    if (elements.size() >= max_size) return std::nullopt;
    index.emplace(h, elements.size());
    elements.push_back(std::move(h));
    return elements.size() - 1;
  };
  const auto constants = sig.symbols(SymbolKind::Constant);
  const auto functions = sig.symbols(SymbolKind::Function);
  for (SymbolRef c : constants)
    if (!add(m.apply(c, {}))) return std::nullopt;
  std::size_t done = 0;
  // Each round applies every function to every tuple that involves at least
  // one element discovered in the previous round.
  while (done < elements.size()) {
    const std::size_t n = elements.size();
    for (SymbolRef f : functions) {
      const auto arity = static_cast<std::size_t>(sig.arity(f));
      bool overflow = false;
      for_each_tuple(n, arity, [&](std::span<const std::size_t> t) {
        if (overflow) return;
        if (std::all_of(t.begin(), t.end(), [&](std::size_t i) { return i < done; })) return;
        std::vector<ElementHandle> args;
        args.reserve(arity);
        for (std::size_t i : t) args.push_back(elements[i]);
        if (!add(m.apply(f, args))) overflow = true;
      });
      if (overflow) return std::nullopt;
    }
    done = n;
  }
  FiniteTable table(sig, elements.size());
  for (SymbolRef c : constants) table.set_constant(c, index.at(m.apply(c, {})));
  for (SymbolRef f : functions) {
    const auto arity = static_cast<std::size_t>(sig.arity(f));
    std::vector<std::size_t> cells;
    for_each_tuple(elements.size(), arity, [&](std::span<const std::size_t> t) {
      std::vector<ElementHandle> args;
      for (std::size_t i : t) args.push_back(elements[i]);
      cells.push_back(index.at(m.apply(f, args)));
    });
    table.set_function(f, std::move(cells));
  }
  for (SymbolRef r : sig.symbols(SymbolKind::Relation)) {
    std::vector<std::vector<std::size_t>> tuples;
    for_each_tuple(elements.size(), static_cast<std::size_t>(sig.arity(r)), [&](std::span<const std::size_t> t) {
      std::vector<ElementHandle> args;
      for (std::size_t i : t) args.push_back(elements[i]);
      if (m.holds_relation(r, args)) tuples.emplace_back(t.begin(), t.end());
    });
    table.set_relation(r, tuples);
  }
  return table;
}

FiniteTable core(const FiniteTable& m) {
  m.validate();
  const Signature& sig = m.signature();
  std::vector<std::size_t> order;        // new index -> old element
  std::vector<std::size_t> renumber(m.size(), m.size());
  auto add = [&](std::size_t old) {
    if (renumber[old] == m.size()) {
      renumber[old] = order.size();
      order.push_back(old);
    }
  };
  const auto constants = sig.symbols(SymbolKind::Constant);
  const auto functions = sig.symbols(SymbolKind::Function);
  for (SymbolRef c : constants) add(m.constant(c));
  std::size_t done = 0;
  while (done < order.size()) {
    const std::size_t n = order.size();
    for (SymbolRef f : functions) {
      const auto arity = static_cast<std::size_t>(sig.arity(f));
      std::vector<std::size_t> old_args(arity);
      for_each_tuple(n, arity, [&](std::span<const std::size_t> t) {
        if (std::all_of(t.begin(), t.end(), [&](std::size_t i) { return i < done; })) return;
        for (std::size_t i = 0; i < arity; ++i) old_args[i] = order[t[i]];
        add(m.value(f, old_args));
      });
    }
    done = n;
  }
  FiniteTable out(sig, order.size());
  for (SymbolRef c : constants) out.set_constant(c, renumber[m.constant(c)]);
  for (SymbolRef f : functions) {
    const auto arity = static_cast<std::size_t>(sig.arity(f));
    std::vector<std::size_t> cells;
    std::vector<std::size_t> old_args(arity);
    for_each_tuple(order.size(), arity, [&](std::span<const std::size_t> t) {
      for (std::size_t i = 0; i < arity; ++i) old_args[i] = order[t[i]];
      cells.push_back(renumber[m.value(f, old_args)]);
    });
    out.set_function(f, std::move(cells));
  }
  for (SymbolRef r : sig.symbols(SymbolKind::Relation)) {
    const auto arity = static_cast<std::size_t>(sig.arity(r));
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> old_args(arity);
    for_each_tuple(order.size(), arity, [&](std::span<const std::size_t> t) {
      for (std::size_t i = 0; i < arity; ++i) old_args[i] = order[t[i]];
      if (m.related(r, old_args)) tuples.emplace_back(t.begin(), t.end());
    });
    out.set_relation(r, tuples);
  }
  return out;
}

bool is_minimal(const FiniteTable& m) { return core(m).size() == m.size(); }

bool iso_check(const FiniteTable& m, const FiniteTable& n) {
  if (!(m.signature() == n.signature())) throw Error("signature-mismatch", "structures have different signatures");
  if (!is_minimal(m) || !is_minimal(n)) throw Error("not-minimal", "isomorphism check requires minimal structures");
  if (m.size() != n.size()) return false;
  const Signature& sig = m.signature();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> phi(m.size(), unset);
  auto bind = [&](std::size_t x, std::size_t y) {
    if (phi[x] == unset) {
      phi[x] = y;
      return true;
    }
    return phi[x] == y;
  };
  for (SymbolRef c : sig.symbols(SymbolKind::Constant))
    if (!bind(m.constant(c), n.constant(c))) return false;
  const auto functions = sig.symbols(SymbolKind::Function);
  bool changed = true;
  bool ok = true;
  while (changed && ok) {
    changed = false;
    for (SymbolRef f : functions) {
      const auto arity = static_cast<std::size_t>(sig.arity(f));
      std::vector<std::size_t> image(arity);
      for_each_tuple(m.size(), arity, [&](std::span<const std::size_t> t) {
        if (!ok) return;
        for (std::size_t i = 0; i < arity; ++i) {
          if (phi[t[i]] == unset) return;
          image[i] = phi[t[i]];
        }
        const std::size_t x = m.value(f, t);
        const std::size_t y = n.value(f, image);
        if (phi[x] == unset) changed = true;
        ok = bind(x, y);
      });
    }
  }
  if (!ok) return false;
  std::vector<char> hit(n.size(), 0);
  for (std::size_t y : phi) {
    if (y == unset || hit[y]) return false;
    hit[y] = 1;
  }
  for (SymbolRef r : sig.symbols(SymbolKind::Relation)) {
    const auto arity = static_cast<std::size_t>(sig.arity(r));
    std::vector<std::size_t> image(arity);
    bool same = true;
    for_each_tuple(m.size(), arity, [&](std::span<const std::size_t> t) {
      for (std::size_t i = 0; i < arity; ++i) image[i] = phi[t[i]];
      same = same && (m.related(r, t) == n.related(r, image));
    });
    if (!same) return false;
  }
  return true;
}

std::vector<Atom> theta_atoms(const Signature& sig, std::span<const SymbolRef> markers) {
  const SymbolRef e = require_symbol(sig, "e", SymbolKind::Constant, 0);
  const SymbolRef inv = require_symbol(sig, "inv", SymbolKind::Function, 1);
  const SymbolRef mul = require_symbol(sig, "mul", SymbolKind::Function, 2);
  for (SymbolRef c : markers)
    if (sig.kind(c) != SymbolKind::Constant) throw Error("signature-mismatch", "markers must be constants");
  auto m = [&](Term a, Term b) { return apply(mul, {std::move(a), std::move(b)}); };
  auto k = [](SymbolRef s) { return constant(s); };
  std::vector<Atom> out;
  for (SymbolRef a : markers)
    for (SymbolRef b : markers)
      for (SymbolRef c : markers) out.push_back(Atom::eq(m(m(k(a), k(b)), k(c)), m(k(a), m(k(b), k(c)))));
  for (SymbolRef c : markers) {
    out.push_back(Atom::eq(m(k(c), k(e)), k(c)));
    out.push_back(Atom::eq(m(k(e), k(c)), k(c)));
    out.push_back(Atom::eq(m(k(c), apply(inv, {k(c)})), k(e)));
    out.push_back(Atom::eq(m(apply(inv, {k(c)}), k(c)), k(e)));
  }
  return out;
}

bool satisfies_theta(const MinimalStructure& m, std::span<const SymbolRef> markers) {
  for (const Atom& a : theta_atoms(m.signature(), markers))
    if (!m.holds(a)) return false;
  return true;
}

bool eval_open(const FiniteTable& m, const Sentence& s, std::span<const std::size_t> assignment) {
  switch (s.kind) {
    case Sentence::Kind::Atomic: {
      const Atom& a = s.atom;
      if (a.kind == Atom::Kind::Eq) return m.eval_index(a.args[0], assignment) == m.eval_index(a.args[1], assignment);
      std::vector<std::size_t> args;
      for (const Term& t : a.args) args.push_back(m.eval_index(t, assignment));
      return m.related(a.relation, args);
    }
    case Sentence::Kind::Not: return !eval_open(m, s.children[0], assignment);
    case Sentence::Kind::And: return eval_open(m, s.children[0], assignment) && eval_open(m, s.children[1], assignment);
    case Sentence::Kind::Or: return eval_open(m, s.children[0], assignment) || eval_open(m, s.children[1], assignment);
  }
  return false;
}

bool eval_quantified(const FiniteTable& m, const QuantifiedSentence& q, int jobs) {
  m.validate();
  const std::size_t k = q.variables.size();
  const std::size_t n = m.size();
  const bool forall = q.quantifier == QuantifiedSentence::Quantifier::Forall;
  if (k == 0) return eval_open(m, q.matrix, {});
  // A universal sentence fails on a counterexample; an existential one
  // succeeds on a witness. Either way we search for a "decisive" assignment.
  std::atomic<bool> decisive{false};
  auto scan_first = [&](std::size_t first) {
    std::vector<std::size_t> a(k, 0);
    a[0] = first;
    while (!decisive.load(std::memory_order_relaxed)) {
      if (eval_open(m, q.matrix, a) != forall) {
        decisive = true;
        return;
      }
      std::size_t pos = k;
      while (pos > 1) {
        --pos;
        if (++a[pos] < n) break;
        a[pos] = 0;
        if (pos == 1) return;
      }
      if (k == 1) return;
    }
  };
  if (jobs <= 1) {
    for (std::size_t first = 0; first < n && !decisive; ++first) scan_first(first);
  } else {
    const auto count = static_cast<long long>(n);
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
    for (long long first = 0; first < count; ++first) scan_first(static_cast<std::size_t>(first));
  }
  return forall ? !decisive.load() : decisive.load();
}

bool eval_universal(const FiniteTable& m, const QuantifiedSentence& q, int jobs) {
  if (q.quantifier != QuantifiedSentence::Quantifier::Forall)
    throw Error("not-universal", "expected a universal sentence");
  return eval_quantified(m, q, jobs);
}

} // namespace minspace
