#include "minspace/stone.hpp"

#include "minspace/error.hpp"

#include <map>

namespace minspace {

bool evaluate(const Sentence& phi, const MinimalStructure& m) {
  switch (phi.kind) {
    case Sentence::Kind::Atomic: return m.holds(phi.atom);
    case Sentence::Kind::Not: return !evaluate(phi.children[0], m);
    case Sentence::Kind::And: return evaluate(phi.children[0], m) && evaluate(phi.children[1], m);
    case Sentence::Kind::Or: return evaluate(phi.children[0], m) || evaluate(phi.children[1], m);
  }
  return false;
}

std::vector<Literal> MType::literals() const {
  std::vector<Literal> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) out.push_back(Literal{atoms[i], signs[i]});
  return out;
}

namespace {

std::vector<Atom> type_atoms(const Signature& sig, std::size_t m, std::size_t budget) {
  if (!sig.is_locally_finite())
    throw Error("locally-infinite", "m-types need a locally finite signature");
  // Abort before materializing a huge atom list.
  TermPool pool(sig);
  std::size_t count = 0;
  for (std::size_t len = 1; len <= m; ++len) {
    count += pool.atoms_of_length(len).size();
    if (count > budget)
      throw Error("budget-exceeded", "level " + std::to_string(m) + " has more than " + std::to_string(budget) +
                                         " atoms");
  }
  return enumerate_atomic(sig, m);
}

class TypeSearch {
public:
  TypeSearch(const Signature& sig, std::size_t level, const std::vector<Atom>& atoms)
      : sig_(sig), level_(level), atoms_(atoms) {}

  [[nodiscard]] bool consistent_prefix(const std::vector<bool>& signs) const {
    std::vector<Literal> lits;
    lits.reserve(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) lits.push_back(Literal{atoms_[i], signs[i]});
    return consistent(sig_, lits).consistent;
  }

  // Consistent prefixes of length `depth`, in DFS order.
  void prefixes(std::vector<bool>& signs, std::size_t depth, std::vector<std::vector<bool>>& out) const {
    if (signs.size() == depth) {
      out.push_back(signs);
      return;
    }
    for (bool sign : {true, false}) {
      signs.push_back(sign);
      if (consistent_prefix(signs)) prefixes(signs, depth, out);
      signs.pop_back();
    }
  }

  void complete(std::vector<bool>& signs, std::vector<MType>& out) const {
    if (signs.size() == atoms_.size()) {
      MType t;
      t.level = level_;
      t.atoms = atoms_;
      t.signs = signs;
      t.witness.signature = sig_;
      for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (signs[i]) t.witness.atoms.push_back(atoms_[i]);
      out.push_back(std::move(t));
      return;
    }
    for (bool sign : {true, false}) {
      signs.push_back(sign);
      if (consistent_prefix(signs)) complete(signs, out);
      signs.pop_back();
    }
  }

private:
  const Signature& sig_;
  std::size_t level_;
  const std::vector<Atom>& atoms_;
};

} // namespace

std::vector<MType> enumerate_m_types_serial(const Signature& sig, std::size_t m, std::size_t budget) {
  const std::vector<Atom> atoms = type_atoms(sig, m, budget);
  TypeSearch search(sig, m, atoms);
  std::vector<MType> out;
  std::vector<bool> signs;
  search.complete(signs, out);
  return out;
}

std::vector<MType> enumerate_m_types_parallel(const Signature& sig, std::size_t m, std::size_t budget, int jobs) {
  const std::vector<Atom> atoms = type_atoms(sig, m, budget);
  TypeSearch search(sig, m, atoms);
  std::vector<std::vector<bool>> roots;
  std::vector<bool> signs;
  search.prefixes(signs, std::min<std::size_t>(atoms.size(), 6), roots);
  std::vector<std::vector<MType>> parts(roots.size());
  const auto count = static_cast<long long>(roots.size());
  std::exception_ptr failure;
#pragma omp parallel for num_threads(jobs > 0 ? jobs : 1) schedule(dynamic)
  for (long long r = 0; r < count; ++r) {
    try {
      std::vector<bool> local = roots[static_cast<std::size_t>(r)];
      search.complete(local, parts[static_cast<std::size_t>(r)]);
    } catch (...) {
#pragma omp critical(minspace_types)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<MType> out;
  for (auto& p : parts)
    for (auto& t : p) out.push_back(std::move(t));
  return out;
}

std::vector<MType> enumerate_m_types(const Signature& sig, std::size_t m, const TypeOptions& opts) {
  if (opts.jobs <= 1) return enumerate_m_types_serial(sig, m, opts.budget);
  return enumerate_m_types_parallel(sig, m, opts.budget, opts.jobs);
}

CoverCertificate cover_certificate(const Signature& sig, std::size_t m, const TypeOptions& opts) {
  CoverCertificate cert;
  cert.signature = sig;
  cert.level = m;
  cert.types = enumerate_m_types(sig, m, opts);
  cert.atoms = cert.types.empty() ? enumerate_atomic(sig, m) : cert.types.front().atoms;
  return cert;
}

bool ball_membership(const MinimalStructure& m, const MType& t) {
  if (!(m.signature() == t.witness.signature))
    throw Error("signature-mismatch", "structure and type have different signatures");
  for (std::size_t i = 0; i < t.atoms.size(); ++i)
    if (m.holds(t.atoms[i]) != t.signs[i]) return false;
  return true;
}

std::vector<std::size_t> locate(const MinimalStructure& m, const CoverCertificate& cert) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cert.types.size(); ++i)
    if (ball_membership(m, cert.types[i])) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct FamilyChoice {
  std::uint32_t family;
  std::size_t length;
  bool index_shift; // base constant taken from the family itself
};

} // namespace

SeparatedFamily separated_family(const Signature& sig, std::size_t k, const std::optional<std::string>& family,
                                 std::optional<std::size_t> length) {
  if (sig.is_locally_finite())
    throw Error("locally-finite", "separated families need an omega-indexed family");
  if (k == 0) throw Error("bad-count", "k must be positive");

  // Base constant: least constant of a finite family.
  std::optional<SymbolRef> base;
  for (std::uint32_t f = 0; f < sig.families().size(); ++f) {
    const Family& fam = sig.families()[f];
    if (fam.kind != SymbolKind::Constant || !fam.size || *fam.size == 0) continue;
    const SymbolRef s{f, 0};
    if (!base || sig.compare(s, *base) < 0) base = s;
  }

  std::vector<FamilyChoice> choices;
  for (std::uint32_t f = 0; f < sig.families().size(); ++f) {
    const Family& fam = sig.families()[f];
    if (fam.size) continue;
    if (family && fam.name != *family) continue;
    switch (fam.kind) {
      case SymbolKind::Constant: choices.push_back({f, 3, !base}); break;
      case SymbolKind::Function: choices.push_back({f, static_cast<std::size_t>(fam.arity) + 2, false}); break;
      case SymbolKind::Relation: choices.push_back({f, static_cast<std::size_t>(fam.arity) + 1, false}); break;
      case SymbolKind::Variable: break;
    }
  }
  if (family && choices.empty()) throw Error("unknown-symbol", "no omega-indexed family named '" + *family + "'");
  const FamilyChoice* pick = nullptr;
  for (const auto& c : choices)
    if (!length || c.length == *length) {
      pick = &c;
      break;
    }
  if (!pick)
    throw Error("no-family", "no omega-indexed family yields atoms of length " + std::to_string(length.value_or(0)));

  SeparatedFamily out;
  const Family& fam = sig.families()[pick->family];
  out.family = fam.name;
  out.atom_length = pick->length;
  // Without a finite constant, the family's own index 0 plays the base.
  const Term c = base ? constant(*base) : constant(SymbolRef{pick->family, 0});
  const std::uint64_t shift = pick->index_shift ? 1 : 0;
  for (std::size_t i = 0; i < k; ++i) {
    const SymbolRef s{pick->family, i + shift};
    switch (fam.kind) {
      case SymbolKind::Constant: out.thetas.push_back(Atom::eq(constant(s), c)); break;
      case SymbolKind::Function:
        out.thetas.push_back(Atom::eq(apply(s, std::vector<Term>(static_cast<std::size_t>(fam.arity), c)), c));
        break;
      default: out.thetas.push_back(Atom::rel(s, std::vector<Term>(static_cast<std::size_t>(fam.arity), c))); break;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Literal> lits;
    for (std::size_t j = 0; j < k; ++j) lits.push_back(Literal{out.thetas[j], i == j});
    out.structures.push_back(term_model(sig, lits));
  }
  return out;
}

bool in_gc(const MinimalStructure& m) {
  const Signature& sig = m.signature();
  for (const Family& f : sig.families())
    if (f.kind == SymbolKind::Constant && !f.size)
      throw Error("infinite-markers",
                  "marker family '" + f.name + "' is infinite; Theta has no finite conjunction and G_C is not clopen");
  const auto markers = group_markers(sig);
  return satisfies_theta(m, markers);
}

// ---------------------------------------------------------------------------

Term substitute(const Term& t, std::span<const Term> terms) {
  if (t.head.is_variable()) return terms[t.head.index];
  Term out{t.head, {}};
  out.args.reserve(t.args.size());
  for (const Term& a : t.args) out.args.push_back(substitute(a, terms));
  return out;
}

Sentence substitute(const Sentence& s, std::span<const Term> terms) {
  Sentence out;
  out.kind = s.kind;
  if (s.kind == Sentence::Kind::Atomic) {
    out.atom = s.atom;
    for (Term& a : out.atom.args) a = substitute(a, terms);
  }
  for (const Sentence& c : s.children) out.children.push_back(substitute(c, terms));
  return out;
}

std::optional<ExistentialWitness> existential_witness(const FiniteTable& m, const QuantifiedSentence& q,
                                                      std::size_t cutoff) {
  if (q.quantifier != QuantifiedSentence::Quantifier::Exists)
    throw Error("bad-sentence", "witness search needs an existential sentence");
  m.validate();
  // One representative term per element: the canonically least one.
  std::vector<Term> reps;
  std::vector<std::size_t> values;
  std::map<std::size_t, bool> seen;
  for (Term& t : enumerate_terms(m.signature(), cutoff)) {
    const std::size_t v = m.eval_index(t);
    if (seen.emplace(v, true).second) {
      values.push_back(v);
      reps.push_back(std::move(t));
    }
  }
  const std::size_t k = q.variables.size();
  if (k == 0) {
    if (!eval_open(m, q.matrix, {})) return std::nullopt;
    return ExistentialWitness{{}, q.matrix};
  }
  if (reps.empty()) return std::nullopt;
  std::vector<std::size_t> pick(k, 0);
  std::vector<std::size_t> assignment(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) assignment[i] = values[pick[i]];
    if (eval_open(m, q.matrix, assignment)) {
      ExistentialWitness w;
      for (std::size_t i = 0; i < k; ++i) w.terms.push_back(reps[pick[i]]);
      w.instance = substitute(q.matrix, w.terms);
      return w;
    }
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < reps.size()) break;
      pick[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

} // namespace minspace
