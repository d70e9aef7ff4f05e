#include "minspace/generators.hpp"

#include "minspace/error.hpp"

namespace minspace::gen {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

} // namespace

Signature signature(Rng& rng, const SignatureShape& shape) {
  std::vector<Family> fams;
  fams.push_back(Family{"c", SymbolKind::Constant, 0, false, 1});
  const char* constants[] = {"d", "e"};
  const char* functions[] = {"f", "g", "h"};
  const char* relations[] = {"P", "Q"};
  std::size_t nc = 0, nf = 0, nr = 0;
  const std::size_t extra = uniform(rng, 0, shape.max_symbols > 0 ? shape.max_symbols - 1 : 0);
  for (std::size_t i = 0; i < extra; ++i) {
    const std::size_t kind = uniform(rng, 0, shape.relations ? 3 : 2);
    const int arity = static_cast<int>(uniform(rng, 1, static_cast<std::size_t>(std::max(1, shape.max_arity))));
    if (kind == 0 && nc < 2) {
      fams.push_back(Family{constants[nc++], SymbolKind::Constant, 0, false, 1});
    } else if (kind == 3 && nr < 2) {
      fams.push_back(Family{relations[nr++], SymbolKind::Relation, arity, false, 1});
    } else if (nf < 3) {
      fams.push_back(Family{functions[nf++], SymbolKind::Function, arity, false, 1});
    }
  }
  return Signature(std::move(fams));
}

Term term(Rng& rng, const Signature& sig, std::size_t max_length) {
  const auto consts = sig.symbols(SymbolKind::Constant);
  const auto funcs = sig.symbols(SymbolKind::Function);
  if (max_length <= 1 || funcs.empty() || uniform(rng, 0, 2) == 0) return constant(consts[uniform(rng, 0, consts.size() - 1)]);
  // Functions that still fit.
  std::vector<SymbolRef> fit;
  for (SymbolRef f : funcs)
    if (static_cast<std::size_t>(sig.arity(f)) + 1 <= max_length) fit.push_back(f);
  if (fit.empty()) return constant(consts[uniform(rng, 0, consts.size() - 1)]);
  const SymbolRef f = fit[uniform(rng, 0, fit.size() - 1)];
  const auto arity = static_cast<std::size_t>(sig.arity(f));
  std::size_t budget = max_length - 1;
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) {
    const std::size_t reserve = arity - i - 1; // each later argument needs >= 1
    const std::size_t cap = budget - reserve;
    Term a = term(rng, sig, uniform(rng, 1, cap));
    budget -= length(a);
    args.push_back(std::move(a));
  }
  return apply(f, std::move(args));
}

Atom atom(Rng& rng, const Signature& sig, std::size_t max_term_length) {
  const auto rels = sig.symbols(SymbolKind::Relation);
  if (rels.empty() || uniform(rng, 0, 2) != 0)
    return Atom::eq(term(rng, sig, max_term_length), term(rng, sig, max_term_length));
  const SymbolRef r = rels[uniform(rng, 0, rels.size() - 1)];
  std::vector<Term> args;
  for (int i = 0; i < sig.arity(r); ++i) args.push_back(term(rng, sig, max_term_length));
  return Atom::rel(r, std::move(args));
}

Presentation presentation(Rng& rng, const Signature& sig, std::size_t max_atoms, std::size_t max_term_length) {
  Presentation p{sig, {}};
  const std::size_t n = uniform(rng, 0, max_atoms);
  for (std::size_t i = 0; i < n; ++i) p.atoms.push_back(atom(rng, sig, max_term_length));
  return p;
}

std::vector<Literal> literals(Rng& rng, const Signature& sig, std::size_t count, std::size_t max_term_length) {
  std::vector<Literal> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(Literal{atom(rng, sig, max_term_length), uniform(rng, 0, 1) == 0});
  return out;
}

FiniteTable table(Rng& rng, const Signature& sig, std::size_t size) {
  FiniteTable t(sig, size);
  for (SymbolRef c : sig.symbols(SymbolKind::Constant)) t.set_constant(c, uniform(rng, 0, size - 1));
  for (SymbolRef f : sig.symbols(SymbolKind::Function)) {
    std::size_t cells = 1;
    for (int i = 0; i < sig.arity(f); ++i) cells *= size;
    std::vector<std::size_t> vals(cells);
    for (auto& v : vals) v = uniform(rng, 0, size - 1);
    t.set_function(f, std::move(vals));
  }
  for (SymbolRef r : sig.symbols(SymbolKind::Relation)) {
    std::size_t cells = 1;
    for (int i = 0; i < sig.arity(r); ++i) cells *= size;
    std::vector<std::vector<std::size_t>> tuples;
    for (std::size_t cell = 0; cell < cells; ++cell) {
      if (uniform(rng, 0, 1) == 0) continue;
      std::vector<std::size_t> tuple(static_cast<std::size_t>(sig.arity(r)));
      std::size_t rest = cell;
      for (std::size_t k = tuple.size(); k-- > 0;) {
        tuple[k] = rest % size;
        rest /= size;
      }
      tuples.push_back(std::move(tuple));
    }
    t.set_relation(r, tuples);
  }
  return t;
}

FiniteTable minimal_table(Rng& rng, const Signature& sig, std::size_t max_size) {
  return core(table(rng, sig, uniform(rng, 1, max_size)));
}

FiniteSemiMetric metric(Rng& rng, std::size_t n, int max_num, int max_den) {
  std::vector<std::vector<Extended>> d(n, std::vector<Extended>(n, Extended(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto a = static_cast<long long>(uniform(rng, 1, static_cast<std::size_t>(max_num)));
      const auto b = static_cast<long long>(uniform(rng, 1, static_cast<std::size_t>(max_den)));
      d[i][j] = d[j][i] = Extended(Rational(a, b));
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return make_metric(std::move(d));
}

FiniteSemiMetric grid_metric(Rng& rng, std::size_t n, const Rational& step, int max_steps) {
  std::vector<std::vector<Extended>> d(n, std::vector<Extended>(n, Extended(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto s = static_cast<long long>(uniform(rng, 1, static_cast<std::size_t>(max_steps)));
      d[i][j] = d[j][i] = Extended(Rational(step * s));
    }
  // Shortest paths keep every entry a multiple of the step.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return make_metric(std::move(d));
}

} // namespace minspace::gen
