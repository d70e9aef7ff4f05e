#include "properties.hpp"
#include "support.hpp"

#include "minspace/io.hpp"

using namespace minspace;
using test::atom;
using test::sig;
using test::term;

namespace {

/// Z/n with the marker c sent to `gen`.
FiniteTable cyclic(std::size_t n, std::size_t gen) {
  const Signature s = group_signature({"c"});
  FiniteTable t(s, n);
  t.set_constant(*s.lookup("e", std::nullopt), 0);
  t.set_constant(*s.lookup("c", std::nullopt), gen % n);
  std::vector<std::size_t> inv(n), mul(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    inv[a] = (n - a) % n;
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
  }
  t.set_function(*s.lookup("inv", std::nullopt), inv);
  t.set_function(*s.lookup("mul", std::nullopt), mul);
  return t;
}

std::string data(const char* name) { return std::string(MINSPACE_DATA_DIR) + "/" + name; }

} // namespace

TEST_CASE("group backends evaluate terms") {
  const FreeGroupMarked f({"c1", "c2"});
  const Signature& fs = f.signature();
  CHECK(f.eval(term(fs, "mul(c1, inv(c1))")) == f.eval(term(fs, "e")));
  CHECK_FALSE(f.holds(atom(fs, "mul(c1, c2) = mul(c2, c1)")));

  const AbelianMarked z2({"c1", "c2"}, {});
  CHECK(z2.holds(atom(z2.signature(), "mul(c1, c2) = mul(c2, c1)")));

  const AbelianMarked z3({"c"}, {{3}});
  const Signature& s = z3.signature();
  CHECK(z3.eval(term(s, "mul(c, mul(c, c))")) == z3.eval(term(s, "e")));
  CHECK(z3.holds(atom(s, "mul(c, c) = inv(c)")));

  const FiniteTable t = cyclic(4, 1);
  CHECK(t.eval_index(term(t.signature(), "mul(c, c)")) == 2);
}

TEST_CASE("core, minimality and isomorphism") {
  const FiniteTable z4_by_2 = cyclic(4, 2);
  CHECK_FALSE(is_minimal(z4_by_2));
  const FiniteTable c = core(z4_by_2);
  CHECK(c.size() == 2);
  CHECK(iso_check(c, cyclic(2, 1)));

  const FiniteTable z4 = cyclic(4, 1);
  CHECK(is_minimal(z4));
  CHECK(core(z4).size() == 4);
  CHECK(iso_check(core(z4), z4));

  CHECK(iso_check(cyclic(2, 1), cyclic(2, 1)));
  CHECK_FALSE(iso_check(cyclic(2, 1), cyclic(3, 1)));
  CHECK(iso_check(cyclic(4, 1), cyclic(4, 3)));
  CHECK(oracle::iso_brute_force(cyclic(4, 1), cyclic(4, 3)));
  CHECK_CODE(iso_check(z4_by_2, z4), "not-minimal");
}

TEST_CASE("theta axioms") {
  const FreeGroupMarked f({"c1", "c2"});
  CHECK(satisfies_theta(f, group_markers(f.signature())));
  const AbelianMarked z2({"c1", "c2"}, {});
  CHECK(satisfies_theta(z2, group_markers(z2.signature())));
  const auto magma = load_structure(data("magma.pres"));
  CHECK_FALSE(satisfies_theta(*magma.structure, group_markers(magma.signature)));
  CHECK(theta_atoms(f.signature(), group_markers(f.signature())).size() == 8 + 4 * 2);
}

TEST_CASE("universal sentences on finite tables") {
  const FiniteTable z2 = cyclic(2, 1);
  const Signature& s = z2.signature();
  CHECK(eval_universal(z2, parse_quantified("forall x y z: mul(mul(x, y), z) = mul(x, mul(y, z))", s)));
  CHECK(eval_universal(z2, parse_quantified("forall x: mul(x, inv(x)) = e & mul(e, x) = x", s)));
  CHECK_FALSE(eval_universal(z2, parse_quantified("forall v: !(mul(v, c) = mul(c, v)) | v = e", s)));

  const auto s3 = load_structure(data("s3.pres"));
  REQUIRE(s3.table);
  const auto centerless =
      parse_quantified("forall v: !(mul(v, s) = mul(s, v) & mul(v, r) = mul(r, v)) | v = e", s3.signature);
  CHECK(eval_universal(*s3.table, centerless));
  CHECK(eval_universal(*s3.table, centerless, 4));
}

TEST_CASE("presented and table backends agree on finite quotients") {
  gen::Rng rng(55);
  int compared = 0;
  for (int round = 0; round < 80 && compared < 25; ++round) {
    const Signature s = gen::signature(rng, {3, 2, true});
    Presentation p = gen::presentation(rng, s, 5);
    // Collapsing every function onto c forces a finite quotient.
    for (SymbolRef f : s.symbols(SymbolKind::Function)) {
      std::vector<Term> args(static_cast<std::size_t>(s.arity(f)), constant(s.symbols(SymbolKind::Constant)[0]));
      if (round % 2 == 0) p.atoms.push_back(Atom::eq(apply(f, args), constant(s.symbols(SymbolKind::Constant)[0])));
    }
    const FinitelyPresented m(p);
    const auto table = materialize(m, 32);
    if (!table) continue;
    ++compared;
    CHECK(is_minimal(*table));
    CHECK(oracle::agree_up_to(m, *table, 6));
  }
  CHECK(compared >= 20);
}

TEST_CASE("isomorphism is an equivalence and implies agreement") {
  gen::Rng rng(66);
  const Signature s = parse_signature("const c; const d; fn f/1; rel P/1;");
  std::vector<FiniteTable> pool;
  for (int i = 0; i < 30; ++i) pool.push_back(gen::minimal_table(rng, s, 3));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    CHECK(iso_check(pool[i], pool[i]));
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const bool ij = iso_check(pool[i], pool[j]);
      CHECK(ij == iso_check(pool[j], pool[i]));
      CHECK(ij == oracle::iso_brute_force(pool[i], pool[j]));
      if (ij) CHECK(oracle::agree_up_to(pool[i], pool[j], 8));
      for (std::size_t k = 0; k < pool.size() && ij; k += 7)
        if (iso_check(pool[j], pool[k])) CHECK(iso_check(pool[i], pool[k]));
    }
  }
}

TEST_CASE("core is idempotent") {
  gen::Rng rng(77);
  for (int i = 0; i < 40; ++i) {
    const Signature s = gen::signature(rng, {3, 2, true});
    const FiniteTable t = gen::table(rng, s, 4);
    const FiniteTable c = core(t);
    CHECK(is_minimal(c));
    CHECK(core(c).size() == c.size());
    CHECK(iso_check(core(c), c));
  }
}

TEST_CASE("abelian word problem against big integers") {
  gen::Rng rng(88);
  std::uniform_int_distribution<std::int64_t> coef(-6, 6);
  for (int round = 0; round < 200; ++round) {
    const std::vector<std::string> markers{"c1", "c2", "c3"};
    std::vector<std::vector<std::int64_t>> rel(2, std::vector<std::int64_t>(3));
    for (auto& r : rel)
      for (auto& v : r) v = coef(rng);
    const AbelianMarked g(markers, rel);
    const Signature& s = g.signature();
    const auto mk = group_markers(s);
    const oracle::BigLattice lattice(rel, 3);
    const Term u = gen::term(rng, s, 9), v = gen::term(rng, s, 9);
    auto a = oracle::abelian_vector(s, u, mk);
    const auto b = oracle::abelian_vector(s, v, mk);
    for (std::size_t i = 0; i < 3; ++i) a[i] -= b[i];
    INFO(to_string(s, u), " vs ", to_string(s, v));
    CHECK((g.eval(u) == g.eval(v)) == lattice.contains(a));
    // Relators lie in the lattice.
    std::vector<oracle::BigInt> r(rel[0].begin(), rel[0].end());
    CHECK(lattice.contains(r));
  }
}
