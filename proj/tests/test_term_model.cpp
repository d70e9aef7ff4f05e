#include "properties.hpp"
#include "support.hpp"

using namespace minspace;
using test::atom;
using test::sig;
using test::term;

namespace {

Literal lit(const Signature& s, const char* text, bool positive = true) { return Literal{atom(s, text), positive}; }

} // namespace

TEST_CASE("closure examples") {
  const Signature s = sig("const c; fn f/1;");
  CongruenceClosure cc = close(Presentation{s, {atom(s, "f(f(c)) = c")}});
  CHECK(entails_eq(cc, term(s, "f(f(c))"), term(s, "c")));
  CHECK_FALSE(entails_eq(cc, term(s, "f(c)"), term(s, "c")));
  CHECK(entails_eq(cc, term(s, "f(f(f(c)))"), term(s, "f(c)")));
  CHECK(cc.class_count() == 2);

  CongruenceClosure empty = close(Presentation{s, {}});
  CHECK_FALSE(entails_eq(empty, term(s, "f(c)"), term(s, "c")));
  CHECK(entails_eq(empty, term(s, "c"), term(s, "c")));

  CongruenceClosure fix = close(Presentation{s, {atom(s, "f(c) = c")}});
  CHECK(entails_eq(fix, term(s, "f(f(f(f(c))))"), term(s, "c")));
  CHECK(fix.class_count() == 1);
}

TEST_CASE("relation atoms in the closure") {
  const Signature s = sig("const c; fn f/1; rel P/1;");
  CongruenceClosure a = close(Presentation{s, {atom(s, "P(c)"), atom(s, "f(c) = c")}});
  CHECK(holds_atom(a, atom(s, "P(f(c))")));
  CongruenceClosure b = close(Presentation{s, {atom(s, "P(c)")}});
  CHECK_FALSE(holds_atom(b, atom(s, "P(f(c))")));
  CongruenceClosure e = close(Presentation{s, {}});
  CHECK(holds_atom(e, atom(s, "c = c")));
}

TEST_CASE("consistency examples") {
  const Signature s = sig("const c; fn f/1; rel P/1;");
  const std::vector<Literal> clash{lit(s, "f(c) = c"), lit(s, "f(f(c)) = c", false)};
  const Consistency r = consistent(s, clash);
  CHECK_FALSE(r.consistent);
  REQUIRE(r.clash_index);
  CHECK(*r.clash_index == 1);

  const std::vector<Literal> apart{lit(s, "f(c) = c", false)};
  const Consistency ok = consistent(s, apart);
  CHECK(ok.consistent);
  CHECK(ok.witness.atoms.empty());

  CHECK(consistent(s, std::vector<Literal>{lit(s, "P(c)"), lit(s, "P(f(c))", false)}).consistent);
  CHECK_CODE(term_model(s, clash), "inconsistent");
}

TEST_CASE("term model of a two-cycle") {
  const Signature s = sig("const c; fn f/1;");
  const auto m = term_model(s, std::vector<Literal>{lit(s, "f(f(c)) = c"), lit(s, "f(c) = c", false)});
  const auto table = materialize(*m, 16);
  REQUIRE(table);
  CHECK(table->size() == 2);
  const SymbolRef f = *s.lookup("f", std::nullopt);
  const std::size_t zero = table->constant(*s.lookup("c", std::nullopt));
  const std::size_t one = table->value(f, std::vector<std::size_t>{zero});
  CHECK(one != zero);
  CHECK(table->value(f, std::vector<std::size_t>{one}) == zero);

  const auto free = term_model(s, std::vector<Literal>{});
  CHECK_FALSE(materialize(*free, 64));
  const auto same = term_model(s, std::vector<Literal>{lit(s, "c = c")});
  CHECK(m_close(*free, *same, 8));
}

TEST_CASE("congruence laws on random terms") {
  gen::Rng rng(7);
  for (int round = 0; round < 60; ++round) {
    const Signature s = gen::signature(rng, {3, 2, false});
    CongruenceClosure cc = close(gen::presentation(rng, s, 4));
    const Term a = gen::term(rng, s, 5), b = gen::term(rng, s, 5), c = gen::term(rng, s, 5);
    CHECK(entails_eq(cc, a, a));
    CHECK(entails_eq(cc, a, b) == entails_eq(cc, b, a));
    if (entails_eq(cc, a, b) && entails_eq(cc, b, c)) CHECK(entails_eq(cc, a, c));
    for (SymbolRef f : s.symbols(SymbolKind::Function)) {
      if (s.arity(f) != 1 || !entails_eq(cc, a, b)) continue;
      CHECK(entails_eq(cc, apply(f, {a}), apply(f, {b})));
    }
  }
}

TEST_CASE("closure is monotone in the presentation") {
  gen::Rng rng(8);
  for (int round = 0; round < 40; ++round) {
    const Signature s = gen::signature(rng, {3, 2, true});
    Presentation p = gen::presentation(rng, s, 4);
    CongruenceClosure before = close(p);
    std::vector<Atom> entailed;
    for (const Atom& a : enumerate_atomic(s, 5))
      if (holds_atom(before, a)) entailed.push_back(a);
    p.atoms.push_back(gen::atom(rng, s, 3));
    CongruenceClosure after = close(p);
    for (const Atom& a : entailed) CHECK(holds_atom(after, a));
  }
}

TEST_CASE("closure agrees with saturation (small sample)") {
  const auto r = props::congruence_oracle(1234, 20);
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("Herbrand soundness (small sample)") {
  const auto r = props::herbrand_soundness(4321, 25, 15);
  INFO(r.detail);
  CHECK(r.ok);
}
