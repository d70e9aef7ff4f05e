#include "oracles.hpp"
#include "support.hpp"

#include "minspace/syntax.hpp"

using namespace minspace;
using test::sig;

namespace {

std::vector<std::string> printed(const Signature& s, const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const Term& t : ts) out.push_back(to_string(s, t));
  return out;
}

std::vector<std::string> printed(const Signature& s, const std::vector<Atom>& as) {
  std::vector<std::string> out;
  for (const Atom& a : as) out.push_back(to_string(s, a));
  return out;
}

Sentence random_sentence(gen::Rng& rng, const Signature& s, int depth) {
  std::uniform_int_distribution<int> pick(0, 3);
  const int k = depth == 0 ? 0 : pick(rng);
  switch (k) {
    case 1: return Sentence::negation(random_sentence(rng, s, depth - 1));
    case 2: return Sentence::conjunction(random_sentence(rng, s, depth - 1), random_sentence(rng, s, depth - 1));
    case 3: return Sentence::disjunction(random_sentence(rng, s, depth - 1), random_sentence(rng, s, depth - 1));
    default: return Sentence::atomic(gen::atom(rng, s, 4));
  }
}

} // namespace

TEST_CASE("signature parsing") {
  const Signature s = sig("const c; fn f/1;");
  REQUIRE(s.families().size() == 2);
  CHECK(s.arity(*s.lookup("f", std::nullopt)) == 1);
  CHECK(s.is_locally_finite());

  const Signature w = sig("const c; const a[omega];");
  CHECK_FALSE(w.is_locally_finite());
  CHECK(w.lookup("a", 7).has_value());
  CHECK(to_string(w, constant(*w.lookup("a", 3))) == "a[3]");

  CHECK_FALSE(sig("const c; rel P/2[omega];").is_locally_finite());
  CHECK(sig("const c; fn g/2[4];").is_locally_finite());

  CHECK_CODE(sig("fn f/1;"), "no-constant");
  CHECK_CODE(sig("const c; fn c/1;"), "duplicate-symbol");

  try {
    (void)sig("const c\nfn f/1;");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.code() == "syntax-error");
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
}

TEST_CASE("sentence length") {
  const Signature g = sig("const e; fn inv/1; fn mul/2; const c;");
  CHECK(length(test::atom(g, "c = e")) == 3);
  CHECK(length(test::atom(g, "mul(c, c) = e")) == 5);
  const Signature p = sig("const c; rel P/1;");
  CHECK(length(test::atom(p, "P(c)")) == 2);
}

TEST_CASE("term and atom enumeration examples") {
  const Signature f = sig("const c; fn f/1;");
  CHECK(printed(f, enumerate_terms(f, 3)) == std::vector<std::string>{"c", "f(c)", "f(f(c))"});
  const Signature g = sig("const c; fn g/2;");
  CHECK(printed(g, enumerate_terms(g, 3)) == std::vector<std::string>{"c", "g(c, c)"});

  const Signature p = sig("const c; rel P/1;");
  CHECK(printed(p, enumerate_atomic(p, 2)) == std::vector<std::string>{"P(c)"});
  CHECK(printed(p, enumerate_atomic(p, 3)) == std::vector<std::string>{"P(c)", "c = c"});
  CHECK(printed(f, enumerate_atomic(f, 4)) == std::vector<std::string>{"c = c", "c = f(c)", "f(c) = c"});

  const Signature w = sig("const c; const a[omega];");
  CHECK_CODE(enumerate_terms(w, 2), "infinite-enumeration");
  EnumerationOptions cut;
  cut.index_cutoff = 2;
  CHECK(printed(w, enumerate_terms(w, 2, cut)) == std::vector<std::string>{"a[0]", "a[1]", "c"});
}

TEST_CASE("sentence parsing") {
  const Signature s = sig("const c; fn f/1; rel P/1;");
  const Sentence phi = parse_sentence("P(c) & !(c = f(c))", s);
  REQUIRE(phi.kind == Sentence::Kind::And);
  CHECK(phi.children[0] == Sentence::atomic(test::atom(s, "P(c)")));
  CHECK(phi.children[1].kind == Sentence::Kind::Not);
  CHECK(phi.children[1].children[0] == Sentence::atomic(test::atom(s, "c = f(c)")));

  CHECK_CODE(parse_sentence("c =", s), "syntax-error");
  CHECK_CODE(parse_sentence("Q(c)", sig("const c; rel P/1;")), "unknown-symbol");
  CHECK_CODE(parse_sentence("f(c, c) = c", s), "arity-mismatch");
}

TEST_CASE("enumeration agrees with generate-and-filter") {
  gen::Rng rng(17);
  for (int round = 0; round < 60; ++round) {
    const Signature s = gen::signature(rng, {4, 2, true});
    for (std::size_t m = 1; m <= 6; ++m) {
      const auto expected = oracle::atoms_up_to(s, m);
      const auto got = enumerate_atomic(s, m);
      INFO(s.to_string(), " m=", m);
      REQUIRE(printed(s, got) == printed(s, expected));
      CHECK(printed(s, enumerate_terms(s, m)) == printed(s, oracle::terms_up_to(s, m)));
    }
  }
}

TEST_CASE("enumeration is prefix-monotone") {
  gen::Rng rng(29);
  for (int round = 0; round < 30; ++round) {
    const Signature s = gen::signature(rng, {4, 2, true});
    for (std::size_t m = 1; m < 6; ++m) {
      const auto small = enumerate_atomic(s, m);
      const auto big = enumerate_atomic(s, m + 1);
      REQUIRE(small.size() <= big.size());
      CHECK(std::equal(small.begin(), small.end(), big.begin()));
    }
  }
}

TEST_CASE("printer and parser round trip") {
  gen::Rng rng(101);
  for (int round = 0; round < 150; ++round) {
    const Signature s = gen::signature(rng, {4, 2, true});
    const std::string text = s.to_string();
    const Signature back = parse_signature(text);
    CHECK(back == s);
    CHECK(back.to_string() == text);

    const Sentence phi = random_sentence(rng, s, 3);
    const std::string printed_phi = to_string(s, phi);
    const Sentence reparsed = parse_sentence(printed_phi, s);
    INFO(printed_phi);
    CHECK(reparsed == phi);
    CHECK(to_string(s, reparsed) == printed_phi);
  }

  const Signature w = sig("const c; const a[omega]; fn h/2[3]; rel R/1[omega];");
  CHECK(parse_signature(w.to_string()) == w);
  const Sentence mixed = parse_sentence("R[4](h[2](a[10], c)) | !(a[0] = c)", w);
  CHECK(parse_sentence(to_string(w, mixed), w) == mixed);
}

TEST_CASE("canonical order") {
  const Signature s = sig("const c; fn f/1; rel P/1;");
  CHECK(compare_atoms(s, test::atom(s, "c = c"), test::atom(s, "P(f(c))")) < 0);
  CHECK(compare_atoms(s, test::atom(s, "P(f(c))"), test::atom(s, "c = f(c)")) < 0);
  CHECK(compare_terms(s, test::term(s, "f(c)"), test::term(s, "c")) > 0);
}
