#include "properties.hpp"
#include "support.hpp"

#include "minspace/ultrametric.hpp"

using namespace minspace;
using test::atom;
using test::sig;

namespace {

std::shared_ptr<FinitelyPresented> presented(const Signature& s, std::vector<const char*> atoms) {
  Presentation p{s, {}};
  for (const char* a : atoms) p.atoms.push_back(atom(s, a));
  return std::make_shared<FinitelyPresented>(p);
}

} // namespace

TEST_CASE("m-closeness of the two-cycle and the free model") {
  const Signature s = sig("const c; fn f/1;");
  const auto m = presented(s, {"f(f(c)) = c"});
  const auto n = presented(s, {});
  CHECK(m_close(*m, *n, 4));
  CHECK_FALSE(m_close(*m, *n, 5));
  CHECK(m_close(*m, *m, 10));

  const DistanceResult d = distance(*m, *n);
  CHECK(d.distance == Distance::one_over(4));
  CHECK(d.distance.to_string() == "1/4");
  REQUIRE(d.witness);
  CHECK(to_string(s, *d.witness) == "c = f(f(c))");
  CHECK_FALSE(first_disagreement(*m, *m).has_value());
}

TEST_CASE("distance kinds") {
  const Signature s = sig("const c; fn f/1;");
  const auto cycle = presented(s, {"f(f(f(c))) = c"});
  CHECK(distance(*cycle, *cycle).distance == Distance::zero());
  const auto free = presented(s, {});
  const DistanceResult bound = distance(*free, *free, 6);
  CHECK(bound.distance == Distance::at_most(6));
  CHECK(bound.distance.to_string() == "<=1/6");
  CHECK(Distance::parse("<=1/6") == bound.distance);
  CHECK(Distance::parse("0") == Distance::zero());
  CHECK_CODE(Distance::parse("2/3"), "bad-distance");
}

TEST_CASE("Z/3 against Z") {
  const AbelianMarked z3({"c"}, {{3}});
  const AbelianMarked z({"c"}, {});
  const auto w = first_disagreement(z3, z);
  REQUIRE(w);
  CHECK(length(*w) == 6);
  CHECK(m_close(z3, z, 5));
  CHECK(props::scan_oracle(z3, z, 5) == std::nullopt);
}

TEST_CASE("exact values match independent closeness checks") {
  gen::Rng rng(3);
  for (int round = 0; round < 60; ++round) {
    const Signature s = gen::signature(rng, {3, 2, true});
    const auto a = props::presented(rng, s, 4);
    const auto b = props::presented(rng, s, 4);
    const DistanceResult d = distance(*a, *b, 7);
    CHECK(d.distance == distance(*b, *a, 7).distance);
    if (d.distance.kind == Distance::Kind::ExactOneOver) {
      const std::size_t m = d.distance.m;
      CHECK(oracle::agree_up_to(*a, *b, m));
      CHECK_FALSE(oracle::agree_up_to(*a, *b, m + 1));
      REQUIRE(d.witness);
      CHECK(length(*d.witness) == m + 1);
      CHECK(props::scan_oracle(*a, *b, m + 1) == d.witness);
    } else if (d.distance.kind == Distance::Kind::ExactZero) {
      CHECK(oracle::agree_up_to(*a, *b, 8));
    } else {
      CHECK(oracle::agree_up_to(*a, *b, 8));
    }
  }
}

TEST_CASE("ultrametric report") {
  const Signature s = sig("const c; fn f/1;");
  const auto a = presented(s, {"f(c) = c"});
  const auto b = presented(s, {"f(c) = c"});
  const auto free = presented(s, {});
  const std::vector<Triple> equal{{a, b, a}};
  const auto r = check_semi_ultrametric(equal);
  CHECK(r.ok());
  CHECK(r.conservative == 0);
  const std::vector<Triple> bounded{{free, free, a}};
  const auto q = check_semi_ultrametric(bounded, 6);
  CHECK(q.ok());
  CHECK(q.conservative == 1);

  const auto laws = props::ultrametric_laws(99, 20);
  INFO(laws.detail);
  CHECK(laws.ok);
}

TEST_CASE("parallel distance matrix matches serial") {
  gen::Rng rng(12);
  const Signature s = parse_signature("const c; fn f/1; fn g/1;");
  std::vector<StructurePtr> items;
  for (int i = 0; i < 6; ++i) items.push_back(props::presented(rng, s, 3));
  const auto serial = distance_matrix_serial(items, 8);
  const auto parallel = distance_matrix_parallel(items, 8, 4);
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = 0; j < items.size(); ++j) {
      CHECK(serial[i][j].distance == parallel[i][j].distance);
      CHECK(serial[i][j].witness == parallel[i][j].witness);
    }
}

TEST_CASE("Cauchy report") {
  const Signature s = sig("const c; fn f/1;");
  std::vector<StructurePtr> seq;
  // f^k(c) = c for growing k converges to the free model.
  for (const char* a : {"f(c) = c", "f(f(c)) = c", "f(f(f(c))) = c", "f(f(f(f(c)))) = c"}) seq.push_back(presented(s, {a}));
  const auto table = distance_matrix(seq, 10);
  const CauchyReport r = cauchy_report(table, 10);
  REQUIRE(r.consecutive.size() == 3);
  CHECK(r.consecutive[0] == Distance::one_over(3));
  CHECK(r.consecutive[1] == Distance::one_over(4));
  CHECK(r.consecutive[2] == Distance::one_over(5));
  REQUIRE(r.stable_from.size() >= 5);
  CHECK(r.stable_from[0] == std::optional<std::size_t>(0));
  CHECK(r.stable_from[4] == std::optional<std::size_t>(2));
  CHECK_FALSE(r.stable_from[5].has_value());
}
