// One line per acceptance criterion; exits nonzero if any criterion fails.

#include "properties.hpp"

#include <cstdio>
#include <functional>

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
  int id;
  const char* name;
  std::function<props::Outcome()> run;
  double time_limit = 0; // seconds; 0 means none
};

} // namespace

int main() {
  const Criterion criteria[] = {
      {1, "ultrametric laws on 200 random triples", [] { return props::ultrametric_laws(kSeed, 200); }, 60},
      {2, "congruence closure matches saturation on 100 presentations",
       [] { return props::congruence_oracle(kSeed + 2, 100); }},
      {3, "Herbrand soundness (100 models) and consistency vs model search (50)",
       [] { return props::herbrand_soundness(kSeed + 3, 100, 50); }},
      {4, "cover certificates: 2 types each, 50 structures per signature in one ball",
       [] { return props::cover_partition(kSeed + 4, 50); }},
      {5, "separated family k=20, length 3, pairwise non-3-close", [] { return props::separated(20); }},
      {6, "GH exact values and triangle inequality on 100 triples",
       [] { return props::gh_exactness(kSeed + 6, 100); }, 60},
      {7, "decode(encode(x)) = x on 100 grid spaces; gamma holds",
       [] { return props::encoding_fidelity(kSeed + 7, 100); }},
      {8, "net comparator: 50 agreeing pairs within 5eps/2; straddling pairs disagree",
       [] { return props::net_comparator(kSeed + 8, 50); }},
      {9, "distance regression values 1/4, 1/5, 1/6", [] { return props::distance_regressions(); }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    props::Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    if (c.time_limit > 0 && r.seconds >= c.time_limit) r.fail("took " + std::to_string(r.seconds) + " s");
    std::printf("%s criterion %d: %s [%s; %.2f s]\n", r.ok ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
    failed += r.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
