#pragma once

#include "minspace/gromov_hausdorff.hpp"
#include "minspace/structures.hpp"
#include "minspace/term_model.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace minspace::gen {

using Rng = std::mt19937_64;

struct SignatureShape {
  std::size_t max_symbols = 3;
  int max_arity = 2;
  bool relations = true;
};

/// Finite signature with one constant `c` plus up to max_symbols - 1 more
/// symbols (constants d, e; functions f, g, h; relations P, Q).
[[nodiscard]] Signature signature(Rng& rng, const SignatureShape& shape = {});

/// Ground term with at most `max_length` symbol occurrences.
[[nodiscard]] Term term(Rng& rng, const Signature& sig, std::size_t max_length);

/// Atom whose terms each have length <= max_term_length; equations are
/// drawn with probability 2/3 when relations exist.
[[nodiscard]] Atom atom(Rng& rng, const Signature& sig, std::size_t max_term_length);

[[nodiscard]] Presentation presentation(Rng& rng, const Signature& sig, std::size_t max_atoms,
                                        std::size_t max_term_length = 4);

[[nodiscard]] std::vector<Literal> literals(Rng& rng, const Signature& sig, std::size_t count,
                                            std::size_t max_term_length = 3);

/// Random total table of the given size (not necessarily minimal).
[[nodiscard]] FiniteTable table(Rng& rng, const Signature& sig, std::size_t size);

/// core(table(...)): a random minimal finite structure.
[[nodiscard]] FiniteTable minimal_table(Rng& rng, const Signature& sig, std::size_t max_size);

/// Metric on n points: shortest paths over random edge weights a/b with
/// 1 <= a <= max_num and 1 <= b <= max_den. Exact and finite.
[[nodiscard]] FiniteSemiMetric metric(Rng& rng, std::size_t n, int max_num = 6, int max_den = 2);

/// Metric with every distance a multiple of `step`, at most `max_steps` steps.
[[nodiscard]] FiniteSemiMetric grid_metric(Rng& rng, std::size_t n, const Rational& step, int max_steps);

} // namespace minspace::gen
