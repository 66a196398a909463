#pragma once

// Generators for trees and algebras used by the verification suites and
// the tests.

#include <cstddef>
#include <random>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/tree.hpp"

namespace conlat {

using Rng = std::mt19937_64;

/// Every prefix-closed tree over {0..bound-1} with 1..max_nodes nodes.
std::vector<FiniteTree> all_trees(std::size_t max_nodes, Label bound);

/// Grows {ε} by random single-node extensions up to a random size in
/// [1, max_nodes].
FiniteTree random_finite_tree(Rng& rng, std::size_t max_nodes, Label bound);

/// A graph presentation with 1..max_states states and root 0. When
/// allow_cycles is false every edge goes to a higher-numbered state, so the
/// result is well-founded.
RegularTree random_regular_tree(Rng& rng, std::size_t max_states, Label max_bound, bool allow_cycles);

/// Carrier in [1, max_carrier], 0..max_ops operations of arity 1..max_arity.
FiniteAlgebra random_algebra(Rng& rng, std::size_t max_carrier, std::size_t max_ops, std::size_t max_arity);

}  // namespace conlat
