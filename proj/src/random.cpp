#include "conlat/random.hpp"

#include <functional>

namespace conlat {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Node sets (relative to the subtree root) of every tree with exactly n nodes.
std::vector<std::set<Word>> trees_of_size(std::size_t n, Label bound,
                                          std::vector<std::vector<std::set<Word>>>& memo) {
  if (!memo[n].empty() || n == 0) return memo[n];
  std::vector<std::set<Word>> out;
  // Distribute n - 1 nodes among the children 0..bound-1.
  std::function<void(Label, std::size_t, std::set<Word>)> rec = [&](Label label, std::size_t left,
                                                                    std::set<Word> acc) {
    if (label == bound) {
      if (left == 0) out.push_back(std::move(acc));
      return;
    }
    rec(label + 1, left, acc);  // no child with this label
    for (std::size_t k = 1; k <= left; ++k) {
      for (const auto& sub : trees_of_size(k, bound, memo)) {
        auto next = acc;
        for (const auto& w : sub) {
          Word child{label};
          child.insert(child.end(), w.begin(), w.end());
          next.insert(std::move(child));
        }
        rec(label + 1, left - k, std::move(next));
      }
    }
  };
  rec(0, n - 1, std::set<Word>{Word{}});
  memo[n] = out;
  return out;
}

}  // namespace

std::vector<FiniteTree> all_trees(std::size_t max_nodes, Label bound) {
  std::vector<std::vector<std::set<Word>>> memo(max_nodes + 1);
  std::vector<FiniteTree> out;
  for (std::size_t n = 1; n <= max_nodes; ++n)
    for (auto& nodes : trees_of_size(n, bound, memo)) out.emplace_back(bound, std::move(nodes));
  return out;
}

FiniteTree random_finite_tree(Rng& rng, std::size_t max_nodes, Label bound) {
  const auto target = uniform(rng, 1, max_nodes);
  std::vector<Word> nodes{Word{}};
  std::set<Word> present{Word{}};
  for (std::size_t attempts = 0; present.size() < target && attempts < 50 * max_nodes && bound > 0; ++attempts) {
    auto child = nodes[uniform(rng, 0, nodes.size() - 1)];
    child.push_back(static_cast<Label>(uniform(rng, 0, bound - 1)));
    if (present.insert(child).second) nodes.push_back(std::move(child));
  }
  return FiniteTree(bound, std::move(present));
}

RegularTree random_regular_tree(Rng& rng, std::size_t max_states, Label max_bound, bool allow_cycles) {
  const auto states = uniform(rng, 1, max_states);
  const auto bound = static_cast<Label>(uniform(rng, 1, max_bound));
  std::vector<std::string> names;
  for (std::size_t s = 0; s < states; ++s) names.push_back("q" + std::to_string(s));
  std::vector<RegularTree::Edge> edges;
  std::bernoulli_distribution has_edge(0.5);
  for (std::size_t s = 0; s < states; ++s) {
    for (Label l = 0; l < bound; ++l) {
      if (!has_edge(rng)) continue;
      if (allow_cycles) {
        edges.push_back({s, l, uniform(rng, 0, states - 1)});
      } else if (s + 1 < states) {
        edges.push_back({s, l, uniform(rng, s + 1, states - 1)});
      }
    }
  }
  return RegularTree(bound, std::move(names), 0, std::move(edges));
}

FiniteAlgebra random_algebra(Rng& rng, std::size_t max_carrier, std::size_t max_ops, std::size_t max_arity) {
  const auto n = uniform(rng, 1, max_carrier);
  const auto op_count = uniform(rng, 0, max_ops);
  std::vector<Operation> ops;
  for (std::size_t k = 0; k < op_count; ++k) {
    Operation op;
    op.arity = uniform(rng, 1, max_arity);
    std::size_t entries = 1;
    for (std::size_t i = 0; i < op.arity; ++i) entries *= n;
    for (std::size_t i = 0; i < entries; ++i) op.table.push_back(uniform(rng, 0, n - 1));
    ops.push_back(std::move(op));
  }
  return FiniteAlgebra(n, std::move(ops));
}

}  // namespace conlat
