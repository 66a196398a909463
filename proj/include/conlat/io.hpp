#pragma once

// JSON and DOT formats for posets, partitions, algebras, trees and
// construction descriptors. Every reader throws InputError on malformed
// input.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/constructions.hpp"
#include "conlat/order.hpp"
#include "conlat/partition.hpp"
#include "conlat/tree.hpp"
#include "json.hpp"

namespace conlat::io {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);

/// {"size": n, "leq": [[i,j], ...]}; reflexive pairs may be omitted.
FinitePoset poset_from_json(const json& j);
json to_json(const FinitePoset& p);

/// {"n": 4, "blocks": [[0,1],[2],[3]]}
EqRelation eq_from_json(const json& j);
json to_json(const EqRelation& e);

/// {"n": 3, "ops": [{"arity": 1, "table": [1,2,2]},
///                  {"arity": 2, "table": [[..],[..],[..]]}]}
/// Tables nest one array level per argument.
FiniteAlgebra algebra_from_json(const json& j);
json to_json(const FiniteAlgebra& a);

/// {"bound": 2, "nodes": ["", "0", "01"]} is read as a finite tree;
/// {"bound": 2, "root": "q0", "edges": [["q0",0,"q1"], ...]} as a graph
/// presentation. Both come back as a RegularTree.
RegularTree tree_from_json(const json& j);
json to_json(const FiniteTree& t);
json to_json(const RegularTree& t);

enum class Construction { kDoubleTree, kSum, kTreePlusA, kChainA };

/// "Ln", "SumL", "TnA", "ChainA".
std::string to_string(Construction c);
std::optional<Construction> construction_from_string(std::string_view s);

/// {"construction": "Ln"|"SumL"|"TnA"|"ChainA", "trees": [...],
///  "index": n (optional, restricts per-tree verdicts)}
struct Descriptor {
  Construction construction = Construction::kDoubleTree;
  std::vector<RegularTree> trees;
  std::optional<std::size_t> index;
};

Descriptor descriptor_from_json(const json& j);
json to_json(const Descriptor& d);

/// {"size", "elements" (labels), "leq" (pairs), "meet", "join", "bottom", "top"}.
json lattice_to_json(const FiniteLattice& l, const std::vector<std::string>& labels);

/// Hasse diagram. Nodes are numbered by element index and listed in index
/// order.
std::string to_dot(const FinitePoset& p, const std::vector<std::string>& labels, std::string_view name = "lattice");

json to_json(const PathWitness& w);

}  // namespace conlat::io
