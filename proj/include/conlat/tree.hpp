#pragma once

// Trees as prefix-closed sets of label strings: explicit finite trees, and
// trees presented as the path language of a finite rooted deterministic
// labelled graph (which may be infinite).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "conlat/errors.hpp"

namespace conlat {

using Label = std::uint32_t;
using Word = std::vector<Label>;

/// Digits for labels below 10, "[12]" for larger ones. The empty word is "".
std::string format_word(const Word& w);
/// Inverse of format_word; throws InputError on malformed text.
Word parse_word(std::string_view text);

bool is_prefix(const Word& prefix, const Word& w);
bool comparable(const Word& a, const Word& b);
Word longest_common_prefix(const Word& a, const Word& b);

class FiniteTree {
 public:
  /// Throws InputError unless nodes contain the empty word, are prefix-closed
  /// and use only labels below bound.
  FiniteTree(Label bound, std::set<Word> nodes);

  /// The tree {ε}.
  static FiniteTree root_only(Label bound);

  Label bound() const { return bound_; }
  const std::set<Word>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t height() const;

  bool member(const Word& w) const { return nodes_.contains(w); }
  std::vector<Label> children(const Word& w) const;

  bool operator==(const FiniteTree&) const = default;

 private:
  Label bound_;
  std::set<Word> nodes_;
};

/// A possibly infinite path: stem followed by loop repeated forever.
struct PathWitness {
  Word stem;
  Word loop;

  /// stem followed by k copies of loop.
  Word unroll(std::size_t k) const;

  bool operator==(const PathWitness&) const = default;
};

class RegularTree {
 public:
  using State = std::size_t;

  struct Edge {
    State from;
    Label label;
    State to;
    auto operator<=>(const Edge&) const = default;
  };

  RegularTree() = default;

  /// Throws InputError for out-of-range states or labels and for two edges
  /// leaving one state with the same label. States unreachable from the root
  /// are allowed and ignored by every query.
  RegularTree(Label bound, std::vector<std::string> state_names, State root, std::vector<Edge> edges);

  /// Trie of a finite tree: one state per node.
  static RegularTree from_finite(const FiniteTree& t);

  Label bound() const { return bound_; }
  std::size_t state_count() const { return names_.size(); }
  State root() const { return root_; }
  const std::vector<std::string>& state_names() const { return names_; }
  /// Sorted by (from, label).
  std::vector<Edge> edges() const;

  std::optional<State> step(State s, Label l) const;
  std::optional<State> walk(const Word& w) const;

  bool member(const Word& w) const { return walk(w).has_value(); }
  std::vector<Label> children(const Word& w) const;

  std::vector<bool> reachable() const;

 private:
  static constexpr State kNone = static_cast<State>(-1);

  Label bound_ = 0;
  std::vector<std::string> names_;
  State root_ = 0;
  std::vector<State> delta_;  // state * bound + label
};

/// Adds the root and every length-one word below the bound. Infinite paths
/// are unchanged.
FiniteTree pad(const FiniteTree& t);
/// Missing root labels lead to one fresh leaf state, hung off a copy of the
/// root so that paths returning to the root do not gain the new children.
RegularTree pad(const RegularTree& t);

/// A stem-and-loop path if a cycle is reachable from the root.
std::optional<PathWitness> has_infinite_path(const RegularTree& t);
inline std::optional<PathWitness> has_infinite_path(const FiniteTree&) { return std::nullopt; }

bool is_well_founded(const RegularTree& t);
inline bool is_well_founded(const FiniteTree&) { return true; }

/// Checks stem . loop^k is a member for every k <= max_k.
bool witness_holds(const RegularTree& t, const PathWitness& w, std::size_t max_k = 10);

inline constexpr std::size_t kDefaultTreeNodeLimit = std::size_t{1} << 20;

/// Members of length <= depth. Throws GuardError past max_nodes.
FiniteTree truncate(const RegularTree& t, std::size_t depth, std::size_t max_nodes = kDefaultTreeNodeLimit);
FiniteTree truncate(const FiniteTree& t, std::size_t depth);

/// Every member, for a well-founded tree. Nullopt if an infinite path
/// exists; GuardError past max_nodes.
std::optional<FiniteTree> to_finite(const RegularTree& t, std::size_t max_nodes = kDefaultTreeNodeLimit);

}  // namespace conlat
