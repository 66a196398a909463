#pragma once

// Lattices built from trees, each with closed-form order, meet and join:
//
//   double tree   T plus a starred copy T*, prefix order on T, reverse
//                 prefix order on T*, and sigma < sigma* for each node.
//   sum           disjoint trees T_m under a common bottom and top, with a
//                 designated element a_m above every node of T_m.
//   tree-plus-a   T with a bottom 0 and top 1, and an element a that is
//                 incomparable with every node.
//   chain-plus-a  omega+1 with an element a where 0 < a < omega and a is
//                 incomparable with the positive naturals.
//
// Completeness, compactness of a_m and algebraicity are decided from the
// trees' well-foundedness. `materialize_*` builds the finite lattice from
// the generating relations by transitive closure; it is the independent
// oracle for every closed form here.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conlat/order.hpp"
#include "conlat/tree.hpp"

namespace conlat {

// ---------------------------------------------------------------------------
// Double tree

struct DtElement {
  Word node;
  bool starred = false;

  auto operator<=>(const DtElement&) const = default;
};

std::string to_string(const DtElement& x);

/// Toggles the copy. An order-reversing involution.
DtElement dt_star(DtElement x);

/// All three throw InputError if a node is not in t.
bool dt_leq(const RegularTree& t, const DtElement& x, const DtElement& y);
DtElement dt_meet(const RegularTree& t, const DtElement& x, const DtElement& y);
DtElement dt_join(const RegularTree& t, const DtElement& x, const DtElement& y);

/// Complete iff the tree has no infinite path. Padding does not change the
/// answer, so any presentation is accepted.
bool dt_is_complete(const RegularTree& t);

// ---------------------------------------------------------------------------
// Sum of trees with designated elements

struct SumElement {
  enum class Kind { kBottom, kTop, kDesignated, kNode };

  Kind kind = Kind::kBottom;
  std::size_t tree = 0;
  Word node;

  static SumElement bottom() { return {Kind::kBottom, 0, {}}; }
  static SumElement top() { return {Kind::kTop, 0, {}}; }
  static SumElement designated(std::size_t m) { return {Kind::kDesignated, m, {}}; }
  static SumElement node_of(std::size_t m, Word w) { return {Kind::kNode, m, std::move(w)}; }

  auto operator<=>(const SumElement&) const = default;
};

std::string to_string(const SumElement& x);

using TreeFamily = std::vector<RegularTree>;

/// Throw InputError for unknown tree indices or nodes outside their tree.
bool sum_leq(const TreeFamily& f, const SumElement& x, const SumElement& y);
SumElement sum_meet(const TreeFamily& f, const SumElement& x, const SumElement& y);
SumElement sum_join(const TreeFamily& f, const SumElement& x, const SumElement& y);

/// a_n is compact iff tree n has no infinite path. Throws std::out_of_range
/// for a bad index.
bool sum_is_compact_a(const TreeFamily& f, std::size_t n);

/// Position of a_n in the serialized carrier: designated elements take the
/// even ids, everything else the odd ids.
constexpr std::size_t designated_index(std::size_t n) { return 2 * n; }

// ---------------------------------------------------------------------------
// Tree plus a

struct TnaElement {
  enum class Kind { kZero, kA, kOne, kNode };

  Kind kind = Kind::kZero;
  Word node;

  static TnaElement zero() { return {Kind::kZero, {}}; }
  static TnaElement a() { return {Kind::kA, {}}; }
  static TnaElement one() { return {Kind::kOne, {}}; }
  static TnaElement node_of(Word w) { return {Kind::kNode, std::move(w)}; }

  auto operator<=>(const TnaElement&) const = default;
};

std::string to_string(const TnaElement& x);

bool tna_leq(const RegularTree& t, const TnaElement& x, const TnaElement& y);
TnaElement tna_meet(const RegularTree& t, const TnaElement& x, const TnaElement& y);
TnaElement tna_join(const RegularTree& t, const TnaElement& x, const TnaElement& y);

/// Every infinite subset has sup 1, so this is always true.
constexpr bool tna_is_complete(const RegularTree&) { return true; }
/// Algebraic iff the tree has no infinite path.
bool tna_is_algebraic(const RegularTree& t);

// ---------------------------------------------------------------------------
// omega+1 with a

struct ChainElement {
  enum class Kind { kNat, kOmega, kA };

  Kind kind = Kind::kNat;
  std::uint64_t value = 0;

  static ChainElement nat(std::uint64_t k) { return {Kind::kNat, k}; }
  static ChainElement omega() { return {Kind::kOmega, 0}; }
  static ChainElement a() { return {Kind::kA, 0}; }

  auto operator<=>(const ChainElement&) const = default;
};

std::string to_string(const ChainElement& x);

bool chain_leq(const ChainElement& x, const ChainElement& y);
ChainElement chain_meet(const ChainElement& x, const ChainElement& y);
ChainElement chain_join(const ChainElement& x, const ChainElement& y);

/// Compactness in the chain-plus-a lattice (and, for naturals and omega, in
/// omega+1 itself).
bool chain_is_compact(const ChainElement& x);

/// Sup of the compact elements below x.
ChainElement chain_sup_of_compact_below(const ChainElement& x);

struct ChainFacts {
  bool omega_plus_one_complete = false;
  bool a_compact = true;
  bool nat_compact = false;
  bool omega_compact = true;
  bool omega_plus_one_algebraic = false;
  bool chain_a_compactly_generated = true;
};

ChainFacts chain_facts();

// ---------------------------------------------------------------------------
// Materialization

inline constexpr std::size_t kDefaultMaterializeLimit = 4096;

template <class E>
struct Materialized {
  FiniteLattice lattice;
  std::vector<E> elements;

  std::optional<Element> index_of(const E& e) const {
    for (Element i = 0; i < elements.size(); ++i)
      if (elements[i] == e) return i;
    return std::nullopt;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(elements.size());
    for (const auto& e : elements) out.push_back(to_string(e));
    return out;
  }
};

/// All throw GuardError when the carrier would exceed max_elements.
Materialized<DtElement> materialize_double_tree(const FiniteTree& t,
                                                std::size_t max_elements = kDefaultMaterializeLimit);
/// Element i of the result is a_{i/2} for every even i < 2 * trees.size().
Materialized<SumElement> materialize_sum(const std::vector<FiniteTree>& trees,
                                         std::size_t max_elements = kDefaultMaterializeLimit);
Materialized<TnaElement> materialize_tna(const FiniteTree& t, std::size_t max_elements = kDefaultMaterializeLimit);
/// Naturals 0..height, omega and a.
Materialized<ChainElement> materialize_chain(std::size_t height);

// ---------------------------------------------------------------------------
// Verdicts

struct VerdictRow {
  std::size_t index = 0;
  bool well_founded = false;
  bool double_tree_complete = false;
  bool sum_a_compact = false;
  bool tna_algebraic = false;
  std::optional<PathWitness> witness;

  /// All four deciders agree.
  bool consistent() const {
    return double_tree_complete == well_founded && sum_a_compact == well_founded && tna_algebraic == well_founded;
  }
};

std::vector<VerdictRow> reduction_verdicts(const TreeFamily& f);

}  // namespace conlat
