#pragma once

// Finite posets and lattices, plus brute-force checkers for completeness,
// compactness and algebraicity that enumerate every subset of the carrier.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conlat/detail/bitset.hpp"
#include "conlat/errors.hpp"

namespace conlat {

using Element = std::size_t;
using ElementPair = std::pair<Element, Element>;

/// Binary relation on {0..size-1}, stored as one bit row per element.
class Relation {
 public:
  explicit Relation(std::size_t n = 0);

  /// Throws InputError when a pair mentions an element >= n.
  static Relation from_pairs(std::size_t n, std::span<const ElementPair> pairs);

  std::size_t size() const { return rows_.size(); }
  bool test(Element a, Element b) const { return rows_[a].test(b); }
  void set(Element a, Element b) { rows_[a].set(b); }
  const detail::Bitset& row(Element a) const { return rows_[a]; }

  /// Pairs in lexicographic order.
  std::vector<ElementPair> pairs() const;

  bool operator==(const Relation&) const = default;

 private:
  std::vector<detail::Bitset> rows_;
};

/// Smallest transitive superset of rel (Warshall).
Relation transitive_closure(Relation rel);

/// Transitive closure with the diagonal added.
Relation reflexive_transitive_closure(Relation rel);

enum class PosetAxiom { kReflexive, kAntisymmetric, kTransitive };

std::string to_string(PosetAxiom axiom);

/// Which order axiom fails, and on which elements. For reflexivity only
/// `first` is meaningful; for antisymmetry `first`,`second`; for
/// transitivity all three (first <= second <= third but not first <= third).
struct PosetViolation {
  PosetAxiom axiom;
  Element first = 0;
  Element second = 0;
  Element third = 0;
};

std::optional<PosetViolation> find_poset_violation(const Relation& rel);

class InvalidPoset : public InputError {
 public:
  explicit InvalidPoset(PosetViolation v);
  const PosetViolation& violation() const { return violation_; }

 private:
  PosetViolation violation_;
};

class FinitePoset {
 public:
  FinitePoset() = default;

  /// Throws InvalidPoset naming the first failing axiom.
  explicit FinitePoset(Relation leq);

  /// Adds the reflexive pairs, then validates. Transitivity is not
  /// inferred: a non-transitive pair list is rejected.
  static FinitePoset from_pairs(std::size_t n, std::span<const ElementPair> pairs);

  static FinitePoset chain(std::size_t n);
  static FinitePoset antichain(std::size_t n);

  std::size_t size() const { return leq_.size(); }
  bool leq(Element a, Element b) const { return leq_.test(a, b); }
  bool lt(Element a, Element b) const { return a != b && leq(a, b); }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }

  const Relation& relation() const { return leq_; }
  /// Elements above a (inclusive).
  const detail::Bitset& up_set(Element a) const { return leq_.row(a); }
  /// Elements below a (inclusive).
  const detail::Bitset& down_set(Element a) const { return geq_.row(a); }

  bool operator==(const FinitePoset& other) const { return leq_ == other.leq_; }

 private:
  Relation leq_;
  Relation geq_;
};

struct LatticeCheck {
  bool is_lattice = false;
  /// A pair lacking a least upper bound or greatest lower bound.
  std::optional<ElementPair> witness;

  explicit operator bool() const { return is_lattice; }
};

LatticeCheck is_lattice(const FinitePoset& p);

class NotALattice : public InputError {
 public:
  explicit NotALattice(ElementPair witness);
  ElementPair witness() const { return witness_; }

 private:
  ElementPair witness_;
};

/// A finite poset in which every pair has a meet and a join. Tables are
/// computed once at construction.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  /// Throws NotALattice with a witnessing pair.
  explicit FiniteLattice(FinitePoset p);

  const FinitePoset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  bool leq(Element a, Element b) const { return poset_.leq(a, b); }

  /// Both throw std::out_of_range for invalid indices.
  Element meet(Element a, Element b) const;
  Element join(Element a, Element b) const;

  /// Empty only for the zero-element lattice.
  std::optional<Element> bottom() const;
  std::optional<Element> top() const;

 private:
  void check_index(Element a) const;

  FinitePoset poset_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
};

FinitePoset dual(const FinitePoset& p);

/// Covering pairs (x, y): x < y with nothing strictly between.
std::vector<ElementPair> hasse(const FinitePoset& p);

/// Least upper bound of the given elements, if one exists. Evaluated
/// literally: an upper bound that lies below every upper bound.
std::optional<Element> supremum(const FinitePoset& p, std::span<const Element> subset);
std::optional<Element> infimum(const FinitePoset& p, std::span<const Element> subset);

inline constexpr std::size_t kDefaultSubsetBound = std::size_t{1} << 16;

/// True iff every subset (including the empty one) has a sup and an inf.
/// Throws GuardError if 2^size exceeds subset_bound.
bool bf_is_complete(const FinitePoset& p, std::size_t subset_bound = kDefaultSubsetBound);
bool bf_is_complete(const FiniteLattice& l, std::size_t subset_bound = kDefaultSubsetBound);

/// Elements a such that whenever a <= sup S, some finite S' of S has
/// a <= sup S'. Requires a complete lattice (InputError otherwise).
std::vector<Element> bf_compact_elements(const FinitePoset& p,
                                         std::size_t subset_bound = kDefaultSubsetBound);
std::vector<Element> bf_compact_elements(const FiniteLattice& l,
                                         std::size_t subset_bound = kDefaultSubsetBound);

/// Complete and every element is the sup of the compact elements below it.
/// Throws NotALattice for non-lattice input.
bool bf_is_algebraic(const FinitePoset& p, std::size_t subset_bound = kDefaultSubsetBound);
bool bf_is_algebraic(const FiniteLattice& l, std::size_t subset_bound = kDefaultSubsetBound);

}  // namespace conlat
