#pragma once

// Equivalence relations on {0..n-1} as canonical partitions, and the
// partition lattice Eq(n) ordered by refinement.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conlat/order.hpp"

namespace conlat {

using Block = std::vector<Element>;

/// A partition of {0..n-1}. Stored as a restricted growth string: label[i]
/// is the index of i's block, blocks numbered by their minimum element.
/// This form is unique per partition, so == and hashing are structural.
class EqRelation {
 public:
  EqRelation() = default;

  /// Throws InputError unless blocks are nonempty, disjoint and cover
  /// {0..n-1}. Any block order and element order is accepted.
  static EqRelation from_blocks(std::size_t n, const std::vector<Block>& blocks);

  /// Elements with equal labels share a block. Labels are arbitrary.
  static EqRelation from_labels(std::span<const std::size_t> labels);

  static EqRelation identity(std::size_t n);
  static EqRelation all_pairs(std::size_t n);

  std::size_t carrier_size() const { return labels_.size(); }
  std::size_t block_count() const { return block_count_; }
  const std::vector<std::size_t>& labels() const { return labels_; }
  std::size_t block_of(Element a) const { return labels_.at(a); }
  bool related(Element a, Element b) const { return labels_.at(a) == labels_.at(b); }

  /// Blocks sorted by minimum element, elements ascending.
  std::vector<Block> blocks() const;

  /// Pairs (a,b) with a < b and a related to b.
  std::vector<ElementPair> pairs() const;

  /// Inclusion of relations: every block of *this lies inside a block of other.
  bool refines(const EqRelation& other) const;

  std::string to_string() const;

  bool operator==(const EqRelation&) const = default;
  auto operator<=>(const EqRelation&) const = default;

 private:
  std::vector<std::size_t> labels_;
  std::size_t block_count_ = 0;
};

/// Ordering with finer relations (more blocks) first, ties by labels. Puts
/// the identity first and all-pairs last.
bool finest_first(const EqRelation& a, const EqRelation& b);

/// Intersection. Throws InputError on carrier mismatch.
EqRelation eq_meet(const EqRelation& a, const EqRelation& b);

/// Equivalence generated by the union (union-find over both block systems).
/// Throws InputError on carrier mismatch.
EqRelation eq_join(const EqRelation& a, const EqRelation& b);

/// Equivalence generated by a set of pairs.
EqRelation eq_generated(std::size_t n, std::span<const ElementPair> pairs);

/// Every partition of {0..n-1}, in canonical (label-lexicographic) order.
/// Throws GuardError for n > max_n.
std::vector<EqRelation> all_partitions(std::size_t n, std::size_t max_n = 7);

/// A finite lattice whose elements are labelled by equivalence relations,
/// ordered by refinement.
struct EqLattice {
  FiniteLattice lattice;
  std::vector<EqRelation> elements;

  /// Index of e, or nullopt.
  std::optional<Element> index_of(const EqRelation& e) const;
};

/// Builds the refinement lattice over the given distinct relations.
/// Throws NotALattice if they do not form a lattice under refinement.
EqLattice refinement_lattice(std::vector<EqRelation> elements);

/// Eq(n) itself. Throws GuardError for n > 6.
EqLattice full_eq_lattice(std::size_t n);

struct SublatticeCheck {
  enum class Failure { kNone, kJoinMissing, kMeetMissing, kIdentityMissing, kAllPairsMissing };

  bool ok = true;
  Failure failure = Failure::kNone;
  /// Relation that closure requires but the family lacks.
  std::optional<EqRelation> missing;
  /// Family indices whose join/meet is missing.
  std::optional<ElementPair> operands;

  explicit operator bool() const { return ok; }
};

std::string to_string(SublatticeCheck::Failure f);

/// Whether a finite family is a complete sublattice of Eq(n): closed under
/// binary join and meet, and containing the identity (sup of the empty
/// family) and all-pairs (inf of the empty family). Throws InputError for
/// carrier mismatch or duplicate members.
SublatticeCheck is_complete_sublattice(std::span<const EqRelation> family, std::size_t n);

/// Smallest complete sublattice of Eq(n) containing the family.
std::vector<EqRelation> complete_sublattice_closure(std::span<const EqRelation> family, std::size_t n);

}  // namespace conlat

template <>
struct std::hash<conlat::EqRelation> {
  std::size_t operator()(const conlat::EqRelation& e) const noexcept {
    std::size_t h = e.carrier_size();
    for (auto l : e.labels()) h = h * 1000003U ^ l;
    return h;
  }
};
