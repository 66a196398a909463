#pragma once

// Finite algebras and their congruence lattices.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "conlat/partition.hpp"

namespace conlat {

/// An operation of the given arity. The table is row-major over
/// carrier^arity with the first argument most significant.
struct Operation {
  std::size_t arity = 1;
  std::vector<Element> table;

  bool operator==(const Operation&) const = default;
};

/// Carrier {0..n-1} with finitely many total operations. Constants are
/// written as arity-1 constant maps.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;

  /// Throws InputError for arity 0, tables of the wrong length, or entries
  /// outside the carrier.
  FiniteAlgebra(std::size_t carrier_size, std::vector<Operation> operations);

  std::size_t carrier_size() const { return carrier_size_; }
  const std::vector<Operation>& operations() const { return operations_; }

  Element apply(std::size_t op, std::span<const Element> args) const;

  /// Copy with one more operation appended.
  FiniteAlgebra with_operation(Operation op) const;

 private:
  std::size_t carrier_size_ = 0;
  std::vector<Operation> operations_;
};

/// Two argument tuples differing in one coordinate, related there by E,
/// whose images are not related.
struct CongruenceViolation {
  std::size_t operation = 0;
  std::size_t coordinate = 0;
  std::vector<Element> lhs;
  std::vector<Element> rhs;
  Element lhs_image = 0;
  Element rhs_image = 0;
};

/// Throws InputError on carrier mismatch.
std::optional<CongruenceViolation> find_congruence_violation(const FiniteAlgebra& alg, const EqRelation& e);
bool is_congruence(const FiniteAlgebra& alg, const EqRelation& e);

/// Least congruence containing every given pair. Pairs are merged with
/// union-find; each merged pair is pushed through every operation one
/// coordinate at a time (unary polynomial translations) until nothing new
/// is identified.
EqRelation congruence_generated(const FiniteAlgebra& alg, std::span<const ElementPair> pairs);

/// Least congruence containing (a, b). Throws std::out_of_range for
/// elements outside the carrier.
EqRelation principal_congruence(const FiniteAlgebra& alg, Element a, Element b);

/// Every partition that passes is_congruence. Throws GuardError for
/// carriers above 7.
std::vector<EqRelation> congruences_by_filter(const FiniteAlgebra& alg);

inline constexpr std::size_t kMaxCongruences = 4096;

/// Closure of {identity} and all principal congruences under eq_join.
/// Throws GuardError once more than max_elements congruences are found.
std::vector<EqRelation> congruences_by_principal_closure(const FiniteAlgebra& alg,
                                                         std::size_t max_elements = kMaxCongruences);

enum class ConMethod {
  kPartitionFilter,
  kPrincipalJoinClosure,
  /// Runs both and requires them to coincide. Only for carriers <= 7.
  kBoth,
  /// kBoth when the carrier allows it, otherwise the closure method.
  kAuto,
};

inline constexpr std::size_t kMaxFilterCarrier = 7;

/// Con(alg) ordered by refinement, finest first (identity at index 0).
/// With kBoth, a disagreement between the methods throws std::logic_error.
EqLattice congruence_lattice(const FiniteAlgebra& alg, ConMethod method = ConMethod::kAuto);

/// Whether the pairs generate e inside the congruence lattice: each pair
/// lies in e, and every member of con containing all pairs contains e.
bool generates_in(const EqLattice& con, const EqRelation& e, std::span<const ElementPair> pairs);

/// Smallest set of pairs generating e within con, searched breadth-first by
/// size in canonical pair order. Pairs are drawn from e itself. max_pairs
/// defaults to carrier_size - 1, which always suffices for a finite algebra.
/// Throws InputError if e is not a congruence of alg, SearchExhausted if no
/// generating set of size <= max_pairs exists.
std::vector<ElementPair> finitely_generated_check(const EqLattice& con, const FiniteAlgebra& alg,
                                                  const EqRelation& e,
                                                  std::optional<std::size_t> max_pairs = std::nullopt);

/// Indices of members of con that are finitely generated within con.
std::vector<Element> compact_congruences(const EqLattice& con);

}  // namespace conlat
