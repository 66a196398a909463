#include "conlat/order.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace conlat {

Relation::Relation(std::size_t n) : rows_(n, detail::Bitset(n)) {}

Relation Relation::from_pairs(std::size_t n, std::span<const ElementPair> pairs) {
  Relation rel(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) {
      std::ostringstream os;
      os << "pair (" << a << "," << b << ") out of range for carrier of size " << n;
      throw InputError(os.str());
    }
    rel.set(a, b);
  }
  return rel;
}

std::vector<ElementPair> Relation::pairs() const {
  std::vector<ElementPair> out;
  for (Element a = 0; a < size(); ++a) rows_[a].for_each([&](std::size_t b) { out.emplace_back(a, b); });
  return out;
}

Relation transitive_closure(Relation rel) {
  const auto n = rel.size();
  for (Element k = 0; k < n; ++k) {
    for (Element i = 0; i < n; ++i) {
      if (!rel.test(i, k)) continue;
      // row(i) |= row(k)
      rel.row(k).for_each([&](std::size_t j) { rel.set(i, j); });
    }
  }
  return rel;
}

Relation reflexive_transitive_closure(Relation rel) {
  for (Element i = 0; i < rel.size(); ++i) rel.set(i, i);
  return transitive_closure(std::move(rel));
}

std::string to_string(PosetAxiom axiom) {
  switch (axiom) {
    case PosetAxiom::kReflexive:
      return "reflexivity";
    case PosetAxiom::kAntisymmetric:
      return "antisymmetry";
    case PosetAxiom::kTransitive:
      return "transitivity";
  }
  return "unknown";
}

std::optional<PosetViolation> find_poset_violation(const Relation& rel) {
  const auto n = rel.size();
  for (Element a = 0; a < n; ++a)
    if (!rel.test(a, a)) return PosetViolation{PosetAxiom::kReflexive, a, a, a};
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b)
      if (rel.test(a, b) && rel.test(b, a)) return PosetViolation{PosetAxiom::kAntisymmetric, a, b, a};
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (!rel.test(a, b)) continue;
      if (!rel.row(b).is_subset_of(rel.row(a))) {
        Element c = 0;
        rel.row(b).for_each([&](std::size_t x) {
          if (!rel.test(a, x)) c = x;
        });
        return PosetViolation{PosetAxiom::kTransitive, a, b, c};
      }
    }
  }
  return std::nullopt;
}

namespace {

std::string describe(const PosetViolation& v) {
  std::ostringstream os;
  os << "not a partial order: " << to_string(v.axiom) << " fails";
  switch (v.axiom) {
    case PosetAxiom::kReflexive:
      os << " at " << v.first;
      break;
    case PosetAxiom::kAntisymmetric:
      os << " for " << v.first << " and " << v.second;
      break;
    case PosetAxiom::kTransitive:
      os << " for " << v.first << " <= " << v.second << " <= " << v.third;
      break;
  }
  return os.str();
}

std::string describe_pair(const char* what, ElementPair p) {
  std::ostringstream os;
  os << what << " (" << p.first << "," << p.second << ")";
  return os.str();
}

// The u in `set` with set contained in up(u), i.e. the least element of set.
std::optional<Element> least_in(const FinitePoset& p, const detail::Bitset& set) {
  std::optional<Element> best;
  std::size_t best_count = 0;
  set.for_each([&](std::size_t u) {
    auto c = p.up_set(u).count();
    if (!best || c > best_count) {
      best = u;
      best_count = c;
    }
  });
  if (best && set.is_subset_of(p.up_set(*best))) return best;
  return std::nullopt;
}

std::optional<Element> greatest_in(const FinitePoset& p, const detail::Bitset& set) {
  std::optional<Element> best;
  std::size_t best_count = 0;
  set.for_each([&](std::size_t u) {
    auto c = p.down_set(u).count();
    if (!best || c > best_count) {
      best = u;
      best_count = c;
    }
  });
  if (best && set.is_subset_of(p.down_set(*best))) return best;
  return std::nullopt;
}

detail::Bitset full_set(std::size_t n) {
  detail::Bitset all(n);
  for (std::size_t i = 0; i < n; ++i) all.set(i);
  return all;
}

}  // namespace

InvalidPoset::InvalidPoset(PosetViolation v) : InputError(describe(v)), violation_(v) {}

FinitePoset::FinitePoset(Relation leq) : leq_(std::move(leq)), geq_(leq_.size()) {
  if (auto v = find_poset_violation(leq_)) throw InvalidPoset(*v);
  for (Element a = 0; a < size(); ++a) leq_.row(a).for_each([&](std::size_t b) { geq_.set(b, a); });
}

FinitePoset FinitePoset::from_pairs(std::size_t n, std::span<const ElementPair> pairs) {
  auto rel = Relation::from_pairs(n, pairs);
  for (Element i = 0; i < n; ++i) rel.set(i, i);
  return FinitePoset(std::move(rel));
}

FinitePoset FinitePoset::chain(std::size_t n) {
  Relation rel(n);
  for (Element a = 0; a < n; ++a)
    for (Element b = a; b < n; ++b) rel.set(a, b);
  return FinitePoset(std::move(rel));
}

FinitePoset FinitePoset::antichain(std::size_t n) {
  Relation rel(n);
  for (Element a = 0; a < n; ++a) rel.set(a, a);
  return FinitePoset(std::move(rel));
}

LatticeCheck is_lattice(const FinitePoset& p) {
  for (Element a = 0; a < p.size(); ++a) {
    for (Element b = a + 1; b < p.size(); ++b) {
      if (!least_in(p, p.up_set(a) & p.up_set(b)) || !greatest_in(p, p.down_set(a) & p.down_set(b)))
        return {false, ElementPair{a, b}};
    }
  }
  return {true, std::nullopt};
}

NotALattice::NotALattice(ElementPair witness)
    : InputError(describe_pair("not a lattice: no join or meet for pair", witness)), witness_(witness) {}

FiniteLattice::FiniteLattice(FinitePoset p)
    : poset_(std::move(p)), meet_(poset_.size() * poset_.size()), join_(poset_.size() * poset_.size()) {
  const auto n = poset_.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      auto j = least_in(poset_, poset_.up_set(a) & poset_.up_set(b));
      auto m = greatest_in(poset_, poset_.down_set(a) & poset_.down_set(b));
      if (!j || !m) throw NotALattice({a, b});
      join_[a * n + b] = join_[b * n + a] = *j;
      meet_[a * n + b] = meet_[b * n + a] = *m;
    }
  }
}

void FiniteLattice::check_index(Element a) const {
  if (a >= size()) {
    std::ostringstream os;
    os << "element " << a << " out of range for lattice of size " << size();
    throw std::out_of_range(os.str());
  }
}

Element FiniteLattice::meet(Element a, Element b) const {
  check_index(a);
  check_index(b);
  return meet_[a * size() + b];
}

Element FiniteLattice::join(Element a, Element b) const {
  check_index(a);
  check_index(b);
  return join_[a * size() + b];
}

std::optional<Element> FiniteLattice::bottom() const { return least_in(poset_, full_set(size())); }

std::optional<Element> FiniteLattice::top() const { return greatest_in(poset_, full_set(size())); }

FinitePoset dual(const FinitePoset& p) {
  Relation rel(p.size());
  for (Element a = 0; a < p.size(); ++a) p.up_set(a).for_each([&](std::size_t b) { rel.set(b, a); });
  return FinitePoset(std::move(rel));
}

std::vector<ElementPair> hasse(const FinitePoset& p) {
  std::vector<ElementPair> covers;
  for (Element x = 0; x < p.size(); ++x) {
    p.up_set(x).for_each([&](std::size_t y) {
      if (y != x && (p.up_set(x) & p.down_set(y)).count() == 2) covers.emplace_back(x, y);
    });
  }
  return covers;
}

std::optional<Element> supremum(const FinitePoset& p, std::span<const Element> subset) {
  auto bounds = full_set(p.size());
  for (auto b : subset) bounds &= p.up_set(b);
  return least_in(p, bounds);
}

std::optional<Element> infimum(const FinitePoset& p, std::span<const Element> subset) {
  auto bounds = full_set(p.size());
  for (auto b : subset) bounds &= p.down_set(b);
  return greatest_in(p, bounds);
}

namespace {

using Mask = std::uint64_t;

constexpr Element kNone = static_cast<Element>(-1);

void check_subset_guard(std::size_t n, std::size_t bound) {
  if (n >= 63 || (std::uint64_t{1} << n) > bound) {
    std::ostringstream os;
    os << "subset enumeration over " << n << " elements exceeds bound " << bound;
    throw GuardError(os.str());
  }
}

// Per-subset sup (or kNone), via upper-bound masks built incrementally:
// ub(S) = ub(S - {x}) & up(x). sup S is the a in ub(S) below every member
// of ub(S).
std::vector<Element> subset_extrema(const FinitePoset& p, bool upper) {
  const auto n = p.size();
  std::vector<Mask> cone(n, 0);
  for (Element a = 0; a < n; ++a) {
    const auto& row = upper ? p.up_set(a) : p.down_set(a);
    row.for_each([&](std::size_t b) { cone[a] |= Mask{1} << b; });
  }
  const Mask all = n == 0 ? 0 : (~Mask{0} >> (64 - n));
  const Mask count = Mask{1} << n;
  std::vector<Mask> bounds(count);
  std::vector<Element> result(count, kNone);
  for (Mask s = 0; s < count; ++s) {
    if (s == 0) {
      bounds[s] = all;
    } else {
      auto low = static_cast<Element>(std::countr_zero(s));
      bounds[s] = bounds[s & (s - 1)] & cone[low];
    }
    const Mask b = bounds[s];
    for (Mask rest = b; rest != 0; rest &= rest - 1) {
      auto a = static_cast<Element>(std::countr_zero(rest));
      if ((b & ~cone[a]) == 0) {
        result[s] = a;
        break;
      }
    }
  }
  return result;
}

}  // namespace

bool bf_is_complete(const FinitePoset& p, std::size_t subset_bound) {
  check_subset_guard(p.size(), subset_bound);
  auto sups = subset_extrema(p, true);
  auto infs = subset_extrema(p, false);
  for (std::size_t s = 0; s < sups.size(); ++s)
    if (sups[s] == kNone || infs[s] == kNone) return false;
  return true;
}

bool bf_is_complete(const FiniteLattice& l, std::size_t subset_bound) {
  return bf_is_complete(l.poset(), subset_bound);
}

std::vector<Element> bf_compact_elements(const FinitePoset& p, std::size_t subset_bound) {
  check_subset_guard(p.size(), subset_bound);
  auto sups = subset_extrema(p, true);
  auto infs = subset_extrema(p, false);
  for (std::size_t s = 0; s < sups.size(); ++s)
    if (sups[s] == kNone || infs[s] == kNone)
      throw InputError("compactness check requires a complete lattice");

  std::vector<Element> compact;
  for (Element a = 0; a < p.size(); ++a) {
    bool is_compact = true;
    for (Mask s = 0; s < sups.size() && is_compact; ++s) {
      if (!p.leq(a, sups[s])) continue;
      // Look for a finite S' of S with a <= sup S'; submasks are enumerated
      // from S itself downward.
      bool found = false;
      for (Mask sub = s;; sub = (sub - 1) & s) {
        if (p.leq(a, sups[sub])) {
          found = true;
          break;
        }
        if (sub == 0) break;
      }
      is_compact = found;
    }
    if (is_compact) compact.push_back(a);
  }
  return compact;
}

std::vector<Element> bf_compact_elements(const FiniteLattice& l, std::size_t subset_bound) {
  return bf_compact_elements(l.poset(), subset_bound);
}

bool bf_is_algebraic(const FinitePoset& p, std::size_t subset_bound) {
  if (auto check = is_lattice(p); !check) throw NotALattice(*check.witness);
  if (!bf_is_complete(p, subset_bound)) return false;
  auto compact = bf_compact_elements(p, subset_bound);
  for (Element a = 0; a < p.size(); ++a) {
    std::vector<Element> below;
    for (auto c : compact)
      if (p.leq(c, a)) below.push_back(c);
    auto s = supremum(p, below);
    if (!s || *s != a) return false;
  }
  return true;
}

bool bf_is_algebraic(const FiniteLattice& l, std::size_t subset_bound) {
  return bf_is_algebraic(l.poset(), subset_bound);
}

}  // namespace conlat
