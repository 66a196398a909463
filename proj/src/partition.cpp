#include "conlat/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "conlat/detail/union_find.hpp"

namespace conlat {

namespace {

void check_same_carrier(const EqRelation& a, const EqRelation& b) {
  if (a.carrier_size() != b.carrier_size()) {
    std::ostringstream os;
    os << "carrier mismatch: " << a.carrier_size() << " vs " << b.carrier_size();
    throw InputError(os.str());
  }
}

}  // namespace

bool finest_first(const EqRelation& a, const EqRelation& b) {
  if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
  return a.labels() < b.labels();
}

EqRelation EqRelation::from_labels(std::span<const std::size_t> labels) {
  EqRelation e;
  e.labels_.resize(labels.size());
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = renumber.try_emplace(labels[i], renumber.size());
    e.labels_[i] = it->second;
  }
  e.block_count_ = renumber.size();
  return e;
}

EqRelation EqRelation::from_blocks(std::size_t n, const std::vector<Block>& blocks) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(n, kUnset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InputError("partition has an empty block");
    for (auto x : blocks[b]) {
      if (x >= n) {
        std::ostringstream os;
        os << "element " << x << " out of range for carrier of size " << n;
        throw InputError(os.str());
      }
      if (labels[x] != kUnset) {
        std::ostringstream os;
        os << "element " << x << " appears in more than one block";
        throw InputError(os.str());
      }
      labels[x] = b;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (labels[x] == kUnset) {
      std::ostringstream os;
      os << "element " << x << " is not covered by any block";
      throw InputError(os.str());
    }
  }
  return from_labels(labels);
}

EqRelation EqRelation::identity(std::size_t n) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i;
  return from_labels(labels);
}

EqRelation EqRelation::all_pairs(std::size_t n) {
  std::vector<std::size_t> labels(n, 0);
  return from_labels(labels);
}

std::vector<Block> EqRelation::blocks() const {
  std::vector<Block> out(block_count_);
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
  return out;
}

std::vector<ElementPair> EqRelation::pairs() const {
  std::vector<ElementPair> out;
  for (std::size_t a = 0; a < labels_.size(); ++a)
    for (std::size_t b = a + 1; b < labels_.size(); ++b)
      if (labels_[a] == labels_[b]) out.emplace_back(a, b);
  return out;
}

bool EqRelation::refines(const EqRelation& other) const {
  check_same_carrier(*this, other);
  // Each of our blocks must map into a single block of other.
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> image(block_count_, kUnset);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto& img = image[labels_[i]];
    if (img == kUnset)
      img = other.labels_[i];
    else if (img != other.labels_[i])
      return false;
  }
  return true;
}

std::string EqRelation::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first_block = true;
  for (const auto& block : blocks()) {
    if (!first_block) os << ',';
    first_block = false;
    os << '{';
    for (std::size_t i = 0; i < block.size(); ++i) os << (i ? "," : "") << block[i];
    os << '}';
  }
  os << '}';
  return os.str();
}

EqRelation eq_meet(const EqRelation& a, const EqRelation& b) {
  check_same_carrier(a, b);
  // Blocks of the meet are nonempty intersections: label by the pair.
  std::vector<std::size_t> labels(a.carrier_size());
  const auto stride = b.block_count();
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = a.block_of(i) * stride + b.block_of(i);
  return EqRelation::from_labels(labels);
}

EqRelation eq_join(const EqRelation& a, const EqRelation& b) {
  check_same_carrier(a, b);
  const auto n = a.carrier_size();
  detail::UnionFind uf(n);
  for (const auto* rel : {&a, &b}) {
    std::vector<std::size_t> first(rel->block_count(), n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& f = first[rel->block_of(i)];
      if (f == n)
        f = i;
      else
        uf.unite(f, i);
    }
  }
  auto roots = uf.roots();
  return EqRelation::from_labels(roots);
}

EqRelation eq_generated(std::size_t n, std::span<const ElementPair> pairs) {
  detail::UnionFind uf(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw InputError("pair out of range");
    uf.unite(a, b);
  }
  auto roots = uf.roots();
  return EqRelation::from_labels(roots);
}

std::vector<EqRelation> all_partitions(std::size_t n, std::size_t max_n) {
  if (n > max_n) {
    std::ostringstream os;
    os << "partition enumeration for n=" << n << " exceeds limit " << max_n;
    throw GuardError(os.str());
  }
  std::vector<EqRelation> out;
  std::vector<std::size_t> rgs(n, 0);
  // Restricted growth strings: rgs[0]=0, rgs[i] <= 1 + max(rgs[0..i-1]).
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_label) -> void {
    if (i == n) {
      out.push_back(EqRelation::from_labels(rgs));
      return;
    }
    for (std::size_t l = 0; l <= max_label + 1; ++l) {
      rgs[i] = l;
      self(self, i + 1, std::max(max_label, l));
    }
  };
  if (n == 0) {
    out.push_back(EqRelation::identity(0));
  } else {
    rgs[0] = 0;
    rec(rec, 1, 0);
  }
  return out;
}

std::optional<Element> EqLattice::index_of(const EqRelation& e) const {
  auto it = std::find(elements.begin(), elements.end(), e);
  if (it == elements.end()) return std::nullopt;
  return static_cast<Element>(it - elements.begin());
}

EqLattice refinement_lattice(std::vector<EqRelation> elements) {
  Relation rel(elements.size());
  for (Element a = 0; a < elements.size(); ++a)
    for (Element b = 0; b < elements.size(); ++b)
      if (elements[a].refines(elements[b])) rel.set(a, b);
  return EqLattice{FiniteLattice(FinitePoset(std::move(rel))), std::move(elements)};
}

EqLattice full_eq_lattice(std::size_t n) {
  if (n > 6) {
    std::ostringstream os;
    os << "Eq(" << n << ") exceeds the materialization limit of 6";
    throw GuardError(os.str());
  }
  auto parts = all_partitions(n);
  std::sort(parts.begin(), parts.end(), finest_first);
  return refinement_lattice(std::move(parts));
}

std::string to_string(SublatticeCheck::Failure f) {
  switch (f) {
    case SublatticeCheck::Failure::kNone:
      return "none";
    case SublatticeCheck::Failure::kJoinMissing:
      return "join missing";
    case SublatticeCheck::Failure::kMeetMissing:
      return "meet missing";
    case SublatticeCheck::Failure::kIdentityMissing:
      return "identity relation missing";
    case SublatticeCheck::Failure::kAllPairsMissing:
      return "all-pairs relation missing";
  }
  return "unknown";
}

namespace {

void check_family(std::span<const EqRelation> family, std::size_t n) {
  std::unordered_set<EqRelation> seen;
  for (const auto& e : family) {
    if (e.carrier_size() != n) {
      std::ostringstream os;
      os << "family member " << e.to_string() << " has carrier " << e.carrier_size() << ", expected " << n;
      throw InputError(os.str());
    }
    if (!seen.insert(e).second) throw InputError("family contains duplicate relation " + e.to_string());
  }
}

}  // namespace

SublatticeCheck is_complete_sublattice(std::span<const EqRelation> family, std::size_t n) {
  check_family(family, n);
  std::unordered_set<EqRelation> members(family.begin(), family.end());
  using F = SublatticeCheck::Failure;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      auto join = eq_join(family[i], family[j]);
      if (!members.contains(join)) return {false, F::kJoinMissing, join, ElementPair{i, j}};
      auto meet = eq_meet(family[i], family[j]);
      if (!members.contains(meet)) return {false, F::kMeetMissing, meet, ElementPair{i, j}};
    }
  }
  if (auto id = EqRelation::identity(n); !members.contains(id)) return {false, F::kIdentityMissing, id, std::nullopt};
  if (auto all = EqRelation::all_pairs(n); !members.contains(all))
    return {false, F::kAllPairsMissing, all, std::nullopt};
  return {};
}

std::vector<EqRelation> complete_sublattice_closure(std::span<const EqRelation> family, std::size_t n) {
  for (const auto& e : family)
    if (e.carrier_size() != n) throw InputError("carrier mismatch in family");
  std::vector<EqRelation> items;
  std::unordered_set<EqRelation> seen;
  auto add = [&](const EqRelation& e) {
    if (seen.insert(e).second) items.push_back(e);
  };
  add(EqRelation::identity(n));
  add(EqRelation::all_pairs(n));
  for (const auto& e : family) add(e);
  // Each new item is combined with every earlier one exactly once.
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      add(eq_join(items[i], items[j]));
      add(eq_meet(items[i], items[j]));
    }
  }
  std::sort(items.begin(), items.end(), finest_first);
  return items;
}

}  // namespace conlat
