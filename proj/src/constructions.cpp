#include "conlat/constructions.hpp"

#include <map>
#include <stdexcept>

namespace conlat {

namespace {

std::string show_word(const Word& w) { return w.empty() ? "ε" : format_word(w); }

void require_node(const RegularTree& t, const Word& w) {
  if (!t.member(w)) throw InputError("node \"" + format_word(w) + "\" is not in the tree");
}

void require_element(const TreeFamily& f, const SumElement& x) {
  using K = SumElement::Kind;
  if (x.kind != K::kDesignated && x.kind != K::kNode) return;
  if (x.tree >= f.size()) throw InputError("tree index " + std::to_string(x.tree) + " not in family");
  if (x.kind == K::kNode) require_node(f[x.tree], x.node);
}

template <class E>
Materialized<E> close_and_build(std::vector<E> elements, const std::vector<std::pair<E, E>>& generators) {
  std::map<E, Element> index;
  for (Element i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  Relation rel(elements.size());
  for (const auto& [lo, hi] : generators) rel.set(index.at(lo), index.at(hi));
  FinitePoset poset(reflexive_transitive_closure(std::move(rel)));
  return Materialized<E>{FiniteLattice(std::move(poset)), std::move(elements)};
}

void check_limit(std::size_t count, std::size_t max_elements) {
  if (count > max_elements)
    throw GuardError("materialized lattice would have " + std::to_string(count) + " elements, limit " +
                     std::to_string(max_elements));
}

Word parent(const Word& w) { return Word(w.begin(), w.end() - 1); }

}  // namespace

// ---------------------------------------------------------------------------
// Double tree

std::string to_string(const DtElement& x) { return show_word(x.node) + (x.starred ? "*" : ""); }

DtElement dt_star(DtElement x) {
  x.starred = !x.starred;
  return x;
}

bool dt_leq(const RegularTree& t, const DtElement& x, const DtElement& y) {
  require_node(t, x.node);
  require_node(t, y.node);
  if (!x.starred && !y.starred) return is_prefix(x.node, y.node);
  if (x.starred && y.starred) return is_prefix(y.node, x.node);
  // sigma <= alpha* iff alpha and sigma are comparable; the starred copy is
  // never below the unstarred one.
  if (!x.starred) return comparable(x.node, y.node);
  return false;
}

DtElement dt_meet(const RegularTree& t, const DtElement& x, const DtElement& y) {
  if (dt_leq(t, x, y)) return x;
  if (dt_leq(t, y, x)) return y;
  // Incomparable: the meet is the maximal common prefix, unstarred. This
  // covers two unstarred nodes, a node against a starred node, and (dually)
  // two starred nodes whose underlying nodes are incomparable.
  return {longest_common_prefix(x.node, y.node), false};
}

DtElement dt_join(const RegularTree& t, const DtElement& x, const DtElement& y) {
  if (dt_leq(t, x, y)) return y;
  if (dt_leq(t, y, x)) return x;
  return {longest_common_prefix(x.node, y.node), true};
}

bool dt_is_complete(const RegularTree& t) { return is_well_founded(t); }

// ---------------------------------------------------------------------------
// Sum

std::string to_string(const SumElement& x) {
  switch (x.kind) {
    case SumElement::Kind::kBottom:
      return "⊥";
    case SumElement::Kind::kTop:
      return "⊤";
    case SumElement::Kind::kDesignated:
      return "a" + std::to_string(x.tree);
    case SumElement::Kind::kNode:
      return "T" + std::to_string(x.tree) + ":" + show_word(x.node);
  }
  return "?";
}

bool sum_leq(const TreeFamily& f, const SumElement& x, const SumElement& y) {
  using K = SumElement::Kind;
  require_element(f, x);
  require_element(f, y);
  if (x.kind == K::kBottom || y.kind == K::kTop) return true;
  if (x.kind == K::kTop || y.kind == K::kBottom) return false;
  if (x.tree != y.tree) return false;
  if (y.kind == K::kDesignated) return true;  // node or a_m below a_m
  if (x.kind == K::kDesignated) return false;  // a_m is above its tree
  return is_prefix(x.node, y.node);
}

SumElement sum_join(const TreeFamily& f, const SumElement& x, const SumElement& y) {
  if (sum_leq(f, x, y)) return y;
  if (sum_leq(f, y, x)) return x;
  // Incomparable nodes of one tree join at a_m; across trees only 1 is above.
  if (x.tree == y.tree) return SumElement::designated(x.tree);
  return SumElement::top();
}

SumElement sum_meet(const TreeFamily& f, const SumElement& x, const SumElement& y) {
  if (sum_leq(f, x, y)) return x;
  if (sum_leq(f, y, x)) return y;
  using K = SumElement::Kind;
  if (x.tree == y.tree && x.kind == K::kNode && y.kind == K::kNode)
    return SumElement::node_of(x.tree, longest_common_prefix(x.node, y.node));
  return SumElement::bottom();
}

bool sum_is_compact_a(const TreeFamily& f, std::size_t n) {
  if (n >= f.size()) throw std::out_of_range("tree index " + std::to_string(n) + " not in family");
  return is_well_founded(f[n]);
}

// ---------------------------------------------------------------------------
// Tree plus a

std::string to_string(const TnaElement& x) {
  switch (x.kind) {
    case TnaElement::Kind::kZero:
      return "⊥";
    case TnaElement::Kind::kA:
      return "a";
    case TnaElement::Kind::kOne:
      return "⊤";
    case TnaElement::Kind::kNode:
      return show_word(x.node);
  }
  return "?";
}

bool tna_leq(const RegularTree& t, const TnaElement& x, const TnaElement& y) {
  using K = TnaElement::Kind;
  if (x.kind == K::kNode) require_node(t, x.node);
  if (y.kind == K::kNode) require_node(t, y.node);
  if (x.kind == K::kZero || y.kind == K::kOne) return true;
  if (x.kind == K::kOne || y.kind == K::kZero) return false;
  if (x.kind == K::kA || y.kind == K::kA) return x.kind == y.kind;
  return is_prefix(x.node, y.node);
}

TnaElement tna_join(const RegularTree& t, const TnaElement& x, const TnaElement& y) {
  if (tna_leq(t, x, y)) return y;
  if (tna_leq(t, y, x)) return x;
  return TnaElement::one();
}

TnaElement tna_meet(const RegularTree& t, const TnaElement& x, const TnaElement& y) {
  if (tna_leq(t, x, y)) return x;
  if (tna_leq(t, y, x)) return y;
  using K = TnaElement::Kind;
  if (x.kind == K::kNode && y.kind == K::kNode) return TnaElement::node_of(longest_common_prefix(x.node, y.node));
  return TnaElement::zero();
}

bool tna_is_algebraic(const RegularTree& t) { return is_well_founded(t); }

// ---------------------------------------------------------------------------
// Chain plus a

std::string to_string(const ChainElement& x) {
  switch (x.kind) {
    case ChainElement::Kind::kNat:
      return std::to_string(x.value);
    case ChainElement::Kind::kOmega:
      return "ω";
    case ChainElement::Kind::kA:
      return "a";
  }
  return "?";
}

bool chain_leq(const ChainElement& x, const ChainElement& y) {
  using K = ChainElement::Kind;
  switch (x.kind) {
    case K::kNat:
      if (y.kind == K::kNat) return x.value <= y.value;
      if (y.kind == K::kOmega) return true;
      return x.value == 0;  // only 0 lies below a
    case K::kOmega:
      return y.kind == K::kOmega;
    case K::kA:
      return y.kind == K::kA || y.kind == K::kOmega;
  }
  return false;
}

ChainElement chain_join(const ChainElement& x, const ChainElement& y) {
  if (chain_leq(x, y)) return y;
  if (chain_leq(y, x)) return x;
  return ChainElement::omega();  // a against a positive natural
}

ChainElement chain_meet(const ChainElement& x, const ChainElement& y) {
  if (chain_leq(x, y)) return x;
  if (chain_leq(y, x)) return y;
  return ChainElement::nat(0);
}

bool chain_is_compact(const ChainElement& x) {
  // An infinite subset contains infinitely many naturals and has sup omega;
  // the naturals alone are the hardest such set, and each finite part of it
  // has sup Nat(max). So x is compact exactly when x lies below some
  // natural. Finite subsets need no check.
  switch (x.kind) {
    case ChainElement::Kind::kNat:
      return chain_leq(x, ChainElement::nat(x.value));
    case ChainElement::Kind::kOmega:
    case ChainElement::Kind::kA:
      // Nothing at or above omega or a is a natural.
      return false;
  }
  return false;
}

ChainElement chain_sup_of_compact_below(const ChainElement& x) {
  // The compact elements are the naturals. Those below x: 0..k for Nat(k),
  // all of them for omega, and just 0 for a.
  switch (x.kind) {
    case ChainElement::Kind::kNat:
      return x;
    case ChainElement::Kind::kOmega:
      return ChainElement::omega();
    case ChainElement::Kind::kA:
      return ChainElement::nat(0);
  }
  return x;
}

ChainFacts chain_facts() {
  ChainFacts facts;
  // omega+1 is a well order with a top: a subset's sup is its maximum, or
  // omega when unbounded; its inf is its minimum, or omega when empty.
  facts.omega_plus_one_complete = true;
  facts.a_compact = chain_is_compact(ChainElement::a());
  facts.nat_compact = chain_is_compact(ChainElement::nat(3));
  facts.omega_compact = chain_is_compact(ChainElement::omega());

  // Representatives: a generic natural, the bottom, omega, and a.
  const ChainElement omega_reps[] = {ChainElement::nat(0), ChainElement::nat(7), ChainElement::omega()};
  facts.omega_plus_one_algebraic = facts.omega_plus_one_complete;
  for (const auto& x : omega_reps)
    facts.omega_plus_one_algebraic = facts.omega_plus_one_algebraic && chain_sup_of_compact_below(x) == x;

  facts.chain_a_compactly_generated = true;
  for (const auto& x : {ChainElement::nat(0), ChainElement::nat(7), ChainElement::omega(), ChainElement::a()})
    facts.chain_a_compactly_generated = facts.chain_a_compactly_generated && chain_sup_of_compact_below(x) == x;
  return facts;
}

// ---------------------------------------------------------------------------
// Materialization

Materialized<DtElement> materialize_double_tree(const FiniteTree& t, std::size_t max_elements) {
  check_limit(2 * t.size(), max_elements);
  std::vector<DtElement> elements;
  for (const auto& w : t.nodes()) elements.push_back({w, false});
  for (const auto& w : t.nodes()) elements.push_back({w, true});

  std::vector<std::pair<DtElement, DtElement>> gens;
  for (const auto& w : t.nodes()) {
    gens.push_back({{w, false}, {w, true}});
    if (w.empty()) continue;
    gens.push_back({{parent(w), false}, {w, false}});
    gens.push_back({{w, true}, {parent(w), true}});
  }
  return close_and_build(std::move(elements), gens);
}

Materialized<SumElement> materialize_sum(const std::vector<FiniteTree>& trees, std::size_t max_elements) {
  std::vector<SumElement> others{SumElement::bottom(), SumElement::top()};
  for (std::size_t m = 0; m < trees.size(); ++m)
    for (const auto& w : trees[m].nodes()) others.push_back(SumElement::node_of(m, w));
  const auto total = others.size() + trees.size();
  check_limit(total, max_elements);

  // Designated elements at even ids 0, 2, ..., the rest fills the gaps in
  // order. There are always more non-designated elements than trees.
  std::vector<SumElement> elements;
  elements.reserve(total);
  std::size_t next_other = 0;
  for (std::size_t id = 0; id < total; ++id) {
    if (id % 2 == 0 && id / 2 < trees.size())
      elements.push_back(SumElement::designated(id / 2));
    else
      elements.push_back(others[next_other++]);
  }

  std::vector<std::pair<SumElement, SumElement>> gens;
  for (const auto& x : elements) {
    gens.push_back({SumElement::bottom(), x});
    gens.push_back({x, SumElement::top()});
  }
  for (std::size_t m = 0; m < trees.size(); ++m) {
    for (const auto& w : trees[m].nodes()) {
      gens.push_back({SumElement::node_of(m, w), SumElement::designated(m)});
      if (!w.empty()) gens.push_back({SumElement::node_of(m, parent(w)), SumElement::node_of(m, w)});
    }
  }
  return close_and_build(std::move(elements), gens);
}

Materialized<TnaElement> materialize_tna(const FiniteTree& t, std::size_t max_elements) {
  check_limit(t.size() + 3, max_elements);
  std::vector<TnaElement> elements{TnaElement::zero()};
  for (const auto& w : t.nodes()) elements.push_back(TnaElement::node_of(w));
  elements.push_back(TnaElement::a());
  elements.push_back(TnaElement::one());

  std::vector<std::pair<TnaElement, TnaElement>> gens;
  for (const auto& x : elements) {
    gens.push_back({TnaElement::zero(), x});
    gens.push_back({x, TnaElement::one()});
  }
  for (const auto& w : t.nodes())
    if (!w.empty()) gens.push_back({TnaElement::node_of(parent(w)), TnaElement::node_of(w)});
  return close_and_build(std::move(elements), gens);
}

Materialized<ChainElement> materialize_chain(std::size_t height) {
  std::vector<ChainElement> elements;
  for (std::uint64_t k = 0; k <= height; ++k) elements.push_back(ChainElement::nat(k));
  elements.push_back(ChainElement::omega());
  elements.push_back(ChainElement::a());

  std::vector<std::pair<ChainElement, ChainElement>> gens;
  for (std::uint64_t k = 0; k < height; ++k) gens.push_back({ChainElement::nat(k), ChainElement::nat(k + 1)});
  gens.push_back({ChainElement::nat(height), ChainElement::omega()});
  gens.push_back({ChainElement::nat(0), ChainElement::a()});
  gens.push_back({ChainElement::a(), ChainElement::omega()});
  return close_and_build(std::move(elements), gens);
}

// ---------------------------------------------------------------------------
// Verdicts

std::vector<VerdictRow> reduction_verdicts(const TreeFamily& f) {
  std::vector<VerdictRow> rows;
  rows.reserve(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    VerdictRow row;
    row.index = n;
    row.witness = has_infinite_path(f[n]);
    row.well_founded = is_well_founded(f[n]);
    row.double_tree_complete = dt_is_complete(pad(f[n]));
    row.sum_a_compact = sum_is_compact_a(f, n);
    row.tna_algebraic = tna_is_algebraic(pad(f[n]));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace conlat
