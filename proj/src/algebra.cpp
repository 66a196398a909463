#include "conlat/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "conlat/detail/union_find.hpp"

namespace conlat {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Decodes a row-major table index into its argument tuple.
void decode(std::size_t index, std::size_t n, std::span<Element> args) {
  for (std::size_t i = args.size(); i-- > 0;) {
    args[i] = index % n;
    index /= n;
  }
}

std::size_t encode(std::span<const Element> args, std::size_t n) {
  std::size_t index = 0;
  for (auto a : args) index = index * n + a;
  return index;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::size_t carrier_size, std::vector<Operation> operations)
    : carrier_size_(carrier_size), operations_(std::move(operations)) {
  for (std::size_t k = 0; k < operations_.size(); ++k) {
    const auto& op = operations_[k];
    if (op.arity == 0) throw InputError("operation " + std::to_string(k) + " has arity 0");
    const auto expected = ipow(carrier_size_, op.arity);
    if (op.table.size() != expected) {
      std::ostringstream os;
      os << "operation " << k << " of arity " << op.arity << " needs " << expected << " table entries, got "
         << op.table.size();
      throw InputError(os.str());
    }
    for (auto v : op.table) {
      if (v >= carrier_size_) {
        std::ostringstream os;
        os << "operation " << k << " maps to " << v << ", outside carrier of size " << carrier_size_;
        throw InputError(os.str());
      }
    }
  }
}

Element FiniteAlgebra::apply(std::size_t op, std::span<const Element> args) const {
  const auto& o = operations_.at(op);
  if (args.size() != o.arity) throw std::invalid_argument("wrong number of arguments");
  return o.table[encode(args, carrier_size_)];
}

FiniteAlgebra FiniteAlgebra::with_operation(Operation op) const {
  auto ops = operations_;
  ops.push_back(std::move(op));
  return FiniteAlgebra(carrier_size_, std::move(ops));
}

std::optional<CongruenceViolation> find_congruence_violation(const FiniteAlgebra& alg, const EqRelation& e) {
  const auto n = alg.carrier_size();
  if (e.carrier_size() != n) throw InputError("relation carrier does not match algebra");
  for (std::size_t k = 0; k < alg.operations().size(); ++k) {
    const auto& op = alg.operations()[k];
    std::vector<Element> args(op.arity);
    for (std::size_t idx = 0; idx < op.table.size(); ++idx) {
      decode(idx, n, args);
      for (std::size_t c = 0; c < op.arity; ++c) {
        const auto x = args[c];
        for (Element y = x + 1; y < n; ++y) {
          if (!e.related(x, y)) continue;
          auto other = args;
          other[c] = y;
          const auto fx = op.table[idx];
          const auto fy = op.table[encode(other, n)];
          if (!e.related(fx, fy)) return CongruenceViolation{k, c, args, other, fx, fy};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_congruence(const FiniteAlgebra& alg, const EqRelation& e) {
  return !find_congruence_violation(alg, e).has_value();
}

EqRelation congruence_generated(const FiniteAlgebra& alg, std::span<const ElementPair> pairs) {
  const auto n = alg.carrier_size();
  detail::UnionFind uf(n);
  std::vector<ElementPair> work;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw std::out_of_range("pair outside carrier");
    work.emplace_back(a, b);
  }
  // A pair already joined is skipped: its endpoints are linked by a chain
  // of processed pairs whose translations are queued already.
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!uf.unite(x, y)) continue;
    for (const auto& op : alg.operations()) {
      std::vector<Element> args(op.arity);
      const auto others = ipow(n, op.arity - 1);
      for (std::size_t c = 0; c < op.arity; ++c) {
        for (std::size_t rest = 0; rest < others; ++rest) {
          // Fill every coordinate but c from `rest`.
          std::size_t r = rest;
          for (std::size_t i = op.arity; i-- > 0;) {
            if (i == c) continue;
            args[i] = r % n;
            r /= n;
          }
          args[c] = x;
          const auto fx = op.table[encode(args, n)];
          args[c] = y;
          const auto fy = op.table[encode(args, n)];
          if (fx != fy) work.emplace_back(fx, fy);
        }
      }
    }
  }
  auto roots = uf.roots();
  return EqRelation::from_labels(roots);
}

EqRelation principal_congruence(const FiniteAlgebra& alg, Element a, Element b) {
  if (a >= alg.carrier_size() || b >= alg.carrier_size()) throw std::out_of_range("element outside carrier");
  const ElementPair p{a, b};
  return congruence_generated(alg, std::span(&p, 1));
}

std::vector<EqRelation> congruences_by_filter(const FiniteAlgebra& alg) {
  std::vector<EqRelation> out;
  for (auto& e : all_partitions(alg.carrier_size(), kMaxFilterCarrier))
    if (is_congruence(alg, e)) out.push_back(std::move(e));
  std::sort(out.begin(), out.end(), finest_first);
  return out;
}

std::vector<EqRelation> congruences_by_principal_closure(const FiniteAlgebra& alg, std::size_t max_elements) {
  const auto n = alg.carrier_size();
  std::vector<EqRelation> items;
  std::unordered_set<EqRelation> seen;
  auto add = [&](EqRelation e) {
    if (!seen.insert(e).second) return;
    items.push_back(std::move(e));
    if (items.size() > max_elements)
      throw GuardError("congruence lattice has more than " + std::to_string(max_elements) + " elements");
  };
  add(EqRelation::identity(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) add(principal_congruence(alg, a, b));
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(eq_join(items[i], items[j]));
  std::sort(items.begin(), items.end(), finest_first);
  return items;
}

EqLattice congruence_lattice(const FiniteAlgebra& alg, ConMethod method) {
  if (method == ConMethod::kAuto)
    method = alg.carrier_size() <= kMaxFilterCarrier ? ConMethod::kBoth : ConMethod::kPrincipalJoinClosure;
  std::vector<EqRelation> cons;
  switch (method) {
    case ConMethod::kPartitionFilter:
      cons = congruences_by_filter(alg);
      break;
    case ConMethod::kPrincipalJoinClosure:
      cons = congruences_by_principal_closure(alg);
      break;
    case ConMethod::kBoth:
    case ConMethod::kAuto: {
      cons = congruences_by_filter(alg);
      if (cons != congruences_by_principal_closure(alg))
        throw std::logic_error("partition filter and principal join closure disagree");
      break;
    }
  }
  return refinement_lattice(std::move(cons));
}

bool generates_in(const EqLattice& con, const EqRelation& e, std::span<const ElementPair> pairs) {
  for (auto [a, b] : pairs)
    if (!e.related(a, b)) return false;
  for (const auto& f : con.elements) {
    bool contains_pairs = std::all_of(pairs.begin(), pairs.end(), [&](auto p) { return f.related(p.first, p.second); });
    if (contains_pairs && !e.refines(f)) return false;
  }
  return true;
}

namespace {

// Breadth-first by size over combinations of candidate pairs, each size in
// lexicographic order of index tuples.
std::optional<std::vector<ElementPair>> search_generators(const EqLattice& con, const EqRelation& e,
                                                          std::size_t max_pairs) {
  const auto candidates = e.pairs();
  const auto m = candidates.size();
  for (std::size_t k = 0; k <= std::min(max_pairs, m); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<ElementPair> chosen(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) chosen[i] = candidates[idx[i]];
      if (generates_in(con, e, chosen)) return chosen;
      // Next combination.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

std::size_t default_max_pairs(std::size_t n) { return n == 0 ? 0 : n - 1; }

}  // namespace

std::vector<ElementPair> finitely_generated_check(const EqLattice& con, const FiniteAlgebra& alg, const EqRelation& e,
                                                  std::optional<std::size_t> max_pairs) {
  if (auto v = find_congruence_violation(alg, e))
    throw InputError(e.to_string() + " is not a congruence (operation " + std::to_string(v->operation) + ")");
  const auto budget = max_pairs.value_or(default_max_pairs(alg.carrier_size()));
  if (auto found = search_generators(con, e, budget)) return *found;
  throw SearchExhausted("no generating set of at most " + std::to_string(budget) + " pairs for " + e.to_string());
}

std::vector<Element> compact_congruences(const EqLattice& con) {
  std::vector<Element> out;
  for (Element i = 0; i < con.elements.size(); ++i) {
    const auto& e = con.elements[i];
    if (search_generators(con, e, default_max_pairs(e.carrier_size()))) out.push_back(i);
  }
  return out;
}

}  // namespace conlat
