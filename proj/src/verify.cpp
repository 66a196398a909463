#include "conlat/verify.hpp"

#include <algorithm>
#include <sstream>

#include "conlat/algebra.hpp"
#include "conlat/constructions.hpp"
#include "conlat/io.hpp"
#include "conlat/random.hpp"

namespace conlat {

namespace {

// Closed forms, possibly with a fault injected.
struct Ops {
  Mutation mutation;

  bool dt_leq(const RegularTree& t, const DtElement& x, const DtElement& y) const {
    if (mutation == Mutation::kDtLeq && x.starred != y.starred) return conlat::dt_leq(t, y, x);
    return conlat::dt_leq(t, x, y);
  }
  DtElement dt_meet(const RegularTree& t, const DtElement& x, const DtElement& y) const {
    // The maximal common prefix applied even to comparable pairs.
    if (mutation == Mutation::kDtMeet && x.starred != y.starred) return {longest_common_prefix(x.node, y.node), false};
    return conlat::dt_meet(t, x, y);
  }
  DtElement dt_join(const RegularTree& t, const DtElement& x, const DtElement& y) const {
    if (mutation == Mutation::kDtJoin && !x.starred && !y.starred && x != y)
      return {longest_common_prefix(x.node, y.node), true};
    return conlat::dt_join(t, x, y);
  }
  SumElement sum_meet(const TreeFamily& f, const SumElement& x, const SumElement& y) const {
    if (mutation == Mutation::kSumMeet && x != y) return SumElement::bottom();
    return conlat::sum_meet(f, x, y);
  }
  SumElement sum_join(const TreeFamily& f, const SumElement& x, const SumElement& y) const {
    auto j = conlat::sum_join(f, x, y);
    if (mutation == Mutation::kSumJoin && j.kind == SumElement::Kind::kDesignated && j != x && j != y)
      return SumElement::top();
    return j;
  }
  TnaElement tna_meet(const RegularTree& t, const TnaElement& x, const TnaElement& y) const {
    if (mutation == Mutation::kTnaMeet && x != y) return TnaElement::zero();
    return conlat::tna_meet(t, x, y);
  }
  TnaElement tna_join(const RegularTree& t, const TnaElement& x, const TnaElement& y) const {
    if (mutation == Mutation::kTnaJoin && (x.kind == TnaElement::Kind::kA || y.kind == TnaElement::Kind::kA))
      return TnaElement::a();
    return conlat::tna_join(t, x, y);
  }
  EqRelation eq_join(const EqRelation& a, const EqRelation& b) const {
    if (mutation == Mutation::kEqJoin) return a;
    return conlat::eq_join(a, b);
  }
  EqRelation principal(const FiniteAlgebra& alg, Element a, Element b) const {
    if (mutation == Mutation::kPrincipal) {
      const ElementPair p{a, b};
      return eq_generated(alg.carrier_size(), std::span(&p, 1));
    }
    return principal_congruence(alg, a, b);
  }
};

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  // Records a failure; returns false so callers can stop early.
  bool check(bool ok, const std::string& context) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.counterexample = context;
    }
    return ok;
  }

  bool failed() const { return !result_.passed; }
  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

template <class E, class Leq, class Meet, class Join>
void compare_closed_forms(Suite& suite, const Materialized<E>& m, Leq leq, Meet meet, Join join,
                          const std::string& what) {
  const auto& l = m.lattice;
  for (Element i = 0; i < l.size() && !suite.failed(); ++i) {
    for (Element j = 0; j < l.size() && !suite.failed(); ++j) {
      const auto& x = m.elements[i];
      const auto& y = m.elements[j];
      std::ostringstream ctx;
      ctx << what << " x=" << to_string(x) << " y=" << to_string(y) << ": ";
      suite.check(leq(x, y) == l.leq(i, j), ctx.str() + "leq disagrees with oracle");
      auto mt = meet(x, y);
      suite.check(mt == m.elements[l.meet(i, j)],
                  ctx.str() + "meet " + to_string(mt) + ", oracle " + to_string(m.elements[l.meet(i, j)]));
      auto jn = join(x, y);
      suite.check(jn == m.elements[l.join(i, j)],
                  ctx.str() + "join " + to_string(jn) + ", oracle " + to_string(m.elements[l.join(i, j)]));
    }
  }
}

std::string tree_text(const FiniteTree& t) { return io::to_json(t).dump(); }

std::vector<FiniteTree> tree_corpus(Rng& rng, std::size_t samples, std::size_t max_nodes) {
  auto trees = all_trees(5, 2);
  for (std::size_t i = 0; i < samples; ++i)
    trees.push_back(random_finite_tree(rng, max_nodes, static_cast<Label>(1 + rng() % 3)));
  return trees;
}

SuiteResult double_tree_suite(Rng& rng, const VerifyOptions& opt, const Ops& ops) {
  Suite suite("double-tree closed forms");
  for (const auto& t : tree_corpus(rng, opt.samples, 10)) {
    const auto rt = RegularTree::from_finite(t);
    const auto m = materialize_double_tree(t);
    compare_closed_forms(
        suite, m, [&](auto& x, auto& y) { return ops.dt_leq(rt, x, y); },
        [&](auto& x, auto& y) { return ops.dt_meet(rt, x, y); }, [&](auto& x, auto& y) { return ops.dt_join(rt, x, y); },
        "Ln over " + tree_text(t));
    for (const auto& x : m.elements)
      for (const auto& y : m.elements)
        suite.check(ops.dt_leq(rt, x, y) == ops.dt_leq(rt, dt_star(y), dt_star(x)),
                    "star is not order-reversing on " + tree_text(t) + " at " + to_string(x) + ", " + to_string(y));
    if (suite.failed()) break;
  }
  return suite.take();
}

SuiteResult sum_suite(Rng& rng, const VerifyOptions& opt, const Ops& ops) {
  Suite suite("sum closed forms");
  std::vector<std::vector<FiniteTree>> families;
  for (const auto& t : all_trees(4, 2)) families.push_back({t});
  for (std::size_t i = 0; i < opt.samples; ++i) {
    std::vector<FiniteTree> fam;
    const auto count = 1 + rng() % 3;
    for (std::size_t k = 0; k < count; ++k) fam.push_back(random_finite_tree(rng, 5, static_cast<Label>(1 + rng() % 3)));
    families.push_back(std::move(fam));
  }
  for (const auto& fam : families) {
    TreeFamily f;
    std::string text = "[";
    for (const auto& t : fam) {
      f.push_back(RegularTree::from_finite(t));
      text += tree_text(t) + ",";
    }
    text += "]";
    const auto m = materialize_sum(fam);
    for (std::size_t n = 0; n < fam.size(); ++n)
      suite.check(m.elements[designated_index(n)] == SumElement::designated(n), "a_n not at id 2n in " + text);
    compare_closed_forms(
        suite, m, [&](auto& x, auto& y) { return sum_leq(f, x, y); },
        [&](auto& x, auto& y) { return ops.sum_meet(f, x, y); }, [&](auto& x, auto& y) { return ops.sum_join(f, x, y); },
        "SumL over " + text);
    if (suite.failed()) break;
  }
  return suite.take();
}

SuiteResult tna_suite(Rng& rng, const VerifyOptions& opt, const Ops& ops) {
  Suite suite("tree-plus-a closed forms");
  for (const auto& t : tree_corpus(rng, opt.samples, 10)) {
    const auto rt = RegularTree::from_finite(t);
    compare_closed_forms(
        suite, materialize_tna(t), [&](auto& x, auto& y) { return tna_leq(rt, x, y); },
        [&](auto& x, auto& y) { return ops.tna_meet(rt, x, y); }, [&](auto& x, auto& y) { return ops.tna_join(rt, x, y); },
        "TnA over " + tree_text(t));
    if (suite.failed()) break;
  }
  return suite.take();
}

SuiteResult verdict_suite(Rng& rng, const VerifyOptions& opt) {
  Suite suite("reduction verdicts");
  for (std::size_t i = 0; i < opt.samples && !suite.failed(); ++i) {
    TreeFamily f;
    const auto count = 1 + rng() % 4;
    for (std::size_t k = 0; k < count; ++k) f.push_back(random_regular_tree(rng, 8, 3, rng() % 2 == 0));
    const auto text = [&] {
      std::string s;
      for (const auto& t : f) s += io::to_json(t).dump() + " ";
      return s;
    }();
    for (const auto& row : reduction_verdicts(f)) {
      const auto ctx = "tree " + std::to_string(row.index) + " of " + text;
      suite.check(row.consistent(), "deciders disagree on " + ctx);
      suite.check(row.witness.has_value() == !row.well_founded, "witness presence mismatch on " + ctx);
      if (row.witness) suite.check(witness_holds(f[row.index], *row.witness, 10), "witness fails on " + ctx);
      if (!row.well_founded) continue;
      // Small well-founded trees: the brute-force oracles agree at finite scale.
      auto finite = to_finite(f[row.index]);
      if (!finite || finite->size() > 6) continue;
      auto ln = materialize_double_tree(*finite);
      suite.check(bf_is_complete(ln.lattice) && bf_is_algebraic(ln.lattice), "L_n not complete/algebraic: " + ctx);
      auto tna = materialize_tna(*finite);
      suite.check(bf_is_algebraic(tna.lattice), "T_n[a] not algebraic: " + ctx);
      auto sum = materialize_sum({*finite});
      auto compact = bf_compact_elements(sum.lattice);
      suite.check(std::find(compact.begin(), compact.end(), designated_index(0)) != compact.end(),
                  "a_0 not compact: " + ctx);
    }
  }
  return suite.take();
}

SuiteResult congruence_suite(Rng& rng, const VerifyOptions& opt, const Ops& ops) {
  Suite suite("congruence lattices");
  for (std::size_t i = 0; i < opt.samples && !suite.failed(); ++i) {
    const auto alg = random_algebra(rng, 4, 2, 2);
    const auto ctx = "algebra " + io::to_json(alg).dump();
    const auto n = alg.carrier_size();
    const auto filtered = congruences_by_filter(alg);
    suite.check(filtered == congruences_by_principal_closure(alg), "Con methods disagree on " + ctx);
    suite.check(is_complete_sublattice(filtered, n).ok, "Con is not a complete sublattice: " + ctx);
    for (Element a = 0; a < n; ++a) {
      for (Element b = a + 1; b < n; ++b) {
        auto least = EqRelation::all_pairs(n);
        for (const auto& c : filtered)
          if (c.related(a, b)) least = eq_meet(least, c);
        suite.check(ops.principal(alg, a, b) == least,
                    "principal congruence of (" + std::to_string(a) + "," + std::to_string(b) + ") wrong: " + ctx);
      }
    }
    const auto con = refinement_lattice(filtered);
    for (const auto& e : con.elements) {
      auto gens = finitely_generated_check(con, alg, e);
      auto joined = EqRelation::identity(n);
      for (auto [a, b] : gens) joined = ops.eq_join(joined, ops.principal(alg, a, b));
      suite.check(joined == e, "generators do not join to " + e.to_string() + ": " + ctx);
    }
  }
  return suite.take();
}

SuiteResult partition_suite(const VerifyOptions&, const Ops& ops) {
  Suite suite("partition lattice");
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
  for (std::size_t n = 1; n <= 5; ++n)
    suite.check(full_eq_lattice(n).elements.size() == bell[n], "Eq(" + std::to_string(n) + ") has wrong size");
  for (std::size_t n = 1; n <= 4 && !suite.failed(); ++n) {
    const auto parts = all_partitions(n);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        const auto j = ops.eq_join(a, b);
        bool ok = a.refines(j) && b.refines(j);
        for (const auto& c : parts)
          if (a.refines(c) && b.refines(c)) ok = ok && j.refines(c);
        suite.check(ok, "eq_join(" + a.to_string() + ", " + b.to_string() + ") = " + j.to_string() +
                            " is not the least upper bound");
      }
    }
  }
  return suite.take();
}

constexpr std::pair<std::string_view, Mutation> kMutations[] = {
    {"none", Mutation::kNone},         {"dt_leq", Mutation::kDtLeq},     {"dt_meet", Mutation::kDtMeet},
    {"dt_join", Mutation::kDtJoin},     {"sum_meet", Mutation::kSumMeet}, {"sum_join", Mutation::kSumJoin},
    {"tna_meet", Mutation::kTnaMeet},   {"tna_join", Mutation::kTnaJoin}, {"eq_join", Mutation::kEqJoin},
    {"principal_congruence", Mutation::kPrincipal},
};

}  // namespace

std::optional<Mutation> mutation_from_string(std::string_view name) {
  for (auto [n, m] : kMutations)
    if (n == name) return m;
  return std::nullopt;
}

std::vector<std::string> mutation_names() {
  std::vector<std::string> out;
  for (auto [n, m] : kMutations) out.emplace_back(n);
  return out;
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  if (options.samples == 0) {
    report.vacuous = true;
    return report;
  }
  Rng rng(options.seed);
  const Ops ops{options.mutation};
  report.suites.push_back(double_tree_suite(rng, options, ops));
  report.suites.push_back(sum_suite(rng, options, ops));
  report.suites.push_back(tna_suite(rng, options, ops));
  report.suites.push_back(verdict_suite(rng, options));
  report.suites.push_back(congruence_suite(rng, options, ops));
  report.suites.push_back(partition_suite(options, ops));
  return report;
}

}  // namespace conlat
