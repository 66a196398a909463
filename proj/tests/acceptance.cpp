// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "conlat/algebra.hpp"
#include "conlat/cli.hpp"
#include "conlat/constructions.hpp"
#include "conlat/io.hpp"
#include "conlat/random.hpp"
#include "conlat/verify.hpp"
#include "oracles.hpp"

using namespace conlat;

namespace {

// Thrown by check() with a description of the first failure.
struct Failure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

struct Outcome {
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

// The tree sweep shared by criteria 1-3: every tree over {0,1} with at most
// 7 nodes, then 200 random trees with at most 12 nodes.
const std::vector<FiniteTree>& sweep() {
  static const std::vector<FiniteTree> trees = [] {
    auto all = all_trees(7, 2);
    Rng rng(20240601);
    for (int i = 0; i < 200; ++i) all.push_back(random_finite_tree(rng, 12, 2));
    return all;
  }();
  return trees;
}

template <class E, class Leq, class Meet, class Join>
std::size_t compare_all_pairs(const Materialized<E>& m, const std::string& where, Leq leq, Meet meet, Join join) {
  const auto n = m.elements.size();
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) {
      const auto& x = m.elements[i];
      const auto& y = m.elements[j];
      const auto pair = where + " x=" + to_string(x) + " y=" + to_string(y);
      check(m.lattice.leq(i, j) == leq(x, y), "order differs: " + pair);
      check(m.elements[m.lattice.meet(i, j)] == meet(x, y), "meet differs: " + pair);
      check(m.elements[m.lattice.join(i, j)] == join(x, y), "join differs: " + pair);
    }
  }
  return n * n;
}

std::string describe(const FiniteTree& t) {
  std::string s = "{";
  for (const auto& w : t.nodes()) s += "\"" + format_word(w) + "\",";
  return s + "}";
}

Outcome closed_forms() {
  const auto& trees = sweep();
  std::size_t pairs = 0;
  for (std::size_t k = 0; k < trees.size(); ++k) {
    const auto& f = trees[k];
    const auto t = RegularTree::from_finite(f);
    pairs += compare_all_pairs(
        materialize_double_tree(f), "Ln over " + describe(f), [&](auto& x, auto& y) { return dt_leq(t, x, y); },
        [&](auto& x, auto& y) { return dt_meet(t, x, y); }, [&](auto& x, auto& y) { return dt_join(t, x, y); });
    pairs += compare_all_pairs(
        materialize_tna(f), "TnA over " + describe(f), [&](auto& x, auto& y) { return tna_leq(t, x, y); },
        [&](auto& x, auto& y) { return tna_meet(t, x, y); }, [&](auto& x, auto& y) { return tna_join(t, x, y); });
    // Sum over this tree and its neighbour in the sweep.
    const auto& g = trees[(k + 1) % trees.size()];
    const TreeFamily family{t, RegularTree::from_finite(g)};
    pairs += compare_all_pairs(
        materialize_sum({f, g}), "SumL over " + describe(f) + "," + describe(g),
        [&](auto& x, auto& y) { return sum_leq(family, x, y); },
        [&](auto& x, auto& y) { return sum_meet(family, x, y); },
        [&](auto& x, auto& y) { return sum_join(family, x, y); });
  }
  return {std::to_string(trees.size()) + " trees, " + std::to_string(pairs) + " element pairs"};
}

Outcome double_tree_formulas() {
  std::size_t incomparable = 0, comparability = 0;
  for (const auto& f : sweep()) {
    const auto t = RegularTree::from_finite(f);
    const auto m = materialize_double_tree(f);
    for (const auto& s : f.nodes()) {
      const auto si = *m.index_of({s, false});
      for (const auto& a : f.nodes()) {
        const auto ai = *m.index_of({a, false});
        const auto astar = *m.index_of({a, true});
        // alpha* is above sigma iff alpha and sigma are comparable
        check(m.lattice.leq(si, astar) == comparable(s, a),
              "comparability claim fails for " + format_word(s) + ", " + format_word(a) + "* in " + describe(f));
        ++comparability;
        if (comparable(s, a)) continue;
        ++incomparable;
        const auto lcp = longest_common_prefix(s, a);
        const DtElement meet{lcp, false}, join{lcp, true};
        check(dt_join(t, {s, false}, {a, false}) == join, "join is not (s^t)* in " + describe(f));
        check(dt_meet(t, {s, false}, {a, false}) == meet, "meet is not the common prefix in " + describe(f));
        check(m.elements[m.lattice.join(si, ai)] == join, "materialized join is not (s^t)* in " + describe(f));
        check(m.elements[m.lattice.meet(si, ai)] == meet, "materialized meet is not the common prefix");
      }
    }
  }
  return {std::to_string(incomparable) + " incomparable pairs, " + std::to_string(comparability) +
          " comparability checks"};
}

Outcome self_duality() {
  std::size_t pairs = 0;
  for (const auto& f : sweep()) {
    const auto m = materialize_double_tree(f);
    for (Element i = 0; i < m.elements.size(); ++i) {
      const auto& x = m.elements[i];
      check(dt_star(dt_star(x)) == x, "star is not an involution on " + to_string(x));
      const auto sx = *m.index_of(dt_star(x));
      for (Element j = 0; j < m.elements.size(); ++j) {
        const auto sy = *m.index_of(dt_star(m.elements[j]));
        check(m.lattice.leq(i, j) == m.lattice.leq(sy, sx),
              "star does not reverse the order on " + to_string(x) + ", " + to_string(m.elements[j]));
        ++pairs;
      }
    }
  }
  return {std::to_string(pairs) + " pairs"};
}

Outcome reduction_agreement() {
  Rng rng(77);
  std::size_t rows = 0, false_rows = 0;
  for (int family = 0; family < 100; ++family) {
    TreeFamily f;
    const std::size_t k = 1 + rng() % 6;
    for (std::size_t i = 0; i < k; ++i) f.push_back(random_regular_tree(rng, 8, 3, rng() % 2 == 0));
    for (const auto& row : reduction_verdicts(f)) {
      ++rows;
      const auto where = "family " + std::to_string(family) + " tree " + std::to_string(row.index);
      check(row.consistent(), "verdicts disagree in " + where);
      check(row.well_founded == is_well_founded(f[row.index]), "row differs from is_well_founded in " + where);
      check(row.well_founded == !oracle::has_infinite_path(f[row.index]), "pigeonhole oracle disagrees in " + where);
      if (!row.well_founded) {
        ++false_rows;
        check(row.witness.has_value(), "false row without witness in " + where);
        check(witness_holds(f[row.index], *row.witness, 10), "witness does not validate in " + where);
      }
    }
  }
  return {std::to_string(rows) + " rows, " + std::to_string(false_rows) + " with witnesses"};
}

// Criterion 5's algebras; criterion 6 reuses them.
const std::vector<FiniteAlgebra>& algebras() {
  static const std::vector<FiniteAlgebra> algs = [] {
    Rng rng(5150);
    std::vector<FiniteAlgebra> out;
    for (int i = 0; i < 500; ++i) out.push_back(random_algebra(rng, 4, 2, 2));
    return out;
  }();
  return algs;
}

std::string describe(const FiniteAlgebra& alg) { return io::to_json(alg).dump(); }

Outcome congruence_engine() {
  std::size_t congruences = 0;
  for (const auto& alg : algebras()) {
    const auto by_filter = congruences_by_filter(alg);
    check(by_filter == congruences_by_principal_closure(alg), "methods differ on " + describe(alg));
    check(is_complete_sublattice(by_filter, alg.carrier_size()).ok, "not a complete sublattice: " + describe(alg));
    const auto all = oracle::congruences(alg);
    check(std::set<EqRelation>(all.begin(), all.end()) == std::set<EqRelation>(by_filter.begin(), by_filter.end()),
          "congruence set differs from tuple oracle on " + describe(alg));
    for (Element a = 0; a < alg.carrier_size(); ++a)
      for (Element b = 0; b < alg.carrier_size(); ++b)
        check(principal_congruence(alg, a, b) == oracle::principal(all, a, b),
              "principal congruence of (" + std::to_string(a) + "," + std::to_string(b) + ") wrong on " +
                  describe(alg));
    congruences += by_filter.size();
  }
  return {std::to_string(algebras().size()) + " algebras, " + std::to_string(congruences) + " congruences"};
}

Outcome compact_iff_finitely_generated() {
  std::size_t checked = 0;
  for (const auto& alg : algebras()) {
    const auto con = congruence_lattice(alg);
    for (const auto& e : con.elements) {
      const auto gens = finitely_generated_check(con, alg, e);
      auto joined = EqRelation::identity(alg.carrier_size());
      for (auto [a, b] : gens) joined = eq_join(joined, principal_congruence(alg, a, b));
      check(joined == e, "generators do not join to " + e.to_string() + " on " + describe(alg));
      ++checked;
    }
    check(bf_compact_elements(con.lattice).size() == con.elements.size(),
          "brute force finds a non-compact congruence on " + describe(alg));
    check(compact_congruences(con).size() == con.elements.size(), "compact_congruences incomplete on " + describe(alg));
  }
  return {std::to_string(checked) + " congruences"};
}

Outcome partition_lattice() {
  const std::size_t bell[] = {1, 2, 5, 15, 52};
  for (std::size_t n = 1; n <= 5; ++n)
    check(full_eq_lattice(n).lattice.size() == bell[n - 1], "Bell number wrong for n=" + std::to_string(n));
  std::size_t triples = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = all_partitions(n);
    for (const auto& a : all) {
      for (const auto& b : all) {
        const auto j = eq_join(a, b);
        check(a.refines(j) && b.refines(j), "join is not an upper bound");
        for (const auto& c : all) {
          // c is an upper bound iff it contains every pair of a and of b
          bool upper = true;
          for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
              if ((a.related(x, y) || b.related(x, y)) && !c.related(x, y)) upper = false;
          if (upper)
            for (Element x = 0; x < n; ++x)
              for (Element y = 0; y < n; ++y)
                check(!j.related(x, y) || c.related(x, y),
                      "join " + j.to_string() + " not below upper bound " + c.to_string());
          ++triples;
        }
      }
    }
  }
  return {"Bell 1,2,5,15,52; " + std::to_string(triples) + " triples"};
}

Outcome symbolic_facts() {
  const auto f = chain_facts();
  check(f.omega_plus_one_complete, "omega+1 not complete");
  check(!f.a_compact, "a reported compact");
  check(!f.omega_compact, "omega reported compact");
  check(f.omega_plus_one_algebraic, "omega+1 not algebraic");
  check(!f.chain_a_compactly_generated, "L[a] reported compactly generated");
  check(!chain_is_compact(ChainElement::a()) && !chain_is_compact(ChainElement::omega()),
        "element-level compactness disagrees");
  check(chain_sup_of_compact_below(ChainElement::a()) != ChainElement::a(), "a is the sup of its compact elements");
  return {"6 facts"};
}

Outcome indexing() {
  for (std::size_t n = 0; n <= 1000; ++n) check(designated_index(n) == 2 * n, "designated_index wrong at " + std::to_string(n));
  // and the materialized numbering agrees on families of up to 30 trees
  Rng rng(4);
  for (std::size_t k = 1; k <= 30; ++k) {
    std::vector<FiniteTree> trees;
    for (std::size_t i = 0; i < k; ++i) trees.push_back(random_finite_tree(rng, 3, 2));
    const auto m = materialize_sum(trees);
    for (std::size_t n = 0; n < k; ++n)
      check(m.elements[designated_index(n)] == SumElement::designated(n),
            "a_" + std::to_string(n) + " not at id 2n in a family of " + std::to_string(k));
  }
  return {"n <= 1000, materialized families up to 30 trees"};
}

Outcome cli_contract() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / ("conlat_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream(dir / name) << content;
    return (dir / name).string();
  };
  const auto ln = write("ln.json", R"({"construction": "Ln", "trees": [{"bound": 2, "nodes": ["", "0", "1"]}]})");
  const auto loop = write("loop.json", R"({"construction": "Ln", "trees": [{"bound": 1, "root": "q", "edges": [["q", 0, "q"]]}]})");
  const auto sum = write("sum.json", R"({"construction": "SumL", "trees": [{"bound": 1, "nodes": [""]},
      {"bound": 2, "root": "r", "edges": [["r", 1, "r"]]}]})");
  const auto tna = write("tna.json", R"({"construction": "TnA", "trees": [{"bound": 1, "nodes": [""]}]})");
  const auto alg = write("alg.json", R"({"n": 3, "ops": [{"arity": 1, "table": [1, 2, 2]}]})");
  const auto poset = write("poset.json", R"({"size": 2, "leq": [[0, 1]]})");
  const auto bad_poset = write("bad.json", R"({"size": 3, "leq": [[0, 1], [1, 2]]})");
  const auto broken = write("broken.json", "{");
  const auto dot = (dir / "out.dot").string();

  struct Row {
    std::vector<std::string> args;
    int expected;
  };
  std::vector<Row> matrix{
      {{"build", "--input", ln}, 0},
      {{"build", "--input", tna, "--dot", dot}, 0},
      {{"build", "--input", loop}, 2},
      {{"build", "--input", loop, "--symbolic"}, 0},
      {{"build", "--input", broken}, 2},
      {{"build", "--input", (dir / "missing.json").string()}, 2},
      {{"decide", "--input", ln, "--property", "complete"}, 0},
      {{"decide", "--input", loop, "--property", "complete"}, 1},
      {{"decide", "--input", sum, "--property", "compact-a"}, 1},
      {{"decide", "--input", tna, "--property", "algebraic"}, 0},
      {{"decide", "--input", ln, "--property", "compact-a"}, 3},
      {{"decide", "--input", ln, "--property", "shiny"}, 3},
      {{"decide", "--input", ln}, 3},
      {{"con", "--input", alg}, 0},
      {{"con", "--input", ln}, 2},
      {{"compact", "--input", alg}, 0},
      {{"check-poset", "--input", poset}, 0},
      {{"check-poset", "--input", bad_poset}, 2},
      {{"export", "--input", alg, "--dot", dot}, 0},
      {{"verify", "--sizes", "3"}, 0},
      {{"verify", "--sizes", "0"}, 0},
      {{"verify", "--mutate", "bogus"}, 3},
      {{"no-such-command"}, 3},
      {{}, 3},
  };
  for (const auto& name : mutation_names()) {
    if (name == "none") continue;
    matrix.push_back({{"verify", "--mutate", name}, 4});
  }
  for (auto& row : matrix) {
    std::vector<std::string> args{"conlat"};
    args.insert(args.end(), row.args.begin(), row.args.end());
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    std::string line;
    for (const auto& a : row.args) line += " " + a;
    check(code == row.expected,
          "exit " + std::to_string(code) + " (expected " + std::to_string(row.expected) + ") for:" + line);
  }
  fs::remove_all(dir);
  return {std::to_string(matrix.size()) + " invocations"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "closed forms agree with materialized lattices", 60, closed_forms},
      {2, "double-tree join, meet and comparability formulas", 60, double_tree_formulas},
      {3, "double tree is self-dual under star", 60, self_duality},
      {4, "reduction verdicts agree with well-foundedness", 10, reduction_agreement},
      {5, "congruence engine cross-checks", 120, congruence_engine},
      {6, "compact iff finitely generated", 120, compact_iff_finitely_generated},
      {7, "partition lattice sizes and joins", 30, partition_lattice},
      {8, "omega+1 and chain-plus-a facts", 1, symbolic_facts},
      {9, "designated element indexing", 10, indexing},
      {10, "CLI exit-code contract and fault injection", 120, cli_contract},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run().detail;
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && seconds > c.budget_seconds) {
      ok = false;
      detail += "; over time budget of " + std::to_string(static_cast<int>(c.budget_seconds)) + " s";
    }
    if (!ok) ++failed;
    std::printf("%s criterion %d: %s (%.2f s) %s\n", ok ? "PASS" : "FAIL", c.number, c.name.c_str(), seconds,
                detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
