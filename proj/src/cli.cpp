#include "conlat/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "conlat/algebra.hpp"
#include "conlat/constructions.hpp"
#include "conlat/io.hpp"
#include "conlat/verify.hpp"

namespace conlat::cli {

namespace {

using io::Construction;
using io::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string construction;
  std::string property;
  std::optional<std::size_t> depth;
  bool symbolic = false;
  std::uint64_t seed = 1;
  std::size_t sizes = 40;
  std::string dot_out;
  std::string json_out;
  std::string mutate;
};

// Reads a descriptor; --construction supplies or replaces its construction.
io::Descriptor read_descriptor(const Options& opt) {
  auto j = io::read_json_file(opt.input);
  if (!opt.construction.empty()) {
    if (!io::construction_from_string(opt.construction))
      throw UsageError("unknown construction \"" + opt.construction + "\" (expected Ln, SumL, TnA or ChainA)");
    if (j.is_array()) j = json{{"trees", j}};
    if (j.is_object()) j["construction"] = opt.construction;
  }
  return io::descriptor_from_json(j);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << content;
}

void emit_json(const Options& opt, const json& j, std::ostream& out) {
  if (opt.json_out.empty())
    out << j.dump(2) << '\n';
  else
    write_file(opt.json_out, j.dump(2) + "\n");
}

struct Built {
  FiniteLattice lattice;
  std::vector<std::string> labels;
};

template <class E>
Built built_from(Materialized<E> m) {
  auto labels = m.labels();
  return Built{std::move(m.lattice), std::move(labels)};
}

// Finite node set of a tree, truncated at depth when given. Throws when the
// tree is infinite and no depth was given.
FiniteTree finite_view(const io::Descriptor& d, std::size_t n, std::optional<std::size_t> depth) {
  if (depth) return truncate(d.trees[n], *depth);
  auto f = to_finite(d.trees[n]);
  if (!f)
    throw InputError("tree " + std::to_string(n) +
                     " has an infinite path; pass --symbolic for a symbolic handle or --depth to truncate");
  return *f;
}

Built materialize(const io::Descriptor& d, std::optional<std::size_t> depth) {
  const auto selected = d.index.value_or(0);
  switch (d.construction) {
    case Construction::kDoubleTree:
      return built_from(materialize_double_tree(finite_view(d, selected, depth)));
    case Construction::kTreePlusA:
      return built_from(materialize_tna(finite_view(d, selected, depth)));
    case Construction::kSum: {
      std::vector<FiniteTree> trees;
      for (std::size_t n = 0; n < d.trees.size(); ++n) trees.push_back(finite_view(d, n, depth));
      return built_from(materialize_sum(trees));
    }
    case Construction::kChainA:
      if (!depth) throw InputError("ChainA is infinite; pass --symbolic or --depth to truncate");
      return built_from(materialize_chain(*depth));
  }
  throw InputError("unknown construction");
}

int cmd_check_poset(const Options& opt, std::ostream& out) {
  const auto poset = io::poset_from_json(io::read_json_file(opt.input));
  out << "poset: " << poset.size() << " elements, " << hasse(poset).size() << " covering pairs\n";
  auto check = is_lattice(poset);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < poset.size(); ++i) labels.push_back(std::to_string(i));
  if (!check) {
    out << "lattice: no (pair " << check.witness->first << "," << check.witness->second
        << " lacks a join or a meet)\n";
  } else {
    FiniteLattice lattice(poset);
    out << "lattice: yes\n";
    if (auto b = lattice.bottom()) out << "bottom: " << *b << "\ntop: " << *lattice.top() << '\n';
  }
  if (poset.size() < 63 && (std::size_t{1} << poset.size()) <= kDefaultSubsetBound) {
    const bool complete = bf_is_complete(poset);
    out << "complete (brute force): " << (complete ? "yes" : "no") << '\n';
    if (check) out << "algebraic (brute force): " << (bf_is_algebraic(poset) ? "yes" : "no") << '\n';
  } else {
    out << "complete (brute force): skipped, carrier too large\n";
  }
  if (!opt.json_out.empty())
    write_file(opt.json_out, (check ? io::lattice_to_json(FiniteLattice(poset), labels) : io::to_json(poset)).dump(2));
  if (!opt.dot_out.empty()) write_file(opt.dot_out, io::to_dot(poset, labels, "poset"));
  return kOk;
}

int cmd_build(const Options& opt, std::ostream& out) {
  const auto d = read_descriptor(opt);
  if (opt.symbolic) {
    json wf = json::array();
    for (const auto& t : d.trees) wf.push_back(is_well_founded(t));
    emit_json(opt,
              {{"symbolic", true},
               {"construction", io::to_string(d.construction)},
               {"well_founded", wf},
               {"descriptor", io::to_json(d)}},
              out);
    return kOk;
  }
  const auto built = materialize(d, opt.depth);
  auto j = io::lattice_to_json(built.lattice, built.labels);
  j["construction"] = io::to_string(d.construction);
  if (opt.depth) j["truncated_depth"] = *opt.depth;
  emit_json(opt, j, out);
  if (!opt.dot_out.empty()) write_file(opt.dot_out, io::to_dot(built.lattice.poset(), built.labels, io::to_string(d.construction)));
  return kOk;
}

int cmd_decide(const Options& opt, std::ostream& out) {
  if (opt.property != "complete" && opt.property != "compact-a" && opt.property != "algebraic")
    throw UsageError("unknown property \"" + opt.property + "\" (expected complete, compact-a or algebraic)");
  const auto d = read_descriptor(opt);
  const auto& p = opt.property;
  const bool supported = (d.construction == Construction::kDoubleTree && p == "complete") ||
                         (d.construction == Construction::kTreePlusA && (p == "complete" || p == "algebraic")) ||
                         (d.construction == Construction::kSum && p == "compact-a") ||
                         (d.construction == Construction::kChainA && (p == "compact-a" || p == "algebraic"));
  if (!supported)
    throw UsageError("property " + p + " is not decided for construction " + io::to_string(d.construction));

  json report{{"construction", io::to_string(d.construction)}, {"property", p}};
  bool all_true = true;
  if (d.construction == Construction::kChainA) {
    const auto facts = chain_facts();
    const bool verdict = p == "compact-a" ? facts.a_compact : facts.chain_a_compactly_generated;
    all_true = verdict;
    out << "ChainA: " << p << " = " << (verdict ? "true" : "false") << '\n';
    if (!verdict)
      out << (p == "compact-a" ? "  a <= sup of the naturals (omega), but no finite set of naturals has sup above a\n"
                               : "  a is not the sup of its compact predecessors {0}\n");
    report["verdict"] = verdict;
  } else {
    json rows = json::array();
    std::vector<std::size_t> indices;
    if (d.index)
      indices.push_back(*d.index);
    else
      for (std::size_t n = 0; n < d.trees.size(); ++n) indices.push_back(n);
    for (auto n : indices) {
      const auto tree = pad(d.trees[n]);
      bool verdict = false;
      if (d.construction == Construction::kDoubleTree)
        verdict = dt_is_complete(tree);
      else if (d.construction == Construction::kSum)
        verdict = sum_is_compact_a(d.trees, n);
      else if (p == "complete")
        verdict = tna_is_complete(tree);
      else
        verdict = tna_is_algebraic(tree);
      all_true = all_true && verdict;
      json row{{"index", n}, {"verdict", verdict}};
      out << "tree " << n << ": " << p << " = " << (verdict ? "true" : "false") << '\n';
      if (d.construction == Construction::kSum) {
        row["element_id"] = designated_index(n);
        out << "  a_" << n << " has id " << designated_index(n) << '\n';
      }
      if (!verdict) {
        if (auto w = has_infinite_path(d.trees[n])) {
          out << "  infinite path: stem \"" << format_word(w->stem) << "\", loop \"" << format_word(w->loop) << "\"\n";
          row["witness"] = io::to_json(*w);
        }
      }
      rows.push_back(std::move(row));
    }
    report["rows"] = std::move(rows);
    report["verdict"] = all_true;
  }
  if (!opt.json_out.empty()) write_file(opt.json_out, report.dump(2));
  return all_true ? kOk : kVerdictFalse;
}

std::vector<std::string> congruence_labels(const EqLattice& con) {
  std::vector<std::string> labels;
  for (const auto& e : con.elements) labels.push_back(e.to_string());
  return labels;
}

int cmd_con(const Options& opt, std::ostream& out) {
  const auto alg = io::algebra_from_json(io::read_json_file(opt.input));
  const auto con = congruence_lattice(alg);
  out << "congruences: " << con.elements.size() << '\n';
  for (std::size_t i = 0; i < con.elements.size(); ++i) out << "  [" << i << "] " << con.elements[i].to_string() << '\n';
  out << "covers:";
  for (auto [x, y] : hasse(con.lattice.poset())) out << ' ' << x << "->" << y;
  out << '\n';
  const auto labels = congruence_labels(con);
  if (!opt.json_out.empty()) {
    auto j = io::lattice_to_json(con.lattice, labels);
    json cons = json::array();
    for (const auto& e : con.elements) cons.push_back(io::to_json(e));
    j["congruences"] = std::move(cons);
    write_file(opt.json_out, j.dump(2));
  }
  if (!opt.dot_out.empty()) write_file(opt.dot_out, io::to_dot(con.lattice.poset(), labels, "Con"));
  return kOk;
}

int cmd_compact(const Options& opt, std::ostream& out) {
  const auto alg = io::algebra_from_json(io::read_json_file(opt.input));
  const auto con = congruence_lattice(alg);
  const auto compact = compact_congruences(con);
  json rows = json::array();
  for (std::size_t i = 0; i < con.elements.size(); ++i) {
    const auto& e = con.elements[i];
    const auto gens = finitely_generated_check(con, alg, e);
    out << "[" << i << "] " << e.to_string() << " finitely generated by {";
    json pairs = json::array();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      out << (k ? "," : "") << '(' << gens[k].first << ',' << gens[k].second << ')';
      pairs.push_back({gens[k].first, gens[k].second});
    }
    const bool is_compact = std::find(compact.begin(), compact.end(), i) != compact.end();
    out << "} compact: " << (is_compact ? "yes" : "no") << '\n';
    rows.push_back({{"index", i}, {"congruence", io::to_json(e)}, {"generators", pairs}, {"compact", is_compact}});
  }
  json report{{"congruences", rows}, {"compact_count", compact.size()}};
  if (con.elements.size() <= 16) {
    const auto bf = bf_compact_elements(con.lattice);
    out << "brute-force compact elements: " << bf.size() << " of " << con.elements.size() << '\n';
    report["brute_force_compact_count"] = bf.size();
  }
  if (!opt.json_out.empty()) write_file(opt.json_out, report.dump(2));
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  VerifyOptions vo;
  vo.seed = opt.seed;
  vo.samples = opt.sizes;
  if (!opt.mutate.empty()) {
    auto m = mutation_from_string(opt.mutate);
    if (!m) throw UsageError("unknown mutation \"" + opt.mutate + "\"");
    vo.mutation = *m;
  }
  const auto report = run_verification(vo);
  if (report.vacuous) {
    err << "warning: --sizes 0 runs no cases; vacuous pass\n";
    out << "verify: vacuous pass\n";
    return kOk;
  }
  for (const auto& s : report.suites) {
    out << (s.passed ? "PASS " : "FAIL ") << s.name << " (" << s.cases << " checks)\n";
    if (!s.passed) out << "  counterexample: " << s.counterexample << '\n';
  }
  out << "verify: seed " << opt.seed << ", " << (report.passed() ? "all suites passed" : "FAILED") << '\n';
  return report.passed() ? kOk : kVerifyFailed;
}

int cmd_export(const Options& opt, std::ostream& out) {
  const auto j = io::read_json_file(opt.input);
  std::string dot;
  if (!opt.construction.empty() || (j.is_object() && j.contains("construction"))) {
    const auto d = read_descriptor(opt);
    const auto built = materialize(d, opt.depth);
    dot = io::to_dot(built.lattice.poset(), built.labels, io::to_string(d.construction));
  } else if (j.is_object() && j.contains("ops")) {
    const auto con = congruence_lattice(io::algebra_from_json(j));
    dot = io::to_dot(con.lattice.poset(), congruence_labels(con), "Con");
  } else if (j.is_object() && j.contains("leq")) {
    const auto poset = io::poset_from_json(j);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < poset.size(); ++i) labels.push_back(std::to_string(i));
    dot = io::to_dot(poset, labels, "poset");
  } else {
    throw InputError("cannot tell what to export: expected a descriptor, an algebra or a poset");
  }
  write_file(opt.dot_out, dot);
  out << "wrote " << opt.dot_out << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice and congruence workbench"};
  app.require_subcommand(1);
  Options opt;

  auto* check = app.add_subcommand("check-poset", "Validate a poset and report lattice properties");
  check->add_option("--input", opt.input, "Poset JSON")->required();
  check->add_option("--dot", opt.dot_out, "Write the Hasse diagram as DOT");
  check->add_option("--json", opt.json_out, "Write lattice JSON");

  auto* build = app.add_subcommand("build", "Materialize a construction");
  build->add_option("--input", opt.input, "Construction descriptor JSON")->required();
  build->add_option("--construction", opt.construction, "Ln | SumL | TnA | ChainA (overrides the descriptor)");
  build->add_flag("--symbolic", opt.symbolic, "Emit a symbolic handle instead of a finite lattice");
  build->add_option("--depth", opt.depth, "Truncate trees at this depth");
  build->add_option("--dot", opt.dot_out, "Write the Hasse diagram as DOT");
  build->add_option("--json", opt.json_out, "Write lattice JSON here instead of stdout");

  auto* decide = app.add_subcommand("decide", "Decide completeness, compactness of a_n, or algebraicity");
  decide->add_option("--input", opt.input, "Construction descriptor JSON")->required();
  decide->add_option("--construction", opt.construction, "Ln | SumL | TnA | ChainA (overrides the descriptor)");
  decide->add_option("--property", opt.property, "complete | compact-a | algebraic")->required();
  decide->add_option("--json", opt.json_out, "Write verdicts as JSON");

  auto* con = app.add_subcommand("con", "Congruence lattice of a finite algebra");
  con->add_option("--input", opt.input, "Algebra JSON")->required();
  con->add_option("--dot", opt.dot_out, "Write the Hasse diagram as DOT");
  con->add_option("--json", opt.json_out, "Write lattice JSON");

  auto* compact = app.add_subcommand("compact", "Minimal generating pairs of every congruence");
  compact->add_option("--input", opt.input, "Algebra JSON")->required();
  compact->add_option("--json", opt.json_out, "Write the report as JSON");

  auto* verify = app.add_subcommand("verify", "Run the randomized cross-check suites");
  verify->add_option("--seed", opt.seed, "Random seed");
  verify->add_option("--sizes", opt.sizes, "Random cases per suite (0 skips all)");
  verify->add_option("--mutate", opt.mutate, "Inject a fault (testing only)");

  auto* exp = app.add_subcommand("export", "Write a DOT Hasse diagram for a poset, descriptor or algebra");
  exp->add_option("--input", opt.input, "Input JSON")->required();
  exp->add_option("--construction", opt.construction, "Ln | SumL | TnA | ChainA (overrides the descriptor)");
  exp->add_option("--dot", opt.dot_out, "Output DOT path")->required();
  exp->add_option("--depth", opt.depth, "Truncate trees at this depth");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (check->parsed()) return cmd_check_poset(opt, out);
    if (build->parsed()) return cmd_build(opt, out);
    if (decide->parsed()) return cmd_decide(opt, out);
    if (con->parsed()) return cmd_con(opt, out);
    if (compact->parsed()) return cmd_compact(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    if (exp->parsed()) return cmd_export(opt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const GuardError& e) {
    err << "size guard: " << e.what() << '\n';
    return kInputError;
  } catch (const SearchExhausted& e) {
    err << "search exhausted: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsageError;
}

}  // namespace conlat::cli
