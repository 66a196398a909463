#include "conlat/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace conlat::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t as_index(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

const json& as_array(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  return j;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void flatten_table(const json& j, std::size_t depth, std::size_t n, std::vector<Element>& out) {
  if (depth == 0) {
    out.push_back(as_index(j, "table entry"));
    return;
  }
  as_array(j, "operation table");
  if (j.size() != n) throw InputError("operation table row has " + std::to_string(j.size()) + " entries, expected " +
                                      std::to_string(n));
  for (const auto& row : j) flatten_table(row, depth - 1, n, out);
}

json nest_table(const std::vector<Element>& table, std::size_t n, std::size_t arity, std::size_t& pos) {
  if (arity == 1) {
    json row = json::array();
    for (std::size_t i = 0; i < n; ++i) row.push_back(table[pos++]);
    return row;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) rows.push_back(nest_table(table, n, arity - 1, pos));
  return rows;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

FinitePoset poset_from_json(const json& j) {
  const auto n = as_index(field(j, "size"), "size");
  std::vector<ElementPair> pairs;
  for (const auto& p : as_array(field(j, "leq"), "leq")) {
    if (!p.is_array() || p.size() != 2) throw InputError("leq entries must be [i, j] pairs");
    pairs.emplace_back(as_index(p[0], "leq element"), as_index(p[1], "leq element"));
  }
  return FinitePoset::from_pairs(n, pairs);
}

json to_json(const FinitePoset& p) {
  json leq = json::array();
  for (auto [a, b] : p.relation().pairs()) leq.push_back({a, b});
  return {{"size", p.size()}, {"leq", leq}};
}

EqRelation eq_from_json(const json& j) {
  const auto n = as_index(field(j, "n"), "n");
  std::vector<Block> blocks;
  for (const auto& b : as_array(field(j, "blocks"), "blocks")) {
    Block block;
    for (const auto& x : as_array(b, "block")) block.push_back(as_index(x, "block element"));
    blocks.push_back(std::move(block));
  }
  return EqRelation::from_blocks(n, blocks);
}

json to_json(const EqRelation& e) { return {{"n", e.carrier_size()}, {"blocks", e.blocks()}}; }

FiniteAlgebra algebra_from_json(const json& j) {
  const auto n = as_index(field(j, "n"), "n");
  std::vector<Operation> ops;
  if (j.contains("ops")) {
    for (const auto& o : as_array(j.at("ops"), "ops")) {
      Operation op;
      op.arity = as_index(field(o, "arity"), "arity");
      if (op.arity == 0) throw InputError("arity must be at least 1 (write constants as constant unary maps)");
      flatten_table(field(o, "table"), op.arity, n, op.table);
      ops.push_back(std::move(op));
    }
  }
  return FiniteAlgebra(n, std::move(ops));
}

json to_json(const FiniteAlgebra& a) {
  json ops = json::array();
  for (const auto& op : a.operations()) {
    std::size_t pos = 0;
    ops.push_back({{"arity", op.arity}, {"table", nest_table(op.table, a.carrier_size(), op.arity, pos)}});
  }
  return {{"n", a.carrier_size()}, {"ops", ops}};
}

RegularTree tree_from_json(const json& j) {
  const auto bound_value = as_index(field(j, "bound"), "bound");
  const auto bound = static_cast<Label>(bound_value);
  if (j.contains("nodes")) {
    std::set<Word> nodes;
    for (const auto& s : as_array(j.at("nodes"), "nodes")) {
      if (!s.is_string()) throw InputError("tree nodes must be strings");
      nodes.insert(parse_word(s.get<std::string>()));
    }
    return RegularTree::from_finite(FiniteTree(bound, std::move(nodes)));
  }
  if (!j.contains("edges")) throw InputError("tree needs either \"nodes\" or \"edges\"");

  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  auto state = [&](const json& s) {
    if (!s.is_string()) throw InputError("state names must be strings");
    auto name = s.get<std::string>();
    auto [it, inserted] = index.try_emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };
  const auto root = state(field(j, "root"));
  std::vector<RegularTree::Edge> edges;
  for (const auto& e : as_array(j.at("edges"), "edges")) {
    if (!e.is_array() || e.size() != 3) throw InputError("edges must be [from, label, to] triples");
    const auto from = state(e[0]);
    const auto label = static_cast<Label>(as_index(e[1], "edge label"));
    const auto to = state(e[2]);
    edges.push_back({from, label, to});
  }
  if (j.contains("states"))
    for (const auto& s : as_array(j.at("states"), "states")) state(s);
  return RegularTree(bound, std::move(names), root, std::move(edges));
}

json to_json(const FiniteTree& t) {
  json nodes = json::array();
  for (const auto& w : t.nodes()) nodes.push_back(format_word(w));
  return {{"bound", t.bound()}, {"nodes", nodes}};
}

json to_json(const RegularTree& t) {
  json edges = json::array();
  const auto& names = t.state_names();
  for (const auto& e : t.edges()) edges.push_back({names[e.from], e.label, names[e.to]});
  return {{"bound", t.bound()}, {"root", names[t.root()]}, {"states", names}, {"edges", edges}};
}

std::string to_string(Construction c) {
  switch (c) {
    case Construction::kDoubleTree:
      return "Ln";
    case Construction::kSum:
      return "SumL";
    case Construction::kTreePlusA:
      return "TnA";
    case Construction::kChainA:
      return "ChainA";
  }
  return "?";
}

std::optional<Construction> construction_from_string(std::string_view s) {
  if (s == "Ln") return Construction::kDoubleTree;
  if (s == "SumL") return Construction::kSum;
  if (s == "TnA") return Construction::kTreePlusA;
  if (s == "ChainA") return Construction::kChainA;
  return std::nullopt;
}

Descriptor descriptor_from_json(const json& j) {
  const auto& c = field(j, "construction");
  if (!c.is_string()) throw InputError("construction must be a string");
  auto kind = construction_from_string(c.get<std::string>());
  if (!kind) throw InputError("unknown construction \"" + c.get<std::string>() + "\"");
  Descriptor d;
  d.construction = *kind;
  if (j.contains("trees"))
    for (const auto& t : as_array(j.at("trees"), "trees")) d.trees.push_back(tree_from_json(t));
  if (d.construction != Construction::kChainA && d.trees.empty())
    throw InputError(to_string(d.construction) + " needs at least one tree");
  if (j.contains("index")) {
    d.index = as_index(j.at("index"), "index");
    if (*d.index >= d.trees.size()) throw InputError("index " + std::to_string(*d.index) + " has no tree");
  }
  return d;
}

json to_json(const Descriptor& d) {
  json trees = json::array();
  for (const auto& t : d.trees) trees.push_back(to_json(t));
  json j{{"construction", to_string(d.construction)}, {"trees", trees}};
  if (d.index) j["index"] = *d.index;
  return j;
}

json lattice_to_json(const FiniteLattice& l, const std::vector<std::string>& labels) {
  const auto n = l.size();
  json meet = json::array();
  json join = json::array();
  for (Element a = 0; a < n; ++a) {
    json mrow = json::array();
    json jrow = json::array();
    for (Element b = 0; b < n; ++b) {
      mrow.push_back(l.meet(a, b));
      jrow.push_back(l.join(a, b));
    }
    meet.push_back(std::move(mrow));
    join.push_back(std::move(jrow));
  }
  auto j = to_json(l.poset());
  j["elements"] = labels;
  j["meet"] = std::move(meet);
  j["join"] = std::move(join);
  if (auto b = l.bottom()) j["bottom"] = *b;
  if (auto t = l.top()) j["top"] = *t;
  return j;
}

std::string to_dot(const FinitePoset& p, const std::vector<std::string>& labels, std::string_view name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  os << "  rankdir=BT;\n";
  for (Element i = 0; i < p.size(); ++i) {
    os << "  " << i << " [label=\"" << i;
    if (i < labels.size()) os << ": " << dot_escape(labels[i]);
    os << "\"];\n";
  }
  for (auto [x, y] : hasse(p)) os << "  " << x << " -> " << y << ";\n";
  os << "}\n";
  return os.str();
}

json to_json(const PathWitness& w) { return {{"stem", format_word(w.stem)}, {"loop", format_word(w.loop)}}; }

}  // namespace conlat::io
