#include "conlat/tree.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace conlat {

std::string format_word(const Word& w) {
  std::string out;
  for (auto l : w) {
    if (l < 10)
      out.push_back(static_cast<char>('0' + l));
    else
      out += "[" + std::to_string(l) + "]";
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      w.push_back(static_cast<Label>(c - '0'));
      ++i;
    } else if (c == '[') {
      auto close = text.find(']', i);
      if (close == std::string_view::npos) throw InputError("unterminated '[' in word \"" + std::string(text) + "\"");
      Label value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + close, value);
      if (ec != std::errc{} || ptr != text.data() + close || close == i + 1)
        throw InputError("bad label in word \"" + std::string(text) + "\"");
      w.push_back(value);
      i = close + 1;
    } else {
      throw InputError("unexpected character in word \"" + std::string(text) + "\"");
    }
  }
  return w;
}

bool is_prefix(const Word& prefix, const Word& w) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

bool comparable(const Word& a, const Word& b) { return is_prefix(a, b) || is_prefix(b, a); }

Word longest_common_prefix(const Word& a, const Word& b) {
  auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  return Word(a.begin(), ia);
}

FiniteTree::FiniteTree(Label bound, std::set<Word> nodes) : bound_(bound), nodes_(std::move(nodes)) {
  if (!nodes_.contains(Word{})) throw InputError("tree does not contain the empty word");
  for (const auto& w : nodes_) {
    for (auto l : w)
      if (l >= bound_)
        throw InputError("label " + std::to_string(l) + " in \"" + format_word(w) + "\" is not below bound " +
                         std::to_string(bound_));
    if (!w.empty() && !nodes_.contains(Word(w.begin(), w.end() - 1)))
      throw InputError("tree is not prefix-closed: parent of \"" + format_word(w) + "\" missing");
  }
}

FiniteTree FiniteTree::root_only(Label bound) { return FiniteTree(bound, {Word{}}); }

std::size_t FiniteTree::height() const {
  std::size_t h = 0;
  for (const auto& w : nodes_) h = std::max(h, w.size());
  return h;
}

std::vector<Label> FiniteTree::children(const Word& w) const {
  std::vector<Label> out;
  if (!member(w)) return out;
  auto child = w;
  child.push_back(0);
  for (Label l = 0; l < bound_; ++l) {
    child.back() = l;
    if (member(child)) out.push_back(l);
  }
  return out;
}

Word PathWitness::unroll(std::size_t k) const {
  Word w = stem;
  for (std::size_t i = 0; i < k; ++i) w.insert(w.end(), loop.begin(), loop.end());
  return w;
}

RegularTree::RegularTree(Label bound, std::vector<std::string> state_names, State root, std::vector<Edge> edges)
    : bound_(bound), names_(std::move(state_names)), root_(root), delta_(names_.size() * bound, kNone) {
  if (root_ >= names_.size()) throw InputError("root state out of range");
  for (const auto& e : edges) {
    if (e.from >= names_.size() || e.to >= names_.size()) throw InputError("edge mentions an unknown state");
    if (e.label >= bound_)
      throw InputError("edge label " + std::to_string(e.label) + " is not below bound " + std::to_string(bound_));
    auto& slot = delta_[e.from * bound_ + e.label];
    if (slot != kNone && slot != e.to)
      throw InputError("nondeterministic edges from state " + names_[e.from] + " on label " + std::to_string(e.label));
    slot = e.to;
  }
}

RegularTree RegularTree::from_finite(const FiniteTree& t) {
  std::vector<Word> order(t.nodes().begin(), t.nodes().end());
  std::vector<std::string> names;
  names.reserve(order.size());
  for (const auto& w : order) names.push_back("n" + format_word(w));
  auto index = [&](const Word& w) {
    return static_cast<State>(std::lower_bound(order.begin(), order.end(), w) - order.begin());
  };
  std::vector<Edge> edges;
  for (const auto& w : order) {
    if (w.empty()) continue;
    edges.push_back({index(Word(w.begin(), w.end() - 1)), w.back(), index(w)});
  }
  return RegularTree(t.bound(), std::move(names), index(Word{}), std::move(edges));
}

std::vector<RegularTree::Edge> RegularTree::edges() const {
  std::vector<Edge> out;
  for (State s = 0; s < names_.size(); ++s)
    for (Label l = 0; l < bound_; ++l)
      if (auto to = delta_[s * bound_ + l]; to != kNone) out.push_back({s, l, to});
  return out;
}

std::optional<RegularTree::State> RegularTree::step(State s, Label l) const {
  if (s >= names_.size() || l >= bound_) return std::nullopt;
  auto to = delta_[s * bound_ + l];
  if (to == kNone) return std::nullopt;
  return to;
}

std::optional<RegularTree::State> RegularTree::walk(const Word& w) const {
  std::optional<State> s = root_;
  for (auto l : w) {
    s = step(*s, l);
    if (!s) return std::nullopt;
  }
  return s;
}

std::vector<Label> RegularTree::children(const Word& w) const {
  std::vector<Label> out;
  if (auto s = walk(w))
    for (Label l = 0; l < bound_; ++l)
      if (step(*s, l)) out.push_back(l);
  return out;
}

std::vector<bool> RegularTree::reachable() const {
  std::vector<bool> seen(names_.size(), false);
  std::vector<State> stack{root_};
  seen[root_] = true;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (Label l = 0; l < bound_; ++l) {
      auto to = delta_[s * bound_ + l];
      if (to != kNone && !seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  return seen;
}

FiniteTree pad(const FiniteTree& t) {
  auto nodes = t.nodes();
  nodes.insert(Word{});
  for (Label l = 0; l < t.bound(); ++l) nodes.insert(Word{l});
  return FiniteTree(t.bound(), std::move(nodes));
}

RegularTree pad(const RegularTree& t) {
  std::vector<Label> missing;
  for (Label l = 0; l < t.bound(); ++l)
    if (!t.step(t.root(), l)) missing.push_back(l);
  if (missing.empty()) return t;

  auto names = t.state_names();
  auto fresh = [&](std::string name) {
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "_";
    names.push_back(name);
    return names.size() - 1;
  };
  auto edges = t.edges();
  // The padded root is a copy of the old one, so paths that come back to
  // the old root do not pick up the new children.
  const auto old_root = t.root();
  const auto root = fresh(names[old_root] + "_root");
  const auto leaf = fresh("pad");
  for (const auto& e : t.edges())
    if (e.from == old_root) edges.push_back({root, e.label, e.to});
  for (auto l : missing) edges.push_back({root, l, leaf});
  return RegularTree(t.bound(), std::move(names), root, std::move(edges));
}

std::optional<PathWitness> has_infinite_path(const RegularTree& t) {
  enum class Color { kWhite, kGray, kBlack };
  std::vector<Color> color(t.state_count(), Color::kWhite);
  // depth_of[s] is the stack depth of a gray state.
  std::vector<std::size_t> depth_of(t.state_count(), 0);

  struct Frame {
    RegularTree::State state;
    Label next;
  };
  std::vector<Frame> stack{{t.root(), 0}};
  Word labels;  // labels[i] leads from stack[i] to stack[i+1]
  color[t.root()] = Color::kGray;

  while (!stack.empty()) {
    auto& top = stack.back();
    if (top.next >= t.bound()) {
      color[top.state] = Color::kBlack;
      stack.pop_back();
      if (!labels.empty() && labels.size() >= stack.size()) labels.pop_back();
      continue;
    }
    const Label l = top.next++;
    auto to = t.step(top.state, l);
    if (!to) continue;
    if (color[*to] == Color::kGray) {
      const auto d = depth_of[*to];
      PathWitness w;
      w.stem.assign(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(d));
      w.loop.assign(labels.begin() + static_cast<std::ptrdiff_t>(d), labels.end());
      w.loop.push_back(l);
      return w;
    }
    if (color[*to] == Color::kWhite) {
      color[*to] = Color::kGray;
      depth_of[*to] = stack.size();
      labels.push_back(l);
      stack.push_back({*to, 0});
    }
  }
  return std::nullopt;
}

bool is_well_founded(const RegularTree& t) { return !has_infinite_path(t).has_value(); }

bool witness_holds(const RegularTree& t, const PathWitness& w, std::size_t max_k) {
  if (w.loop.empty()) return false;
  for (std::size_t k = 0; k <= max_k; ++k)
    if (!t.member(w.unroll(k))) return false;
  return true;
}

namespace {

std::set<Word> enumerate(const RegularTree& t, std::size_t depth, std::size_t max_nodes) {
  std::set<Word> nodes;
  std::deque<std::pair<Word, RegularTree::State>> queue{{Word{}, t.root()}};
  while (!queue.empty()) {
    auto [w, s] = std::move(queue.front());
    queue.pop_front();
    nodes.insert(w);
    if (nodes.size() > max_nodes) throw GuardError("tree enumeration exceeds " + std::to_string(max_nodes) + " nodes");
    if (w.size() == depth) continue;
    for (Label l = 0; l < t.bound(); ++l) {
      if (auto to = t.step(s, l)) {
        auto child = w;
        child.push_back(l);
        queue.emplace_back(std::move(child), *to);
      }
    }
  }
  return nodes;
}

}  // namespace

FiniteTree truncate(const RegularTree& t, std::size_t depth, std::size_t max_nodes) {
  return FiniteTree(t.bound(), enumerate(t, depth, max_nodes));
}

FiniteTree truncate(const FiniteTree& t, std::size_t depth) {
  std::set<Word> nodes;
  for (const auto& w : t.nodes())
    if (w.size() <= depth) nodes.insert(w);
  return FiniteTree(t.bound(), std::move(nodes));
}

std::optional<FiniteTree> to_finite(const RegularTree& t, std::size_t max_nodes) {
  if (!is_well_founded(t)) return std::nullopt;
  // Without a reachable cycle no member is longer than the state count.
  return truncate(t, t.state_count(), max_nodes);
}

}  // namespace conlat
