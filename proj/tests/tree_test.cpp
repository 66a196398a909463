#include "conlat/tree.hpp"

#include <random>

#include "conlat/random.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace conlat;

namespace {

Word w(std::string_view s) { return parse_word(s); }

FiniteTree tree(Label bound, std::initializer_list<std::string_view> nodes) {
  std::set<Word> set;
  for (auto n : nodes) set.insert(w(n));
  return FiniteTree(bound, set);
}

RegularTree self_loop() { return RegularTree(1, {"q"}, 0, {{0, 0, 0}}); }

// q0 -0-> q1 -0-> q2, no cycles
RegularTree chain3() { return RegularTree(1, {"q0", "q1", "q2"}, 0, {{0, 0, 1}, {1, 0, 2}}); }

}  // namespace

TEST(Word, FormatAndParse) {
  EXPECT_EQ("", format_word({}));
  EXPECT_EQ("01", format_word({0, 1}));
  EXPECT_EQ("0[12]3", format_word({0, 12, 3}));
  EXPECT_EQ((Word{0, 12, 3}), w("0[12]3"));
  EXPECT_THROW(w("0a"), InputError);
  EXPECT_THROW(w("[12"), InputError);
  EXPECT_THROW(w("[]"), InputError);
}

TEST(Word, PrefixHelpers) {
  EXPECT_TRUE(is_prefix(w("0"), w("01")));
  EXPECT_TRUE(is_prefix(w(""), w("01")));
  EXPECT_FALSE(is_prefix(w("1"), w("01")));
  EXPECT_TRUE(comparable(w("01"), w("0")));
  EXPECT_FALSE(comparable(w("00"), w("01")));
  EXPECT_EQ(w("0"), longest_common_prefix(w("00"), w("01")));
  EXPECT_EQ(w(""), longest_common_prefix(w("1"), w("01")));
}

TEST(FiniteTree, Validation) {
  EXPECT_NO_THROW(tree(2, {"", "0", "01"}));
  EXPECT_THROW(tree(2, {"0"}), InputError);
  EXPECT_THROW(tree(2, {"", "01"}), InputError);
  EXPECT_THROW(tree(2, {"", "2"}), InputError);
  auto t = tree(2, {"", "0", "1", "01"});
  EXPECT_EQ(2u, t.height());
  EXPECT_EQ((std::vector<Label>{0, 1}), t.children(w("")));
  EXPECT_EQ((std::vector<Label>{1}), t.children(w("0")));
}

TEST(RegularTree, Validation) {
  // two edges for one (state, label)
  EXPECT_THROW(RegularTree(2, {"a", "b"}, 0, {{0, 0, 1}, {0, 0, 0}}), InputError);
  EXPECT_THROW(RegularTree(2, {"a"}, 0, {{0, 2, 0}}), InputError);
  EXPECT_THROW(RegularTree(2, {"a"}, 1, {}), InputError);
  EXPECT_THROW(RegularTree(2, {"a"}, 0, {{0, 0, 3}}), InputError);
}

TEST(RegularTree, Membership) {
  auto t = self_loop();
  EXPECT_TRUE(t.member({}));
  Word zeros;
  for (int k = 0; k < 20; ++k) {
    EXPECT_EQ(std::vector<Label>{0}, t.children(zeros));
    zeros.push_back(0);
  }
  EXPECT_FALSE(chain3().member(w("000")));
  EXPECT_TRUE(chain3().member(w("00")));
}

TEST(RegularTree, MembersArePrefixClosed) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    auto t = random_regular_tree(rng, 6, 3, true);
    for (const auto& node : oracle::nodes_to_depth(t, 5)) {
      auto prefix = node;
      while (!prefix.empty()) {
        prefix.pop_back();
        ASSERT_TRUE(t.member(prefix));
      }
    }
  }
}

TEST(RegularTree, FromFiniteRoundTrip) {
  auto t = tree(3, {"", "0", "2", "20", "21"});
  auto r = RegularTree::from_finite(t);
  EXPECT_TRUE(is_well_founded(r));
  EXPECT_EQ(t, to_finite(r).value());
}

TEST(Pad, FiniteTree) {
  EXPECT_EQ(tree(3, {"", "0", "1", "2"}), pad(FiniteTree::root_only(3)));
  auto padded = tree(2, {"", "0", "1", "10"});
  EXPECT_EQ(padded, pad(padded));
  EXPECT_EQ(tree(2, {"", "0", "1", "00"}), pad(tree(2, {"", "0", "00"})));
}

TEST(Pad, RegularTree) {
  auto t = RegularTree(3, {"q"}, 0, {{0, 1, 0}});
  auto p = pad(t);
  EXPECT_EQ(3u, p.state_count());
  EXPECT_EQ((std::vector<Label>{0, 1, 2}), p.children({}));
  EXPECT_TRUE(p.children(w("0")).empty());
  EXPECT_EQ(std::vector<Label>{1}, p.children(w("1")));
  EXPECT_FALSE(is_well_founded(p));
  auto full = pad(p);
  EXPECT_EQ(p.state_count(), full.state_count());
}

TEST(Pad, PreservesWellFoundedness) {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 300; ++round) {
    auto t = random_regular_tree(rng, 8, 3, round % 2 == 0);
    auto p = pad(t);
    ASSERT_EQ(is_well_founded(t), is_well_founded(p));
    for (Label l = 0; l < t.bound(); ++l) ASSERT_TRUE(p.member({l}));
    // only level-1 nodes are added
    for (const auto& node : oracle::nodes_to_depth(p, 4))
      if (node.size() != 1) ASSERT_TRUE(t.member(node));
    for (const auto& node : oracle::nodes_to_depth(t, 4)) ASSERT_TRUE(p.member(node));
  }
}

TEST(InfinitePath, Examples) {
  auto witness = has_infinite_path(self_loop());
  ASSERT_TRUE(witness.has_value());
  EXPECT_EQ(Word{}, witness->stem);
  EXPECT_EQ(Word{0}, witness->loop);
  EXPECT_FALSE(has_infinite_path(chain3()).has_value());
  // state 1 loops but is not reachable from 0
  RegularTree unreachable(1, {"root", "loop"}, 0, {{1, 0, 1}});
  EXPECT_FALSE(has_infinite_path(unreachable).has_value());
  EXPECT_TRUE(is_well_founded(unreachable));
  EXPECT_TRUE(is_well_founded(tree(2, {"", "1"})));
}

TEST(InfinitePath, LassoAfterStem) {
  // 0 -1-> 1 -0-> 2 -1-> 1
  RegularTree t(2, {"a", "b", "c"}, 0, {{0, 1, 1}, {1, 0, 2}, {2, 1, 1}});
  auto witness = has_infinite_path(t);
  ASSERT_TRUE(witness.has_value());
  EXPECT_EQ(w("1"), witness->stem);
  EXPECT_EQ(w("01"), witness->loop);
  EXPECT_TRUE(witness_holds(t, *witness));
  EXPECT_EQ(w("1010101"), witness->unroll(3));
  EXPECT_FALSE(witness_holds(t, PathWitness{{}, w("1")}));
}

TEST(InfinitePath, AgreesWithPigeonholeOracle) {
  std::mt19937_64 rng(23);
  int cyclic = 0;
  for (int round = 0; round < 500; ++round) {
    auto t = random_regular_tree(rng, 8, 3, round % 3 != 0);
    auto witness = has_infinite_path(t);
    ASSERT_EQ(oracle::has_infinite_path(t), witness.has_value());
    ASSERT_EQ(!witness.has_value(), is_well_founded(t));
    if (witness) {
      ++cyclic;
      ASSERT_FALSE(witness->loop.empty());
      ASSERT_TRUE(witness_holds(t, *witness, 10));
    } else {
      // finite member set: truncation at the state count loses nothing
      auto f = to_finite(t);
      ASSERT_TRUE(f.has_value());
      ASSERT_EQ(oracle::nodes_to_depth(t, t.state_count() + 2), f->nodes());
    }
  }
  EXPECT_GT(cyclic, 100);
}

TEST(Truncate, Examples) {
  EXPECT_EQ(tree(1, {"", "0", "00"}), truncate(self_loop(), 2));
  EXPECT_EQ(FiniteTree::root_only(1), truncate(self_loop(), 0));
  auto t = tree(2, {"", "0", "01"});
  EXPECT_EQ(t, truncate(RegularTree::from_finite(t), 5));
  EXPECT_EQ(t, truncate(t, 2));
  EXPECT_EQ(tree(2, {"", "0"}), truncate(t, 1));
}

TEST(Truncate, NodeLimit) {
  RegularTree binary(2, {"q"}, 0, {{0, 0, 0}, {0, 1, 0}});
  EXPECT_THROW(truncate(binary, 20, 1000), GuardError);
  EXPECT_EQ(127u, truncate(binary, 6).size());
}

TEST(Truncate, MembershipBoundedByDepth) {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 200; ++round) {
    auto t = random_regular_tree(rng, 6, 3, true);
    const std::size_t d = rng() % 7;
    auto f = truncate(t, d);
    for (const auto& node : oracle::nodes_to_depth(t, 8)) ASSERT_EQ(node.size() <= d, f.member(node));
    for (const auto& node : f.nodes()) ASSERT_TRUE(t.member(node));
  }
}

TEST(ToFinite, CyclicHasNone) { EXPECT_FALSE(to_finite(self_loop()).has_value()); }

TEST(AllTrees, CountsMatchCatalanLikeEnumeration) {
  // trees over {0,1} by node count: 1, 2, 5, 14, 42 (binary plane trees)
  auto trees = all_trees(5, 2);
  std::size_t count[6] = {};
  for (const auto& t : trees) ++count[t.size()];
  EXPECT_EQ(1u, count[1]);
  EXPECT_EQ(2u, count[2]);
  EXPECT_EQ(5u, count[3]);
  EXPECT_EQ(14u, count[4]);
  EXPECT_EQ(42u, count[5]);
}
