#include <gtest/gtest.h>

#include <set>

#include "splearn/enumerate.hpp"
#include "support/fixtures.hpp"

using namespace splearn;

TEST(Enumerate, SmallCases) {
  Alphabet just_a({"a"});
  std::vector<Pomset> zero = enumerate_pomsets(just_a, 0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0], Pomset::empty());

  std::vector<Pomset> two = enumerate_pomsets(just_a, 2);
  std::vector<std::string> prints;
  for (const Pomset& u : two) prints.push_back(u.str());
  EXPECT_EQ(prints, (std::vector<std::string>{"1", "a", "a.a", "a|a"}));
}

TEST(Enumerate, TwoLetterAlphabetUpToTwoNodes) {
  std::vector<Pomset> all = enumerate_pomsets(Alphabet({"a", "b"}), 2);
  std::vector<std::string> prints;
  for (const Pomset& u : all) prints.push_back(u.str());
  EXPECT_EQ(prints, (std::vector<std::string>{"1", "a", "b", "a.a", "a.b", "a|a",
                                              "a|b", "b.a", "b.b", "b|b"}));
  EXPECT_EQ(all.size(), 10u);
}

TEST(Enumerate, NoDuplicatesAndOrdered) {
  std::vector<Pomset> all = enumerate_pomsets(Alphabet({"a", "b"}), 4);
  std::set<Pomset> unique(all.begin(), all.end());
  EXPECT_EQ(unique.size(), all.size());
  for (std::size_t i = 1; i < all.size(); ++i) {
    EXPECT_TRUE(all[i - 1] < all[i]);
  }
}

TEST(Enumerate, MatchesNaiveGeneratorUpToFiveNodes) {
  Alphabet alphabet({"a", "b"});
  std::set<Pomset> expected = fixtures::naive_all_pomsets(alphabet, 5);
  std::vector<Pomset> actual = enumerate_pomsets(alphabet, 5);
  std::set<Pomset> actual_set(actual.begin(), actual.end());
  EXPECT_EQ(actual_set, expected);
  EXPECT_EQ(actual.size(), expected.size());
}
