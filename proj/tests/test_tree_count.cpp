#include <gtest/gtest.h>

#include "deqsort/relativistic.hpp"
#include "deqsort/tree_count.hpp"

using namespace deqsort;

static std::vector<std::uint64_t> as_u64(const CountTable& t) {
  std::vector<std::uint64_t> out;
  for (const Count& c : t.counts) out.push_back(c.to_u64());
  return out;
}

TEST(TreeCount, SmallTables) {
  EXPECT_EQ(as_u64(count_by_tree(SortClass::Deque, 5)), (std::vector<std::uint64_t>{1, 2, 6, 24, 116}));
  EXPECT_EQ(as_u64(count_by_tree(SortClass::ParallelStacks, 5)), (std::vector<std::uint64_t>{1, 2, 6, 23, 103}));
  EXPECT_EQ(as_u64(count_by_tree(SortClass::SingleStack, 5)), (std::vector<std::uint64_t>{1, 2, 5, 14, 42}));
  EXPECT_THROW(count_by_tree(SortClass::Deque, 0), std::invalid_argument);
}

TEST(TreeCount, CatalanNumbers) {
  EXPECT_EQ(as_u64(count_by_tree(SortClass::SingleStack, 10)),
            (std::vector<std::uint64_t>{1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796}));
}

// Every child of a sortable node is tested, and nothing else.
TEST(TreeCount, VisitedNodesMatchFormula) {
  for (SortClass cls : {SortClass::Deque, SortClass::ParallelStacks, SortClass::SingleStack}) {
    const CountTable t = count_by_tree(cls, 9);
    std::uint64_t expected = 0;
    for (int i = 1; i <= 9; ++i) expected += static_cast<std::uint64_t>(i) * (i == 1 ? 1 : t.at(i - 1).to_u64());
    EXPECT_EQ(t.visited, expected) << to_string(cls);
  }
}

TEST(TreeCount, AgreesWithOracleAndDp) {
  RelativisticCounter dp;
  for (SortClass cls : {SortClass::Deque, SortClass::ParallelStacks}) {
    const CountTable tree = count_by_tree(cls, 10);
    const CountTable oracle = count_by_oracle(cls, 7);
    for (int n = 1; n <= 10; ++n) {
      EXPECT_EQ(tree.at(n), dp.count_sortable(cls, n)) << to_string(cls) << ' ' << n;
      if (n <= 7) { EXPECT_EQ(tree.at(n), oracle.at(n)) << to_string(cls) << ' ' << n; }
    }
  }
}

TEST(TreeCount, Supermultiplicative) {
  for (SortClass cls : {SortClass::Deque, SortClass::ParallelStacks, SortClass::SingleStack})
    EXPECT_TRUE(count_by_tree(cls, 10).supermultiplicative()) << to_string(cls);
  CountTable fake;
  fake.counts = {Count(1), Count(2), Count(3)};  // a(3) = 3 >= a(1) a(2) = 2
  EXPECT_TRUE(fake.supermultiplicative());
  fake.counts = {Count(2), Count(3)};  // a(2) = 3 < a(1)^2 = 4
  EXPECT_FALSE(fake.supermultiplicative());
}
