#include <gtest/gtest.h>

#include <set>

#include "deqsort/permutation.hpp"
#include "deqsort/switchyard.hpp"

using namespace deqsort;

TEST(Permutation, ParsesSpacesAndCommas) {
  EXPECT_EQ(parse_permutation("2 5 4 1 6 3"), (Permutation{2, 5, 4, 1, 6, 3}));
  EXPECT_EQ(parse_permutation("2,5, 4,1\t6 3"), (Permutation{2, 5, 4, 1, 6, 3}));
  EXPECT_EQ(parse_permutation("").size(), 0);
}

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(parse_permutation("1 1 2"), NotAPermutation);
  EXPECT_THROW(parse_permutation("0 1"), NotAPermutation);
  EXPECT_THROW(parse_permutation("1 4"), NotAPermutation);
  EXPECT_THROW(parse_permutation("1 x 2"), ParseError);
  EXPECT_THROW(parse_permutation("1 2-"), ParseError);
}

TEST(Permutation, IdentityAndPrinting) {
  EXPECT_EQ(Permutation::identity(4), (Permutation{1, 2, 3, 4}));
  EXPECT_EQ((Permutation{3, 1, 2}).to_string(), "3 1 2");
}

TEST(Reduce, OrderIsomorphicImage) {
  std::vector<int> v{40, 10, 30};
  EXPECT_EQ(reduce(v), (Permutation{3, 1, 2}));
  std::vector<int> dup{4, 4};
  EXPECT_THROW(reduce(dup), DuplicateValue);
}

TEST(Contains, SmallCases) {
  EXPECT_TRUE(contains(Permutation{2, 5, 4, 1, 6, 3}, Permutation{2, 3, 1}));
  EXPECT_FALSE(contains(Permutation{1, 2, 3, 4}, Permutation{2, 1}));
  EXPECT_TRUE(contains(Permutation{1, 2}, Permutation{}));
  EXPECT_FALSE(contains(Permutation{1}, Permutation{1, 2}));
  EXPECT_TRUE(contains(Permutation{5, 2, 3, 4, 1}, Permutation{5, 2, 3, 4, 1}));
}

// Containment by checking every subsequence.
static bool contains_by_subsets(const Permutation& pi, const Permutation& sigma) {
  const int n = pi.size(), k = sigma.size();
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> sub;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1U) sub.push_back(pi[static_cast<std::size_t>(i)]);
    if (k == 0 || reduce(sub) == sigma) return true;
  }
  return false;
}

TEST(Contains, AgreesWithSubsetEnumeration) {
  const std::vector<Permutation> patterns{{2, 3, 1}, {1, 3, 2}, {2, 1, 4, 3}, {3, 1, 4, 2}};
  for (int n = 1; n <= 6; ++n)
    for_each_permutation(n, [&](const Permutation& p) {
      for (const auto& s : patterns) ASSERT_EQ(contains(p, s), contains_by_subsets(p, s)) << p << s;
    });
}

TEST(Basis, KnownPatterns) {
  const auto pstacks = basis_patterns(SortClass::ParallelStacks, 8);
  ASSERT_EQ(pstacks.size(), 3u);
  EXPECT_EQ(pstacks[0], (Permutation{2, 3, 4, 1}));
  EXPECT_EQ(pstacks[1], (Permutation{5, 2, 7, 4, 1, 6, 3}));
  EXPECT_EQ(pstacks[2], (Permutation{2, 7, 4, 1, 6, 3, 8, 5}));

  const auto deque = basis_patterns(SortClass::Deque, 5);
  const std::set<Permutation> got(deque.begin(), deque.end());
  const std::set<Permutation> want{{5, 2, 3, 4, 1}, {2, 5, 3, 4, 1}, {4, 2, 3, 5, 1}, {2, 4, 3, 5, 1}};
  EXPECT_EQ(got, want);

  EXPECT_EQ(basis_patterns(SortClass::SingleStack, 8), (std::vector<Permutation>{Permutation{2, 3, 1}}));
  EXPECT_TRUE(basis_patterns(SortClass::Deque, 4).empty());
}

// Minimal non-sortable permutations per the brute-force oracle: not sortable,
// but every one-point deletion is.
static std::set<Permutation> minimal_unsortable(SortClass cls, int n) {
  std::set<Permutation> out;
  for_each_permutation(n, [&](const Permutation& p) {
    if (oracle_sortable(cls, p)) return;
    for (int drop = 0; drop < n; ++drop) {
      std::vector<int> v;
      for (int i = 0; i < n; ++i)
        if (i != drop) v.push_back(p[static_cast<std::size_t>(i)]);
      if (!oracle_sortable(cls, reduce(v))) return;
    }
    out.insert(p);
  });
  return out;
}

TEST(Basis, MatchesMinimalUnsortablePermutations) {
  for (SortClass cls : {SortClass::Deque, SortClass::ParallelStacks}) {
    const auto basis = basis_patterns(cls, 8);
    for (int n = 1; n <= 8; ++n) {
      std::set<Permutation> want = minimal_unsortable(cls, n);
      std::set<Permutation> got;
      for (const auto& b : basis)
        if (b.size() == n) got.insert(b);
      EXPECT_EQ(got, want) << to_string(cls) << " n=" << n;
    }
  }
}

TEST(Tree, ChildrenInsertNewMaximum) {
  const auto kids = tree_children(Permutation{2, 1});
  ASSERT_EQ(kids.size(), 3u);
  EXPECT_EQ(kids[0], (Permutation{3, 2, 1}));
  EXPECT_EQ(kids[1], (Permutation{2, 3, 1}));
  EXPECT_EQ(kids[2], (Permutation{2, 1, 3}));
  EXPECT_EQ(tree_children(Permutation{}).size(), 1u);
}

TEST(Tree, EveryPermutationHasOneParent) {
  std::set<Permutation> seen;
  std::vector<Permutation> level{Permutation{}};
  for (int n = 1; n <= 6; ++n) {
    std::vector<Permutation> next;
    for (const auto& p : level)
      for (auto& c : tree_children(p)) {
        EXPECT_TRUE(seen.insert(c).second);
        next.push_back(std::move(c));
      }
    std::size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= static_cast<std::size_t>(i);
    EXPECT_EQ(next.size(), fact);
    level = std::move(next);
  }
}
