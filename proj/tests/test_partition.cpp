#include <algorithm>

#include "cbtau/errors.hpp"
#include "cbtau/partition.hpp"
#include "doctest.h"

using namespace cbtau;

namespace {
// Independent count: number of partitions of n with parts <= k.
long brute_count(int n, int k) {
  if (n == 0) return 1;
  long s = 0;
  for (int p = 1; p <= std::min(n, k); ++p) s += brute_count(n - p, p);
  return s;
}
}  // namespace

TEST_CASE("partition data of small diagrams") {
  auto d = partition_data(Partition{2, 1});
  CHECK(d.conjugate == Partition{2, 1});
  CHECK(d.hooks.at({1, 1}) == 3);
  CHECK(d.hooks.at({1, 2}) == 1);
  CHECK(d.hooks.at({2, 1}) == 1);
  CHECK(d.contents.at({2, 1}) == 1);
  CHECK(d.contents.at({1, 2}) == -1);

  CHECK(Partition{6, 4, 4, 3, 2, 1}.conjugate() == Partition{6, 5, 4, 3, 1, 1});

  auto e = partition_data(Partition{});
  CHECK(e.cells.empty());
  CHECK(e.hooks.empty());
  CHECK(e.conjugate.empty());
}

TEST_CASE("invalid partitions are rejected") {
  CHECK_THROWS_AS(Partition({1, 2}), UsageError);
  CHECK_THROWS_AS(Partition({2, 0}), UsageError);
}

TEST_CASE("enumeration order and counts") {
  CHECK(enumerate_partitions(0) == std::vector<Partition>{Partition{}});
  CHECK(enumerate_partitions(3) == std::vector<Partition>{{3}, {2, 1}, {1, 1, 1}});
  CHECK(enumerate_partitions(5).size() == 7);
  for (int n = 0; n <= 30; ++n) {
    long expected = brute_count(n, n);
    CHECK(partition_count(n) == expected);
    if (n <= 20) {
      auto ps = enumerate_partitions(n);
      CHECK(static_cast<long>(ps.size()) == expected);
      CHECK(std::is_sorted(ps.rbegin(), ps.rend()));
    }
  }
}

TEST_CASE("hooks and cells") {
  for (int n = 0; n <= 10; ++n) {
    for (const auto& lam : enumerate_partitions(n)) {
      auto d = partition_data(lam);
      CHECK(static_cast<int>(d.cells.size()) == lam.size());
      CHECK(d.conjugate.conjugate() == lam);
      std::vector<int> h1, h2;
      for (auto [c, h] : d.hooks) h1.push_back(h);
      for (auto [c, h] : partition_data(d.conjugate).hooks) h2.push_back(h);
      std::sort(h1.begin(), h1.end());
      std::sort(h2.begin(), h2.end());
      CHECK(h1 == h2);
      for (auto [c, h] : d.hooks) CHECK(h == lam.hook(c.i, c.j));
    }
  }
}

TEST_CASE("skew containment") {
  CHECK(skew_contains(Partition{2, 1}, Partition{1}));
  CHECK(skew_cells(Partition{2, 1}, Partition{1}) == std::vector<Cell>{{1, 2}, {2, 1}});
  CHECK_FALSE(skew_contains(Partition{1, 1}, Partition{2}));
  CHECK_THROWS_AS(skew_cells(Partition{1, 1}, Partition{2}), ContainmentError);
  CHECK(skew_cells(Partition{3, 2}, Partition{2, 2}) == std::vector<Cell>{{1, 3}});

  // contents of nu form a sub-multiset of contents of lambda
  for (int n = 0; n <= 7; ++n)
    for (const auto& lam : enumerate_partitions(n))
      for (int k = 0; k <= n; ++k)
        for (const auto& nu : subpartitions(lam, k)) {
          std::vector<int> a, b;
          for (auto c : lam.cells()) a.push_back(c.content());
          for (auto c : nu.cells()) b.push_back(c.content());
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          CHECK(std::includes(a.begin(), a.end(), b.begin(), b.end()));
        }
}
