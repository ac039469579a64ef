#include "cbtau/partition.hpp"

#include <numeric>

#include "cbtau/errors.hpp"

namespace cbtau {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw UsageError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw UsageError("partition parts must be weakly decreasing");
  }
  size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::conjugate() const {
  std::vector<int> c(empty() ? 0 : parts_[0], 0);
  for (int p : parts_)
    for (int j = 0; j < p; ++j) ++c[j];
  return Partition(std::move(c));
}

int Partition::hook(int i, int j) const {
  int col = 0;
  for (int p : parts_)
    if (p >= j) ++col;
  return row(i) + col - i - j + 1;
}

std::vector<Cell> Partition::cells() const {
  std::vector<Cell> out;
  out.reserve(size_);
  for (int i = 1; i <= length(); ++i)
    for (int j = 1; j <= parts_[i - 1]; ++j) out.push_back({i, j});
  return out;
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + "]";
}

PartitionData partition_data(const Partition& lambda) {
  PartitionData d;
  d.conjugate = lambda.conjugate();
  d.cells = lambda.cells();
  for (const Cell& c : d.cells) {
    d.hooks[c] = lambda.row(c.i) + d.conjugate.row(c.j) - c.i - c.j + 1;
    d.contents[c] = c.content();
  }
  return d;
}

namespace {
void fill(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    fill(remaining - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw UsageError("enumerate_partitions needs n >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  fill(n, n, cur, out);
  return out;
}

std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k) {
    auto ps = enumerate_partitions(k);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

std::vector<std::pair<Partition, Partition>> partition_pairs(int total) {
  std::vector<std::pair<Partition, Partition>> out;
  for (int a = total; a >= 0; --a)
    for (const auto& l : enumerate_partitions(a))
      for (const auto& m : enumerate_partitions(total - a)) out.emplace_back(l, m);
  return out;
}

long partition_count(int n) {
  // Euler's pentagonal recurrence.
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    long s = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      long sign = (k % 2) ? 1 : -1;
      s += sign * p[m - g1];
      if (g2 <= m) s += sign * p[m - g2];
    }
    p[m] = s;
  }
  return p[n];
}

bool skew_contains(const Partition& lambda, const Partition& nu) {
  if (nu.length() > lambda.length()) return false;
  for (int i = 1; i <= nu.length(); ++i)
    if (nu.row(i) > lambda.row(i)) return false;
  return true;
}

std::vector<Cell> skew_cells(const Partition& lambda, const Partition& nu) {
  if (!skew_contains(lambda, nu))
    throw ContainmentError(nu.to_string() + " is not contained in " + lambda.to_string());
  std::vector<Cell> out;
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = nu.row(i) + 1; j <= lambda.row(i); ++j) out.push_back({i, j});
  return out;
}

std::vector<Partition> subpartitions(const Partition& lambda, int k) {
  std::vector<Partition> out;
  for (const auto& nu : enumerate_partitions(k))
    if (skew_contains(lambda, nu)) out.push_back(nu);
  return out;
}

}  // namespace cbtau
