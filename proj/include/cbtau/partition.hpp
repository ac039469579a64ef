#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cbtau {

struct Cell {
  int i;  // row, 1-based
  int j;  // column, 1-based
  int content() const { return i - j; }
  auto operator<=>(const Cell&) const = default;
};

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  // 1-based row length; 0 past the last row.
  int row(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }

  Partition conjugate() const;
  int hook(int i, int j) const;
  std::vector<Cell> cells() const;
  std::string to_string() const;

  // Lexicographic on parts; enumerate_partitions returns the reverse of this order.
  auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }
  bool operator==(const Partition& o) const { return parts_ == o.parts_; }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

struct PartitionData {
  Partition conjugate;
  std::vector<Cell> cells;
  std::map<Cell, int> hooks;
  std::map<Cell, int> contents;
};

PartitionData partition_data(const Partition& lambda);

// All partitions of n, lexicographically decreasing: (n), (n-1,1), ..., (1^n).
std::vector<Partition> enumerate_partitions(int n);
// All partitions with size <= n, grouped by size ascending.
std::vector<Partition> partitions_up_to(int n);
std::vector<std::pair<Partition, Partition>> partition_pairs(int total);
long partition_count(int n);

bool skew_contains(const Partition& lambda, const Partition& nu);
std::vector<Cell> skew_cells(const Partition& lambda, const Partition& nu);
// Sub-diagrams nu of lambda with |nu| = k.
std::vector<Partition> subpartitions(const Partition& lambda, int k);

}  // namespace cbtau
