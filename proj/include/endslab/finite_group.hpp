#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "endslab/base.hpp"

namespace endslab {

// A finite group given by its multiplication table.  Element 0 is the
// identity.  Construction validates the table (identity, Latin square,
// inverses, associativity), so every instance is a genuine group.
class FiniteGroupTable {
 public:
  FiniteGroupTable(std::string name, std::vector<std::vector<int>> table);

  int order() const { return n_; }
  const std::string& name() const { return name_; }
  int mult(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int element_order(int a) const;

  // Greedy minimal generating set over the table order (skips elements
  // already in the subgroup generated so far).
  const std::vector<int>& generators() const { return gens_; }

  // Closure of `elems` under multiplication and inversion.
  std::vector<int> subgroup_closure(std::vector<int> elems) const;
  bool is_subgroup(const std::vector<int>& elems) const;

  // Power map x -> x^k; throws ValidationError unless it is an automorphism.
  std::vector<int> power_automorphism(int k) const;
  bool is_automorphism(const std::vector<int>& image) const;

  // Table file format: first line n, then n rows of n indices (row g,
  // column h -> index of g*h); identity is index 0.
  static FiniteGroupTable from_stream(std::istream& in, std::string name);
  static FiniteGroupTable from_file(const std::string& path);
  void to_stream(std::ostream& out) const;

 private:
  std::string name_;
  int n_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<int> gens_;
};

FiniteGroupTable cyclic_table(int n);

}  // namespace endslab
