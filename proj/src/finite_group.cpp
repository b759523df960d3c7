#include "endslab/finite_group.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace endslab {

FiniteGroupTable::FiniteGroupTable(std::string name,
                                   std::vector<std::vector<int>> table)
    : name_(std::move(name)), n_((int)table.size()), table_(std::move(table)) {
  if (n_ <= 0) throw ValidationError("finite group table is empty");
  for (const auto& row : table_) {
    if ((int)row.size() != n_)
      throw ValidationError("finite group table is not square");
    for (int x : row)
      if (x < 0 || x >= n_)
        throw ValidationError("finite group table entry out of range");
  }
  for (int a = 0; a < n_; ++a) {
    if (table_[0][a] != a || table_[a][0] != a)
      throw ValidationError("index 0 is not an identity for the table");
  }
  // Latin square: rows and columns are permutations.
  for (int a = 0; a < n_; ++a) {
    std::vector<bool> row_seen(n_, false), col_seen(n_, false);
    for (int b = 0; b < n_; ++b) {
      if (row_seen[table_[a][b]] || col_seen[table_[b][a]])
        throw ValidationError("table row/column is not a permutation");
      row_seen[table_[a][b]] = true;
      col_seen[table_[b][a]] = true;
    }
  }
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (table_[a][b] == 0) inv_[a] = b;
  for (int a = 0; a < n_; ++a) {
    if (inv_[a] < 0 || table_[inv_[a]][a] != 0)
      throw ValidationError("table has an element without a two-sided inverse");
  }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw ValidationError("table is not associative");

  std::vector<int> have = {0};
  for (int a = 1; a < n_; ++a) {
    if (std::find(have.begin(), have.end(), a) == have.end()) {
      gens_.push_back(a);
      std::vector<int> seed = have;
      seed.push_back(a);
      have = subgroup_closure(seed);
    }
  }
}

int FiniteGroupTable::element_order(int a) const {
  int x = a, k = 1;
  while (x != 0) {
    x = mult(x, a);
    ++k;
  }
  return k;
}

std::vector<int> FiniteGroupTable::subgroup_closure(std::vector<int> elems) const {
  std::set<int> s(elems.begin(), elems.end());
  s.insert(0);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur) {
      if (s.insert(inv(a)).second) grew = true;
      for (int b : cur)
        if (s.insert(mult(a, b)).second) grew = true;
    }
  }
  return std::vector<int>(s.begin(), s.end());
}

bool FiniteGroupTable::is_subgroup(const std::vector<int>& elems) const {
  std::set<int> s(elems.begin(), elems.end());
  if (!s.count(0)) return false;
  for (int a : s) {
    if (!s.count(inv(a))) return false;
    for (int b : s)
      if (!s.count(mult(a, b))) return false;
  }
  return true;
}

std::vector<int> FiniteGroupTable::power_automorphism(int k) const {
  std::vector<int> image(n_);
  for (int a = 0; a < n_; ++a) {
    int e = ((k % n_) + n_) % n_;  // cap the exponent walk
    int x = 0;
    for (int i = 0; i < e; ++i) x = mult(x, a);
    image[a] = x;
  }
  if (!is_automorphism(image))
    throw ValidationError("power map x -> x^" + std::to_string(k) +
                          " is not an automorphism of " + name_);
  return image;
}

bool FiniteGroupTable::is_automorphism(const std::vector<int>& image) const {
  if ((int)image.size() != n_) return false;
  std::vector<bool> seen(n_, false);
  for (int x : image) {
    if (x < 0 || x >= n_ || seen[x]) return false;
    seen[x] = true;
  }
  if (image[0] != 0) return false;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (image[mult(a, b)] != mult(image[a], image[b])) return false;
  return true;
}

FiniteGroupTable FiniteGroupTable::from_stream(std::istream& in,
                                               std::string name) {
  int n;
  if (!(in >> n) || n <= 0)
    throw ValidationError("table file: bad or missing order line");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!(in >> t[a][b]))
        throw ValidationError("table file: truncated at row " +
                              std::to_string(a));
  return FiniteGroupTable(std::move(name), std::move(t));
}

FiniteGroupTable FiniteGroupTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open table file: " + path);
  return from_stream(in, path);
}

void FiniteGroupTable::to_stream(std::ostream& out) const {
  out << n_ << "\n";
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) out << (b ? " " : "") << table_[a][b];
    out << "\n";
  }
}

FiniteGroupTable cyclic_table(int n) {
  if (n <= 0) throw ValidationError("cyclic(n) needs n >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroupTable("cyclic(" + std::to_string(n) + ")", std::move(t));
}

}  // namespace endslab
