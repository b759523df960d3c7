#include "endslab/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace endslab {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return r != 0 && ((r < 0) != (b < 0)) ? q - 1 : q;
}

// Payload: the canonical residue vector (n coordinates).
class LatticeCosetOracle final : public CosetOracle {
 public:
  LatticeCosetOracle(int n, std::vector<std::vector<long long>> basis)
      : n_(n) {
    if (n < 1) throw ValidationError("lattice dimension must be >= 1");
    for (const auto& row : basis)
      if ((int)row.size() != n)
        throw ValidationError("lattice basis vector has wrong dimension");
    // Integer row echelon form via gcd elimination (row ops only).
    int r = 0;
    for (int col = 0; col < n_ && r < (int)basis.size(); ++col) {
      for (;;) {
        int best = -1;
        for (int i = r; i < (int)basis.size(); ++i)
          if (basis[i][col] != 0 &&
              (best < 0 ||
               std::llabs(basis[i][col]) < std::llabs(basis[best][col])))
            best = i;
        if (best < 0) break;
        std::swap(basis[r], basis[best]);
        bool clean = true;
        for (int i = r + 1; i < (int)basis.size(); ++i) {
          if (basis[i][col] == 0) continue;
          long long q = floor_div(basis[i][col], basis[r][col]);
          for (int j = 0; j < n_; ++j) basis[i][j] -= q * basis[r][j];
          if (basis[i][col] != 0) clean = false;
        }
        if (clean) break;
      }
      if (basis[r][col] != 0) {
        if (basis[r][col] < 0)
          for (int j = 0; j < n_; ++j) basis[r][j] = -basis[r][j];
        pivot_col_.push_back(col);
        rows_.push_back(basis[r]);
        ++r;
      }
    }
  }

  int generator_count() const override { return n_; }

  NormalForm root_coset() const override {
    std::vector<long long> z(n_, 0);
    return reduced(z);
  }

  NormalForm step(const NormalForm& v, GeneratorSymbol s) const override {
    if (s.index < 0 || s.index >= n_)
      throw MalformedWordError("generator index out of range for lattice");
    std::vector<long long> w(v.payload().begin(), v.payload().end());
    w[s.index] += s.sign;
    return reduced(w);
  }

  std::string describe(const NormalForm& v) const override {
    std::string out = "(";
    for (int i = 0; i < n_; ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
  }

 private:
  NormalForm reduced(std::vector<long long> w) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      int c = pivot_col_[r];
      long long q = floor_div(w[c], rows_[r][c]);
      if (q != 0)
        for (int j = 0; j < n_; ++j) w[j] -= q * rows_[r][j];
    }
    std::vector<int32_t> p(w.begin(), w.end());
    return NormalForm(std::move(p));
  }

  int n_;
  std::vector<std::vector<long long>> rows_;
  std::vector<int> pivot_col_;
};

}  // namespace

CosetPtr lattice_coset_oracle(int n,
                              std::vector<std::vector<long long>> basis) {
  return std::make_shared<LatticeCosetOracle>(n, std::move(basis));
}

}  // namespace endslab
