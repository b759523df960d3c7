#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace endslab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A word contains a generator index outside the oracle's alphabet.
struct MalformedWordError : Error {
  using Error::Error;
};

// Construction-time validation failure (bad table, bad action, non-normal
// subgroup, non-generating set, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Bad call parameters (r >= R, violated margins, non-consecutive radii).
struct ArgumentError : Error {
  using Error::Error;
};

// Vertex budget exhausted. Never truncates silently.
struct BudgetError : Error {
  std::size_t used;
  std::size_t budget;
  BudgetError(std::size_t used_, std::size_t budget_)
      : Error("vertex budget exceeded: needed more than " +
              std::to_string(budget_) + " vertices"),
        used(used_),
        budget(budget_) {}
};

struct InternalError : Error {
  using Error::Error;
};

// One letter s^{+1} or s^{-1} of a word over a generating set.
struct GeneratorSymbol {
  int32_t index;
  int32_t sign;  // +1 or -1

  friend bool operator==(GeneratorSymbol a, GeneratorSymbol b) {
    return a.index == b.index && a.sign == b.sign;
  }
  GeneratorSymbol inverse() const { return {index, -sign}; }
};

using Word = std::vector<GeneratorSymbol>;

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Word operator+(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace detail {
inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}
}  // namespace detail

// Canonical, hashable identifier of a group element or coset.  The payload
// encoding is family-specific; equality of payloads is equality of elements.
// Ordered by (size, lexicographic) so "payload-minimal" is well defined.
class NormalForm {
 public:
  NormalForm() = default;
  explicit NormalForm(std::vector<int32_t> payload) : v_(std::move(payload)) {}

  const std::vector<int32_t>& payload() const { return v_; }
  std::vector<int32_t>& payload() { return v_; }
  std::size_t size() const { return v_.size(); }
  int32_t operator[](std::size_t i) const { return v_[i]; }

  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const NormalForm& a, const NormalForm& b) {
    return !(a == b);
  }
  friend bool operator<(const NormalForm& a, const NormalForm& b) {
    if (a.v_.size() != b.v_.size()) return a.v_.size() < b.v_.size();
    return a.v_ < b.v_;
  }

  uint64_t hash64(uint64_t seed = 0x9e3779b97f4a7c15ULL) const {
    uint64_t h = detail::mix64(seed ^ (uint64_t)v_.size());
    for (int32_t x : v_) h = detail::mix64(h ^ (uint64_t)(uint32_t)x);
    return h;
  }

  // Two independent hash lanes; used for the streaming dedup tables.
  void hash96(uint64_t& h1, uint32_t& h2) const {
    uint64_t a = detail::mix64(0x9e3779b97f4a7c15ULL ^ (uint64_t)v_.size());
    uint64_t b = 0xcbf29ce484222325ULL + (uint64_t)v_.size();
    for (int32_t x : v_) {
      a = detail::mix64(a ^ (uint64_t)(uint32_t)x);
      b = (b ^ (uint64_t)(uint32_t)x) * 0x100000001b3ULL;
    }
    h1 = a;
    h2 = (uint32_t)detail::mix64(b);
  }

 private:
  std::vector<int32_t> v_;
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& f) const {
    return (std::size_t)f.hash64();
  }
};

// Worker count used by parallel phases: ENDS_LAB_THREADS when set, machine
// parallelism otherwise.
int worker_count(int requested = 0);

}  // namespace endslab
