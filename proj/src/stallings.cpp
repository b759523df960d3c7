#include "endslab/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace endslab {

Word free_reduce(const Word& w) {
  Word out;
  for (GeneratorSymbol s : w) {
    if (!out.empty() && out.back().index == s.index &&
        out.back().sign == -s.sign)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

bool StallingsAutomaton::membership(const Word& w) const {
  int q = base();
  for (GeneratorSymbol s : free_reduce(w)) {
    q = transition(q, s);
    if (q < 0) return false;
  }
  return q == base();
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return a;
  }
};

}  // namespace

StallingsAutomaton fold_edges(
    int rank, int state_count,
    const std::vector<std::tuple<int, GeneratorSymbol, int>>& edges,
    int base) {
  if (rank < 1) throw ValidationError("fold needs rank >= 1");
  Dsu dsu(state_count);
  // Per state, the (possibly multi-valued) outgoing edges by label code.
  std::vector<std::vector<std::pair<int, int>>> out(state_count);
  for (auto [u, s, v] : edges) {
    out[u].push_back({StallingsAutomaton::code(s), v});
    out[v].push_back({StallingsAutomaton::code(s.inverse()), u});
  }

  std::deque<int> queue;
  for (int i = 0; i < state_count; ++i) queue.push_back(i);
  while (!queue.empty()) {
    int q = dsu.find(queue.front());
    queue.pop_front();
    auto& es = out[q];
    std::map<int, int> seen;  // code -> target rep
    bool merged_any = false;
    std::vector<std::pair<int, int>> kept;
    for (auto [code, t] : es) {
      t = dsu.find(t);
      auto [it, inserted] = seen.try_emplace(code, t);
      if (inserted) {
        kept.push_back({code, t});
      } else if (it->second != t) {
        int m = dsu.unite(it->second, t);
        // Move the loser's edges to the winner and recheck both.
        int loser = it->second == m ? t : it->second;
        if (loser != m) {
          auto& le = out[loser];
          out[m].insert(out[m].end(), le.begin(), le.end());
          le.clear();
          le.shrink_to_fit();
          queue.push_back(m);
        }
        it->second = m;
        kept.push_back({code, m});
        merged_any = true;
      }
    }
    es = std::move(kept);
    if (merged_any) queue.push_back(q);
    // A merge may have folded q itself into another state; requeue covers it.
    if (dsu.find(q) != q) queue.push_back(dsu.find(q));
  }

  // Canonical renumbering: BFS from the base in label order.
  int b = dsu.find(base);
  std::vector<int> id(state_count, -1);
  std::vector<int> bfs = {b};
  id[b] = 0;
  for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
    int q = bfs[qi];
    std::map<int, int> delta;
    for (auto [code, t] : out[q]) delta[code] = dsu.find(t);
    for (auto [code, t] : delta) {
      if (id[t] < 0) {
        id[t] = (int)bfs.size();
        bfs.push_back(t);
      }
    }
  }

  StallingsAutomaton aut;
  aut.rank_ = rank;
  aut.delta_.assign(bfs.size() * 2 * rank, -1);
  for (std::size_t qi = 0; qi < bfs.size(); ++qi)
    for (auto [code, t] : out[bfs[qi]])
      aut.delta_[qi * 2 * rank + code] = id[dsu.find(t)];
  return aut;
}

StallingsAutomaton fold(int rank, const std::vector<Word>& subgroup_gens) {
  std::vector<std::tuple<int, GeneratorSymbol, int>> edges;
  int states = 1;
  for (const Word& raw : subgroup_gens) {
    Word w = free_reduce(raw);
    if (w.empty()) continue;
    int prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = i + 1 == w.size() ? 0 : states++;
      edges.push_back({prev, w[i], next});
      prev = next;
    }
  }
  return fold_edges(rank, states, edges, 0);
}

namespace {

// Payload: [state, residual letters...] with letters encoded +-(index+1).
class FreeCosetOracle final : public CosetOracle {
 public:
  explicit FreeCosetOracle(StallingsAutomaton aut) : aut_(std::move(aut)) {}

  int generator_count() const override { return aut_.rank(); }
  NormalForm root_coset() const override { return NormalForm({0}); }

  NormalForm step(const NormalForm& v, GeneratorSymbol s) const override {
    if (s.index < 0 || s.index >= aut_.rank())
      throw MalformedWordError("generator index out of range for coset oracle");
    std::vector<int32_t> p = v.payload();
    int32_t letter = s.sign > 0 ? s.index + 1 : -(s.index + 1);
    if (p.size() == 1) {
      int t = aut_.transition(p[0], s);
      if (t >= 0)
        p[0] = t;
      else
        p.push_back(letter);
    } else if (p.back() == -letter) {
      p.pop_back();
    } else {
      p.push_back(letter);
    }
    return NormalForm(std::move(p));
  }

  std::string describe(const NormalForm& v) const override {
    std::string out = "s" + std::to_string(v[0]);
    if (v.size() > 1) {
      out += ":";
      for (std::size_t i = 1; i < v.size(); ++i) {
        int32_t letter = v[i];
        int idx = letter > 0 ? letter - 1 : -letter - 1;
        out += signed_symbol_text(generator_name(idx), letter > 0 ? +1 : -1);
      }
    }
    return out;
  }

 private:
  StallingsAutomaton aut_;
};

}  // namespace

CosetPtr free_coset_oracle(StallingsAutomaton aut) {
  return std::make_shared<FreeCosetOracle>(std::move(aut));
}

}  // namespace endslab
