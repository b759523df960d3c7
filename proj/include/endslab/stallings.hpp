#pragma once

#include <string>
#include <vector>

#include "endslab/graph.hpp"

namespace endslab {

// Folded (deterministic, inverse-closed) subgroup automaton over the free
// group of the given rank.  State 0 is the base; states are numbered by BFS
// from the base in label order.
class StallingsAutomaton {
 public:
  int rank() const { return rank_; }
  int state_count() const { return (int)delta_.size() / (2 * rank_); }
  int base() const { return 0; }

  // Destination state or -1.
  int transition(int state, GeneratorSymbol s) const {
    return delta_[state * 2 * rank_ + code(s)];
  }

  // True iff the freely reduced word reads a closed loop at the base.
  bool membership(const Word& w) const;

  friend StallingsAutomaton fold_edges(
      int rank, int state_count,
      const std::vector<std::tuple<int, GeneratorSymbol, int>>& edges,
      int base);

  static int code(GeneratorSymbol s) {
    return 2 * s.index + (s.sign > 0 ? 0 : 1);
  }

 private:
  int rank_ = 0;
  std::vector<int> delta_;  // state * 2*rank + code -> state or -1
};

// Folds an arbitrary inverse-closed labeled graph (base-connected) into a
// deterministic automaton.
StallingsAutomaton fold_edges(
    int rank, int state_count,
    const std::vector<std::tuple<int, GeneratorSymbol, int>>& edges, int base);

// Builds the bouquet of the (freely reduced) subgroup generator loops at the
// base and folds it.
StallingsAutomaton fold(int rank, const std::vector<Word>& subgroup_gens);

// Freely reduce a word over free(rank).
Word free_reduce(const Word& w);

// Coset oracle for K\free(rank): coset ids are (state, residual suffix)
// pairs, where the residual's first letter has no transition at the state.
CosetPtr free_coset_oracle(StallingsAutomaton aut);

}  // namespace endslab
