#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endslab/graph.hpp"

namespace endslab {

// Partition of the annulus {v : r < |v| <= R} into connected components of
// the induced subgraph.  e(r,R) counts the components touching sphere R.
struct ComponentPartition {
  int r = 0;
  int R = 0;
  std::vector<int32_t> comp;      // per ball vertex; -1 outside the annulus
  int component_count = 0;        // ids are 0..component_count-1
  std::vector<uint8_t> touching;  // per component
  int touching_count = 0;         // e(r, R)
};

ComponentPartition annulus_components(const BallGraph& ball, int r);

enum class EndClass { zero, one, two, infinite_ends, inconclusive };
std::string to_string(EndClass c);

struct ProfileCell {
  int r;
  int R;
  long long e;
};

// The table e(r,R) plus the finite-radius classification verdict.
struct EndsProfile {
  std::vector<ProfileCell> table;  // sorted by (r, R)
  EndClass classification = EndClass::inconclusive;
  std::optional<long long> stable_e;
  int witness_r = 0;  // radii backing the verdict
  int witness_R_lo = 0;
  int witness_R_hi = 0;
  std::size_t vertices_used = 0;

  long long e_at(int r, int R) const;
};

struct ProfileOptions {
  std::size_t vertex_budget = 5'000'000;
  int threads = 0;
};

// Fills e(r,R) for r in [1, r_max], R in [r_max+2, R_max] and classifies.
// Requires R_max >= 2*r_max + 4.  Runs as a streaming level-synchronous BFS
// with an incremental union-find, so only O(sphere) forms are resident.
EndsProfile ends_profile(const RootedGraphOracle& g, int r_max, int R_max,
                         const ProfileOptions& opts = {});

// Child-to-parent maps between touching components of consecutive-radius
// partitions sharing one outer radius R.
struct RefinementTree {
  int R = 0;
  std::vector<int> radii;  // ascending, consecutive
  // parent[i][c] = component id at radii[i] containing component c at
  // radii[i+1]; entries only for touching components of the finer partition.
  std::vector<std::vector<int32_t>> parent;
};

RefinementTree refinement_tree(const std::vector<ComponentPartition>& parts);

// Action of left multiplication by g on the touching components at radius r.
struct EndActionReport {
  NormalForm g;
  int r = 0;
  std::vector<int32_t> touching_ids;  // ascending component ids
  std::vector<int32_t> images;        // component id hit by g per touching id
  bool is_permutation = false;
  bool fixes_all = false;
};

EndActionReport end_action(const BallGraph& ball, const GroupOracle& oracle,
                           const ComponentPartition& part, const NormalForm& g);
EndActionReport end_action(const BallGraph& ball, const GroupOracle& oracle,
                           int r, const NormalForm& g);

// Per-generator end actions, the permutation group they generate, and the
// index of the stabilizer kernel (= order of the image group).
struct StabilizerReport {
  int r = 0;
  int R = 0;
  std::vector<EndActionReport> generator_actions;
  long long image_order = 1;
  bool all_fix = true;
};

StabilizerReport end_stabilizer_report(const GroupOracle& oracle,
                                       const BallGraph& ball, int r);

// Elements of (V*g symmetric-difference V) found inside the ball.
struct AlmostInvarianceReport {
  int component = 0;
  NormalForm g;
  std::vector<NormalForm> difference;  // listing capped at 64 elements
  std::size_t difference_size = 0;
  int max_norm = -1;
  bool bounded = true;  // all difference elements have |x| <= r + |g|
};

AlmostInvarianceReport almost_invariant_check(const BallGraph& ball,
                                              const GroupOracle& oracle,
                                              const ComponentPartition& part,
                                              int component,
                                              const NormalForm& g);

// PASS iff every annulus vertex lies in a different component from its
// inverse, plus a direct spot check that products of component-mates stay in
// the component.
struct MultiplicativeEndsReport {
  bool pass = true;
  std::optional<NormalForm> witness;
  bool witness_order_two = false;
  std::size_t pairs_checked = 0;
  std::size_t product_checks = 0;
  std::size_t product_failures = 0;
  int r = 0;
  int R = 0;
};

MultiplicativeEndsReport multiplicative_ends_test(const GroupOracle& oracle,
                                                  int r, int R,
                                                  const BallOptions& opts = {});

// Witness that the group is virtually Z: an end-fixing g with g*V inside V
// whose cyclic subgroup meets only finitely many right cosets <g>x in the
// ball, the count stabilizing across radii.
struct VirtuallyZWitness {
  NormalForm g;
  long long index_estimate = 0;
  std::vector<NormalForm> coset_representatives;
};

struct VirtuallyZSearch {
  std::optional<VirtuallyZWitness> witness;
  std::string diagnostics;
};

VirtuallyZSearch virtually_z_witness(const GroupOracle& oracle, int r, int R,
                                     const BallOptions& opts = {},
                                     int search_norm_bound = 4);

// Minimal-norm element commuting with all generators whose powers up to
// floor(R/|g|) are pairwise distinct; empty when none exists in the ball.
std::optional<NormalForm> central_infinite_order_search(
    const GroupOracle& oracle, int R, const BallOptions& opts = {});

}  // namespace endslab
