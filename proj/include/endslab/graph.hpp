#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "endslab/base.hpp"
#include "endslab/group.hpp"

namespace endslab {

// A rooted locally finite graph given implicitly: a root vertex and a
// neighbor function with a fixed finite label alphabet.  Neighbor lists are
// deterministic, and labels come in inverse pairs (edge symmetry).
class RootedGraphOracle {
 public:
  virtual ~RootedGraphOracle() = default;

  virtual NormalForm root() const = 0;
  virtual int label_count() const = 0;
  virtual GeneratorSymbol label_symbol(int li) const = 0;
  virtual std::string label_name(int li) const = 0;

  // out is resized to label_count(); out[li] = neighbor along label li.
  virtual void neighbors(const NormalForm& v,
                         std::vector<NormalForm>& out) const = 0;
};

// Cayley graph of a group oracle: vertices are canonical forms, edges
// g -> g*s for signed generators s.  A sign is skipped when the generator is
// its own inverse (the two labels would duplicate the same edge).
class CayleyGraphOracle final : public RootedGraphOracle {
 public:
  explicit CayleyGraphOracle(OraclePtr oracle);

  NormalForm root() const override { return oracle_->identity(); }
  int label_count() const override { return (int)labels_.size(); }
  GeneratorSymbol label_symbol(int li) const override { return labels_[li]; }
  std::string label_name(int li) const override;
  void neighbors(const NormalForm& v,
                 std::vector<NormalForm>& out) const override;

  const GroupOracle& group() const { return *oracle_; }
  OraclePtr group_ptr() const { return oracle_; }

 private:
  OraclePtr oracle_;
  std::vector<GeneratorSymbol> labels_;
};

// Canonical namer for the right cosets K\G restricted to one group; the
// word-problem engine of a Schreier (relative Cayley) graph.
class CosetOracle {
 public:
  virtual ~CosetOracle() = default;
  virtual int generator_count() const = 0;
  virtual std::string generator_name(int i) const;
  virtual NormalForm root_coset() const = 0;
  // Canonical id of (coset of v) * s.
  virtual NormalForm step(const NormalForm& v, GeneratorSymbol s) const = 0;
  virtual std::string describe(const NormalForm& v) const = 0;

  NormalForm coset_id(const Word& w) const;
};

using CosetPtr = std::shared_ptr<const CosetOracle>;

// Schreier coset graph as a rooted graph oracle.
class SchreierGraphOracle final : public RootedGraphOracle {
 public:
  explicit SchreierGraphOracle(CosetPtr cosets);

  NormalForm root() const override { return cosets_->root_coset(); }
  int label_count() const override { return 2 * cosets_->generator_count(); }
  GeneratorSymbol label_symbol(int li) const override {
    return {li / 2, li % 2 == 0 ? +1 : -1};
  }
  std::string label_name(int li) const override;
  void neighbors(const NormalForm& v,
                 std::vector<NormalForm>& out) const override;

 private:
  CosetPtr cosets_;
};

// The induced graph on {v : |v| <= R}.  Vertices are stored in BFS level
// order, each level sorted by payload; |v| is the BFS distance from the
// root.  Adjacency is complete for |v| < R; for |v| = R only edges staying
// inside the ball are kept.
class BallGraph {
 public:
  struct Edge {
    int32_t label;
    uint32_t to;
  };

  int R() const { return R_; }
  std::size_t size() const { return verts_.size(); }
  const NormalForm& vertex(std::size_t i) const { return verts_[i]; }
  int radius(std::size_t i) const { return radius_[i]; }
  std::optional<uint32_t> index_of(const NormalForm& f) const;

  // Vertex index range [first, last) of sphere r (empty when r > depth).
  std::pair<uint32_t, uint32_t> sphere(int r) const;
  std::size_t sphere_size(int r) const;

  const std::vector<Edge>& edges_of(std::size_t i) const { return adj_[i]; }

  friend class BallBuilder;

 private:
  int R_ = 0;
  std::vector<NormalForm> verts_;
  std::vector<int32_t> radius_;
  std::vector<uint64_t> level_start_;  // size depth+2
  std::vector<std::vector<Edge>> adj_;
  std::unordered_map<NormalForm, uint32_t, NormalFormHash> index_;
};

struct BallOptions {
  std::size_t vertex_budget = 5'000'000;
  int threads = 0;  // 0 = ENDS_LAB_THREADS or machine parallelism
};

BallGraph build_ball(const RootedGraphOracle& g, int R,
                     const BallOptions& opts = {});

// DOT export: vertex label = payload text, edge label = generator name.
std::string ball_to_dot(const BallGraph& ball, const RootedGraphOracle& g,
                        const std::function<std::string(const NormalForm&)>&
                            vertex_text);

}  // namespace endslab
