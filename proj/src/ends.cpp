#include "endslab/ends.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace endslab {

std::string to_string(EndClass c) {
  switch (c) {
    case EndClass::zero: return "zero";
    case EndClass::one: return "one";
    case EndClass::two: return "two";
    case EndClass::infinite_ends: return "infinite";
    case EndClass::inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Annulus components on an explicit ball
// ---------------------------------------------------------------------------

namespace {

struct Dsu {
  std::vector<uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = (uint32_t)i;
  }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

ComponentPartition annulus_components(const BallGraph& ball, int r) {
  if (r < 0) throw ArgumentError("annulus inner radius must be >= 0");
  if (r >= ball.R())
    throw ArgumentError("annulus needs r < R (got r=" + std::to_string(r) +
                        ", R=" + std::to_string(ball.R()) + ")");
  std::size_t n = ball.size();
  Dsu dsu(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (ball.radius(v) <= r) continue;
    for (const auto& e : ball.edges_of(v))
      if (ball.radius(e.to) > r) dsu.unite((uint32_t)v, e.to);
  }

  ComponentPartition part;
  part.r = r;
  part.R = ball.R();
  part.comp.assign(n, -1);
  std::unordered_map<uint32_t, int32_t> ids;
  for (std::size_t v = 0; v < n; ++v) {
    if (ball.radius(v) <= r) continue;
    uint32_t root = dsu.find((uint32_t)v);
    auto [it, inserted] = ids.try_emplace(root, (int32_t)ids.size());
    part.comp[v] = it->second;
  }
  part.component_count = (int)ids.size();
  part.touching.assign(part.component_count, 0);
  auto [lo, hi] = ball.sphere(ball.R());
  for (uint32_t v = lo; v < hi; ++v)
    if (part.comp[v] >= 0) part.touching[part.comp[v]] = 1;
  for (uint8_t t : part.touching) part.touching_count += t;
  return part;
}

// ---------------------------------------------------------------------------
// Streaming ends profile
// ---------------------------------------------------------------------------

namespace {

constexpr uint32_t kAbsent = 0xFFFFFFFFu;

// Open-addressing 96-bit-hash table mapping forms of one BFS level to their
// global vertex index.  Forms themselves are not stored.
class LevelTable {
 public:
  void init(std::size_t expected) {
    cap_ = std::max<std::size_t>(64, expected + expected / 2);
    slots_.assign(cap_, Entry{0, 0, kAbsent});
    count_ = 0;
  }
  void clear() {
    slots_.clear();
    slots_.shrink_to_fit();
    cap_ = count_ = 0;
  }

  uint32_t find(uint64_t h1, uint32_t h2) const {
    if (cap_ == 0) return kAbsent;
    std::size_t i = pos(h1);
    for (;;) {
      const Entry& e = slots_[i];
      if (e.idx == kAbsent) return kAbsent;
      if (e.h1 == h1 && e.h2 == h2) return e.idx;
      if (++i == cap_) i = 0;
    }
  }

  void insert(uint64_t h1, uint32_t h2, uint32_t idx) {
    if ((count_ + 1) * 4 > cap_ * 3) grow();
    std::size_t i = pos(h1);
    while (slots_[i].idx != kAbsent)
      if (++i == cap_) i = 0;
    slots_[i] = Entry{h1, h2, idx};
    ++count_;
  }

  std::size_t size() const { return count_; }

 private:
  struct Entry {
    uint64_t h1;
    uint32_t h2;
    uint32_t idx;
  };

  std::size_t pos(uint64_t h1) const {
    return (std::size_t)(((unsigned __int128)h1 * cap_) >> 64);
  }

  void grow() {
    std::vector<Entry> old = std::move(slots_);
    cap_ = cap_ + cap_ / 2 + 64;
    slots_.assign(cap_, Entry{0, 0, kAbsent});
    for (const Entry& e : old)
      if (e.idx != kAbsent) {
        std::size_t i = pos(e.h1);
        while (slots_[i].idx != kAbsent)
          if (++i == cap_) i = 0;
        slots_[i] = e;
      }
  }

  std::vector<Entry> slots_;
  std::size_t cap_ = 0;
  std::size_t count_ = 0;
};

// Union-find over flat uint32 parents with path halving.
struct FlatDsu {
  std::vector<uint32_t> parent;
  void push() { parent.push_back((uint32_t)parent.size()); }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

// Reconstructs forms of the level being expanded by walking the BFS tree,
// sharing ancestor chains between consecutive vertices.
class FormWalker {
 public:
  FormWalker(const RootedGraphOracle& g, const std::vector<uint32_t>& parent,
             const std::vector<uint8_t>& plabel)
      : g_(g), parent_(parent), plabel_(plabel) {
    path_idx_.push_back(0);
    path_form_.push_back(g.root());
  }

  // v must lie at BFS level `level`.  Consecutive calls share ancestor
  // chains and the cached neighbor list of the common parent.
  const NormalForm& form_of(uint32_t v, int level) {
    if (level == 0) return path_form_[0];
    uint32_t p = parent_[v];
    if (p != cached_parent_) {
      ensure_path(p, level - 1);
      g_.neighbors(path_form_[level - 1], cached_nbrs_);
      cached_parent_ = p;
    }
    cur_ = cached_nbrs_[plabel_[v]];
    return cur_;
  }

 private:
  void ensure_path(uint32_t target, int level) {
    if ((int)path_idx_.size() > level && path_idx_[level] == target) return;
    chain_.clear();
    uint32_t x = target;
    int k = level;
    while ((int)path_idx_.size() <= k || path_idx_[k] != x) {
      chain_.push_back(x);
      if (k == 0) break;
      x = parent_[x];
      --k;
    }
    path_idx_.resize(k + 1);
    path_form_.resize(k + 1);
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      g_.neighbors(path_form_.back(), nbrs_);
      NormalForm next = std::move(nbrs_[plabel_[*it]]);
      path_idx_.push_back(*it);
      path_form_.push_back(std::move(next));
    }
  }

  const RootedGraphOracle& g_;
  const std::vector<uint32_t>& parent_;
  const std::vector<uint8_t>& plabel_;
  std::vector<uint32_t> path_idx_;
  std::vector<NormalForm> path_form_;
  std::vector<uint32_t> chain_;
  std::vector<NormalForm> nbrs_;
  std::vector<NormalForm> cached_nbrs_;
  uint32_t cached_parent_ = 0xFFFFFFFFu;
  NormalForm cur_;
};

struct ShallowEdge {
  uint32_t a;
  uint32_t b;
};

// Component counter for one column snapshot: a small union-find over
// sphere-R roots (flagged) and shallow vertices.
class MiniCounter {
 public:
  int add_root(uint32_t global_id, bool flagged) {
    auto [it, inserted] = ids_.try_emplace(global_id, (int)parent_.size());
    if (inserted) {
      parent_.push_back((int)parent_.size());
      flag_.push_back(flagged);
      if (flagged) ++count_;
    }
    return it->second;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (flag_[a] && flag_[b]) --count_;
    flag_[a] = flag_[a] || flag_[b];
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    flag_[a] = flag_[a] || flag_[b];
  }

  long long count() const { return count_; }

 private:
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  std::unordered_map<uint32_t, int> ids_;
  std::vector<int> parent_;
  std::vector<uint8_t> flag_;
  long long count_ = 0;
};

}  // namespace

EndsProfile ends_profile(const RootedGraphOracle& g, int r_max, int R_max,
                         const ProfileOptions& opts) {
  if (r_max < 1) throw ArgumentError("ends_profile needs r_max >= 1");
  if (R_max < 2 * r_max + 4)
    throw ArgumentError("ends_profile margin rule: R_max >= 2*r_max + 4");
  const int nlabels = g.label_count();
  if (nlabels > 255)
    throw ArgumentError("label alphabet too large for the streaming profiler");

  std::vector<uint32_t> parent = {0};
  std::vector<uint8_t> plabel = {0};
  FlatDsu dsu;
  dsu.push();
  std::vector<uint64_t> level_start = {0, 1};
  // Edges with min endpoint level in [2, r_max], bucketed by that level.
  std::vector<std::vector<ShallowEdge>> shallow(r_max + 1);

  LevelTable prev, cur, next;
  {
    uint64_t h1;
    uint32_t h2;
    g.root().hash96(h1, h2);
    cur.init(1);
    cur.insert(h1, h2, 0);
  }

  std::map<std::pair<int, int>, long long> table;
  FormWalker walker(g, parent, plabel);
  std::vector<NormalForm> nbrs;

  for (int L = 0; L <= R_max; ++L) {
    uint64_t lo = level_start[L], hi = level_start[L + 1];
    std::size_t prev_size = std::max<std::size_t>(
        1, L >= 1 ? (std::size_t)(level_start[L] - level_start[L - 1]) : 1);
    next.init(hi > lo ? (std::size_t)((hi - lo) *
                                      std::max<double>(
                                          1.2, (double)(hi - lo) / prev_size))
                      : 16);

    for (uint64_t v = lo; v < hi; ++v) {
      const NormalForm& f = walker.form_of((uint32_t)v, L);
      g.neighbors(f, nbrs);
      for (int li = 0; li < nlabels; ++li) {
        uint64_t h1;
        uint32_t h2;
        nbrs[li].hash96(h1, h2);
        uint32_t u = prev.find(h1, h2);
        int minlev;
        if (u != kAbsent) {
          minlev = L - 1;  // down edge: process here
        } else {
          u = cur.find(h1, h2);
          if (u != kAbsent) {
            if (u >= v) continue;  // same-level edge: process from the later end
            minlev = L;
          } else {
            u = next.find(h1, h2);
            if (u == kAbsent) {
              if (L == R_max) continue;  // next sphere is outside the ball
              u = (uint32_t)parent.size();
              if (parent.size() + 1 > opts.vertex_budget)
                throw BudgetError(parent.size() + 1, opts.vertex_budget);
              parent.push_back((uint32_t)v);
              plabel.push_back((uint8_t)li);
              dsu.push();
              next.insert(h1, h2, u);
            }
            continue;  // up edge: processed when the far end expands
          }
        }
        if (minlev >= r_max + 1)
          dsu.unite((uint32_t)v, u);
        else if (minlev >= 2)
          shallow[minlev].push_back({(uint32_t)v, u});
      }
    }

    level_start.push_back(parent.size());
    prev.clear();
    prev = std::move(cur);
    cur = std::move(next);
    next = LevelTable();

    // Column snapshot: all edges inside ball(L) are now processed.
    if (L >= r_max + 2) {
      int R = L;
      MiniCounter mini;
      for (uint64_t v = level_start[R]; v < level_start[R + 1]; ++v)
        mini.add_root(dsu.find((uint32_t)v), true);
      table[{r_max, R}] = mini.count();
      for (int r = r_max - 1; r >= 1; --r) {
        // Annulus(r) additionally contains level r+1; its edges have
        // min level r+1.
        for (const ShallowEdge& e : shallow[r + 1]) {
          auto node = [&](uint32_t x) {
            bool deep = x >= level_start[r_max + 1];
            return mini.add_root(deep ? dsu.find(x) : x, false);
          };
          mini.unite(node(e.a), node(e.b));
        }
        table[{r, R}] = mini.count();
      }
    }
  }

  EndsProfile prof;
  prof.vertices_used = parent.size();
  for (auto& [key, e] : table)
    prof.table.push_back({key.first, key.second, e});

  bool sphere_Rmax_empty = level_start[R_max + 1] == level_start[R_max];
  if (sphere_Rmax_empty) {
    prof.classification = EndClass::zero;
    prof.stable_e = 0;
    prof.witness_r = 0;
    prof.witness_R_lo = prof.witness_R_hi = R_max;
    return prof;
  }

  auto e_of = [&](int r, int R) { return table.at({r, R}); };
  if (r_max >= 3) {
    long long v0 = e_of(r_max, R_max);
    bool stable = true;
    for (int r = r_max - 2; r <= r_max && stable; ++r)
      for (int R = R_max - 1; R <= R_max && stable; ++R)
        stable = e_of(r, R) == v0;
    if (stable) {
      prof.stable_e = v0;
      prof.classification = v0 == 1   ? EndClass::one
                            : v0 == 2 ? EndClass::two
                                      : EndClass::inconclusive;
      prof.witness_r = r_max;
      prof.witness_R_lo = R_max - 1;
      prof.witness_R_hi = R_max;
      return prof;
    }
    if (e_of(r_max - 2, R_max) < e_of(r_max - 1, R_max) &&
        e_of(r_max - 1, R_max) < e_of(r_max, R_max)) {
      prof.classification = EndClass::infinite_ends;
      prof.witness_r = r_max;
      prof.witness_R_lo = prof.witness_R_hi = R_max;
      return prof;
    }
  }
  prof.classification = EndClass::inconclusive;
  prof.witness_r = r_max;
  prof.witness_R_lo = prof.witness_R_hi = R_max;
  return prof;
}

long long EndsProfile::e_at(int r, int R) const {
  for (const auto& c : table)
    if (c.r == r && c.R == R) return c.e;
  throw ArgumentError("profile cell (" + std::to_string(r) + "," +
                      std::to_string(R) + ") was not computed");
}

// ---------------------------------------------------------------------------
// Refinement tree
// ---------------------------------------------------------------------------

RefinementTree refinement_tree(const std::vector<ComponentPartition>& parts) {
  if (parts.size() < 2)
    throw ArgumentError("refinement_tree needs at least two partitions");
  RefinementTree tree;
  tree.R = parts[0].R;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].R != tree.R)
      throw ArgumentError("refinement_tree partitions must share R");
    if (i > 0 && parts[i].r != parts[i - 1].r + 1)
      throw ArgumentError("refinement_tree radii must be consecutive");
    tree.radii.push_back(parts[i].r);
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const ComponentPartition& coarse = parts[i];
    const ComponentPartition& fine = parts[i + 1];
    std::vector<int32_t> map(fine.component_count, -1);
    for (std::size_t v = 0; v < fine.comp.size(); ++v) {
      int32_t c = fine.comp[v];
      if (c < 0 || !fine.touching[c]) continue;
      int32_t p = coarse.comp[v];
      if (p < 0)
        throw InternalError("refinement containment violated");
      if (map[c] >= 0 && map[c] != p)
        throw InternalError("component split across parents");
      map[c] = p;
    }
    tree.parent.push_back(std::move(map));
  }
  return tree;
}

// ---------------------------------------------------------------------------
// End action, stabilizer
// ---------------------------------------------------------------------------

EndActionReport end_action(const BallGraph& ball, const GroupOracle& oracle,
                           const ComponentPartition& part,
                           const NormalForm& g) {
  auto gi = ball.index_of(g);
  if (!gi) throw ArgumentError("end_action: g does not lie in the ball");
  int norm_g = ball.radius(*gi);
  int r = part.r, R = ball.R();
  if (norm_g + r + 1 > R)
    throw ArgumentError("end_action margin violated: |g| + r + 1 > R");

  EndActionReport rep;
  rep.g = g;
  rep.r = r;
  for (int c = 0; c < part.component_count; ++c)
    if (part.touching[c]) rep.touching_ids.push_back(c);

  int probe_radius = R - norm_g;
  auto [lo, hi] = ball.sphere(probe_radius);
  for (int32_t c : rep.touching_ids) {
    uint32_t probe = kAbsent;
    for (uint32_t v = lo; v < hi; ++v)
      if (part.comp[v] == c) {
        probe = v;  // levels are payload-sorted: first hit is minimal
        break;
      }
    if (probe == kAbsent)
      throw InternalError("touching component misses the probe sphere");
    NormalForm image = oracle.multiply_elements(g, ball.vertex(probe));
    auto ii = ball.index_of(image);
    if (!ii) throw InternalError("probe image left the ball");
    if (ball.radius(*ii) <= r || part.comp[*ii] < 0)
      throw InternalError("probe image left the annulus");
    rep.images.push_back(part.comp[*ii]);
  }

  std::set<int32_t> image_set(rep.images.begin(), rep.images.end());
  rep.is_permutation =
      image_set.size() == rep.images.size() &&
      std::includes(rep.touching_ids.begin(), rep.touching_ids.end(),
                    image_set.begin(), image_set.end()) &&
      image_set.size() == rep.touching_ids.size();
  rep.fixes_all = true;
  for (std::size_t i = 0; i < rep.images.size(); ++i)
    if (rep.images[i] != rep.touching_ids[i]) rep.fixes_all = false;
  return rep;
}

EndActionReport end_action(const BallGraph& ball, const GroupOracle& oracle,
                           int r, const NormalForm& g) {
  return end_action(ball, oracle, annulus_components(ball, r), g);
}

StabilizerReport end_stabilizer_report(const GroupOracle& oracle,
                                       const BallGraph& ball, int r) {
  ComponentPartition part = annulus_components(ball, r);
  StabilizerReport rep;
  rep.r = r;
  rep.R = ball.R();
  for (int i = 0; i < oracle.generator_count(); ++i) {
    rep.generator_actions.push_back(
        end_action(ball, oracle, part, oracle.generator_element(i)));
    if (!rep.generator_actions.back().fixes_all) rep.all_fix = false;
  }

  // Order of the permutation group generated by the images.
  int k = rep.generator_actions.empty()
              ? 0
              : (int)rep.generator_actions[0].touching_ids.size();
  std::map<int32_t, int> pos;
  if (!rep.generator_actions.empty())
    for (int i = 0; i < k; ++i)
      pos[rep.generator_actions[0].touching_ids[i]] = i;
  std::set<std::vector<int>> group;
  std::vector<int> id(k);
  for (int i = 0; i < k; ++i) id[i] = i;
  group.insert(id);
  std::vector<std::vector<int>> gens;
  for (const auto& act : rep.generator_actions) {
    if (!act.is_permutation)
      throw InternalError("stabilizer: generator action is not a permutation");
    std::vector<int> p(k);
    for (int i = 0; i < k; ++i) p[i] = pos[act.images[i]];
    gens.push_back(p);
  }
  std::vector<std::vector<int>> frontier(group.begin(), group.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> fresh;
    for (const auto& a : frontier)
      for (const auto& p : gens) {
        std::vector<int> c(k);
        for (int i = 0; i < k; ++i) c[i] = p[a[i]];
        if (group.insert(c).second) fresh.push_back(std::move(c));
        if (group.size() > 1000000)
          throw InternalError("stabilizer image group too large to enumerate");
      }
    frontier = std::move(fresh);
  }
  rep.image_order = (long long)group.size();
  return rep;
}

// ---------------------------------------------------------------------------
// Almost invariance
// ---------------------------------------------------------------------------

AlmostInvarianceReport almost_invariant_check(const BallGraph& ball,
                                              const GroupOracle& oracle,
                                              const ComponentPartition& part,
                                              int component,
                                              const NormalForm& g) {
  auto gi = ball.index_of(g);
  if (!gi) throw ArgumentError("almost_invariant_check: g not in the ball");
  int norm_g = ball.radius(*gi);
  int r = part.r, R = ball.R();
  if (norm_g + r >= R)
    throw ArgumentError("almost_invariant_check margin violated: |g| + r >= R");
  if (component < 0 || component >= part.component_count)
    throw ArgumentError("almost_invariant_check: no such component");

  AlmostInvarianceReport rep;
  rep.component = component;
  rep.g = g;
  NormalForm ginv = oracle.inverse(g);

  auto in_V = [&](const NormalForm& x) -> bool {
    auto i = ball.index_of(x);
    return i && part.comp[*i] == component;
  };
  auto record = [&](const NormalForm& x) {
    auto i = ball.index_of(x);
    int norm = i ? ball.radius(*i) : R + 1;
    rep.max_norm = std::max(rep.max_norm, norm);
    if (norm > r + norm_g) rep.bounded = false;
    ++rep.difference_size;
    if (rep.difference.size() < 64) rep.difference.push_back(x);
  };

  for (std::size_t v = 0; v < ball.size(); ++v) {
    if (part.comp[v] != component) continue;
    if (ball.radius(v) + norm_g > R) continue;  // product may leave the ball
    const NormalForm& x = ball.vertex(v);
    // x*g in V*g; record when it misses V.
    NormalForm xg = oracle.multiply_elements(x, g);
    if (!in_V(xg)) record(xg);
    // x in V \ V*g iff x*g^-1 misses V.
    NormalForm xginv = oracle.multiply_elements(x, ginv);
    if (!in_V(xginv)) record(x);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Multiplicative ends
// ---------------------------------------------------------------------------

MultiplicativeEndsReport multiplicative_ends_test(const GroupOracle& oracle,
                                                  int r, int R,
                                                  const BallOptions& opts) {
  if (R < 2 * r + 4)
    throw ArgumentError("multiplicative_ends_test margin: R >= 2r + 4");
  CayleyGraphOracle graph(
      std::shared_ptr<const GroupOracle>(&oracle, [](const GroupOracle*) {}));
  BallGraph ball = build_ball(graph, R, opts);
  ComponentPartition part = annulus_components(ball, r);

  MultiplicativeEndsReport rep;
  rep.r = r;
  rep.R = R;
  for (std::size_t v = 0; v < ball.size() && rep.pass; ++v) {
    if (part.comp[v] < 0) continue;
    NormalForm inv = oracle.inverse(ball.vertex(v));
    auto ii = ball.index_of(inv);
    if (!ii || part.comp[*ii] < 0) continue;
    ++rep.pairs_checked;
    if (part.comp[*ii] == part.comp[v]) {
      rep.pass = false;
      rep.witness = ball.vertex(v);
      rep.witness_order_two =
          oracle.multiply_elements(ball.vertex(v), ball.vertex(v)) ==
          oracle.identity();
    }
  }

  // Spot check of the product property: v ~ v' in one component implies
  // v*v' stays past radius r in the same component.
  std::map<int32_t, std::vector<uint32_t>> samples;
  for (std::size_t v = 0; v < ball.size(); ++v) {
    int32_t c = part.comp[v];
    if (c < 0 || !part.touching[c]) continue;
    auto& vec = samples[c];
    if (vec.size() < 8) vec.push_back((uint32_t)v);
  }
  for (const auto& [c, vec] : samples) {
    for (uint32_t a : vec)
      for (uint32_t b : vec) {
        NormalForm p =
            oracle.multiply_elements(ball.vertex(a), ball.vertex(b));
        auto pi = ball.index_of(p);
        if (!pi) continue;  // product leaves the ball: not decidable here
        ++rep.product_checks;
        if (ball.radius(*pi) <= r || part.comp[*pi] != c) {
          ++rep.product_failures;
          rep.pass = false;
        }
      }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Virtually-Z witness
// ---------------------------------------------------------------------------

VirtuallyZSearch virtually_z_witness(const GroupOracle& oracle, int r, int R,
                                     const BallOptions& opts,
                                     int search_norm_bound) {
  VirtuallyZSearch out;
  CayleyGraphOracle graph(
      std::shared_ptr<const GroupOracle>(&oracle, [](const GroupOracle*) {}));
  BallGraph ball = build_ball(graph, R, opts);
  ComponentPartition part = annulus_components(ball, r);
  if (part.touching_count != 2) {
    out.diagnostics = "not two-ended at (r=" + std::to_string(r) +
                      ", R=" + std::to_string(R) + "): e = " +
                      std::to_string(part.touching_count);
    return out;
  }
  int bound = std::min(search_norm_bound, R - r - 1);

  for (std::size_t cand = 1; cand < ball.size(); ++cand) {
    int norm_g = ball.radius(cand);
    if (norm_g > bound) break;
    const NormalForm& g = ball.vertex(cand);
    EndActionReport act = end_action(ball, oracle, part, g);
    if (!act.is_permutation || !act.fixes_all) continue;

    // g * (V probes) subset V, over the whole margin-safe annulus.
    bool stable = true;
    for (std::size_t v = 0; v < ball.size() && stable; ++v) {
      int32_t c = part.comp[v];
      if (c < 0 || !part.touching[c]) continue;
      if (ball.radius(v) + norm_g > R) continue;
      NormalForm gx = oracle.multiply_elements(g, ball.vertex(v));
      auto ii = ball.index_of(gx);
      if (!ii) throw InternalError("margin-safe product left the ball");
      if (ball.radius(*ii) > r && part.comp[*ii] != c) stable = false;
    }
    if (!stable) continue;

    // Enumerate right cosets <g>x met inside the ball.
    NormalForm ginv = oracle.inverse(g);
    std::unordered_map<NormalForm, NormalForm, NormalFormHash> rep_of;
    std::vector<uint32_t> orbit;
    for (std::size_t v = 0; v < ball.size(); ++v) {
      const NormalForm& x = ball.vertex(v);
      if (rep_of.count(x)) continue;
      orbit.clear();
      orbit.push_back((uint32_t)v);
      NormalForm best = x;
      for (const NormalForm& dir : {g, ginv}) {
        NormalForm y = oracle.multiply_elements(dir, x);
        std::size_t guard = 0;
        while (true) {
          auto yi = ball.index_of(y);
          if (!yi) break;
          orbit.push_back(*yi);
          if (y < best) best = y;
          y = oracle.multiply_elements(dir, y);
          if (++guard > ball.size())
            throw InternalError("coset walk failed to leave the ball");
        }
      }
      for (uint32_t o : orbit) rep_of.emplace(ball.vertex(o), best);
    }

    std::vector<long long> count_at(R + 1, 0);
    std::set<NormalForm> seen;
    for (std::size_t v = 0; v < ball.size(); ++v)
      if (seen.insert(rep_of.at(ball.vertex(v))).second)
        ++count_at[ball.radius(v)];
    for (int rho = 1; rho <= R; ++rho) count_at[rho] += count_at[rho - 1];

    if (count_at[R] == count_at[R - 1]) {
      VirtuallyZWitness w;
      w.g = g;
      w.index_estimate = count_at[R];
      for (const NormalForm& rep : seen) w.coset_representatives.push_back(rep);
      std::sort(w.coset_representatives.begin(),
                w.coset_representatives.end());
      out.witness = std::move(w);
      return out;
    }
    out.diagnostics += "candidate " + oracle.describe(g) +
                       ": coset count still growing (" +
                       std::to_string(count_at[R - 1]) + " -> " +
                       std::to_string(count_at[R]) + "); ";
  }
  if (out.diagnostics.empty())
    out.diagnostics = "no end-fixing candidate up to norm " +
                      std::to_string(bound);
  return out;
}

// ---------------------------------------------------------------------------
// Central infinite-order search
// ---------------------------------------------------------------------------

std::optional<NormalForm> central_infinite_order_search(
    const GroupOracle& oracle, int R, const BallOptions& opts) {
  if (R < 4) throw ArgumentError("central search needs R >= 4");
  CayleyGraphOracle graph(
      std::shared_ptr<const GroupOracle>(&oracle, [](const GroupOracle*) {}));
  BallGraph ball = build_ball(graph, R, opts);

  std::vector<NormalForm> gen_elems;
  for (int i = 0; i < oracle.generator_count(); ++i)
    gen_elems.push_back(oracle.generator_element(i));

  for (std::size_t v = 1; v < ball.size(); ++v) {
    int norm = ball.radius(v);
    if (norm > R / 2) break;  // fewer than two powers would fit
    const NormalForm& g = ball.vertex(v);
    bool central = true;
    for (int i = 0; i < oracle.generator_count() && central; ++i) {
      if (oracle.multiply(g, {i, +1}) !=
          oracle.multiply_elements(gen_elems[i], g))
        central = false;
    }
    if (!central) continue;
    int kmax = R / norm;
    std::set<NormalForm> powers;
    NormalForm f = g;
    bool distinct = powers.insert(f).second;
    for (int k = 2; k <= kmax && distinct; ++k) {
      f = oracle.multiply_elements(f, g);
      distinct = powers.insert(f).second;
    }
    if (distinct) return g;
  }
  return std::nullopt;
}

}  // namespace endslab
