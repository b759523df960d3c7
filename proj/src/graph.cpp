#include "endslab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

namespace endslab {

// ---------------------------------------------------------------------------
// Graph oracles
// ---------------------------------------------------------------------------

CayleyGraphOracle::CayleyGraphOracle(OraclePtr oracle)
    : oracle_(std::move(oracle)) {
  if (!oracle_) throw ValidationError("group oracle missing");
  for (int i = 0; i < oracle_->generator_count(); ++i) {
    labels_.push_back({i, +1});
    NormalForm e = oracle_->generator_element(i);
    if (oracle_->inverse(e) != e) labels_.push_back({i, -1});
  }
}

std::string CayleyGraphOracle::label_name(int li) const {
  GeneratorSymbol s = labels_[li];
  return signed_symbol_text(oracle_->generator_name(s.index), s.sign);
}

void CayleyGraphOracle::neighbors(const NormalForm& v,
                                  std::vector<NormalForm>& out) const {
  out.resize(labels_.size());
  for (std::size_t li = 0; li < labels_.size(); ++li)
    oracle_->multiply_into(v, labels_[li], out[li]);
}

std::string CosetOracle::generator_name(int i) const {
  if (i >= 0 && i < 26) return std::string(1, (char)('a' + i));
  return "g" + std::to_string(i);
}

NormalForm CosetOracle::coset_id(const Word& w) const {
  NormalForm acc = root_coset();
  for (GeneratorSymbol s : w) acc = step(acc, s);
  return acc;
}

SchreierGraphOracle::SchreierGraphOracle(CosetPtr cosets)
    : cosets_(std::move(cosets)) {
  if (!cosets_) throw ValidationError("coset oracle missing");
}

std::string SchreierGraphOracle::label_name(int li) const {
  GeneratorSymbol s = label_symbol(li);
  return signed_symbol_text(cosets_->generator_name(s.index), s.sign);
}

void SchreierGraphOracle::neighbors(const NormalForm& v,
                                    std::vector<NormalForm>& out) const {
  out.resize(label_count());
  for (int li = 0; li < label_count(); ++li)
    out[li] = cosets_->step(v, label_symbol(li));
}

// ---------------------------------------------------------------------------
// BallGraph
// ---------------------------------------------------------------------------

std::optional<uint32_t> BallGraph::index_of(const NormalForm& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::pair<uint32_t, uint32_t> BallGraph::sphere(int r) const {
  if (r < 0 || r + 2 > (int)level_start_.size()) return {0, 0};
  return {(uint32_t)level_start_[r], (uint32_t)level_start_[r + 1]};
}

std::size_t BallGraph::sphere_size(int r) const {
  auto [lo, hi] = sphere(r);
  return hi - lo;
}

namespace {
constexpr uint32_t kNewFlag = 0x80000000u;
}

BallGraph build_ball(const RootedGraphOracle& g, int R,
                     const BallOptions& opts) {
  if (R < 0) throw ArgumentError("ball radius must be >= 0");
  if (opts.vertex_budget < 1) throw BudgetError(1, opts.vertex_budget);

  BallGraph ball;
  ball.R_ = R;
  ball.verts_.push_back(g.root());
  ball.radius_.push_back(0);
  ball.adj_.emplace_back();
  ball.index_.emplace(ball.verts_[0], 0u);
  ball.level_start_ = {0, 1};

  const int nlabels = g.label_count();
  const int nthreads = worker_count(opts.threads);
  const std::size_t chunk_cap = 16384;

  std::vector<NormalForm> nbr_buf;  // chunk_size * nlabels slots

  for (int L = 0; L <= R; ++L) {
    uint64_t lo = ball.level_start_[L], hi = ball.level_start_[L + 1];
    std::vector<NormalForm> new_forms;
    std::unordered_map<NormalForm, uint32_t, NormalFormHash> new_map;

    for (uint64_t chunk_lo = lo; chunk_lo < hi; chunk_lo += chunk_cap) {
      uint64_t chunk_hi = std::min(hi, chunk_lo + chunk_cap);
      std::size_t cn = chunk_hi - chunk_lo;
      nbr_buf.resize(cn * nlabels);

      auto work = [&](std::size_t begin, std::size_t end) {
        std::vector<NormalForm> local;
        for (std::size_t k = begin; k < end; ++k) {
          g.neighbors(ball.verts_[chunk_lo + k], local);
          for (int li = 0; li < nlabels; ++li)
            std::swap(nbr_buf[k * nlabels + li], local[li]);
        }
      };
      if (nthreads <= 1 || cn < 1024) {
        work(0, cn);
      } else {
        std::vector<std::thread> pool;
        std::size_t per = (cn + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
          std::size_t b = std::min(cn, t * per), e = std::min(cn, b + per);
          if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
      }

      for (std::size_t k = 0; k < cn; ++k) {
        auto& row = ball.adj_[chunk_lo + k];
        for (int li = 0; li < nlabels; ++li) {
          NormalForm& f = nbr_buf[k * nlabels + li];
          auto it = ball.index_.find(f);
          if (it != ball.index_.end()) {
            row.push_back({li, it->second});
          } else if (L < R) {
            auto [nit, inserted] = new_map.try_emplace(f, 0u);
            if (inserted) {
              nit->second = (uint32_t)new_forms.size();
              new_forms.push_back(f);
              if (ball.verts_.size() + new_forms.size() > opts.vertex_budget)
                throw BudgetError(ball.verts_.size() + new_forms.size(),
                                  opts.vertex_budget);
            }
            row.push_back({li, kNewFlag | nit->second});
          }
          // L == R and unseen: the neighbor lies outside the ball.
        }
      }
    }

    // Deterministic level order: sort the new level by payload.
    std::vector<uint32_t> order(new_forms.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
      return new_forms[x] < new_forms[y];
    });
    std::vector<uint32_t> rank(new_forms.size());
    for (uint32_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;

    uint32_t base = (uint32_t)ball.verts_.size();
    for (uint32_t pos = 0; pos < order.size(); ++pos) {
      ball.verts_.push_back(std::move(new_forms[order[pos]]));
      ball.radius_.push_back(L + 1);
      ball.adj_.emplace_back();
      ball.index_.emplace(ball.verts_.back(), base + pos);
    }
    for (uint64_t v = lo; v < hi; ++v)
      for (auto& e : ball.adj_[v])
        if (e.to & kNewFlag) e.to = base + rank[e.to & ~kNewFlag];

    ball.level_start_.push_back(ball.verts_.size());
  }
  return ball;
}

std::string ball_to_dot(const BallGraph& ball, const RootedGraphOracle& g,
                        const std::function<std::string(const NormalForm&)>&
                            vertex_text) {
  std::ostringstream out;
  out << "graph ball {\n";
  for (std::size_t i = 0; i < ball.size(); ++i)
    out << "  v" << i << " [label=\"" << vertex_text(ball.vertex(i))
        << "\"];\n";
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (const auto& e : ball.edges_of(i)) {
      bool self = e.to == i;
      if ((self && g.label_symbol(e.label).sign > 0) || (!self && e.to > i))
        out << "  v" << i << " -- v" << e.to << " [label=\""
            << g.label_name(e.label) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace endslab
