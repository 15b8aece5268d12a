#include "gogbench/cusped.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <unordered_map>

#include "gogbench/errors.hpp"

namespace gogbench {

std::size_t FiniteGraph::add_vertex() {
  adj_.emplace_back();
  return adj_.size() - 1;
}

void FiniteGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b || has_edge(a, b)) return;
  adj_[a].push_back(static_cast<std::uint32_t>(b));
  adj_[b].push_back(static_cast<std::uint32_t>(a));
  ++edges_;
}

bool FiniteGraph::has_edge(std::size_t a, std::size_t b) const {
  const auto& n = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
  const std::size_t other = adj_[a].size() <= adj_[b].size() ? b : a;
  return std::find(n.begin(), n.end(), static_cast<std::uint32_t>(other)) != n.end();
}

std::vector<int> FiniteGraph::distances_from(std::size_t source) const {
  std::vector<int> d(size(), -1);
  std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(source)};
  d[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    for (std::uint32_t w : adj_[u]) {
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return d;
}

bool FiniteGraph::connected() const {
  if (size() == 0) return true;
  const auto d = distances_from(0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

FiniteGraph path_graph(std::size_t n) {
  FiniteGraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

FiniteGraph cycle_graph(std::size_t n) {
  FiniteGraph g = path_graph(n);
  if (n > 2) g.add_edge(n - 1, 0);
  return g;
}

std::string HalfInteger::str() const {
  const std::int64_t whole = twice / 2;
  if (twice % 2 == 0) return std::to_string(whole);
  return (twice < 0 && whole == 0 ? "-0" : std::to_string(whole)) + ".5";
}

namespace {

std::int64_t horizontal_reach(int n) { return n >= 62 ? std::numeric_limits<std::int64_t>::max() : (1ll << n); }

// Adds horoball depths 1..D over `base` (global ids `base_ids`, already in
// `g`); returns the global ids of the new vertices by (t, n).
void attach_horoball(FiniteGraph& g, const FiniteGraph& base, const std::vector<std::size_t>& base_ids, int depth,
                     std::vector<std::size_t>& layer_ids) {
  const std::size_t m = base.size();
  std::vector<std::vector<int>> dt(m);
  for (std::size_t t = 0; t < m; ++t) {
    dt[t] = base.distances_from(t);
    for (int x : dt[t]) {
      if (x < 0) throw DisconnectedBase("horoball base graph is disconnected");
    }
  }
  layer_ids.assign(m * static_cast<std::size_t>(depth + 1), 0);
  for (std::size_t t = 0; t < m; ++t) layer_ids[t] = base_ids[t];
  for (int n = 1; n <= depth; ++n) {
    for (std::size_t t = 0; t < m; ++t) layer_ids[n * m + t] = g.add_vertex();
  }
  for (int n = 0; n <= depth; ++n) {
    const std::int64_t reach = horizontal_reach(n);
    for (std::size_t t = 0; t < m; ++t) {
      if (n < depth) g.add_edge(layer_ids[n * m + t], layer_ids[(n + 1) * m + t]);
      if (n == 0) continue;  // depth 0 is the base graph itself
      for (std::size_t s = t + 1; s < m; ++s) {
        if (dt[t][s] <= reach) g.add_edge(layer_ids[n * m + t], layer_ids[n * m + s]);
      }
    }
  }
}

}  // namespace

HoroballGraph build_horoball(const FiniteGraph& base, int depth) {
  if (depth < 0) throw SchemaError("horoball depth must be nonnegative");
  if (!base.connected()) throw DisconnectedBase("horoball base graph is disconnected");
  HoroballGraph h{FiniteGraph(base.size()), base.size(), depth};
  std::vector<std::size_t> ids(base.size());
  for (std::size_t t = 0; t < base.size(); ++t) {
    ids[t] = t;
    for (std::uint32_t s : base.neighbors(t)) h.graph.add_edge(t, s);
  }
  std::vector<std::size_t> layers;
  attach_horoball(h.graph, base, ids, depth, layers);
  return h;
}

namespace {

GroupElement coset_key(const GroupElement& g, const GroupElement& u) {
  GroupElement key = g;
  if (!u.free.empty()) {
    key.free = free_coset_rep(g.free, u.free);
  } else {
    for (std::size_t i = 0; i < u.abelian.size(); ++i) {
      if (u.abelian[i] != 0) key.abelian[i] = 0;
    }
  }
  return key;
}

}  // namespace

CuspedGraph build_cusped(const BackendSpec& b, const GroupElement& u, int radius, int depth, const Budget& budget) {
  if (!b.owns(u) || b.word_length(u) != 1) throw SchemaError("peripheral element must be a single generator");
  if (radius < 0 || depth < 0) throw SchemaError("radius and depth must be nonnegative");
  CuspedGraph c;
  c.radius = radius;
  c.max_depth = depth;
  c.cayley = ball(b, radius, budget);
  const std::size_t n = c.cayley.size();
  std::unordered_map<GroupElement, std::uint32_t, GroupElementHash> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(c.cayley[i], static_cast<std::uint32_t>(i));
  c.graph = FiniteGraph(n);
  const auto gens = b.generators();
  for (std::size_t i = 0; i < n; ++i) {
    for (const GroupElement& s : gens) {
      auto it = index.find(b.multiply(c.cayley[i], s));
      if (it != index.end()) c.graph.add_edge(i, it->second);
    }
  }
  c.depth.assign(n, 0);
  c.over.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.over[i] = static_cast<std::uint32_t>(i);

  std::vector<std::pair<GroupElement, std::vector<std::size_t>>> cosets;
  {
    std::unordered_map<GroupElement, std::size_t, GroupElementHash> slot;
    for (std::size_t i = 0; i < n; ++i) {
      GroupElement key = coset_key(c.cayley[i], u);
      auto [it, inserted] = slot.emplace(key, cosets.size());
      if (inserted) cosets.push_back({key, {}});
      cosets[it->second].second.push_back(i);
    }
  }
  c.coset_count = cosets.size();
  const std::size_t expected = n + n * static_cast<std::size_t>(depth);
  if (expected > budget.max_vertices) throw BudgetExceeded("cusped graph exceeds the vertex budget");

  for (const auto& [key, members] : cosets) {
    FiniteGraph base(members.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t bi = a + 1; bi < members.size(); ++bi) {
        if (c.graph.has_edge(members[a], members[bi])) base.add_edge(a, bi);
      }
    }
    std::vector<std::size_t> layers;
    attach_horoball(c.graph, base, members, depth, layers);
    for (int level = 1; level <= depth; ++level) {
      for (std::size_t t = 0; t < members.size(); ++t) {
        c.depth.push_back(level);
        c.over.push_back(static_cast<std::uint32_t>(members[t]));
      }
    }
  }

  std::vector<bool> frontier(c.graph.size(), false);
  for (std::size_t v = 0; v < c.graph.size(); ++v) {
    if (b.word_length(c.cayley[c.over[v]]) >= radius || (depth > 0 && c.depth[v] == depth)) frontier[v] = true;
  }
  c.guarded = frontier;
  for (std::size_t v = 0; v < c.graph.size(); ++v) {
    if (!frontier[v]) continue;
    for (std::uint32_t w : c.graph.neighbors(v)) c.guarded[w] = true;
  }
  return c;
}

std::string to_string(DeltaMethod m) {
  switch (m) {
    case DeltaMethod::FourPoint:
      return "four-point";
    case DeltaMethod::Basepoint:
      return "basepoint";
    case DeltaMethod::MaxMin:
      return "max-min";
  }
  return "?";
}

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned slot) {
    for (std::size_t i = next++; i < n; i = next++) body(i, slot);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& t : pool) t.join();
}

inline int defect(int s1, int s2, int s3) {
  // largest minus median of three sums
  if (s1 < s2) std::swap(s1, s2);
  if (s2 < s3) std::swap(s2, s3);
  if (s1 < s2) std::swap(s1, s2);
  return s1 - s2;
}

}  // namespace

DeltaEstimate estimate_delta(const FiniteGraph& g, DeltaMethod method, const DeltaOptions& options) {
  if (!g.connected()) throw Disconnected("graph is disconnected");
  DeltaEstimate est;
  est.method = method;
  est.guarded = options.excluded != nullptr;
  std::vector<std::uint32_t> cert;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!options.excluded || !(*options.excluded)[v]) cert.push_back(static_cast<std::uint32_t>(v));
  }
  est.certified_vertices = cert.size();
  const std::size_t m = cert.size();
  if (method == DeltaMethod::Basepoint) {
    if (options.basepoint >= g.size()) throw NotInBall("basepoint outside the graph");
    const auto dw = g.distances_from(options.basepoint);
    std::vector<std::vector<int>> d(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto full = g.distances_from(cert[i]);
      d[i].resize(m);
      for (std::size_t j = 0; j < m; ++j) d[i][j] = full[cert[j]];
    }
    int best = 0;
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (cert[i] == options.basepoint) continue;
      for (std::size_t j = i + 1; j < m; ++j) {
        if (cert[j] == options.basepoint) continue;
        for (std::size_t k = j + 1; k < m; ++k) {
          if (cert[k] == options.basepoint) continue;
          ++count;
          best = std::max(best, defect(d[i][j] + dw[cert[k]], d[i][k] + dw[cert[j]], d[j][k] + dw[cert[i]]));
        }
      }
    }
    est.delta.twice = best;
    est.certified_quadruples = count;
    return est;
  }

  std::vector<int> dist(m * m);
  parallel_for(m, options.threads, [&](std::size_t i, unsigned) {
    const auto full = g.distances_from(cert[i]);
    for (std::size_t j = 0; j < m; ++j) dist[i * m + j] = full[cert[j]];
  });
  auto d = [&](std::size_t i, std::size_t j) { return dist[i * m + j]; };
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  std::vector<int> best(threads, 0);

  if (method == DeltaMethod::FourPoint) {
    parallel_for(m, threads, [&](std::size_t i, unsigned slot) {
      int local = best[slot];
      for (std::size_t j = i + 1; j < m; ++j) {
        const int dij = d(i, j);
        for (std::size_t k = j + 1; k < m; ++k) {
          const int dik = d(i, k);
          const int djk = d(j, k);
          const int* rowi = &dist[i * m];
          const int* rowj = &dist[j * m];
          const int* rowk = &dist[k * m];
          for (std::size_t l = k + 1; l < m; ++l) {
            local = std::max(local, defect(dij + rowk[l], dik + rowj[l], djk + rowi[l]));
          }
        }
      }
      best[slot] = local;
    });
    const std::uint64_t mm = m;
    est.certified_quadruples = m < 4 ? 0 : mm * (mm - 1) * (mm - 2) * (mm - 3) / 24;
  } else {
    parallel_for(m, threads, [&](std::size_t w, unsigned slot) {
      // a[x][y] = 2 (x|y)_w
      std::vector<int> a(m * m);
      for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = 0; y < m; ++y) a[x * m + y] = d(x, w) + d(y, w) - d(x, y);
      }
      int local = best[slot];
      for (std::size_t x = 0; x < m; ++x) {
        const int* ax = &a[x * m];
        for (std::size_t y = x + 1; y < m; ++y) {
          const int* ay = &a[y * m];
          int mm = 0;
          for (std::size_t z = 0; z < m; ++z) mm = std::max(mm, std::min(ax[z], ay[z]));
          local = std::max(local, mm - ax[y]);
        }
      }
      best[slot] = local;
    });
    const std::uint64_t mm = m;
    est.certified_quadruples = mm * mm * mm * mm;
  }
  est.delta.twice = *std::max_element(best.begin(), best.end());
  return est;
}

HalfInteger gromov_product(const FiniteGraph& g, std::size_t x, std::size_t y, std::size_t w) {
  const auto dw = g.distances_from(w);
  const auto dx = g.distances_from(x);
  if (dw[x] < 0 || dw[y] < 0 || dx[y] < 0) throw Disconnected("points lie in different components");
  return {dw[x] + dw[y] - dx[y]};
}

}  // namespace gogbench
