#include "gogbench/distortion.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>

#include "gogbench/errors.hpp"

namespace gogbench {

int intrinsic_distance(const BallGraph& ball, const SubspaceSelection& s, IntrinsicMetric metric, std::size_t a,
                       std::size_t b) {
  if (metric == IntrinsicMetric::Ambient) return ball.distance(a, b);
  const GraphOfGroups& g = ball.graph();
  const BackendSpec& bk = g.backend(ball.gamma(a));
  const GroupElement diff = bk.multiply(bk.invert(ball.local(a)), ball.local(b));
  if (metric == IntrinsicMetric::VertexWord) return static_cast<int>(bk.word_length(diff));
  const auto* where = std::get_if<TreeEdgeId>(&s.where);
  if (!where) throw EmptySelection("edge metric needs an edge-space selection");
  const OrientedEdge& e = g.edge(where->edge);
  const auto k = g.edge_membership(diff, e.id);
  if (!k) throw ValidationFailed("points of one edge space differ by an element outside the edge group");
  return static_cast<int>(std::llabs(k->k1) * bk.word_length(e.basis[0]) +
                          std::llabs(k->k2) * bk.word_length(e.basis[1]));
}

DistortionProfile distortion_profile(const BallGraph& ball, const SubspaceSelection& s, IntrinsicMetric metric,
                                     std::optional<std::uint64_t> seed) {
  if (s.empty()) throw EmptySelection("distortion over an empty selection");
  DistortionProfile out;
  std::map<std::pair<int, int>, std::uint64_t> counts;

  auto record = [&](std::size_t a, std::size_t b, const std::vector<int>& from_a) {
    ++out.pairs;
    const int amb = from_a[b];
    if (!ball.certified(a, b, amb)) return;
    ++out.certified;
    const int in = metric == IntrinsicMetric::Ambient ? amb : intrinsic_distance(ball, s, metric, a, b);
    ++counts[{in, amb}];
  };

  const auto& m = s.members;
  if (m.size() <= kExhaustiveLimit) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto from = ball.distances_from(m[i]);
      for (std::size_t j = i + 1; j < m.size(); ++j) record(m[i], m[j], from);
    }
  } else {
    if (!seed) throw MissingSeed("selection has " + std::to_string(m.size()) + " points; sampling needs a seed");
    out.sampled = true;
    std::mt19937_64 rng(*seed);
    // Sources are a seeded subset; targets are drawn uniformly per source.
    const std::size_t sources = 316;
    const std::size_t per_source = (kSampledPairs + sources - 1) / sources;
    std::vector<std::uint32_t> order(m.begin(), m.end());
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<std::size_t> pick(0, m.size() - 1);
    for (std::size_t i = 0; i < sources && out.pairs < kSampledPairs; ++i) {
      const auto from = ball.distances_from(order[i]);
      for (std::size_t j = 0; j < per_source && out.pairs < kSampledPairs; ++j) {
        std::size_t t = m[pick(rng)];
        if (t == order[i]) t = m[(pick(rng))];
        if (t == order[i]) continue;
        record(order[i], t, from);
      }
    }
  }

  bool have_long = false;
  for (const auto& [key, n] : counts) {
    out.table.push_back({key.first, key.second, n});
    const auto [in, amb] = key;
    if (amb >= 1) {
      const Fraction r(in, amb);
      if (!out.max_ratio || r > *out.max_ratio) out.max_ratio = r;
    }
    if (amb >= 3) {
      const Fraction r(in, amb);
      if (!have_long || r > out.K) out.K = r;
      have_long = true;
    }
  }
  if (!have_long) out.K = Fraction(1);
  for (const auto& row : out.table) {
    const Fraction slack = Fraction(row.d_intrinsic) - out.K * Fraction(row.d_ambient);
    if (slack > out.A) out.A = slack;
  }
  return out;
}

}  // namespace gogbench
