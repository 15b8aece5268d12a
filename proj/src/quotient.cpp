#include "gogbench/quotient.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

#include "gogbench/errors.hpp"

namespace gogbench {

std::size_t FreeWordHash::operator()(const FreeWord& w) const noexcept {
  std::size_t h = 14695981039346656037ull;
  for (FreeLetter l : w) {
    h ^= static_cast<std::uint16_t>(l);
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void require_type_s(const BackendSpec& b) {
  if (b.kind() != BackendKind::Product || b.free_rank() < 2) {
    throw NotTypeS("vertex group is not of the form F_k x Z with k >= 2");
  }
}

}  // namespace

QuotientBall QuotientBall::of(const BackendSpec& vertex_group, int radius, const Budget& budget) {
  require_type_s(vertex_group);
  return free(vertex_group.free_rank(), radius, budget);
}

QuotientBall QuotientBall::free(std::size_t rank, int radius, const Budget& budget) {
  QuotientBall q;
  q.rank_ = rank;
  q.radius_ = radius;
  q.points_.push_back({});
  q.index_.emplace(FreeWord{}, 0);
  for (std::size_t i = 0; i < q.points_.size(); ++i) {
    if (static_cast<int>(q.points_[i].size()) >= radius) continue;
    for (std::size_t gen = 0; gen < rank; ++gen) {
      for (int sign : {1, -1}) {
        const auto l = static_cast<FreeLetter>(sign * static_cast<int>(gen + 1));
        if (!q.points_[i].empty() && q.points_[i].back() == -l) continue;
        FreeWord w = q.points_[i];
        w.push_back(l);
        if (q.points_.size() >= budget.max_vertices) throw BudgetExceeded("quotient ball exceeds the vertex budget");
        q.index_.emplace(w, static_cast<std::uint32_t>(q.points_.size()));
        q.points_.push_back(std::move(w));
      }
    }
  }
  return q;
}

std::optional<std::size_t> QuotientBall::find(const FreeWord& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t QuotientBall::index_of(const FreeWord& w) const {
  auto i = find(w);
  if (!i) throw OutOfBall("point outside the quotient ball of radius " + std::to_string(radius_));
  return *i;
}

int free_distance(const FreeWord& a, const FreeWord& b) {
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
  return static_cast<int>(a.size() + b.size() - 2 * common);
}

int QuotientBall::distance(std::size_t a, std::size_t b) const { return free_distance(points_[a], points_[b]); }

FreeWord project(const BackendSpec& b, const GroupElement& x) {
  require_type_s(b);
  if (!b.owns(x)) throw BackendMismatch("element does not belong to the vertex group");
  return x.free;
}

FreeWord project(const BallGraph& ball, std::size_t i) {
  return project(ball.graph().backend(ball.gamma(i)), ball.local(i));
}

GroupElement lift(const BackendSpec& b, const QuotientBall& qb, const GroupElement& x, const FreeWord& y) {
  require_type_s(b);
  qb.index_of(y);
  return b.make_product(y, x.abelian.at(0));
}

bool PeripheralLine::contains(std::uint32_t i) const { return std::binary_search(points.begin(), points.end(), i); }

PeripheralLine peripheral_line(const QuotientBall& qb, const FreeWord& g, const FreeWord& u) {
  if (u.empty()) throw IdentityBase("peripheral generator is trivial");
  PeripheralLine line{free_coset_rep(g, u), u, {}};
  const CyclicSplit split = cyclic_split(u);
  const std::int64_t reach =
      (qb.radius() + static_cast<std::int64_t>(line.rep.size() + 2 * split.conjugator.size() + u.size())) /
          static_cast<std::int64_t>(split.core.size()) +
      1;
  std::set<std::uint32_t> pts;
  for (std::int64_t k = -reach; k <= reach; ++k) {
    FreeWord w = free_multiply(line.rep, free_power(u, k));
    for (FreeLetter l : u) {
      if (auto i = qb.find(w)) pts.insert(static_cast<std::uint32_t>(*i));
      push_reduced(w, l);
    }
  }
  if (pts.empty()) throw EmptyLine("coset misses the quotient ball");
  line.points.assign(pts.begin(), pts.end());
  return line;
}

std::vector<PeripheralLine> peripheral_lines(const QuotientBall& qb, const FreeWord& u) {
  std::map<FreeWord, bool, bool (*)(const FreeWord&, const FreeWord&)> reps(
      [](const FreeWord& a, const FreeWord& b) { return shortlex_less(a, b); });
  for (std::size_t i = 0; i < qb.size(); ++i) reps.emplace(free_coset_rep(qb.point(i), u), true);
  std::vector<PeripheralLine> out;
  out.reserve(reps.size());
  for (const auto& [rep, unused] : reps) out.push_back(peripheral_line(qb, rep, u));
  return out;
}

Projection closest_point_projection(const QuotientBall& qb, const PeripheralLine& line,
                                    std::span<const std::uint32_t> z) {
  if (line.points.empty()) throw EmptyLine("empty peripheral line");
  Projection out;
  std::set<std::uint32_t> uni;
  std::vector<std::uint32_t> nearest;
  for (std::uint32_t p : z) {
    int best = std::numeric_limits<int>::max();
    nearest.clear();
    for (std::uint32_t q : line.points) {
      const int d = qb.distance(p, q);
      if (d < best) {
        best = d;
        nearest.assign(1, q);
      } else if (d == best) {
        nearest.push_back(q);
      }
    }
    const bool touches_boundary =
        std::any_of(nearest.begin(), nearest.end(), [&](std::uint32_t q) { return qb.length(q) >= qb.radius(); });
    if (touches_boundary) {
      ++out.guarded;
      continue;
    }
    ++out.used;
    uni.insert(nearest.begin(), nearest.end());
  }
  out.points.assign(uni.begin(), uni.end());
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    for (std::size_t j = i + 1; j < out.points.size(); ++j) {
      out.diameter = std::max(out.diameter, qb.distance(out.points[i], out.points[j]));
    }
  }
  return out;
}

ProjBoundReport proj_bound(const QuotientBall& qb, const std::vector<FreeWord>& peripherals) {
  ProjBoundReport r;
  std::set<std::vector<std::uint32_t>> seen;
  for (const FreeWord& u : peripherals) {
    for (PeripheralLine& l : peripheral_lines(qb, u)) {
      if (seen.insert(l.points).second) r.lines.push_back(std::move(l));
    }
  }
  for (std::size_t i = 0; i < r.lines.size(); ++i) {
    for (std::size_t j = 0; j < r.lines.size(); ++j) {
      if (i == j) continue;
      const Projection p = closest_point_projection(qb, r.lines[i], r.lines[j].points);
      if (p.used == 0) {
        ++r.guarded_pairs;
        continue;
      }
      r.rows.push_back({i, j, p.diameter, p.used});
      r.max_diameter = std::max(r.max_diameter, p.diameter);
    }
  }
  return r;
}

DistProjsReport verify_dist_projs(const GraphOfGroups& g, EdgeId e, int radius, Fraction cap_K, Fraction cap_A,
                                  const Budget& budget) {
  const OrientedEdge& edge = g.edge(e);
  const BackendSpec& bv = g.backend(edge.source);
  const BackendSpec& bw = g.backend(edge.target);
  require_type_s(bv);
  require_type_s(bw);
  g.require_valid();

  std::vector<GroupElement> pts;
  for (GroupElement& x : ball(bv, radius, budget)) {
    if (g.edge_membership(x, e)) pts.push_back(std::move(x));
  }
  if (pts.empty()) throw EmptyEdgeSpace("edge space is empty");

  DistProjsReport r;
  r.edge = e;
  r.radius = radius;
  r.points = pts.size();
  r.cap_K = cap_K;
  r.cap_A = cap_A;
  const std::int64_t len0 = bv.word_length(edge.basis[0]);
  const std::int64_t len1 = bv.word_length(edge.basis[1]);
  std::uint64_t id = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const GroupElement diff = bv.multiply(bv.invert(pts[i]), pts[j]);
      const EdgeCoordinates k = *g.edge_membership(diff, e);
      DistProjsRow row;
      row.pair_id = id++;
      row.d_edge = static_cast<int>(std::llabs(k.k1) * len0 + std::llabs(k.k2) * len1);
      row.d_xv = static_cast<int>(bv.word_length(diff));
      row.d_yv = static_cast<int>(diff.free.size());
      row.d_yw = static_cast<int>(g.tau(e, diff).free.size());
      r.rows.push_back(row);
    }
  }

  bool unbounded = false;
  bool have_long = false;
  Fraction K(1);
  for (const auto& row : r.rows) {
    if (row.d_xv < 3) continue;
    const std::int64_t s = row.d_yv + row.d_yw;
    if (s == 0) {
      unbounded = true;
      continue;
    }
    const Fraction ratio = std::max(Fraction(s, row.d_xv), Fraction(row.d_xv, s));
    if (!have_long || ratio > K) K = ratio;
    have_long = true;
  }
  if (!unbounded) {
    r.K = have_long ? K : Fraction(1);
    for (const auto& row : r.rows) {
      const Fraction s(row.d_yv + row.d_yw);
      const Fraction d(row.d_xv);
      r.A = std::max({r.A, s - *r.K * d, d * Fraction(r.K->den, r.K->num) - s});
    }
  }
  const Fraction inv_cap(cap_K.den, cap_K.num);
  for (const auto& row : r.rows) {
    const Fraction s(row.d_yv + row.d_yw);
    const Fraction d(row.d_xv);
    if (s > cap_K * d + cap_A || s < d * inv_cap - cap_A) r.violations.push_back(row.pair_id);
  }
  return r;
}

}  // namespace gogbench
