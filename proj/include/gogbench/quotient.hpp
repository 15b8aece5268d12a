#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gogbench/graph_of_groups.hpp"
#include "gogbench/rational.hpp"
#include "gogbench/tree_space.hpp"

namespace gogbench {

struct FreeWordHash {
  std::size_t operator()(const FreeWord& w) const noexcept;
};

/// Ball of radius r in the Cayley tree of a free group: the quotient Y_v of
/// a type-S vertex space, truncated.
class QuotientBall {
 public:
  /// Throws NotTypeS unless `vertex_group` is a Product with free rank >= 2.
  static QuotientBall of(const BackendSpec& vertex_group, int radius, const Budget& budget = {});
  static QuotientBall free(std::size_t rank, int radius, const Budget& budget = {});

  std::size_t rank() const { return rank_; }
  int radius() const { return radius_; }
  std::size_t size() const { return points_.size(); }
  const FreeWord& point(std::size_t i) const { return points_[i]; }
  int length(std::size_t i) const { return static_cast<int>(points_[i].size()); }
  std::optional<std::size_t> find(const FreeWord& w) const;
  /// Throws OutOfBall.
  std::size_t index_of(const FreeWord& w) const;
  /// Exact tree distance; geodesics between ball points stay in the ball.
  int distance(std::size_t a, std::size_t b) const;

 private:
  std::size_t rank_ = 0;
  int radius_ = 0;
  std::vector<FreeWord> points_;
  std::unordered_map<FreeWord, std::uint32_t, FreeWordHash> index_;
};

int free_distance(const FreeWord& a, const FreeWord& b);

/// pi_v: delete the central coordinate. Throws NotTypeS.
FreeWord project(const BackendSpec& b, const GroupElement& x);
FreeWord project(const BallGraph& ball, std::size_t i);

/// The point over y with the central coordinate of x. Throws OutOfBall when
/// y is outside `qb`.
GroupElement lift(const BackendSpec& b, const QuotientBall& qb, const GroupElement& x, const FreeWord& y);

/// The coset g<u> in the quotient ball, including the interior vertices of
/// each translate of u so the line is a connected path.
struct PeripheralLine {
  FreeWord rep;        // shortlex-least element of g<u>
  FreeWord generator;  // u
  std::vector<std::uint32_t> points;  // ascending ball indices

  bool contains(std::uint32_t i) const;
};

/// Throws EmptyLine when the coset misses the ball.
PeripheralLine peripheral_line(const QuotientBall& qb, const FreeWord& g, const FreeWord& u);
/// Every coset of <u> meeting the ball, ordered by representative.
std::vector<PeripheralLine> peripheral_lines(const QuotientBall& qb, const FreeWord& u);

struct Projection {
  std::vector<std::uint32_t> points;  // union of nearest points, ascending
  int diameter = 0;
  std::size_t used = 0;     // members of Z that entered the union
  std::size_t guarded = 0;  // members dropped because a nearest point lies on the ball boundary
};

/// Nearest points of `line` to each z in `z`; throws EmptyLine.
Projection closest_point_projection(const QuotientBall& qb, const PeripheralLine& line,
                                    std::span<const std::uint32_t> z);

struct ProjBoundRow {
  std::size_t onto = 0;  // index into `lines`
  std::size_t from = 0;
  int diameter = 0;
  std::size_t used = 0;
};

struct ProjBoundReport {
  std::vector<PeripheralLine> lines;
  std::vector<ProjBoundRow> rows;  // ordered pairs of distinct lines with used > 0
  std::size_t guarded_pairs = 0;   // pairs where every point was guarded
  int max_diameter = 0;
};

/// Projections between all ordered pairs of distinct peripheral lines for the
/// given generators.
ProjBoundReport proj_bound(const QuotientBall& qb, const std::vector<FreeWord>& peripherals);

struct DistProjsRow {
  std::uint64_t pair_id = 0;
  int d_edge = 0;
  int d_yv = 0;
  int d_yw = 0;
  int d_xv = 0;
};

struct DistProjsReport {
  EdgeId edge = 0;
  int radius = 0;
  std::size_t points = 0;
  std::vector<DistProjsRow> rows;
  /// Least K with d/K <= d_yv + d_yw <= K d over pairs with d_xv >= 3;
  /// nullopt when some such pair has d_yv + d_yw = 0.
  std::optional<Fraction> K;
  Fraction A{0};
  Fraction cap_K{2};
  Fraction cap_A{2};
  std::vector<std::uint64_t> violations;  // pair ids outside the cap
};

/// Compares d_Xv(x, y) with d_Yv(pi x, pi y) + d_Yw(pi tau x, pi tau y) over
/// all pairs of edge-group elements of word length <= radius in the source
/// vertex group. Throws NotTypeS.
DistProjsReport verify_dist_projs(const GraphOfGroups& g, EdgeId e, int radius, Fraction cap_K = Fraction(2),
                                  Fraction cap_A = Fraction(2), const Budget& budget = {});

}  // namespace gogbench
