#include "gogbench/export.hpp"

#include <sstream>

#include "gogbench/config.hpp"

namespace gogbench {

namespace {

std::string render_free(const FreeWord& w) {
  // Letters of the quotient are named x0, x1, ... in generator order.
  std::ostringstream os;
  bool first = true;
  for (FreeLetter l : w) {
    if (!first) os << ' ';
    first = false;
    os << 'x' << (l > 0 ? l - 1 : -l - 1) << (l < 0 ? "^-1" : "");
  }
  return os.str();
}

}  // namespace

std::string export_ball(const BallGraph& ball, std::uint64_t config_hash) {
  std::ostringstream os;
  os << "# tree-of-spaces ball\n";
  os << "config-hash " << hex64(config_hash) << "\n";
  os << "radius " << ball.radius() << "\n";
  os << "vertices " << ball.size() << "\n";
  os << "edges " << ball.edge_count() << "\n";
  os << "[vertices]\n";
  for (std::size_t i = 0; i < ball.size(); ++i) {
    os << i << ' ' << ball.gamma(i) << ' ' << ball.depth(i) << ' '
       << render_normal_form(ball.graph(), ball.form(i)) << "\n";
  }
  os << "[edges]\n";
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::uint32_t j : ball.neighbors(i)) {
      if (i < j) os << i << ' ' << j << "\n";
    }
  }
  return os.str();
}

std::string export_cusped(const CuspedGraph& c, const BackendSpec& b) {
  std::ostringstream os;
  os << "# cusped graph\n";
  os << "radius " << c.radius << "\n";
  os << "depth " << c.max_depth << "\n";
  os << "vertices " << c.graph.size() << "\n";
  os << "edges " << c.graph.edge_count() << "\n";
  os << "[vertices]\n";
  for (std::size_t v = 0; v < c.graph.size(); ++v) {
    const std::string label = b.render(c.cayley[c.over[v]]);
    os << v << ' ' << c.depth[v] << ' ' << (c.guarded[v] ? 'g' : '-') << ' ' << (label.empty() ? "1" : label) << "\n";
  }
  os << "[edges]\n";
  for (std::size_t v = 0; v < c.graph.size(); ++v) {
    for (std::uint32_t w : c.graph.neighbors(v)) {
      if (v < w) os << v << ' ' << w << "\n";
    }
  }
  return os.str();
}

std::string distortion_csv(const DistortionProfile& p) {
  std::ostringstream os;
  os << "d_intrinsic,d_ambient,count\n";
  for (const auto& r : p.table) os << r.d_intrinsic << ',' << r.d_ambient << ',' << r.count << "\n";
  return os.str();
}

std::string dist_projs_csv(const DistProjsReport& r) {
  std::ostringstream os;
  os << "pair_id,d_edge,d_Yv,d_Yw,d_Xv\n";
  for (const auto& row : r.rows) {
    os << row.pair_id << ',' << row.d_edge << ',' << row.d_yv << ',' << row.d_yw << ',' << row.d_xv << "\n";
  }
  return os.str();
}

std::string proj_bound_csv(const ProjBoundReport& r) {
  std::ostringstream os;
  os << "onto_coset,from_coset,diameter,points_used\n";
  auto label = [&](const PeripheralLine& l) {
    const std::string gen = "<" + render_free(l.generator) + ">";
    return l.rep.empty() ? gen : render_free(l.rep) + " " + gen;
  };
  for (const auto& row : r.rows) {
    os << label(r.lines[row.onto]) << ',' << label(r.lines[row.from]) << ',' << row.diameter << ',' << row.used
       << "\n";
  }
  return os.str();
}

}  // namespace gogbench
