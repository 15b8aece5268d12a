// Command-line front end: one subcommand per experiment.

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gogbench/admissibility.hpp"
#include "gogbench/config.hpp"
#include "gogbench/cusped.hpp"
#include "gogbench/distortion.hpp"
#include "gogbench/errors.hpp"
#include "gogbench/export.hpp"
#include "gogbench/normal_form.hpp"
#include "gogbench/quotient.hpp"
#include "gogbench/tree_space.hpp"

namespace gb = gogbench;

namespace {

enum Exit { kPass = 0, kOther = 1, kThreshold = 2, kValidation = 3, kBudget = 4, kParse = 5 };

// Flat "key: value" record; the first line names the experiment.
class Report {
 public:
  explicit Report(std::string experiment) { add("experiment", std::move(experiment)); }

  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    lines_.push_back(key + ": " + os.str());
  }
  void fail(const std::string& why) {
    ok_ = false;
    add("threshold-failed", why);
  }
  bool ok() const { return ok_; }

  std::string text(double millis) const {
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    out += std::string("status: ") + (ok_ ? "pass" : "fail") + "\n";
    out += "wall-clock-ms: " + std::to_string(static_cast<long long>(millis)) + "\n";
    return out;
  }

 private:
  std::vector<std::string> lines_;
  bool ok_ = true;
};

struct Common {
  std::size_t budget = 5'000'000;
  std::string report_path;
  std::string csv_path;
};

gb::Budget budget_of(const Common& c) { return gb::Budget{c.budget}; }

void emit_csv(const Common& c, const std::string& csv) {
  if (!c.csv_path.empty()) gb::write_atomic(c.csv_path, csv);
}

int finish(const Common& c, const Report& r, std::chrono::steady_clock::time_point start) {
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const std::string text = r.text(ms);
  std::cout << text;
  if (!c.report_path.empty()) gb::write_atomic(c.report_path, text);
  return r.ok() ? kPass : kThreshold;
}

void describe_config(Report& r, const gb::WorkbenchConfig& cfg) {
  r.add("config", cfg.origin);
  r.add("config-hash", gb::hex64(cfg.hash));
}

int int_field(const gb::WorkbenchConfig& cfg, const std::string& exp, const std::string& key, int fallback) {
  auto v = cfg.field(exp, key);
  if (!v) return fallback;
  try {
    return std::stoi(*v);
  } catch (const std::exception&) {
    throw gb::SchemaError("[experiment " + exp + "] field '" + key + "' is not an integer");
  }
}

gb::Fraction parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      const auto dot = s.find('.');
      if (dot == std::string::npos) return gb::Fraction(std::stoll(s));
      const std::string frac = s.substr(dot + 1);
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      return gb::Fraction(std::stoll(s.substr(0, dot) + frac), den);
    }
    return gb::Fraction(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw gb::SchemaError("not a number: '" + s + "'");
  }
}

gb::BackendSpec named_backend(const std::string& name) {
  if (name == "free2") return gb::BackendSpec::free({"x", "y"});
  if (name == "free3") return gb::BackendSpec::free({"x", "y", "w"});
  if (name == "z2") return gb::BackendSpec::free_abelian({"x", "y"});
  throw gb::SchemaError("unknown base '" + name + "' (expected free2, free3 or z2)");
}

int run_check_admissible(const Common& c, const std::string& path, std::optional<int> radius_opt) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = gb::parse_config(path);
  const int radius = radius_opt.value_or(int_field(cfg, "check-admissible", "radius", 4));
  const auto g = cfg.graph();
  const auto rep = gb::check_admissibility(g, radius, budget_of(c));
  Report r("check-admissible");
  describe_config(r, cfg);
  r.add("radius", radius);
  for (std::size_t i = 0; i < rep.conditions.size(); ++i) {
    const auto& cond = rep.conditions[i];
    const std::string key = "condition-" + std::to_string(i + 1);
    r.add(key, gb::to_string(cond.verdict) + (cond.exact ? " (exact)" : " (radius-bounded)") + " " + cond.name);
    if (!cond.detail.empty()) r.add(key + "-detail", cond.detail);
    for (const auto& w : cond.witnesses) r.add(key + "-witness", w);
    if (cond.verdict != gb::Verdict::Pass) r.fail(key);
  }
  for (const auto& k : rep.kernel_indices) {
    r.add("kernel-index-edge-" + std::to_string(k.edge), k.index ? std::to_string(*k.index) : std::string("infinite"));
  }
  r.add("sampled-triples", rep.sampled_triples);
  return finish(c, r, start);
}

int run_build_ball(const Common& c, const std::string& path, std::optional<int> radius_opt,
                   const std::string& export_path) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = gb::parse_config(path);
  const int radius = radius_opt.value_or(int_field(cfg, "build-ball", "radius", 3));
  const auto g = cfg.graph();
  const auto ball = gb::BallGraph::build(g, radius, budget_of(c));
  Report r("build-ball");
  describe_config(r, cfg);
  r.add("radius", radius);
  r.add("vertices", ball.size());
  r.add("edges", ball.edge_count());
  const auto t = gb::tree_ball(ball);
  r.add("tree-nodes", t.nodes.size());
  r.add("tree-edges", t.edges.size() / 2);
  if (!export_path.empty()) gb::write_atomic(export_path, gb::export_ball(ball, cfg.hash));
  return finish(c, r, start);
}

std::vector<int> parse_radii(const std::string& s) {
  std::vector<int> out;
  std::istringstream in(s);
  for (std::string tok; in >> tok;) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw gb::SchemaError("bad radius '" + tok + "'");
    }
  }
  if (out.empty()) throw gb::SchemaError("no radius given");
  return out;
}

struct DistortionArgs {
  std::string config;
  std::optional<int> edge;
  std::optional<int> vertex;
  std::string radii;
  std::string metric = "auto";
  std::optional<std::uint64_t> seed;
  std::string max_k;
  std::string max_a;
  std::string max_k_spread;
};

int run_distortion(const Common& c, const DistortionArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = gb::parse_config(a.config);
  const auto g = cfg.graph();
  std::optional<std::uint64_t> seed = a.seed;
  if (!seed) {
    if (auto f = cfg.field("distortion", "seed")) {
      try {
        seed = std::stoull(*f);
      } catch (const std::exception&) {
        throw gb::SchemaError("bad seed '" + *f + "'");
      }
    }
  }
  if (!seed) throw gb::MissingSeed("distortion requires a seed (--seed or [experiment distortion] seed)");
  std::optional<int> edge = a.edge;
  if (!edge && !a.vertex && cfg.field("distortion", "edge")) edge = int_field(cfg, "distortion", "edge", 0);
  if (edge.has_value() == a.vertex.has_value()) throw gb::SchemaError("give exactly one of --edge and --vertex");
  std::string radii_text = a.radii;
  if (radii_text.empty()) radii_text = cfg.field("distortion", "radii").value_or("4 5 6");
  const auto radii = parse_radii(radii_text);

  gb::IntrinsicMetric metric = edge ? gb::IntrinsicMetric::EdgeL1 : gb::IntrinsicMetric::VertexWord;
  if (a.metric == "ambient") metric = gb::IntrinsicMetric::Ambient;
  else if (a.metric == "edge") metric = gb::IntrinsicMetric::EdgeL1;
  else if (a.metric == "vertex") metric = gb::IntrinsicMetric::VertexWord;
  else if (a.metric != "auto") throw gb::SchemaError("unknown metric '" + a.metric + "'");

  Report r("distortion");
  describe_config(r, cfg);
  r.add("selection", edge ? "edge " + std::to_string(*edge) : "vertex " + std::to_string(*a.vertex));
  r.add("metric", a.metric);
  r.add("seed", *seed);
  std::optional<gb::Fraction> kmin;
  std::optional<gb::Fraction> kmax;
  std::string csv;
  for (int radius : radii) {
    const auto ball = gb::BallGraph::build(g, radius, budget_of(c));
    const auto sel = edge ? gb::subspace(ball, gb::base_edge(g, *edge)) : gb::subspace(ball, gb::base_node(g, *a.vertex));
    const auto p = gb::distortion_profile(ball, sel, metric, seed);
    const std::string pre = "r" + std::to_string(radius) + "-";
    r.add(pre + "points", sel.size());
    r.add(pre + "pairs", p.pairs);
    r.add(pre + "certified", p.certified);
    r.add(pre + "sampled", p.sampled ? "yes" : "no");
    r.add(pre + "K", p.K.str());
    r.add(pre + "A", p.A.str());
    r.add(pre + "max-ratio", p.max_ratio ? p.max_ratio->str() : std::string("none"));
    if (!a.max_k.empty() && p.K > parse_fraction(a.max_k)) r.fail(pre + "K above " + a.max_k);
    if (!a.max_a.empty() && p.A > parse_fraction(a.max_a)) r.fail(pre + "A above " + a.max_a);
    if (!kmin || p.K < *kmin) kmin = p.K;
    if (!kmax || p.K > *kmax) kmax = p.K;
    std::string body = gb::distortion_csv(p);
    if (radii.size() > 1) {
      // Prefix the radius column when several radii share one file.
      std::istringstream in(body);
      std::string line;
      std::getline(in, line);
      if (csv.empty()) csv = "radius," + line + "\n";
      while (std::getline(in, line)) csv += std::to_string(radius) + "," + line + "\n";
    } else {
      csv = body;
    }
  }
  const gb::Fraction spread = *kmax - *kmin;
  r.add("K-spread", spread.str());
  if (!a.max_k_spread.empty() && spread > parse_fraction(a.max_k_spread)) r.fail("K spread above " + a.max_k_spread);
  emit_csv(c, csv);
  return finish(c, r, start);
}

int run_dist_projs(const Common& c, const std::string& path, std::optional<int> edge_opt, std::optional<int> radius_opt,
                   const std::string& cap_k, const std::string& cap_a) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = gb::parse_config(path);
  const auto g = cfg.graph();
  const int edge = edge_opt.value_or(int_field(cfg, "dist-projs", "edge", g.edge_ids().front()));
  const int radius = radius_opt.value_or(int_field(cfg, "dist-projs", "radius", 6));
  const gb::Fraction k = parse_fraction(cap_k.empty() ? cfg.field("dist-projs", "cap-k").value_or("2") : cap_k);
  const gb::Fraction a = parse_fraction(cap_a.empty() ? cfg.field("dist-projs", "cap-a").value_or("2") : cap_a);
  const auto rep = gb::verify_dist_projs(g, edge, radius, k, a, budget_of(c));
  Report r("dist-projs");
  describe_config(r, cfg);
  r.add("edge", edge);
  r.add("radius", radius);
  r.add("points", rep.points);
  r.add("pairs", rep.rows.size());
  r.add("K", rep.K ? rep.K->str() : std::string("unbounded"));
  r.add("A", rep.K ? rep.A.str() : std::string("undefined"));
  r.add("cap", k.str() + " " + a.str());
  r.add("violations", rep.violations.size());
  if (!rep.violations.empty()) r.fail("pairs outside the cap");
  emit_csv(c, gb::dist_projs_csv(rep));
  return finish(c, r, start);
}

int run_proj_bound(const Common& c, const std::string& path, const std::string& base, std::optional<int> vertex,
                   const std::string& peripherals, int radius, int max_diameter) {
  const auto start = std::chrono::steady_clock::now();
  Report r("proj-bound");
  std::optional<gb::QuotientBall> qb;
  std::vector<gb::FreeWord> gens;
  if (!path.empty()) {
    const auto cfg = gb::parse_config(path);
    const auto g = cfg.graph();
    describe_config(r, cfg);
    if (!vertex) throw gb::SchemaError("proj-bound with a config needs --vertex");
    qb = gb::QuotientBall::of(g.backend(*vertex), radius, budget_of(c));
    for (gb::EdgeId e : g.link(*vertex)) gens.push_back(g.edge_subgroup(e).root);
    r.add("vertex", *vertex);
  } else {
    const gb::BackendSpec b = named_backend(base.empty() ? "free2" : base);
    if (b.kind() != gb::BackendKind::Free) throw gb::NotTypeS("proj-bound needs a free quotient");
    qb = gb::QuotientBall::free(b.free_rank(), radius, budget_of(c));
    std::istringstream in(peripherals.empty() ? std::string("x") : peripherals);
    for (std::string tok; std::getline(in, tok, ',');) gens.push_back(b.parse_element(tok).free);
    r.add("base", base.empty() ? "free2" : base);
    r.add("peripherals", peripherals.empty() ? "x" : peripherals);
  }
  const auto rep = gb::proj_bound(*qb, gens);
  r.add("radius", radius);
  r.add("lines", rep.lines.size());
  r.add("pairs", rep.rows.size());
  r.add("guarded-pairs", rep.guarded_pairs);
  r.add("max-diameter", rep.max_diameter);
  if (rep.max_diameter > max_diameter) r.fail("projection diameter above " + std::to_string(max_diameter));
  emit_csv(c, gb::proj_bound_csv(rep));
  return finish(c, r, start);
}

int run_sides(const Common& c, const std::string& path, int edge, int radius) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = gb::parse_config(path);
  const auto g = cfg.graph();
  const auto ball = gb::BallGraph::build(g, radius, budget_of(c));
  const auto s = gb::sides_decomposition(ball, gb::base_edge(g, edge));
  Report r("sides");
  describe_config(r, cfg);
  r.add("edge", edge);
  r.add("radius", radius);
  r.add("on-edge-space", s.on_edge);
  r.add("side-plus", s.plus);
  r.add("side-minus", s.minus);
  r.add("constant-on-vertex-spaces", s.constant_on_vertex_spaces ? "yes" : "no");
  if (!s.constant_on_vertex_spaces) r.fail("sign varies inside a vertex space");
  return finish(c, r, start);
}

gb::DeltaMethod parse_method(const std::string& m) {
  if (m == "four-point") return gb::DeltaMethod::FourPoint;
  if (m == "basepoint") return gb::DeltaMethod::Basepoint;
  if (m == "max-min") return gb::DeltaMethod::MaxMin;
  throw gb::SchemaError("unknown method '" + m + "'");
}

int run_cusp_delta(const Common& c, const std::string& base, const std::string& peripheral, int radius, int depth,
                   const std::string& method, bool unguarded, const std::string& expect, const std::string& export_path) {
  const auto start = std::chrono::steady_clock::now();
  const gb::BackendSpec b = named_backend(base);
  const gb::GroupElement u = b.parse_element(peripheral);
  const auto cg = gb::build_cusped(b, u, radius, depth, budget_of(c));
  gb::DeltaOptions opt;
  if (!unguarded) opt.excluded = &cg.guarded;
  const auto est = gb::estimate_delta(cg.graph, parse_method(method), opt);
  Report r("cusp-delta");
  r.add("base", base);
  r.add("peripheral", peripheral);
  r.add("radius", radius);
  r.add("depth", depth);
  r.add("vertices", cg.graph.size());
  r.add("edges", cg.graph.edge_count());
  r.add("cosets", cg.coset_count);
  r.add("method", gb::to_string(est.method));
  r.add("guard", est.guarded ? "frontier+1" : "none");
  r.add("certified-vertices", est.certified_vertices);
  r.add("certified-quadruples", est.certified_quadruples);
  r.add("delta", est.delta.str());
  if (!expect.empty() && gb::Fraction(est.delta.twice, 2) != parse_fraction(expect)) r.fail("delta differs from " + expect);
  if (!export_path.empty()) gb::write_atomic(export_path, gb::export_cusped(cg, b));
  return finish(c, r, start);
}

int run_nf(const std::string& path) {
  const auto cfg = gb::parse_config(path);
  const auto g = cfg.graph();
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto nf = gb::reduce(g, gb::parse_gog_word(line));
    std::cout << gb::render_normal_form(g, nf) << "\n";
  }
  return kPass;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const gb::BudgetExceeded*>(&e)) return kBudget;
  if (dynamic_cast<const gb::ValidationFailed*>(&e)) return kValidation;
  if (dynamic_cast<const gb::ParseError*>(&e) || dynamic_cast<const gb::SchemaError*>(&e) ||
      dynamic_cast<const gb::MalformedWord*>(&e) || dynamic_cast<const gb::UnknownGenerator*>(&e)) {
    return kParse;
  }
  return kOther;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale experiments on graphs of groups"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--budget-vertices", common.budget, "Cap on enumerated vertices")->capture_default_str();

  auto add_outputs = [&](CLI::App* sub, bool csv) {
    sub->add_option("--report", common.report_path, "Also write the report here");
    if (csv) sub->add_option("--csv", common.csv_path, "Write the CSV table here");
  };

  std::string config;
  std::optional<int> radius;
  std::optional<int> edge;
  std::optional<int> vertex;
  std::string export_path;

  auto* adm = app.add_subcommand("check-admissible", "Decide the admissibility conditions");
  adm->add_option("config", config)->required();
  adm->add_option("--radius", radius);
  add_outputs(adm, false);

  auto* bb = app.add_subcommand("build-ball", "Enumerate a ball of the tree of spaces");
  bb->add_option("config", config)->required();
  bb->add_option("--radius", radius);
  bb->add_option("--export", export_path, "Write the ball in the export format");
  add_outputs(bb, false);

  DistortionArgs da;
  auto* dist = app.add_subcommand("distortion", "Edge or vertex space distortion profile");
  dist->add_option("config", da.config)->required();
  dist->add_option("--edge", da.edge);
  dist->add_option("--vertex", da.vertex);
  dist->add_option("--radii", da.radii, "Space-separated radii");
  dist->add_option("--metric", da.metric, "auto, edge, vertex or ambient");
  dist->add_option("--seed", da.seed, "Seed for pair sampling (falls back to the config)");
  dist->add_option("--max-k", da.max_k);
  dist->add_option("--max-a", da.max_a);
  dist->add_option("--max-k-spread", da.max_k_spread);
  add_outputs(dist, true);

  std::string cap_k;
  std::string cap_a;
  auto* dp = app.add_subcommand("dist-projs", "Compare d_Xv with the sum of quotient distances");
  dp->add_option("config", config)->required();
  dp->add_option("--edge", edge);
  dp->add_option("--radius", radius);
  dp->add_option("--cap-k", cap_k);
  dp->add_option("--cap-a", cap_a);
  add_outputs(dp, true);

  std::string base;
  std::string peripherals;
  int max_diameter = 0;
  int pb_radius = 6;
  auto* pb = app.add_subcommand("proj-bound", "Projection diameters between peripheral lines");
  pb->add_option("config", config);
  pb->add_option("--vertex", vertex);
  pb->add_option("--base", base, "free2 or free3 when no config is given");
  pb->add_option("--peripheral", peripherals, "Comma-separated generators");
  pb->add_option("--radius", pb_radius)->capture_default_str();
  pb->add_option("--max-diameter", max_diameter)->capture_default_str();
  add_outputs(pb, true);

  int sides_edge = 0;
  int sides_radius = 3;
  auto* sd = app.add_subcommand("sides", "Sides of an edge space");
  sd->add_option("config", config)->required();
  sd->add_option("--edge", sides_edge)->required();
  sd->add_option("--radius", sides_radius)->capture_default_str();
  add_outputs(sd, false);

  std::string cusp_base = "free2";
  std::string cusp_peripheral = "x";
  int cusp_radius = 4;
  int cusp_depth = 3;
  std::string method = "four-point";
  bool unguarded = false;
  std::string expect;
  auto* cd = app.add_subcommand("cusp-delta", "Gromov delta of a truncated cusped space");
  cd->add_option("--base", cusp_base, "free2, free3 or z2")->capture_default_str();
  cd->add_option("--peripheral", cusp_peripheral)->capture_default_str();
  cd->add_option("--radius", cusp_radius)->capture_default_str();
  cd->add_option("--depth", cusp_depth)->capture_default_str();
  cd->add_option("--method", method, "four-point, basepoint or max-min")->capture_default_str();
  cd->add_flag("--unguarded", unguarded, "Certify every vertex");
  cd->add_option("--expect", expect, "Fail unless delta equals this value");
  cd->add_option("--export", export_path, "Write the graph as an edge list");
  add_outputs(cd, false);

  auto* nf = app.add_subcommand("nf", "Reduce words read from stdin");
  nf->add_option("config", config)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*adm) return run_check_admissible(common, config, radius);
    if (*bb) return run_build_ball(common, config, radius, export_path);
    if (*dist) return run_distortion(common, da);
    if (*dp) return run_dist_projs(common, config, edge, radius, cap_k, cap_a);
    if (*pb) return run_proj_bound(common, config, base, vertex, peripherals, pb_radius, max_diameter);
    if (*sd) return run_sides(common, config, sides_edge, sides_radius);
    if (*cd) return run_cusp_delta(common, cusp_base, cusp_peripheral, cusp_radius, cusp_depth, method, unguarded,
                                   expect, export_path);
    if (*nf) return run_nf(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kOther;
}
