#include "gogbench/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gogbench/errors.hpp"

namespace gogbench {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<std::string> WorkbenchConfig::field(const std::string& experiment, const std::string& key) const {
  auto it = experiments.find(experiment);
  if (it == experiments.end()) return std::nullopt;
  auto f = it->second.find(key);
  if (f == it->second.end()) return std::nullopt;
  return f->second;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_list(std::string_view s, bool commas_only) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    const bool sep = c == ',' || (!commas_only && std::isspace(static_cast<unsigned char>(c)));
    if (sep) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

// Raw fields of the sectioned text format, before schema checks.
struct RawField {
  std::string value;
  int line = 0;
};

struct RawSection {
  std::string kind;
  std::string id;
  int line = 0;
  std::map<std::string, RawField> fields;
};

struct Context {
  std::string origin;

  [[noreturn]] void schema(int line, const std::string& what) const {
    throw SchemaError(origin + ":" + std::to_string(line) + ": " + what);
  }
};

std::int64_t to_int(const Context& ctx, const RawField& f, const std::string& key) {
  std::int64_t v = 0;
  const std::string s = trim(f.value);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    ctx.schema(f.line, "field '" + key + "' expects an integer, got '" + s + "'");
  }
  return v;
}

std::vector<RawSection> read_sections(std::string_view text, const Context& ctx) {
  std::vector<RawSection> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(ctx.origin + ":" + std::to_string(n) + ": unterminated section header");
      const auto parts = split_list(std::string_view(t).substr(1, t.size() - 2), false);
      if (parts.empty() || parts.size() > 2) {
        throw ParseError(ctx.origin + ":" + std::to_string(n) + ": expected [kind] or [kind id]");
      }
      out.push_back({parts[0], parts.size() == 2 ? parts[1] : "", n, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(ctx.origin + ":" + std::to_string(n) + ": expected key = value");
    if (out.empty()) throw ParseError(ctx.origin + ":" + std::to_string(n) + ": field outside any section");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ParseError(ctx.origin + ":" + std::to_string(n) + ": empty key");
    if (!out.back().fields.emplace(key, RawField{trim(std::string_view(t).substr(eq + 1)), n}).second) {
      throw ParseError(ctx.origin + ":" + std::to_string(n) + ": duplicate field '" + key + "'");
    }
  }
  return out;
}

void check_keys(const Context& ctx, const RawSection& s, std::initializer_list<const char*> allowed) {
  for (const auto& [key, f] : s.fields) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) ctx.schema(f.line, "unknown field '" + key + "' in [" + s.kind + "]");
  }
}

const RawField& require(const Context& ctx, const RawSection& s, const std::string& key) {
  auto it = s.fields.find(key);
  if (it == s.fields.end()) {
    ctx.schema(s.line, "[" + s.kind + (s.id.empty() ? "" : " " + s.id) + "] is missing '" + key + "'");
  }
  return it->second;
}

std::int64_t section_id(const Context& ctx, const RawSection& s) {
  return to_int(ctx, RawField{s.id, s.line}, s.kind + " id");
}

// Shared by both formats once the raw values are known.
struct VertexDraft {
  VertexId id = 0;
  std::string name;
  std::string kind;
  std::vector<std::string> free;
  std::vector<std::string> abelian;
  std::string center;
  int line = 0;
};

struct EdgeDraft {
  EdgeId id = 0;
  std::string name;
  std::int64_t source = 0;
  std::int64_t target = 0;
  std::int64_t reverse = 0;
  bool forward = false;
  std::vector<std::string> basis;
  std::vector<std::string> image;
  int line = 0;
};

BackendSpec make_backend(const Context& ctx, const VertexDraft& v) {
  try {
    if (v.kind == "product") {
      if (v.center.empty()) ctx.schema(v.line, "product vertex " + std::to_string(v.id) + " needs 'center'");
      return BackendSpec::product(v.free, v.center);
    }
    if (v.kind == "free") return BackendSpec::free(v.free);
    if (v.kind == "abelian") return BackendSpec::free_abelian(v.abelian);
  } catch (const SchemaError& e) {
    ctx.schema(v.line, e.what());
  }
  ctx.schema(v.line, "vertex kind must be product, free or abelian, got '" + v.kind + "'");
}

WorkbenchConfig assemble(const Context& ctx, std::uint64_t hash, std::string name, std::vector<VertexDraft> vds,
                         std::vector<EdgeDraft> eds, std::optional<std::vector<EdgeId>> tree,
                         std::map<std::string, ExperimentFields> experiments) {
  WorkbenchConfig cfg;
  cfg.origin = ctx.origin;
  cfg.hash = hash;
  cfg.name = std::move(name);
  cfg.tree = std::move(tree);
  cfg.experiments = std::move(experiments);
  std::map<VertexId, const BackendSpec*> backends;
  for (const auto& v : vds) {
    if (backends.count(v.id)) ctx.schema(v.line, "vertex " + std::to_string(v.id) + " declared twice");
    cfg.vertices.push_back({v.id, v.name.empty() ? "v" + std::to_string(v.id) : v.name, make_backend(ctx, v)});
    backends[v.id] = nullptr;
  }
  for (const auto& v : cfg.vertices) backends[v.id] = &v.backend;
  if (cfg.vertices.empty()) ctx.schema(1, "no vertices declared");
  std::map<EdgeId, const EdgeDraft*> by_id;
  for (const auto& e : eds) {
    if (!by_id.emplace(e.id, &e).second) ctx.schema(e.line, "edge " + std::to_string(e.id) + " declared twice");
  }
  for (const auto& e : eds) {
    const std::string label = "edge " + std::to_string(e.id);
    if (!backends.count(static_cast<VertexId>(e.source))) ctx.schema(e.line, label + ": unknown source vertex");
    if (!backends.count(static_cast<VertexId>(e.target))) ctx.schema(e.line, label + ": unknown target vertex");
    if (!by_id.count(static_cast<EdgeId>(e.reverse))) {
      ctx.schema(e.line, label + ": reverse edge " + std::to_string(e.reverse) + " is not declared");
    }
    if (e.basis.size() != 2 || e.image.size() != 2) {
      ctx.schema(e.line, label + ": 'basis' and 'image' each need two comma-separated elements");
    }
    OrientedEdge oe;
    oe.id = e.id;
    oe.name = e.name.empty() ? "e" + std::to_string(e.id) : e.name;
    oe.source = static_cast<VertexId>(e.source);
    oe.target = static_cast<VertexId>(e.target);
    oe.reverse = static_cast<EdgeId>(e.reverse);
    oe.forward = e.forward;
    try {
      for (int i = 0; i < 2; ++i) {
        oe.basis[i] = backends[oe.source]->parse_element(e.basis[i]);
        oe.image[i] = backends[oe.target]->parse_element(e.image[i]);
      }
    } catch (const UnknownGenerator& err) {
      ctx.schema(e.line, label + ": " + err.what());
    } catch (const ParseError& err) {
      ctx.schema(e.line, label + ": " + err.what());
    }
    cfg.edges.push_back(std::move(oe));
  }
  const ValidationReport report = cfg.graph().validate();
  if (!report.ok()) throw ValidationFailed(ctx.origin + ": " + report.summary());
  return cfg;
}

WorkbenchConfig parse_sectioned(std::string_view text, const Context& ctx) {
  std::string name;
  std::optional<std::vector<EdgeId>> tree;
  std::vector<VertexDraft> vds;
  std::vector<EdgeDraft> eds;
  std::map<std::string, ExperimentFields> experiments;
  bool saw_graph = false;
  for (const RawSection& s : read_sections(text, ctx)) {
    if (s.kind == "graph") {
      if (saw_graph) ctx.schema(s.line, "second [graph] section");
      saw_graph = true;
      check_keys(ctx, s, {"name", "tree"});
      if (auto it = s.fields.find("name"); it != s.fields.end()) name = it->second.value;
      if (auto it = s.fields.find("tree"); it != s.fields.end()) {
        tree.emplace();
        for (const auto& item : split_list(it->second.value, false)) {
          tree->push_back(static_cast<EdgeId>(to_int(ctx, RawField{item, it->second.line}, "tree")));
        }
      }
    } else if (s.kind == "vertex") {
      check_keys(ctx, s, {"name", "kind", "free", "center", "abelian"});
      VertexDraft v;
      v.id = static_cast<VertexId>(section_id(ctx, s));
      v.line = s.line;
      v.kind = require(ctx, s, "kind").value;
      if (auto it = s.fields.find("name"); it != s.fields.end()) v.name = it->second.value;
      if (auto it = s.fields.find("free"); it != s.fields.end()) v.free = split_list(it->second.value, false);
      if (auto it = s.fields.find("abelian"); it != s.fields.end()) v.abelian = split_list(it->second.value, false);
      if (auto it = s.fields.find("center"); it != s.fields.end()) v.center = it->second.value;
      vds.push_back(std::move(v));
    } else if (s.kind == "edge") {
      check_keys(ctx, s, {"name", "source", "target", "reverse", "forward", "basis", "image"});
      EdgeDraft e;
      e.id = static_cast<EdgeId>(section_id(ctx, s));
      e.line = s.line;
      e.source = to_int(ctx, require(ctx, s, "source"), "source");
      e.target = to_int(ctx, require(ctx, s, "target"), "target");
      e.reverse = to_int(ctx, require(ctx, s, "reverse"), "reverse");
      if (auto it = s.fields.find("forward"); it != s.fields.end()) {
        if (it->second.value != "true" && it->second.value != "false") {
          ctx.schema(it->second.line, "'forward' must be true or false");
        }
        e.forward = it->second.value == "true";
      }
      if (auto it = s.fields.find("name"); it != s.fields.end()) e.name = it->second.value;
      e.basis = split_list(require(ctx, s, "basis").value, true);
      e.image = split_list(require(ctx, s, "image").value, true);
      eds.push_back(std::move(e));
    } else if (s.kind == "experiment") {
      if (s.id.empty()) ctx.schema(s.line, "[experiment] needs a name");
      ExperimentFields f;
      for (const auto& [k, v] : s.fields) f[k] = v.value;
      if (!experiments.emplace(s.id, std::move(f)).second) ctx.schema(s.line, "experiment '" + s.id + "' twice");
    } else {
      ctx.schema(s.line, "unknown section [" + s.kind + "]");
    }
  }
  return assemble(ctx, fnv1a64(text), std::move(name), std::move(vds), std::move(eds), std::move(tree),
                  std::move(experiments));
}

using nlohmann::json;

std::vector<std::string> json_names(const json& j) {
  if (j.is_string()) return split_list(j.get<std::string>(), false);
  return j.get<std::vector<std::string>>();
}

std::vector<std::string> json_elements(const json& j) {
  if (j.is_string()) return split_list(j.get<std::string>(), true);
  return j.get<std::vector<std::string>>();
}

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

WorkbenchConfig parse_json(std::string_view text, const Context& ctx) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ctx.origin + ": " + e.what());
  }
  try {
    std::string name;
    std::optional<std::vector<EdgeId>> tree;
    if (doc.contains("graph")) {
      const json& g = doc.at("graph");
      name = g.value("name", "");
      if (g.contains("tree")) tree = g.at("tree").get<std::vector<EdgeId>>();
    }
    std::vector<VertexDraft> vds;
    for (const json& v : doc.at("vertices")) {
      VertexDraft d;
      d.id = v.at("id").get<VertexId>();
      d.name = v.value("name", "");
      d.kind = v.at("kind").get<std::string>();
      if (v.contains("free")) d.free = json_names(v.at("free"));
      if (v.contains("abelian")) d.abelian = json_names(v.at("abelian"));
      d.center = v.value("center", "");
      vds.push_back(std::move(d));
    }
    std::vector<EdgeDraft> eds;
    for (const json& e : doc.value("edges", json::array())) {
      EdgeDraft d;
      d.id = e.at("id").get<EdgeId>();
      d.name = e.value("name", "");
      d.source = e.at("source").get<std::int64_t>();
      d.target = e.at("target").get<std::int64_t>();
      d.reverse = e.at("reverse").get<std::int64_t>();
      d.forward = e.value("forward", false);
      d.basis = json_elements(e.at("basis"));
      d.image = json_elements(e.at("image"));
      eds.push_back(std::move(d));
    }
    std::map<std::string, ExperimentFields> experiments;
    const json exps = doc.value("experiments", json::object());
    for (const auto& [key, fields] : exps.items()) {
      ExperimentFields f;
      for (const auto& [k, v] : fields.items()) f[k] = scalar_text(v);
      experiments[key] = std::move(f);
    }
    return assemble(ctx, fnv1a64(text), std::move(name), std::move(vds), std::move(eds), std::move(tree),
                    std::move(experiments));
  } catch (const json::exception& e) {
    throw SchemaError(ctx.origin + ": " + e.what());
  }
}

}  // namespace

WorkbenchConfig parse_config_text(std::string_view text, std::string origin) {
  const Context ctx{std::move(origin)};
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_json(text, ctx);
  return parse_sectioned(text, ctx);
}

WorkbenchConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.filename().string());
}

}  // namespace gogbench
