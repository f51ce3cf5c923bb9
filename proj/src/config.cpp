#include "graphon/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace graphon {

using nlohmann::json;

// ----------------------------------------------------------- mini-TOML ----

namespace {

[[noreturn]] void toml_fail(int line, const std::string& what) {
  throw std::runtime_error("config parse error (line " + std::to_string(line) + "): " + what);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strips a trailing comment, honoring quoted strings.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (in_str) {
      if (c == '\\') ++i;
      else if (c == '"') in_str = false;
    } else if (c == '"') {
      in_str = true;
    } else if (c == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

bool bare_key_ok(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

std::vector<std::string> split_dotted(const std::string& s, int line) {
  std::vector<std::string> parts;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, '.')) {
    cur = trim(cur);
    if (!bare_key_ok(cur)) toml_fail(line, "bad key segment '" + cur + "'");
    parts.push_back(cur);
  }
  if (parts.empty()) toml_fail(line, "empty key");
  return parts;
}

std::string parse_basic_string(const std::string& s, size_t& i, int line) {
  // s[i] == '"'
  std::string out;
  for (++i; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') {
      ++i;
      return out;
    }
    if (c == '\\') {
      if (++i >= s.size()) toml_fail(line, "dangling escape in string");
      switch (s[i]) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        default: toml_fail(line, std::string("unsupported escape \\") + s[i]);
      }
    } else {
      out += c;
    }
  }
  toml_fail(line, "unterminated string");
}

json parse_scalar(const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (v.empty()) toml_fail(line, "missing value");
  if (v.front() == '"') {
    size_t i = 0;
    std::string s = parse_basic_string(v, i, line);
    if (trim(v.substr(i)) != "") toml_fail(line, "trailing characters after string");
    return json(s);
  }
  if (v == "true") return json(true);
  if (v == "false") return json(false);
  // integer?
  {
    const char* b = v.c_str();
    char* end = nullptr;
    errno = 0;
    long long iv = std::strtoll(b, &end, 10);
    if (end != b && *end == '\0' && errno == 0 &&
        v.find_first_of(".eE") == std::string::npos)
      return json(iv);
  }
  // float
  {
    const char* b = v.c_str();
    char* end = nullptr;
    errno = 0;
    double dv = std::strtod(b, &end);
    if (end != b && *end == '\0' && errno == 0) return json(dv);
  }
  toml_fail(line, "cannot parse value '" + v + "' (inline tables, dates and "
                  "multiline strings are not supported)");
}

json parse_value(const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') toml_fail(line, "arrays must open and close on one line");
    json arr = json::array();
    std::string inner = v.substr(1, v.size() - 2);
    // split on commas outside strings
    std::vector<std::string> items;
    std::string cur;
    bool in_str = false;
    for (size_t i = 0; i < inner.size(); ++i) {
      char c = inner[i];
      if (in_str) {
        cur += c;
        if (c == '\\' && i + 1 < inner.size()) cur += inner[++i];
        else if (c == '"') in_str = false;
      } else if (c == '"') {
        in_str = true;
        cur += c;
      } else if (c == ',') {
        items.push_back(cur);
        cur.clear();
      } else if (c == '[') {
        toml_fail(line, "nested arrays are not supported");
      } else {
        cur += c;
      }
    }
    if (in_str) toml_fail(line, "unterminated string in array");
    if (!trim(cur).empty()) items.push_back(cur);
    else if (!items.empty() && trim(cur).empty() && !inner.empty() &&
             trim(inner).back() == ',')
      ;  // trailing comma tolerated
    for (const auto& item : items) arr.push_back(parse_scalar(item, line));
    return arr;
  }
  return parse_scalar(v, line);
}

json* descend(json& root, const std::vector<std::string>& path, int line) {
  json* cur = &root;
  for (const auto& part : path) {
    if (!cur->is_object()) toml_fail(line, "key path collides with a non-table value");
    cur = &(*cur)[part];
    if (cur->is_null()) *cur = json::object();
  }
  return cur;
}

}  // namespace

json parse_mini_toml(const std::string& text) {
  json root = json::object();
  std::vector<std::string> table_path;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.size() >= 2 && s[1] == '[')
        toml_fail(lineno, "arrays of tables are not supported");
      if (s.back() != ']') toml_fail(lineno, "unterminated table header");
      table_path = split_dotted(s.substr(1, s.size() - 2), lineno);
      json* t = descend(root, table_path, lineno);
      if (!t->is_object()) toml_fail(lineno, "table redefines a value");
      continue;
    }
    // key = value, where key may be dotted
    size_t eq = std::string::npos;
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      if (in_str) {
        if (c == '\\') ++i;
        else if (c == '"') in_str = false;
      } else if (c == '"') in_str = true;
      else if (c == '=') { eq = i; break; }
    }
    if (eq == std::string::npos) toml_fail(lineno, "expected key = value");
    auto key_path = split_dotted(trim(s.substr(0, eq)), lineno);
    json value = parse_value(s.substr(eq + 1), lineno);

    std::vector<std::string> full = table_path;
    full.insert(full.end(), key_path.begin(), key_path.end() - 1);
    json* t = descend(root, full, lineno);
    const std::string& leaf = key_path.back();
    if (t->contains(leaf)) toml_fail(lineno, "duplicate key '" + leaf + "'");
    (*t)[leaf] = std::move(value);
  }
  return root;
}

// ------------------------------------------------------------ factories ----

const std::vector<std::string>& all_model_names() {
  static const std::vector<std::string> names = {
      "sis", "double_well", "gene_regulatory", "glv", "mutualistic", "wilson_cowan"};
  return names;
}

const std::vector<std::string>& all_kernel_names() {
  static const std::vector<std::string> names = {
      "er", "ring", "small_world", "power_law", "modular", "bipartite"};
  return names;
}

namespace {

double param_or(const json& params, const char* key, double fallback,
                const std::string& scope, std::set<std::string>& seen) {
  seen.insert(key);
  if (params.is_null() || !params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_number()) throw std::runtime_error("config: " + scope + "." + key + " must be a number");
  return v.get<double>();
}

void reject_unknown_params(const json& params, const std::string& scope,
                           const std::set<std::string>& allowed) {
  if (params.is_null()) return;
  if (!params.is_object()) throw std::runtime_error("config: " + scope + " must be a table");
  for (auto it = params.begin(); it != params.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::runtime_error("config: unknown key " + scope + "." + it.key());
}

}  // namespace

Kernel make_kernel(const std::string& name, const json& params) {
  std::set<std::string> seen;
  const std::string scope = "kernel.params." + name;
  if (name == "er") {
    Kernel k = Kernel::er(param_or(params, "p", 0.1, scope, seen));
    reject_unknown_params(params, scope, seen);
    return k;
  }
  if (name == "ring") {
    Kernel k = Kernel::ring(param_or(params, "q", 1.0 / 3.0, scope, seen));
    reject_unknown_params(params, scope, seen);
    return k;
  }
  if (name == "small_world") {
    const double p = param_or(params, "p", 0.1, scope, seen);
    const double q = param_or(params, "q", 1.0 / 3.0, scope, seen);
    Kernel k = Kernel::small_world(p, q);
    reject_unknown_params(params, scope, seen);
    return k;
  }
  if (name == "power_law") {
    const double C = param_or(params, "C", 0.5, scope, seen);
    const double nu = param_or(params, "nu", -0.2, scope, seen);
    Kernel k = Kernel::power_law(C, nu);
    reject_unknown_params(params, scope, seen);
    return k;
  }
  if (name == "modular") {
    const double gamma = param_or(params, "gamma", 1.0 / 3.0, scope, seen);
    const double p_in = param_or(params, "p_in", 0.2, scope, seen);
    const double p_out = param_or(params, "p_out", 0.01, scope, seen);
    Kernel k = Kernel::modular(gamma, p_in, p_out);
    reject_unknown_params(params, scope, seen);
    return k;
  }
  if (name == "bipartite") {
    const double gamma = param_or(params, "gamma", 1.0 / 3.0, scope, seen);
    const double p = param_or(params, "p", 0.1, scope, seen);
    Kernel k = Kernel::bipartite(gamma, p);
    reject_unknown_params(params, scope, seen);
    return k;
  }
  throw std::runtime_error("config: unknown kernel '" + name + "'");
}

Model make_model(const std::string& name, const json& params, GeneCoupling coupling) {
  Model m = Model::by_name(name);  // throws on unknown names
  m.gene_coupling = coupling;
  std::set<std::string> seen;
  const std::string scope = "model.params." + name;
  switch (m.name) {
    case ModelName::SIS:
      m.mu = param_or(params, "mu", m.mu, scope, seen);
      break;
    case ModelName::DoubleWell:
      m.r1 = param_or(params, "r1", m.r1, scope, seen);
      m.r2 = param_or(params, "r2", m.r2, scope, seen);
      m.r3 = param_or(params, "r3", m.r3, scope, seen);
      if (!(m.r1 < m.r2 && m.r2 < m.r3))
        throw std::runtime_error("config: double_well roots must satisfy r1 < r2 < r3");
      break;
    case ModelName::GeneRegulatory:
      m.B = param_or(params, "B", m.B, scope, seen);
      m.f_exp = param_or(params, "f_exp", m.f_exp, scope, seen);
      m.h = param_or(params, "h", m.h, scope, seen);
      break;
    case ModelName::GLV:
      m.growth = param_or(params, "growth", m.growth, scope, seen);
      m.c = param_or(params, "c", m.c, scope, seen);
      if (!(m.growth > 0.0) || !(m.c > 0.0))
        throw std::runtime_error("config: glv growth and c must be positive");
      break;
    case ModelName::Mutualistic:
      m.mut_B = param_or(params, "B", m.mut_B, scope, seen);
      m.mut_C = param_or(params, "C", m.mut_C, scope, seen);
      m.mut_D = param_or(params, "D", m.mut_D, scope, seen);
      m.mut_E = param_or(params, "E", m.mut_E, scope, seen);
      m.mut_H = param_or(params, "H", m.mut_H, scope, seen);
      m.mut_K = param_or(params, "K", m.mut_K, scope, seen);
      if (!(m.mut_D > 0.0))
        throw std::runtime_error("config: mutualistic D must be positive");
      break;
    case ModelName::WilsonCowan:
      m.wc_mu = param_or(params, "mu", m.wc_mu, scope, seen);
      m.wc_delta = param_or(params, "delta", m.wc_delta, scope, seen);
      break;
  }
  reject_unknown_params(params, scope, seen);
  return m;
}

// ---------------------------------------------------------- config load ----

namespace {

[[noreturn]] void cfg_fail(const std::string& what) {
  throw std::runtime_error("config: " + what);
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) cfg_fail(path + " must be a number");
  return v.get<double>();
}

long as_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == static_cast<long>(d)) return static_cast<long>(d);
  }
  cfg_fail(path + " must be an integer");
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) cfg_fail(path + " must be a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) cfg_fail(path + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> as_string_list(const json& v, const std::string& path) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) cfg_fail(path + " must be a string or array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) cfg_fail(path + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::string> resolve_names(const std::vector<std::string>& requested,
                                       const std::vector<std::string>& known,
                                       const std::string& path) {
  if (requested.size() == 1 && requested[0] == "all") return known;
  if (requested.empty()) cfg_fail(path + " must not be empty");
  std::vector<std::string> out;
  for (const auto& n : requested) {
    if (std::find(known.begin(), known.end(), n) == known.end())
      cfg_fail("unknown name '" + n + "' in " + path);
    if (std::find(out.begin(), out.end(), n) != out.end())
      cfg_fail("duplicate name '" + n + "' in " + path);
    out.push_back(n);
  }
  return out;
}

// Walks `doc` against the allowed key tree; "*" allows any object childs.
struct SchemaNode {
  std::map<std::string, SchemaNode> children;
  bool leaf = false;
  bool wildcard = false;  // object with arbitrary keys (params tables)
};

void check_unknown(const json& doc, const SchemaNode& node, const std::string& prefix) {
  if (!doc.is_object()) return;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    auto found = node.children.find(it.key());
    if (found == node.children.end()) cfg_fail("unknown key " + path);
    const SchemaNode& child = found->second;
    if (child.leaf) continue;
    if (child.wildcard) continue;  // validated by the factories
    if (!it.value().is_object()) cfg_fail(path + " must be a table");
    check_unknown(it.value(), child, path);
  }
}

SchemaNode leaf() { SchemaNode n; n.leaf = true; return n; }

SchemaNode config_schema() {
  SchemaNode root;
  SchemaNode model;
  model.children["names"] = leaf();
  model.children["gene_coupling"] = leaf();
  SchemaNode mp; mp.wildcard = true;
  model.children["params"] = mp;
  root.children["model"] = model;

  SchemaNode kernel;
  kernel.children["names"] = leaf();
  SchemaNode kp; kp.wildcard = true;
  kernel.children["params"] = kp;
  root.children["kernel"] = kernel;

  SchemaNode grid;
  grid.children["M"] = leaf();
  root.children["grid"] = grid;

  SchemaNode integ;
  integ.children["dt"] = leaf();
  integ.children["t_max"] = leaf();
  integ.children["eq_tol"] = leaf();
  root.children["integrator"] = integ;

  SchemaNode kappa;
  kappa.children["points"] = leaf();
  kappa.children["max"] = leaf();
  root.children["kappa"] = kappa;

  SchemaNode sweep;
  sweep.children["reductions"] = leaf();
  root.children["sweep"] = sweep;

  SchemaNode output;
  output.children["dir"] = leaf();
  output.children["dump_trajectory"] = leaf();
  root.children["output"] = output;

  root.children["seed"] = leaf();

  SchemaNode conv;
  for (const char* k : {"model", "kernel", "D", "T", "snapshot_dt", "N",
                        "fine_M", "subcell_points", "distance_points"})
    conv.children[k] = leaf();
  root.children["convergence"] = conv;
  return root;
}

}  // namespace

ExperimentConfig::ExperimentConfig()
    : models(all_model_names()),
      kernels(all_kernel_names()),
      model_params(json()),
      kernel_params(json()) {}

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  if (!doc.is_object()) cfg_fail("top level must be a table/object");
  check_unknown(doc, config_schema(), "");

  ExperimentConfig cfg;
  if (doc.contains("model")) {
    const json& m = doc.at("model");
    if (m.contains("names"))
      cfg.models = resolve_names(as_string_list(m.at("names"), "model.names"),
                                 all_model_names(), "model.names");
    if (m.contains("gene_coupling")) {
      const std::string gc = as_string(m.at("gene_coupling"), "model.gene_coupling");
      if (gc == "hill_neighbor") cfg.gene_coupling = GeneCoupling::HillNeighbor;
      else if (gc == "as_printed") cfg.gene_coupling = GeneCoupling::AsPrinted;
      else cfg_fail("model.gene_coupling must be 'hill_neighbor' or 'as_printed'");
    }
    if (m.contains("params")) {
      cfg.model_params = m.at("params");
      for (auto it = cfg.model_params.begin(); it != cfg.model_params.end(); ++it)
        if (std::find(all_model_names().begin(), all_model_names().end(), it.key()) ==
            all_model_names().end())
          cfg_fail("unknown key model.params." + it.key());
    }
  }
  if (doc.contains("kernel")) {
    const json& k = doc.at("kernel");
    if (k.contains("names"))
      cfg.kernels = resolve_names(as_string_list(k.at("names"), "kernel.names"),
                                  all_kernel_names(), "kernel.names");
    if (k.contains("params")) {
      cfg.kernel_params = k.at("params");
      for (auto it = cfg.kernel_params.begin(); it != cfg.kernel_params.end(); ++it)
        if (std::find(all_kernel_names().begin(), all_kernel_names().end(), it.key()) ==
            all_kernel_names().end())
          cfg_fail("unknown key kernel.params." + it.key());
    }
  }
  if (doc.contains("grid") && doc.at("grid").contains("M")) {
    cfg.grid_M = static_cast<int>(as_integer(doc.at("grid").at("M"), "grid.M"));
    if (cfg.grid_M < 2) cfg_fail("grid.M must be >= 2");
  }
  if (doc.contains("integrator")) {
    const json& i = doc.at("integrator");
    if (i.contains("dt")) cfg.integrator.dt = as_double(i.at("dt"), "integrator.dt");
    if (i.contains("t_max")) cfg.integrator.t_max = as_double(i.at("t_max"), "integrator.t_max");
    if (i.contains("eq_tol")) cfg.integrator.eq_tol = as_double(i.at("eq_tol"), "integrator.eq_tol");
    cfg.integrator.validate();
  }
  if (doc.contains("kappa")) {
    const json& k = doc.at("kappa");
    if (k.contains("points")) {
      cfg.kappa_points = static_cast<int>(as_integer(k.at("points"), "kappa.points"));
      if (cfg.kappa_points < 2) cfg_fail("kappa.points must be >= 2");
    }
    if (k.contains("max")) {
      cfg.kappa_max = as_double(k.at("max"), "kappa.max");
      if (!(cfg.kappa_max > 0.0)) cfg_fail("kappa.max must be positive");
    }
  }
  if (doc.contains("sweep") && doc.at("sweep").contains("reductions")) {
    cfg.reductions = as_string_list(doc.at("sweep").at("reductions"), "sweep.reductions");
    if (cfg.reductions.empty()) cfg_fail("sweep.reductions must not be empty");
    for (const auto& r : cfg.reductions)
      if (r != "gbb" && r != "spectral")
        cfg_fail("sweep.reductions entries must be 'gbb' or 'spectral'");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (o.contains("dir")) cfg.out_dir = as_string(o.at("dir"), "output.dir");
    if (o.contains("dump_trajectory"))
      cfg.dump_trajectory = as_bool(o.at("dump_trajectory"), "output.dump_trajectory");
  }
  if (doc.contains("seed")) cfg.seed = as_integer(doc.at("seed"), "seed");
  if (doc.contains("convergence")) {
    const json& c = doc.at("convergence");
    ConvergenceSpec& s = cfg.convergence;
    if (c.contains("model")) s.model = as_string(c.at("model"), "convergence.model");
    if (c.contains("kernel")) s.kernel = as_string(c.at("kernel"), "convergence.kernel");
    if (c.contains("D")) s.D = as_double(c.at("D"), "convergence.D");
    if (c.contains("T")) s.T = as_double(c.at("T"), "convergence.T");
    if (c.contains("snapshot_dt"))
      s.snapshot_dt = as_double(c.at("snapshot_dt"), "convergence.snapshot_dt");
    if (c.contains("N")) {
      const json& n = c.at("N");
      if (!n.is_array() || n.empty()) cfg_fail("convergence.N must be a nonempty array");
      s.N.clear();
      for (const auto& e : n) s.N.push_back(static_cast<int>(as_integer(e, "convergence.N")));
      for (size_t i = 0; i < s.N.size(); ++i) {
        if (s.N[i] < 1) cfg_fail("convergence.N entries must be >= 1");
        if (i > 0 && s.N[i] <= s.N[i - 1]) cfg_fail("convergence.N must be increasing");
      }
    }
    if (c.contains("fine_M"))
      s.fine_M = static_cast<int>(as_integer(c.at("fine_M"), "convergence.fine_M"));
    if (c.contains("subcell_points"))
      s.subcell_points = static_cast<int>(as_integer(c.at("subcell_points"), "convergence.subcell_points"));
    if (c.contains("distance_points"))
      s.distance_points = static_cast<int>(as_integer(c.at("distance_points"), "convergence.distance_points"));
    if (!(s.T > 0.0) || !(s.snapshot_dt > 0.0)) cfg_fail("convergence times must be positive");
    if (!std::count(all_model_names().begin(), all_model_names().end(), s.model))
      cfg_fail("unknown name '" + s.model + "' in convergence.model");
    if (!std::count(all_kernel_names().begin(), all_kernel_names().end(), s.kernel))
      cfg_fail("unknown name '" + s.kernel + "' in convergence.kernel");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) cfg_fail("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const bool looks_json =
      path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  size_t first = text.find_first_not_of(" \t\r\n");
  const bool starts_brace = first != std::string::npos && text[first] == '{';
  try {
    if (looks_json || starts_brace) return from_json(json::parse(text));
    return from_json(parse_mini_toml(text));
  } catch (const json::parse_error& e) {
    cfg_fail(path + ": " + e.what());
  }
}

nlohmann::ordered_json ExperimentConfig::echo() const {
  nlohmann::ordered_json j;
  j["model"]["names"] = models;
  j["model"]["gene_coupling"] =
      gene_coupling == GeneCoupling::AsPrinted ? "as_printed" : "hill_neighbor";
  if (!model_params.is_null()) j["model"]["params"] = model_params;
  j["kernel"]["names"] = kernels;
  if (!kernel_params.is_null()) j["kernel"]["params"] = kernel_params;
  j["grid"]["M"] = grid_M;
  j["integrator"]["dt"] = integrator.dt;
  j["integrator"]["t_max"] = integrator.t_max;
  j["integrator"]["eq_tol"] = integrator.eq_tol;
  j["kappa"]["points"] = kappa_points;
  j["kappa"]["max"] = kappa_max;
  j["sweep"]["reductions"] = reductions;
  j["output"]["dir"] = out_dir;
  j["output"]["dump_trajectory"] = dump_trajectory;
  j["seed"] = seed;
  j["convergence"]["model"] = convergence.model;
  j["convergence"]["kernel"] = convergence.kernel;
  j["convergence"]["D"] = convergence.D;
  j["convergence"]["T"] = convergence.T;
  j["convergence"]["snapshot_dt"] = convergence.snapshot_dt;
  j["convergence"]["N"] = convergence.N;
  j["convergence"]["fine_M"] = convergence.fine_M;
  j["convergence"]["subcell_points"] = convergence.subcell_points;
  j["convergence"]["distance_points"] = convergence.distance_points;
  return j;
}

}  // namespace graphon
