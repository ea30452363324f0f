#include "edgeavg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace edgeavg {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::consensus_scaling: return "consensus_scaling";
    case ExperimentKind::q_decay: return "q_decay";
    case ExperimentKind::local_tail: return "local_tail";
    case ExperimentKind::variance_identity: return "variance_identity";
    case ExperimentKind::duality_check: return "duality_check";
    case ExperimentKind::lp_norm: return "lp_norm";
    case ExperimentKind::biased_arc_lemma: return "biased_arc_lemma";
    case ExperimentKind::worst_case_bound: return "worst_case_bound";
    case ExperimentKind::snapshot: return "snapshot";
  }
  return "unknown";
}

std::int64_t GraphSpec::vertex_count() const {
  switch (kind) {
    case Kind::cycle:
    case Kind::path:
    case Kind::complete: return n;
    case Kind::torus: return w * h;
    case Kind::lattice_window_1d: return 2 * radius + 1;
    case Kind::lattice_window_2d: return (2 * radius + 1) * (2 * radius + 1);
    case Kind::lattice_1d:
    case Kind::lattice_2d: return 0;
  }
  return 0;
}

Graph build_graph(const GraphSpec& spec) {
  try {
    switch (spec.kind) {
      case GraphSpec::Kind::cycle: return Graph::cycle(spec.n);
      case GraphSpec::Kind::path: return Graph::path(spec.n);
      case GraphSpec::Kind::torus: return Graph::torus(spec.w, spec.h);
      case GraphSpec::Kind::complete: return Graph::complete(spec.n);
      case GraphSpec::Kind::lattice_window_1d: return Graph::lattice_window_1d(spec.radius);
      case GraphSpec::Kind::lattice_window_2d: return Graph::lattice_window_2d(spec.radius);
      case GraphSpec::Kind::lattice_1d:
      case GraphSpec::Kind::lattice_2d:
        throw ConfigError("graph.kind: infinite lattices have no finite graph; "
                          "only fragmentation experiments accept them");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("graph: ") + e.what());
  }
  throw ConfigError("graph.kind: unknown kind");
}

namespace {

struct RawConfig {
  std::map<std::string, std::string> values;
  std::set<std::string> consumed;

  std::optional<std::string> get(const std::string& key) {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    consumed.insert(key);
    return it->second;
  }
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    if (raw.values.count(key)) {
      throw ConfigError(key + ": duplicate key");
    }
    raw.values[key] = value;
  }
  return raw;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a real number, got '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::int64_t x = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected a nonnegative integer, got '" + value + "'");
  }
  return x;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(key + ": empty list element");
    out.push_back(parse_real(key, item));
  }
  if (out.empty()) throw ConfigError(key + ": expected a comma-separated list");
  return out;
}

GraphSpec::Kind graph_kind_from(const std::string& name) {
  if (name == "cycle") return GraphSpec::Kind::cycle;
  if (name == "path") return GraphSpec::Kind::path;
  if (name == "torus") return GraphSpec::Kind::torus;
  if (name == "complete") return GraphSpec::Kind::complete;
  if (name == "lattice_window_1d") return GraphSpec::Kind::lattice_window_1d;
  if (name == "lattice_window_2d") return GraphSpec::Kind::lattice_window_2d;
  if (name == "lattice_1d") return GraphSpec::Kind::lattice_1d;
  if (name == "lattice_2d") return GraphSpec::Kind::lattice_2d;
  throw ConfigError("graph.kind: unknown kind '" + name + "'");
}

ExperimentKind experiment_from(const std::string& name) {
  if (name == "consensus_scaling") return ExperimentKind::consensus_scaling;
  if (name == "q_decay") return ExperimentKind::q_decay;
  if (name == "local_tail") return ExperimentKind::local_tail;
  if (name == "variance_identity") return ExperimentKind::variance_identity;
  if (name == "duality_check") return ExperimentKind::duality_check;
  if (name == "lp_norm") return ExperimentKind::lp_norm;
  if (name == "biased_arc_lemma") return ExperimentKind::biased_arc_lemma;
  if (name == "worst_case_bound") return ExperimentKind::worst_case_bound;
  if (name == "snapshot") return ExperimentKind::snapshot;
  throw ConfigError("experiment: unknown experiment '" + name + "'");
}

bool needs_init(ExperimentKind e) {
  switch (e) {
    case ExperimentKind::q_decay:
      return false;
    default:
      return true;
  }
}

bool forward_experiment(ExperimentKind e) {
  switch (e) {
    case ExperimentKind::consensus_scaling:
    case ExperimentKind::worst_case_bound:
    case ExperimentKind::snapshot:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<double> ExperimentConfig::observation_times() const {
  std::vector<double> grid = times;
  if (record_every && *record_every > 0.0 && std::isfinite(t_max)) {
    for (double s = 0.0; s <= t_max; s += *record_every) grid.push_back(s);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ExperimentConfig parse_config(const std::string& text,
                              const ConfigOverrides& overrides) {
  RawConfig raw = tokenize(text);
  for (const auto& [key, value] : overrides) {
    raw.values[key] = value;  // flags win over file values
  }

  ExperimentConfig cfg;
  const auto experiment = raw.get("experiment");
  if (!experiment) throw ConfigError("experiment: required key is missing");
  cfg.experiment = experiment_from(*experiment);

  // Graph.
  const auto gk = raw.get("graph.kind");
  if (!gk) throw ConfigError("graph.kind: required key is missing");
  cfg.graph.kind = graph_kind_from(*gk);
  if (const auto v = raw.get("graph.n")) cfg.graph.n = parse_int("graph.n", *v);
  if (const auto v = raw.get("graph.w")) cfg.graph.w = parse_int("graph.w", *v);
  if (const auto v = raw.get("graph.h")) cfg.graph.h = parse_int("graph.h", *v);
  if (const auto v = raw.get("graph.radius")) cfg.graph.radius = parse_int("graph.radius", *v);

  // Initial law.
  if (const auto v = raw.get("init.kind")) {
    const auto kind = law_kind_from_string(*v);
    if (!kind) throw ConfigError("init.kind: unknown law '" + *v + "'");
    cfg.init.kind = *kind;
  } else if (needs_init(cfg.experiment)) {
    throw ConfigError("init.kind: required key is missing");
  }
  if (const auto v = raw.get("init.epsilon")) cfg.init.epsilon = parse_real("init.epsilon", *v);
  if (const auto v = raw.get("init.alpha")) cfg.init.alpha = parse_real("init.alpha", *v);
  if (const auto v = raw.get("init.value")) cfg.init.value = parse_real("init.value", *v);
  if (const auto v = raw.get("init.stripe_width")) {
    cfg.init.stripe_width = parse_int("init.stripe_width", *v);
  }
  if (const auto v = raw.get("init.arc_center")) {
    cfg.init.arc_center = parse_int("init.arc_center", *v);
  }
  if (const auto v = raw.get("init.arc_radius")) {
    cfg.init.arc_radius = parse_real("init.arc_radius", *v);
  }

  if (const auto v = raw.get("epsilon")) cfg.epsilon = parse_real("epsilon", *v);
  if (const auto v = raw.get("times")) cfg.times = parse_real_list("times", *v);
  if (const auto v = raw.get("t_max")) {
    cfg.t_max = parse_real("t_max", *v);
  } else if (!cfg.times.empty()) {
    cfg.t_max = cfg.times.back();
  } else if (forward_experiment(cfg.experiment)) {
    cfg.t_max = std::numeric_limits<double>::infinity();
  }
  if (const auto v = raw.get("record_every")) cfg.record_every = parse_real("record_every", *v);
  if (const auto v = raw.get("replicas")) cfg.replicas = parse_uint("replicas", *v);
  if (const auto v = raw.get("seed")) cfg.seed = parse_uint("seed", *v);
  if (const auto v = raw.get("out_dir")) cfg.out_dir = *v;
  if (const auto v = raw.get("probe")) cfg.probe = parse_int("probe", *v);
  if (const auto v = raw.get("p")) cfg.p = parse_real("p", *v);
  if (const auto v = raw.get("alpha")) cfg.alpha = parse_real("alpha", *v);
  if (const auto v = raw.get("mass_floor")) cfg.mass_floor = parse_real("mass_floor", *v);
  if (const auto v = raw.get("threads")) {
    cfg.threads = static_cast<std::uint32_t>(parse_uint("threads", *v));
  }

  for (const auto& [key, value] : raw.values) {
    if (!raw.consumed.count(key)) throw ConfigError(key + ": unknown key");
  }

  // Cross-key invariants.
  if (cfg.replicas < 1) throw ConfigError("replicas: must be >= 1");
  if (cfg.t_max < 0.0) throw ConfigError("t_max: must be >= 0");
  std::vector<double> sorted = cfg.times;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != cfg.times) throw ConfigError("times: must be sorted ascending");
  for (double s : cfg.times) {
    if (s < 0.0 || s > cfg.t_max) throw ConfigError("times: entries must lie in [0, t_max]");
  }
  if (!(cfg.p >= 1.0)) throw ConfigError("p: must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 2.0)) throw ConfigError("alpha: must be in (0, 2]");
  if (!(cfg.mass_floor >= 0.0 && cfg.mass_floor < 1e-6)) {
    throw ConfigError("mass_floor: must be in [0, 1e-6)");
  }

  const bool needs_epsilon =
      cfg.experiment == ExperimentKind::consensus_scaling ||
      cfg.experiment == ExperimentKind::local_tail ||
      cfg.experiment == ExperimentKind::biased_arc_lemma ||
      cfg.experiment == ExperimentKind::worst_case_bound;
  if (needs_epsilon && !cfg.epsilon) {
    throw ConfigError("epsilon: required for " + to_string(cfg.experiment));
  }
  if (cfg.epsilon && !(*cfg.epsilon > 0.0)) throw ConfigError("epsilon: must be > 0");

  const bool needs_times =
      cfg.experiment == ExperimentKind::q_decay ||
      cfg.experiment == ExperimentKind::local_tail ||
      cfg.experiment == ExperimentKind::variance_identity ||
      cfg.experiment == ExperimentKind::duality_check ||
      cfg.experiment == ExperimentKind::lp_norm ||
      cfg.experiment == ExperimentKind::biased_arc_lemma ||
      cfg.experiment == ExperimentKind::snapshot;
  if (needs_times && cfg.times.empty()) {
    throw ConfigError("times: required for " + to_string(cfg.experiment));
  }

  const bool lattice_only =
      cfg.experiment == ExperimentKind::biased_arc_lemma;
  if (lattice_only && cfg.graph.kind != GraphSpec::Kind::lattice_1d) {
    throw ConfigError("graph.kind: " + to_string(cfg.experiment) + " requires lattice_1d");
  }
  if (cfg.experiment == ExperimentKind::snapshot &&
      cfg.graph.kind != GraphSpec::Kind::torus) {
    throw ConfigError("graph.kind: snapshot requires torus");
  }
  if (cfg.graph.infinite() && forward_experiment(cfg.experiment)) {
    throw ConfigError("graph.kind: " + to_string(cfg.experiment) +
                      " runs the forward process and needs a finite graph");
  }

  if (needs_init(cfg.experiment)) {
    // Arc geometry defaults for the lemma experiment: ball of radius
    // 4*sqrt(t) around the origin.
    if (cfg.experiment == ExperimentKind::biased_arc_lemma &&
        cfg.init.kind == LawKind::biased_arc && cfg.init.arc_radius == 0.0 &&
        !cfg.times.empty()) {
      cfg.init.arc_radius = 4.0 * std::sqrt(cfg.times.back());
    }
    try {
      cfg.init.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path,
                                   const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), overrides);
}

}  // namespace edgeavg
