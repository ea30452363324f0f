#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgeavg/errors.hpp"
#include "edgeavg/graph.hpp"
#include "edgeavg/initials.hpp"

namespace edgeavg {

enum class ExperimentKind {
  consensus_scaling,
  q_decay,
  local_tail,
  variance_identity,
  duality_check,
  lp_norm,
  biased_arc_lemma,
  worst_case_bound,
  snapshot,
};

std::string to_string(ExperimentKind kind);

// Graph selection, including the infinite lattices that only the
// fragmentation engines accept.
struct GraphSpec {
  enum class Kind {
    cycle,
    path,
    torus,
    complete,
    lattice_window_1d,
    lattice_window_2d,
    lattice_1d,  // infinite line, support-local simulation
    lattice_2d,  // infinite plane, support-local simulation
  };
  Kind kind = Kind::cycle;
  std::int64_t n = 0;
  std::int64_t w = 0;
  std::int64_t h = 0;
  std::int64_t radius = 0;

  bool infinite() const { return kind == Kind::lattice_1d || kind == Kind::lattice_2d; }
  // Vertex count; 0 for the infinite lattices.
  std::int64_t vertex_count() const;
};

// Builds the finite graph described by the spec; throws ConfigError for the
// infinite lattice kinds.
Graph build_graph(const GraphSpec& spec);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::snapshot;
  GraphSpec graph;
  InitialLaw init;
  std::optional<double> epsilon;
  std::vector<double> times;
  double t_max = 0.0;
  std::optional<double> record_every;
  std::uint64_t replicas = 1;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::int64_t probe = 0;
  double p = 2.0;            // lp_norm moment order
  double alpha = 2.0;        // alpha-norm order for fragmentation stats
  double mass_floor = 0.0;   // support-local flush threshold
  std::uint32_t threads = 0; // 0 = hardware concurrency

  // Observation grid: times merged with the record_every lattice.
  std::vector<double> observation_times() const;
};

// CLI overrides applied on top of file values (flag name -> raw value).
using ConfigOverrides = std::map<std::string, std::string>;

// Parses the flat key = value document (dotted keys, '#' comments). Unknown
// keys, missing required keys, type mismatches and invariant violations all
// throw ConfigError naming the key.
ExperimentConfig parse_config(const std::string& text,
                              const ConfigOverrides& overrides = {});
ExperimentConfig parse_config_file(const std::string& path,
                                   const ConfigOverrides& overrides = {});

}  // namespace edgeavg
