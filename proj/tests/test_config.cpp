#include <doctest.h>

#include <string>

#include "edgeavg/config.hpp"
#include "edgeavg/errors.hpp"

using namespace edgeavg;

namespace {

const std::string kMinimalQDecay =
    "experiment = q_decay\n"
    "graph.kind = lattice_1d\n"
    "times = 16,64,256\n"
    "replicas = 1000\n"
    "seed = 7\n";

}  // namespace

TEST_CASE("minimal q_decay config parses") {
  const ExperimentConfig cfg = parse_config(kMinimalQDecay);
  CHECK(cfg.experiment == ExperimentKind::q_decay);
  CHECK(cfg.graph.kind == GraphSpec::Kind::lattice_1d);
  CHECK(cfg.times == std::vector<double>{16, 64, 256});
  CHECK(cfg.t_max == 256.0);
  CHECK(cfg.replicas == 1000);
  CHECK(cfg.seed == 7);
}

TEST_CASE("comments and blank lines are ignored") {
  const ExperimentConfig cfg = parse_config(
      "# dispersion sweep\n"
      "\n"
      "experiment = q_decay  # one experiment per invocation\n"
      "graph.kind = lattice_1d\n"
      "times = 1,2\n");
  CHECK(cfg.experiment == ExperimentKind::q_decay);
}

TEST_CASE("local_tail without epsilon is rejected") {
  CHECK_THROWS_WITH_AS(
      parse_config("experiment = local_tail\n"
                   "graph.kind = cycle\n"
                   "graph.n = 400\n"
                   "init.kind = rademacher\n"
                   "times = 100\n"),
      "epsilon: required for local_tail", ConfigError);
}

TEST_CASE("unknown keys are rejected with the key path") {
  CHECK_THROWS_WITH_AS(parse_config(kMinimalQDecay + "graph.diameter = 3\n"),
                       "graph.diameter: unknown key", ConfigError);
}

TEST_CASE("type mismatches are rejected with the key path") {
  CHECK_THROWS_AS(parse_config(kMinimalQDecay + "t_max = soon\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(kMinimalQDecay + "replicas = -2\n"), ConfigError);
}

TEST_CASE("flag overrides win over file values") {
  const ExperimentConfig cfg = parse_config(kMinimalQDecay, {{"replicas", "50"}});
  CHECK(cfg.replicas == 50);
}

TEST_CASE("times must be sorted and within the horizon") {
  CHECK_THROWS_AS(parse_config("experiment = q_decay\n"
                               "graph.kind = lattice_1d\n"
                               "times = 64,16\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = q_decay\n"
                               "graph.kind = lattice_1d\n"
                               "times = 16,64\n"
                               "t_max = 32\n"),
                  ConfigError);
}

TEST_CASE("forward experiments refuse infinite lattices") {
  CHECK_THROWS_AS(parse_config("experiment = consensus_scaling\n"
                               "graph.kind = lattice_1d\n"
                               "init.kind = rademacher\n"
                               "epsilon = 0.2\n"),
                  ConfigError);
}

TEST_CASE("snapshot requires a torus") {
  CHECK_THROWS_AS(parse_config("experiment = snapshot\n"
                               "graph.kind = cycle\n"
                               "graph.n = 10\n"
                               "init.kind = rademacher\n"
                               "times = 0,1\n"),
                  ConfigError);
}

TEST_CASE("init invariants are validated with config-key names") {
  CHECK_THROWS_WITH_AS(
      parse_config("experiment = duality_check\n"
                   "graph.kind = cycle\n"
                   "graph.n = 10\n"
                   "init.kind = biased_arc\n"
                   "init.epsilon = 0.9\n"
                   "times = 5\n"),
      "init.epsilon must be in (0, 1/3] for biased_arc", ConfigError);
}

TEST_CASE("biased_arc_lemma defaults the arc radius to 4 sqrt(t)") {
  const ExperimentConfig cfg = parse_config(
      "experiment = biased_arc_lemma\n"
      "graph.kind = lattice_1d\n"
      "init.kind = biased_arc\n"
      "init.epsilon = 0.3\n"
      "epsilon = 0.3\n"
      "times = 400\n");
  CHECK(cfg.init.arc_radius == doctest::Approx(80.0));
}

TEST_CASE("record_every merges into the observation grid") {
  ExperimentConfig cfg = parse_config(
      "experiment = snapshot\n"
      "graph.kind = torus\n"
      "graph.w = 4\n"
      "graph.h = 4\n"
      "init.kind = rademacher\n"
      "times = 0,5\n"
      "t_max = 5\n"
      "record_every = 2\n");
  CHECK(cfg.observation_times() == std::vector<double>{0, 2, 4, 5});
}

TEST_CASE("duplicate keys are rejected") {
  CHECK_THROWS_AS(parse_config("experiment = q_decay\n"
                               "experiment = snapshot\n"
                               "graph.kind = lattice_1d\n"
                               "times = 1\n"),
                  ConfigError);
}

TEST_CASE("build_graph maps specs to graphs and rejects infinite kinds") {
  GraphSpec spec;
  spec.kind = GraphSpec::Kind::torus;
  spec.w = 4;
  spec.h = 5;
  const Graph g = build_graph(spec);
  CHECK(g.vertex_count() == 20);
  CHECK(spec.vertex_count() == 20);

  spec.kind = GraphSpec::Kind::lattice_1d;
  CHECK(spec.infinite());
  CHECK_THROWS_AS(build_graph(spec), ConfigError);

  GraphSpec bad;
  bad.kind = GraphSpec::Kind::cycle;
  bad.n = 2;
  CHECK_THROWS_AS(build_graph(bad), ConfigError);
}
