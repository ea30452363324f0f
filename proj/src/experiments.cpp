#include "edgeavg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "edgeavg/duality.hpp"
#include "edgeavg/dynamics.hpp"
#include "edgeavg/errors.hpp"
#include "edgeavg/fragmentation.hpp"
#include "edgeavg/stats.hpp"

namespace edgeavg {
namespace {

namespace fs = std::filesystem;

constexpr double kMassTolerance = 1e-9;

void check_mass_books(double total, double flushed) {
  if (std::abs(total + flushed - 1.0) > kMassTolerance) {
    throw SimulationError("mass conservation violated beyond tolerance: total=" +
                          format_double(total) + " flushed=" + format_double(flushed));
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

struct Sink {
  const ExperimentConfig* cfg;
  ExperimentOutputs out;

  void write_csv(const std::string& name, const CsvTable& table) {
    const std::string path = join_path(cfg->out_dir, name);
    table.write(path);
    out.files.push_back(path);
  }
  void finish() {
    const std::string path = join_path(cfg->out_dir, "summary.txt");
    out.summary.write(path);
    out.files.push_back(path);
  }
};

// Columns of per-replica rows, concatenated in replica order.
template <class Fn>
CsvTable collect_rows(std::vector<std::string> header, std::uint64_t replicas,
                      std::uint32_t threads, Fn&& fn) {
  auto chunks = run_replicas<std::vector<std::vector<double>>>(replicas, threads,
                                                               std::forward<Fn>(fn));
  CsvTable table(std::move(header));
  for (auto& chunk : chunks) {
    for (auto& row : chunk) table.append_row(row);
  }
  return table;
}

std::vector<double> column(const CsvTable& table, std::size_t col,
                           double at_time, std::size_t time_col) {
  std::vector<double> out;
  for (const auto& row : table.rows()) {
    if (row[time_col] == at_time) out.push_back(row[col]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forward-process experiments

void run_consensus_like(const ExperimentConfig& cfg, Sink& sink) {
  const Graph g = build_graph(cfg.graph);
  const double eps = *cfg.epsilon;
  const double t_cap = cfg.t_max;

  auto rows = collect_rows(
      {"replica", "tau_epsilon", "reached"}, cfg.replicas, cfg.threads,
      [&](std::uint64_t r) {
        RandomStream init_rng = split_stream(cfg.seed, r, kOpinionSalt);
        RandomStream clock_rng = split_stream(cfg.seed, r, kClockSalt);
        auto profile = sample_profile(cfg.init, g, init_rng);
        ForwardOptions opt;
        opt.t_max = t_cap;
        opt.epsilon = eps;
        opt.stop_at_consensus = true;
        const RunRecord rec = run_forward(g, std::move(profile), opt, clock_rng);
        const bool reached = rec.consensus_time.has_value();
        const double tau = reached ? *rec.consensus_time
                                   : std::numeric_limits<double>::infinity();
        return std::vector<std::vector<double>>{
            {static_cast<double>(r), tau, reached ? 1.0 : 0.0}};
      });

  std::vector<double> taus;
  std::uint64_t unreached = 0;
  for (const auto& row : rows.rows()) {
    if (row[2] == 1.0) {
      taus.push_back(row[1]);
    } else {
      ++unreached;
    }
  }
  sink.write_csv("timeseries.csv", rows);

  Summary& s = sink.out.summary;
  s.add("experiment", to_string(cfg.experiment));
  s.add("epsilon", eps);
  s.add("n", cfg.graph.vertex_count());
  s.add("replicas", static_cast<std::int64_t>(cfg.replicas));
  if (taus.size() >= 2) {
    const Estimate est = mean_ci(taus);
    s.add("tau_mean", est.point);
    s.add("tau_se", est.standard_error);
  }
  if (cfg.experiment == ExperimentKind::worst_case_bound) {
    const double n = static_cast<double>(rows.row_count());
    const double p = static_cast<double>(unreached) / n;
    s.add("t", t_cap);
    s.add("p_exceed", p);
    s.add("p_exceed_se", std::sqrt(p * (1.0 - p) / n));
    if (std::isfinite(t_cap)) {
      const double nv = static_cast<double>(cfg.graph.vertex_count());
      s.add("bound", 2.0 * nv / (eps * eps) * std::exp(-2.0 * t_cap / (nv * nv)));
    }
  } else {
    const double log_n = std::log(static_cast<double>(cfg.graph.vertex_count()));
    s.add("log2_n", log_n * log_n);
  }
}

void run_snapshot(const ExperimentConfig& cfg, Sink& sink) {
  const Graph g = build_graph(cfg.graph);
  const auto obs = cfg.observation_times();

  auto records = run_replicas<RunRecord>(cfg.replicas, cfg.threads, [&](std::uint64_t r) {
    RandomStream init_rng = split_stream(cfg.seed, r, kOpinionSalt);
    RandomStream clock_rng = split_stream(cfg.seed, r, kClockSalt);
    auto profile = sample_profile(cfg.init, g, init_rng);
    ForwardOptions opt;
    opt.t_max = cfg.t_max;
    opt.observe_at = obs;
    opt.record_snapshots = r == 0;  // grids come from the first replica
    return run_forward(g, std::move(profile), opt, clock_rng);
  });

  CsvTable table({"replica", "t", "osc", "h_stat", "sum"});
  for (std::uint64_t r = 0; r < records.size(); ++r) {
    for (const auto& o : records[r].observations) {
      table.append_row({static_cast<double>(r), o.time, o.osc, o.h_stat, o.sum});
    }
  }
  sink.write_csv("timeseries.csv", table);

  for (const auto& [t, grid] : records[0].snapshots) {
    const std::string name = "snapshot_t" + format_double(t) + ".csv";
    const std::string path = join_path(cfg.out_dir, name);
    write_grid(path, grid, g.torus_w(), g.torus_h());
    sink.out.files.push_back(path);
  }

  Summary& s = sink.out.summary;
  s.add("experiment", to_string(cfg.experiment));
  s.add("n", cfg.graph.vertex_count());
  for (const auto& o : records[0].observations) {
    s.add("osc_t" + format_double(o.time), o.osc);
  }
}

// ---------------------------------------------------------------------------
// Fragmentation / duality experiments

// One fragmentation trajectory on the configured graph, observed at the
// given times; visit(time, stats, engine_view) runs per observation.
template <class Visit>
void fragmentation_replica(const ExperimentConfig& cfg, std::uint64_t replica,
                           std::span<const double> obs, Visit&& visit) {
  RandomStream clock_rng = split_stream(cfg.seed, replica, kClockSalt);
  auto observe_all = [&](auto& engine) {
    for (double t : obs) {
      engine.run_to(t, clock_rng);
      const double radius = 4.0 * std::sqrt(t);
      const DispersionStats st = engine.stats_at_origin(radius, cfg.alpha);
      check_mass_books(engine.mass_total(), engine.flushed_mass());
      visit(t, st, engine);
    }
  };
  switch (cfg.graph.kind) {
    case GraphSpec::Kind::lattice_1d: {
      Lattice1DFragmentation engine(cfg.mass_floor);
      observe_all(engine);
      return;
    }
    case GraphSpec::Kind::lattice_2d: {
      Lattice2DFragmentation engine(cfg.mass_floor);
      observe_all(engine);
      return;
    }
    default: {
      const Graph g = build_graph(cfg.graph);
      FiniteFragmentation engine(g, cfg.probe);
      observe_all(engine);
      return;
    }
  }
}

void run_q_decay(const ExperimentConfig& cfg, Sink& sink) {
  const auto obs = cfg.observation_times();
  auto table = collect_rows(
      {"replica", "t", "q", "energy", "support_size", "ball_mass", "alpha_norm"},
      cfg.replicas, cfg.threads, [&](std::uint64_t r) {
        std::vector<std::vector<double>> rows;
        fragmentation_replica(cfg, r, obs, [&](double t, const DispersionStats& st, auto&) {
          rows.push_back({static_cast<double>(r), t, st.q, st.energy,
                          static_cast<double>(st.support_size), st.ball_mass,
                          st.alpha_norm});
        });
        return rows;
      });
  sink.write_csv("timeseries.csv", table);

  Summary& s = sink.out.summary;
  s.add("experiment", to_string(cfg.experiment));
  s.add("replicas", static_cast<std::int64_t>(cfg.replicas));

  const std::int64_t n = cfg.graph.vertex_count();
  std::vector<double> ts;
  std::vector<double> q_means;
  std::int64_t lemma_violations = 0;
  for (const auto& row : table.rows()) {
    const double q = row[2];
    const double energy = row[3];
    const bool applicable = n <= 0 || q >= 2.0 / static_cast<double>(n);
    if (applicable && energy < q * q * q / 8.0) ++lemma_violations;
  }
  for (double t : obs) {
    const auto qs = column(table, 2, t, 1);
    const Estimate est = mean_ci(qs);
    const std::string tag = format_double(t);
    s.add("q_mean_t" + tag, est.point);
    s.add("q_se_t" + tag, est.standard_error);
    s.add("q_bound_t" + tag, 8.0 / std::sqrt(effective_time(t, n)));
    if (t > 0.0) {
      ts.push_back(t);
      q_means.push_back(est.point);
    }
  }
  s.add("energy_lemma_violations", lemma_violations);
  if (ts.size() >= 3) {
    const PowerLawFit fit = powerlaw_fit(ts, q_means);
    s.add("exponent", fit.exponent);
    s.add("r_squared", fit.r_squared);
  }
}

void run_local_tail(const ExperimentConfig& cfg, Sink& sink) {
  const auto obs = cfg.observation_times();
  auto table = collect_rows(
      {"replica", "t", "value", "q_of_run"}, cfg.replicas, cfg.threads,
      [&](std::uint64_t r) {
        RandomStream opinion_rng = split_stream(cfg.seed, r, kOpinionSalt);
        std::vector<std::vector<double>> rows;
        fragmentation_replica(cfg, r, obs, [&](double t, const DispersionStats&, auto& engine) {
          const DualitySample sample =
              opinion_via_duality(engine, cfg.init, opinion_rng);
          rows.push_back({static_cast<double>(r), t, sample.value, sample.q_of_run});
        });
        return rows;
      });
  sink.write_csv("timeseries.csv", table);

  const double eps = *cfg.epsilon;
  const std::int64_t n = cfg.graph.vertex_count();
  Summary& s = sink.out.summary;
  s.add("experiment", to_string(cfg.experiment));
  s.add("epsilon", eps);
  s.add("replicas", static_cast<std::int64_t>(cfg.replicas));
  for (double t : obs) {
    const auto values = column(table, 2, t, 1);
    const Estimate tail = tail_prob(values, eps);
    const double t_star = effective_time(t, n);
    const std::string tag = format_double(t);
    s.add("tail_t" + tag, tail.point);
    s.add("tail_se_t" + tag, tail.standard_error);
    s.add("bound_t" + tag, 3.0 * std::exp(-eps * eps * std::sqrt(t_star) / 12.0));
  }
}

void run_variance_identity(const ExperimentConfig& cfg, Sink& sink) {
  const Graph g = build_graph(cfg.graph);
  const auto obs = cfg.observation_times();

  auto direct = collect_rows(
      {"replica", "t", "osc", "h_stat", "sum", "value"}, cfg.replicas, cfg.threads,
      [&](std::uint64_t r) {
        RandomStream init_rng = split_stream(cfg.seed, r, kOpinionSalt);
        RandomStream clock_rng = split_stream(cfg.seed, r, kClockSalt);
        auto profile = sample_profile(cfg.init, g, init_rng);
        ForwardOptions opt;
        opt.t_max = cfg.t_max;
        opt.observe_at = obs;
        opt.probe = cfg.probe;
        const RunRecord rec = run_forward(g, std::move(profile), opt, clock_rng);
        std::vector<std::vector<double>> rows;
        for (const auto& o : rec.observations) {
          rows.push_back({static_cast<double>(r), o.time, o.osc, o.h_stat, o.sum,
                          o.probe_value});
        }
        return rows;
      });
  sink.write_csv("timeseries.csv", direct);

  auto frag = collect_rows(
      {"replica", "t", "q", "energy", "support_size", "ball_mass", "alpha_norm"},
      cfg.replicas, cfg.threads, [&](std::uint64_t r) {
        RandomStream clock_rng = split_stream(cfg.seed, r, kAuxClockSalt);
        FiniteFragmentation engine(g, cfg.probe);
        std::vector<std::vector<double>> rows;
        for (double t : obs) {
          engine.run_to(t, clock_rng);
          const DispersionStats st =
              engine.stats_at_origin(4.0 * std::sqrt(t), cfg.alpha);
          check_mass_books(engine.mass_total(), engine.flushed_mass());
          rows.push_back({static_cast<double>(r), t, st.q, st.energy,
                          static_cast<double>(st.support_size), st.ball_mass,
                          st.alpha_norm});
        }
        return rows;
      });
  sink.write_csv("fragmentation.csv", frag);

  const double t_final = obs.back();
  const auto values = column(direct, 5, t_final, 1);
  const auto qs = column(frag, 2, t_final, 1);
  const Estimate var_direct = variance_ci(values);
  const Estimate q_mean = mean_ci(qs);
  const double init_var = cfg.init.kind == LawKind::rademacher ? 1.0
                          : cfg.init.kind == LawKind::uniform01 ? 1.0 / 12.0
                                                                : 0.0;

  Summary& s = sink.out.summary;
  s.add("experiment", to_string(cfg.experiment));
  s.add("t", t_final);
  s.add("replicas", static_cast<std::int64_t>(cfg.replicas));
  s.add("var_direct", var_direct.point);
  s.add("var_direct_se", var_direct.standard_error);
  s.add("q_mean", q_mean.point);
  s.add("q_se", q_mean.standard_error);
  s.add("init_var", init_var);
  const double diff = std::abs(var_direct.point - q_mean.point * init_var);
  const double combined_se = std::hypot(var_direct.standard_error,
                                        q_mean.standard_error * init_var);
  s.add("abs_diff", diff);
  s.add("combined_se", combined_se);
}

void run_duality_check(const ExperimentConfig& cfg, Sink& sink) {
  const Graph g = build_graph(cfg.graph);
  const auto obs = cfg.observation_times();

  auto direct = collect_rows(
      {"replica", "t", "osc", "h_stat", "sum", "value"}, cfg.replicas, cfg.threads,
      [&](std::uint64_t r) {
        RandomStream init_rng = split_stream(cfg.seed, r, kOpinionSalt);
        RandomStream clock_rng = split_stream(cfg.seed, r, kClockSalt);
        auto profile = sample_profile(cfg.init, g, init_rng);
        ForwardOptions opt;
        opt.t_max = cfg.t_max;
        opt.observe_at = obs;
        opt.probe = cfg.probe;
        const RunRecord rec = run_forward(g, std::move(profile), opt, clock_rng);
        std::vector<std::vector<double>> rows;
        for (const auto& o : rec.observations) {
          rows.push_back({static_cast<double>(r), o.time, o.osc, o.h_stat, o.sum,
                          o.probe_value});
        }
        return rows;
      });
  sink.write_csv("direct.csv", direct);

  auto dual = collect_rows(
      {"replica", "t", "value", "q_of_run"}, cfg.replicas, cfg.threads,
      [&](std::uint64_t r) {
        RandomStream clock_rng = split_stream(cfg.seed, r, kAuxClockSalt);
        RandomStream opinion_rng = split_stream(cfg.seed, r, kAuxOpinionSalt);
        FiniteFragmentation engine(g, cfg.probe);
        std::vector<std::vector<double>> rows;
        for (double t : obs) {
          engine.run_to(t, clock_rng);
          check_mass_books(engine.mass_total(), engine.flushed_mass());
          const DualitySample sample = opinion_via_duality(engine, cfg.init, opinion_rng);
          rows.push_back({static_cast<double>(r), t, sample.value, sample.q_of_run});
        }
        return rows;
      });
  sink.write_csv("timeseries.csv", dual);

  const double t_final = obs.back();
  const auto direct_values = column(direct, 5, t_final, 1);
  const auto dual_values = column(dual, 2, t_final, 1);
  double max_abs = 0.0;
  for (double v : dual_values) max_abs = std::max(max_abs, std::abs(v));

  const Estimate m_direct = mean_ci(direct_values);
  const Estimate m_dual = mean_ci(dual_values);
  const Estimate v_direct = variance_ci(direct_values);
  const Estimate v_dual = variance_ci(dual_values);

  Summary& s = sink.out.summary;
  s.add("experiment", to_string(cfg.experiment));
  s.add("t", t_final);
  s.add("replicas", static_cast<std::int64_t>(cfg.replicas));
  s.add("direct_mean", m_direct.point);
  s.add("direct_mean_se", m_direct.standard_error);
  s.add("duality_mean", m_dual.point);
  s.add("duality_mean_se", m_dual.standard_error);
  s.add("direct_var", v_direct.point);
  s.add("direct_var_se", v_direct.standard_error);
  s.add("duality_var", v_dual.point);
  s.add("duality_var_se", v_dual.standard_error);
  s.add("max_abs_duality_value", max_abs);
}

void run_lp_norm(const ExperimentConfig& cfg, Sink& sink) {
  const auto obs = cfg.observation_times();
  const bool stable_init = cfg.init.kind == LawKind::stable;
  auto table = collect_rows(
      {"replica", "t", "value", "q_of_run", "alpha_norm_of_run"}, cfg.replicas,
      cfg.threads, [&](std::uint64_t r) {
        RandomStream opinion_rng = split_stream(cfg.seed, r, kOpinionSalt);
        std::vector<std::vector<double>> rows;
        fragmentation_replica(cfg, r, obs, [&](double t, const DispersionStats& st, auto& engine) {
          double value = 0.0;
          if (stable_init) {
            value = stable_opinion_magnitude(engine, cfg.init.alpha, opinion_rng);
          } else {
            value = opinion_via_duality(engine, cfg.init, opinion_rng).value;
          }
          rows.push_back({static_cast<double>(r), t, value, st.q, st.alpha_norm});
        });
        return rows;
      });
  sink.write_csv("timeseries.csv", table);

  const double center = law_mean(cfg.init).value;
  Summary& s = sink.out.summary;
  s.add("experiment", to_string(cfg.experiment));
  s.add("p", cfg.p);
  s.add("replicas", static_cast<std::int64_t>(cfg.replicas));
  std::vector<double> ts;
  std::vector<double> norms;
  bool warned = false;
  for (double t : obs) {
    const auto values = column(table, 2, t, 1);
    const LpNormEstimate lp = empirical_lp_norm(values, cfg.p, center);
    const std::string tag = format_double(t);
    s.add("lp_t" + tag, lp.estimate.point);
    s.add("lp_se_t" + tag, lp.estimate.standard_error);
    warned = warned || lp.heavy_tail_warning;
    if (t > 0.0 && lp.estimate.point > 0.0) {
      ts.push_back(t);
      norms.push_back(lp.estimate.point);
    }
  }
  s.add("heavy_tail_warning", static_cast<std::int64_t>(warned ? 1 : 0));
  if (ts.size() >= 3) {
    const PowerLawFit fit = powerlaw_fit(ts, norms);
    s.add("exponent", fit.exponent);
    s.add("r_squared", fit.r_squared);
  }
}

void run_biased_arc_lemma(const ExperimentConfig& cfg, Sink& sink) {
  const auto obs = cfg.observation_times();
  auto table = collect_rows(
      {"replica", "t", "value", "q_of_run"}, cfg.replicas, cfg.threads,
      [&](std::uint64_t r) {
        RandomStream opinion_rng = split_stream(cfg.seed, r, kOpinionSalt);
        std::vector<std::vector<double>> rows;
        fragmentation_replica(cfg, r, obs, [&](double t, const DispersionStats&, auto& engine) {
          const DualitySample sample = opinion_via_duality(engine, cfg.init, opinion_rng);
          rows.push_back({static_cast<double>(r), t, sample.value, sample.q_of_run});
        });
        return rows;
      });
  sink.write_csv("timeseries.csv", table);

  const double eps = *cfg.epsilon;
  const double t_final = obs.back();
  const auto values = column(table, 2, t_final, 1);
  double hits = 0.0;
  for (double v : values) {
    if (v >= eps) hits += 1.0;
  }
  const double n = static_cast<double>(values.size());
  const double p = hits / n;
  const double se = std::sqrt(p * (1.0 - p) / n);

  Summary& s = sink.out.summary;
  s.add("experiment", to_string(cfg.experiment));
  s.add("epsilon", eps);
  s.add("t", t_final);
  s.add("arc_radius", cfg.init.arc_radius);
  s.add("replicas", static_cast<std::int64_t>(cfg.replicas));
  s.add("p_ge_eps", p);
  s.add("p_se", se);
  s.add("target", 3.0 / 5.0);
}

}  // namespace

ExperimentOutputs run_experiment(const ExperimentConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) {
    throw SimulationError("cannot create output directory '" + cfg.out_dir +
                          "': " + ec.message());
  }

  Sink sink{&cfg, {}};
  switch (cfg.experiment) {
    case ExperimentKind::consensus_scaling:
    case ExperimentKind::worst_case_bound:
      run_consensus_like(cfg, sink);
      break;
    case ExperimentKind::snapshot:
      run_snapshot(cfg, sink);
      break;
    case ExperimentKind::q_decay:
      run_q_decay(cfg, sink);
      break;
    case ExperimentKind::local_tail:
      run_local_tail(cfg, sink);
      break;
    case ExperimentKind::variance_identity:
      run_variance_identity(cfg, sink);
      break;
    case ExperimentKind::duality_check:
      run_duality_check(cfg, sink);
      break;
    case ExperimentKind::lp_norm:
      run_lp_norm(cfg, sink);
      break;
    case ExperimentKind::biased_arc_lemma:
      run_biased_arc_lemma(cfg, sink);
      break;
  }
  sink.finish();
  return std::move(sink.out);
}

}  // namespace edgeavg
