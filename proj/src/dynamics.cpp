#include "edgeavg/dynamics.hpp"

#include <limits>
#include <stdexcept>

namespace edgeavg {

std::pair<double, std::uint64_t> next_event(std::uint64_t active_edge_count,
                                            RandomStream& rng) {
  const double wait = rng.exponential(static_cast<double>(active_edge_count));
  const std::uint64_t rank = rng.below(active_edge_count);
  return {wait, rank};
}

OpinionState::OpinionState(const Graph& g, std::vector<double> init)
    : g_(&g), f_(std::move(init)) {
  if (static_cast<std::int64_t>(f_.size()) != g.vertex_count()) {
    throw std::invalid_argument("initial profile size does not match vertex count");
  }
  values_.insert(f_.begin(), f_.end());
  const double n = static_cast<double>(f_.size());
  for (double x : f_) sum_ += x;
  const double mean = sum_ / n;
  for (double x : f_) h_ += (x - mean) * (x - mean);
}

void OpinionState::apply_ring(std::int64_t edge) {
  const auto [u, v] = g_->edge(edge);
  const double a = f_[static_cast<std::size_t>(u)];
  const double b = f_[static_cast<std::size_t>(v)];
  if (a == b) return;  // exact fixed point of the update
  const double avg = 0.5 * (a + b);
  f_[static_cast<std::size_t>(u)] = avg;
  f_[static_cast<std::size_t>(v)] = avg;
  values_.erase(values_.find(a));
  values_.erase(values_.find(b));
  values_.insert(avg);
  values_.insert(avg);
  sum_ += (avg - a) + (avg - b);
  const double d = a - b;
  h_ -= 0.5 * d * d;
}

RunRecord run_forward(const Graph& g, std::vector<double> init,
                      const ForwardOptions& options, RandomStream& rng) {
  if (options.t_max < 0.0) throw std::invalid_argument("t_max must be >= 0");

  OpinionState state(g, std::move(init));
  RunRecord record;
  const std::uint64_t edge_count = static_cast<std::uint64_t>(g.edge_count());

  std::size_t next_obs = 0;
  auto observe_through = [&](double horizon, bool inclusive) {
    while (next_obs < options.observe_at.size() &&
           (inclusive ? options.observe_at[next_obs] <= horizon
                      : options.observe_at[next_obs] < horizon)) {
      const double s = options.observe_at[next_obs++];
      Observation obs;
      obs.time = s;
      obs.osc = state.oscillation();
      obs.h_stat = state.h_statistic();
      obs.sum = state.sum();
      if (options.probe) {
        obs.probe_value = state.opinions()[static_cast<std::size_t>(*options.probe)];
      }
      record.observations.push_back(obs);
      if (options.record_snapshots) {
        record.snapshots.emplace_back(s, state.opinions());
      }
    }
  };

  if (options.epsilon && state.oscillation() <= *options.epsilon) {
    record.consensus_time = 0.0;
  }

  double t = 0.0;
  while (true) {
    if (options.stop_at_consensus && record.consensus_time &&
        next_obs >= options.observe_at.size()) {
      break;
    }
    const auto [wait, rank] = next_event(edge_count, rng);
    const double t_next = t + wait;
    if (t_next > options.t_max) {
      observe_through(options.t_max, true);
      t = options.t_max;
      break;
    }
    // Anything observed strictly before the next event sees the current state.
    observe_through(t_next, false);
    state.apply_ring(static_cast<std::int64_t>(rank));
    t = t_next;
    if (options.epsilon && !record.consensus_time &&
        state.oscillation() <= *options.epsilon) {
      record.consensus_time = t;
    }
  }
  state.set_time(t);
  return record;
}

}  // namespace edgeavg
