#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "edgeavg/graph.hpp"
#include "edgeavg/rng.hpp"

namespace edgeavg {

struct RingEvent {
  double time = 0.0;
  std::int64_t edge = 0;
};

// Waiting time and uniform edge rank for the next ring among `active_edge_count`
// unit-rate clocks: Exponential(count) wait, uniform rank, independent draws.
std::pair<double, std::uint64_t> next_event(std::uint64_t active_edge_count,
                                            RandomStream& rng);

// Opinion profile with incremental trackers. The value index is a multiset
// keyed by opinion value: min, max and single-value replacement in O(log n).
class OpinionState {
 public:
  OpinionState(const Graph& g, std::vector<double> init);

  // Ring of one edge: both endpoints get (f(u)+f(v))/2, computed once so the
  // endpoints are bit-equal and the halving is exact.
  void apply_ring(std::int64_t edge);

  double oscillation() const {
    return values_.empty() ? 0.0 : *values_.rbegin() - *values_.begin();
  }
  double max_opinion() const { return *values_.rbegin(); }
  double min_opinion() const { return *values_.begin(); }
  double h_statistic() const { return h_; }
  double sum() const { return sum_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }
  const std::vector<double>& opinions() const { return f_; }
  const Graph& graph() const { return *g_; }

 private:
  const Graph* g_;
  std::vector<double> f_;
  std::multiset<double> values_;
  double time_ = 0.0;
  double sum_ = 0.0;
  double h_ = 0.0;
};

struct Observation {
  double time = 0.0;
  double osc = 0.0;
  double h_stat = 0.0;
  double sum = 0.0;
  double probe_value = 0.0;  // meaningful only when ForwardOptions::probe is set
};

struct RunRecord {
  std::vector<Observation> observations;
  std::optional<double> consensus_time;
  // Full opinion snapshots at observation times, when requested.
  std::vector<std::pair<double, std::vector<double>>> snapshots;
};

struct ForwardOptions {
  double t_max = 0.0;
  std::span<const double> observe_at;       // sorted, within [0, t_max]
  std::optional<double> epsilon;            // record consensus time when set
  std::optional<std::int64_t> probe;        // vertex whose opinion is recorded
  bool record_snapshots = false;
  bool stop_at_consensus = false;           // stop once tau is known (and no
                                            // observations remain)
};

// Advance by repeated next_event/apply_ring until t_max. An observation at
// time s reports the state after all events with time <= s. When epsilon is
// set, the consensus time is the first event time with oscillation <= epsilon
// (0 if the initial profile already qualifies).
RunRecord run_forward(const Graph& g, std::vector<double> init,
                      const ForwardOptions& options, RandomStream& rng);

}  // namespace edgeavg
