#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edgeavg/graph.hpp"
#include "edgeavg/rng.hpp"

namespace edgeavg {

// Dispersion statistics of the mass profile at one observation time.
struct DispersionStats {
  double q = 0.0;                 // sum of squared masses
  double energy = 0.0;            // sum over edges of squared mass differences
  std::int64_t support_size = 0;  // vertices with positive mass
  double ball_mass = 0.0;         // mass within the requested ball
  double alpha_norm = 0.0;        // (sum of mass^alpha)^(1/alpha)
};

// Fragmentation on a finite graph: unit mass starts at the origin and every
// edge carries a unit-rate clock. Mass is stored densely by vertex index.
class FiniteFragmentation {
 public:
  FiniteFragmentation(const Graph& g, std::int64_t origin);

  void apply_ring(std::int64_t edge);
  // Process all rings with time <= t_end; the pending ring beyond t_end stays
  // queued, so consecutive calls walk one trajectory.
  void run_to(double t_end, RandomStream& rng);

  double time() const { return time_; }
  double q_tracker() const { return q_; }
  std::int64_t origin() const { return origin_; }
  std::int64_t support_size() const { return support_; }
  double flushed_mass() const { return flushed_; }
  std::uint64_t event_count() const { return events_; }
  const std::vector<double>& mass() const { return mass_; }
  const Graph& graph() const { return *g_; }

  double mass_total() const;
  DispersionStats stats(std::int64_t ball_center, double ball_radius,
                        double alpha) const;
  DispersionStats stats(const std::vector<char>& ball_mask, double alpha) const;
  DispersionStats stats_at_origin(double ball_radius, double alpha) const {
    return stats(origin_, ball_radius, alpha);
  }

  // f(position, mass) over positive-mass vertices in index order; position is
  // the graph's stripe/arc coordinate.
  template <class F>
  void for_each_mass(F&& f) const {
    for (std::size_t v = 0; v < mass_.size(); ++v) {
      if (mass_[v] > 0.0) f(g_->stripe_position(static_cast<std::int64_t>(v)), mass_[v]);
    }
  }

 private:
  void maybe_refresh();

  const Graph* g_;
  std::vector<double> mass_;
  std::int64_t origin_;
  double time_ = 0.0;
  double q_ = 1.0;
  std::int64_t support_ = 1;
  double flushed_ = 0.0;
  std::uint64_t events_ = 0;
  std::uint64_t next_refresh_;
  bool has_pending_ = false;
  double pending_time_ = 0.0;
  std::uint64_t pending_edge_ = 0;
};

// Support-local fragmentation on the infinite line. The tracked window is the
// interval of vertices that ever received mass; edges with both endpoints
// outside it ring as no-ops and are skipped, which leaves the law of the
// process unchanged. Events are generated in phases: the two window-boundary
// edges ring at total rate 2, and between boundary rings the interior ring
// count over an interval is Poisson with exchangeable uniform edge choices,
// so interior rings are batched without drawing per-event waiting times.
//
// mass_floor > 0 rounds a post-ring value below the floor down to zero
// (discarded mass is accounted separately); with the default floor of 0 the
// engine is plain IEEE arithmetic and only underflow can zero a cell.
class Lattice1DFragmentation {
 public:
  explicit Lattice1DFragmentation(double mass_floor = 0.0,
                                  bool check_energy_lemma = false);

  void run_to(double t_end, RandomStream& rng);

  double time() const { return time_; }
  double q_tracker() const { return q_; }
  double flushed_mass() const { return flushed_; }
  std::uint64_t event_count() const { return events_; }
  std::int64_t window_lo() const { return base_coord_ + lo_; }
  std::int64_t window_hi() const { return base_coord_ + hi_; }
  std::int64_t support_size() const;
  bool energy_lemma_violated() const { return lemma_violated_; }

  double mass_total() const;
  DispersionStats stats(std::int64_t ball_center, double ball_radius,
                        double alpha) const;
  DispersionStats stats_at_origin(double ball_radius, double alpha) const {
    return stats(0, ball_radius, alpha);
  }

  template <class F>
  void for_each_mass(F&& f) const {
    for (std::int64_t i = lo_; i <= hi_; ++i) {
      const double m = cells_[static_cast<std::size_t>(i)];
      if (m > 0.0) f(base_coord_ + i, m);
    }
  }

 private:
  void interior_ring(std::int64_t k);
  void boundary_ring(int side);
  void ensure_slack();
  void maybe_refresh();
  double cell_or_zero(std::int64_t i) const {
    return (i >= lo_ && i <= hi_) ? cells_[static_cast<std::size_t>(i)] : 0.0;
  }

  std::vector<double> cells_;
  std::int64_t base_coord_ = 0;  // coordinate of cells_[0]
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  double time_ = 0.0;
  double q_ = 1.0;
  double energy_ = 2.0;
  double boundary_time_ = -1.0;  // not yet drawn
  double mass_floor_;
  bool check_energy_;
  bool lemma_violated_ = false;
  double flushed_ = 0.0;
  std::uint64_t events_ = 0;
  std::uint64_t next_refresh_;
};

// Support-local fragmentation on the infinite square lattice. Sparse mass
// keyed by coordinate; the active edge list holds every edge incident to a
// vertex that ever joined the support.
class Lattice2DFragmentation {
 public:
  struct Coord {
    std::int32_t x = 0;
    std::int32_t y = 0;
  };

  explicit Lattice2DFragmentation(double mass_floor = 0.0);

  void run_to(double t_end, RandomStream& rng);

  double time() const { return time_; }
  double q_tracker() const { return q_; }
  double flushed_mass() const { return flushed_; }
  std::uint64_t event_count() const { return events_; }
  std::int64_t support_size() const { return support_; }
  std::int64_t active_edge_count() const {
    return static_cast<std::int64_t>(active_edges_.size());
  }

  double mass_total() const;
  DispersionStats stats(Coord ball_center, double ball_radius, double alpha) const;
  DispersionStats stats_at_origin(double ball_radius, double alpha) const {
    return stats(Coord{0, 0}, ball_radius, alpha);
  }

  // f(position, mass) over positive cells in allocation order (deterministic
  // for a given seed); position is the x coordinate, which is what stripe
  // patterns key on.
  template <class F>
  void for_each_mass(F&& f) const {
    for (std::size_t s = 0; s < mass_.size(); ++s) {
      if (mass_[s] > 0.0) f(static_cast<std::int64_t>(coords_[s].x), mass_[s]);
    }
  }

 private:
  static std::uint64_t key_of(Coord c) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
           static_cast<std::uint32_t>(c.y);
  }
  std::int32_t slot_of(Coord c);
  void join_support(std::int32_t slot);
  void apply_ring(std::size_t edge_index);
  void maybe_refresh();

  std::unordered_map<std::uint64_t, std::int32_t> index_;
  std::vector<Coord> coords_;
  std::vector<double> mass_;
  std::vector<std::pair<std::int32_t, std::int32_t>> active_edges_;
  // Per lower-endpoint bitmask: bit 0 = +x edge active, bit 1 = +y edge.
  std::unordered_map<std::uint64_t, std::uint8_t> edge_flags_;
  double time_ = 0.0;
  double q_ = 1.0;
  std::int64_t support_ = 1;
  double mass_floor_;
  double flushed_ = 0.0;
  std::uint64_t events_ = 0;
  std::uint64_t next_refresh_;
  bool has_pending_ = false;
  double pending_time_ = 0.0;
  std::uint64_t pending_edge_ = 0;
};

// Trajectory of dispersion statistics at the requested times. Statistics use
// a ball of the given radius around the origin and the given alpha.
template <class Engine>
std::vector<std::pair<double, DispersionStats>> run_fragmentation(
    Engine& engine, std::span<const double> observe_at, RandomStream& rng,
    double ball_radius, double alpha) {
  std::vector<std::pair<double, DispersionStats>> out;
  out.reserve(observe_at.size());
  for (double s : observe_at) {
    engine.run_to(s, rng);
    out.emplace_back(s, engine.stats_at_origin(ball_radius, alpha));
  }
  return out;
}

}  // namespace edgeavg
