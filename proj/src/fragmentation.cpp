#include "edgeavg/fragmentation.hpp"

#include "edgeavg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgeavg {

namespace {
constexpr std::uint64_t kRefreshInterval = 1u << 20;  // tracker re-sync cadence

double alpha_norm_from(double sum_pow, double q, double alpha) {
  if (alpha == 2.0) return std::sqrt(q);
  return std::pow(sum_pow, 1.0 / alpha);
}
}  // namespace

// ---------------------------------------------------------------------------
// FiniteFragmentation

FiniteFragmentation::FiniteFragmentation(const Graph& g, std::int64_t origin)
    : g_(&g), origin_(origin), next_refresh_(kRefreshInterval) {
  if (origin < 0 || origin >= g.vertex_count()) {
    throw std::invalid_argument("fragmentation origin out of range");
  }
  mass_.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
  mass_[static_cast<std::size_t>(origin)] = 1.0;
}

void FiniteFragmentation::apply_ring(std::int64_t edge) {
  ++events_;
  const auto [u, v] = g_->edge(edge);
  double& mu = mass_[static_cast<std::size_t>(u)];
  double& mv = mass_[static_cast<std::size_t>(v)];
  const double a = mu;
  const double b = mv;
  if (a == b) {
    maybe_refresh();
    return;
  }
  const double avg = 0.5 * (a + b);
  if (avg == 0.0) {
    // Underflow of a denormal endpoint; discard and keep the books.
    q_ -= a * a + b * b;
    flushed_ += a + b;
    if (a > 0.0) --support_;
    if (b > 0.0) --support_;
    mu = 0.0;
    mv = 0.0;
  } else {
    if (a == 0.0 || b == 0.0) ++support_;
    const double d = a - b;
    q_ -= 0.5 * d * d;
    mu = avg;
    mv = avg;
  }
  maybe_refresh();
}

void FiniteFragmentation::run_to(double t_end, RandomStream& rng) {
  if (t_end < time_) throw std::invalid_argument("run_to target precedes current time");
  const auto edge_count = static_cast<std::uint64_t>(g_->edge_count());
  while (true) {
    if (!has_pending_) {
      const auto [wait, rank] = next_event(edge_count, rng);
      pending_time_ = time_ + wait;
      pending_edge_ = rank;
      has_pending_ = true;
    }
    if (pending_time_ > t_end) break;
    time_ = pending_time_;
    has_pending_ = false;
    apply_ring(static_cast<std::int64_t>(pending_edge_));
  }
  time_ = t_end;
}

void FiniteFragmentation::maybe_refresh() {
  if (events_ < next_refresh_) return;
  next_refresh_ += kRefreshInterval;
  double q = 0.0;
  for (double m : mass_) q += m * m;
  q_ = q;
}

double FiniteFragmentation::mass_total() const {
  double total = 0.0;
  for (double m : mass_) total += m;
  return total;
}

DispersionStats FiniteFragmentation::stats(std::int64_t ball_center,
                                           double ball_radius, double alpha) const {
  std::vector<char> mask(mass_.size(), 0);
  for (std::int32_t v : ball(*g_, ball_center, ball_radius)) {
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return stats(mask, alpha);
}

DispersionStats FiniteFragmentation::stats(const std::vector<char>& ball_mask,
                                           double alpha) const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  DispersionStats out;
  double sum_pow = 0.0;
  for (std::size_t v = 0; v < mass_.size(); ++v) {
    const double m = mass_[v];
    if (m > 0.0) {
      out.q += m * m;
      ++out.support_size;
      if (alpha != 2.0) sum_pow += std::pow(m, alpha);
    }
    if (v < ball_mask.size() && ball_mask[v]) out.ball_mass += m;
  }
  for (const auto& [u, v] : g_->edges()) {
    const double d = mass_[static_cast<std::size_t>(u)] - mass_[static_cast<std::size_t>(v)];
    if (d != 0.0) out.energy += d * d;
  }
  out.alpha_norm = alpha_norm_from(sum_pow, out.q, alpha);
  return out;
}

// ---------------------------------------------------------------------------
// Lattice1DFragmentation

Lattice1DFragmentation::Lattice1DFragmentation(double mass_floor,
                                               bool check_energy_lemma)
    : mass_floor_(mass_floor),
      check_energy_(check_energy_lemma),
      next_refresh_(kRefreshInterval) {
  if (!(mass_floor >= 0.0 && mass_floor < 1e-6)) {
    throw std::invalid_argument("mass_floor must be in [0, 1e-6)");
  }
  cells_.assign(1u << 12, 0.0);
  lo_ = hi_ = static_cast<std::int64_t>(cells_.size() / 2);
  base_coord_ = -lo_;
  cells_[static_cast<std::size_t>(lo_)] = 1.0;
}

void Lattice1DFragmentation::ensure_slack() {
  if (lo_ > 0 && hi_ + 1 < static_cast<std::int64_t>(cells_.size())) return;
  const std::int64_t width = hi_ - lo_ + 1;
  std::vector<double> grown(static_cast<std::size_t>(4 * width), 0.0);
  const std::int64_t new_lo = (static_cast<std::int64_t>(grown.size()) - width) / 2;
  std::copy(cells_.begin() + lo_, cells_.begin() + hi_ + 1, grown.begin() + new_lo);
  base_coord_ += lo_ - new_lo;
  hi_ = new_lo + width - 1;
  lo_ = new_lo;
  cells_.swap(grown);
}

void Lattice1DFragmentation::interior_ring(std::int64_t k) {
  double* cell = cells_.data() + lo_ + k;
  const double a = cell[0];
  const double b = cell[1];
  if (a == b) return;
  double avg = 0.5 * (a + b);
  if (avg < mass_floor_ || avg == 0.0) avg = 0.0;
  if (check_energy_) {
    const double l = k > 0 ? cell[-1] : 0.0;
    const double r = (lo_ + k + 2 <= hi_) ? cell[2] : 0.0;
    const double d = a - b;
    energy_ += (avg - l) * (avg - l) - (a - l) * (a - l) +
               (avg - r) * (avg - r) - (b - r) * (b - r) - d * d;
  }
  if (avg == 0.0) {
    q_ -= a * a + b * b;
    flushed_ += a + b;
    cell[0] = 0.0;
    cell[1] = 0.0;
  } else {
    const double d = a - b;
    q_ -= 0.5 * d * d;
    cell[0] = avg;
    cell[1] = avg;
  }
  if (check_energy_ && q_ * q_ * q_ > 8.0 * energy_) lemma_violated_ = true;
}

void Lattice1DFragmentation::boundary_ring(int side) {
  ++events_;
  const std::int64_t inner = side == 0 ? lo_ : hi_;
  const double a = cells_[static_cast<std::size_t>(inner)];
  if (a == 0.0) return;  // stalled front cell; the ring is a no-op
  double avg = 0.5 * a;
  if (avg < mass_floor_ || avg == 0.0) avg = 0.0;
  if (check_energy_) {
    const double inward = cell_or_zero(side == 0 ? lo_ + 1 : hi_ - 1);
    // Edges touched: beyond the front, the front edge itself, and one inward.
    energy_ += avg * avg - a * a +
               (avg - inward) * (avg - inward) - (a - inward) * (a - inward);
  }
  if (avg == 0.0) {
    q_ -= a * a;
    flushed_ += a;
    cells_[static_cast<std::size_t>(inner)] = 0.0;
  } else {
    q_ -= 0.5 * a * a;
    cells_[static_cast<std::size_t>(inner)] = avg;
    if (side == 0) {
      --lo_;
      cells_[static_cast<std::size_t>(lo_)] = avg;
    } else {
      ++hi_;
      cells_[static_cast<std::size_t>(hi_)] = avg;
    }
    ensure_slack();
  }
  if (check_energy_ && q_ * q_ * q_ > 8.0 * energy_) lemma_violated_ = true;
  maybe_refresh();
}

void Lattice1DFragmentation::run_to(double t_end, RandomStream& rng) {
  if (t_end < time_) throw std::invalid_argument("run_to target precedes current time");
  if (boundary_time_ < 0.0) boundary_time_ = time_ + rng.exponential(2.0);
  while (true) {
    const bool boundary_due = boundary_time_ <= t_end;
    const double checkpoint = boundary_due ? boundary_time_ : t_end;
    const std::int64_t interior = hi_ - lo_;
    if (checkpoint > time_ && interior > 0) {
      const double mean = (checkpoint - time_) * static_cast<double>(interior);
      std::uint64_t count = rng.poisson(mean);
      events_ += count;
      if (check_energy_) {
        for (; count > 0; --count) {
          interior_ring(static_cast<std::int64_t>(
              rng.below(static_cast<std::uint64_t>(interior))));
        }
      } else {
        // Hot path: locals keep the members out of the inner loop.
        double* const base = cells_.data() + lo_;
        const auto edges = static_cast<std::uint64_t>(interior);
        const double floor_value = mass_floor_;
        double q_local = q_;
        double flushed_local = flushed_;
        for (; count > 0; --count) {
          double* cell = base + rng.below(edges);
          const double a = cell[0];
          const double b = cell[1];
          if (a == b) continue;
          const double avg = 0.5 * (a + b);
          if (avg < floor_value || avg == 0.0) {
            q_local -= a * a + b * b;
            flushed_local += a + b;
            cell[0] = 0.0;
            cell[1] = 0.0;
          } else {
            const double d = a - b;
            q_local -= 0.5 * d * d;
            cell[0] = avg;
            cell[1] = avg;
          }
        }
        q_ = q_local;
        flushed_ = flushed_local;
      }
      maybe_refresh();
    }
    time_ = checkpoint;
    if (!boundary_due) break;
    boundary_ring(static_cast<int>(rng.below(2)));
    boundary_time_ = time_ + rng.exponential(2.0);
  }
}

void Lattice1DFragmentation::maybe_refresh() {
  if (events_ < next_refresh_) return;
  next_refresh_ += kRefreshInterval;
  double q = 0.0;
  for (std::int64_t i = lo_; i <= hi_; ++i) {
    const double m = cells_[static_cast<std::size_t>(i)];
    q += m * m;
  }
  q_ = q;
  if (check_energy_) {
    double e = 0.0;
    double prev = 0.0;
    for (std::int64_t i = lo_; i <= hi_; ++i) {
      const double m = cells_[static_cast<std::size_t>(i)];
      const double d = m - prev;
      e += d * d;
      prev = m;
    }
    e += prev * prev;
    energy_ = e;
  }
}

std::int64_t Lattice1DFragmentation::support_size() const {
  std::int64_t count = 0;
  for (std::int64_t i = lo_; i <= hi_; ++i) {
    if (cells_[static_cast<std::size_t>(i)] > 0.0) ++count;
  }
  return count;
}

double Lattice1DFragmentation::mass_total() const {
  double total = 0.0;
  for (std::int64_t i = lo_; i <= hi_; ++i) {
    total += cells_[static_cast<std::size_t>(i)];
  }
  return total;
}

DispersionStats Lattice1DFragmentation::stats(std::int64_t ball_center,
                                              double ball_radius, double alpha) const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  DispersionStats out;
  double sum_pow = 0.0;
  double prev = 0.0;
  for (std::int64_t i = lo_; i <= hi_; ++i) {
    const double m = cells_[static_cast<std::size_t>(i)];
    if (m > 0.0) {
      out.q += m * m;
      ++out.support_size;
      if (alpha != 2.0) sum_pow += std::pow(m, alpha);
      const std::int64_t coord = base_coord_ + i;
      const std::int64_t dist = coord >= ball_center ? coord - ball_center
                                                     : ball_center - coord;
      if (static_cast<double>(dist) < ball_radius) out.ball_mass += m;
    }
    const double d = m - prev;
    out.energy += d * d;
    prev = m;
  }
  out.energy += prev * prev;
  out.alpha_norm = alpha_norm_from(sum_pow, out.q, alpha);
  return out;
}

// ---------------------------------------------------------------------------
// Lattice2DFragmentation

Lattice2DFragmentation::Lattice2DFragmentation(double mass_floor)
    : mass_floor_(mass_floor), next_refresh_(kRefreshInterval) {
  if (!(mass_floor >= 0.0 && mass_floor < 1e-6)) {
    throw std::invalid_argument("mass_floor must be in [0, 1e-6)");
  }
  coords_.push_back({0, 0});
  mass_.push_back(1.0);
  index_.emplace(key_of({0, 0}), 0);
  join_support(0);
}

std::int32_t Lattice2DFragmentation::slot_of(Coord c) {
  const auto [it, inserted] =
      index_.emplace(key_of(c), static_cast<std::int32_t>(coords_.size()));
  if (inserted) {
    coords_.push_back(c);
    mass_.push_back(0.0);
  }
  return it->second;
}

void Lattice2DFragmentation::join_support(std::int32_t slot) {
  const Coord c = coords_[static_cast<std::size_t>(slot)];
  struct Step {
    std::int32_t dx, dy;
    Coord lower;   // canonical endpoint of the edge
    std::uint8_t bit;
  };
  const Step steps[4] = {
      {+1, 0, c, 1},
      {0, +1, c, 2},
      {-1, 0, {static_cast<std::int32_t>(c.x - 1), c.y}, 1},
      {0, -1, {c.x, static_cast<std::int32_t>(c.y - 1)}, 2},
  };
  for (const auto& s : steps) {
    auto& flags = edge_flags_[key_of(s.lower)];
    if (flags & s.bit) continue;
    flags |= s.bit;
    const Coord other{static_cast<std::int32_t>(c.x + s.dx),
                      static_cast<std::int32_t>(c.y + s.dy)};
    active_edges_.emplace_back(slot, slot_of(other));
  }
}

void Lattice2DFragmentation::apply_ring(std::size_t edge_index) {
  ++events_;
  const auto [su, sv] = active_edges_[edge_index];
  double& mu = mass_[static_cast<std::size_t>(su)];
  double& mv = mass_[static_cast<std::size_t>(sv)];
  const double a = mu;
  const double b = mv;
  if (a == b) {
    maybe_refresh();
    return;
  }
  double avg = 0.5 * (a + b);
  if (avg < mass_floor_ || avg == 0.0) avg = 0.0;
  if (avg == 0.0) {
    q_ -= a * a + b * b;
    flushed_ += a + b;
    if (a > 0.0) --support_;
    if (b > 0.0) --support_;
    mu = 0.0;
    mv = 0.0;
  } else {
    const double d = a - b;
    q_ -= 0.5 * d * d;
    const bool u_joins = (a == 0.0);
    const bool v_joins = (b == 0.0);
    mu = avg;
    mv = avg;
    if (u_joins) {
      ++support_;
      join_support(su);
    }
    if (v_joins) {
      ++support_;
      join_support(sv);
    }
  }
  maybe_refresh();
}

void Lattice2DFragmentation::run_to(double t_end, RandomStream& rng) {
  if (t_end < time_) throw std::invalid_argument("run_to target precedes current time");
  while (true) {
    if (!has_pending_) {
      const auto count = static_cast<std::uint64_t>(active_edges_.size());
      const auto [wait, rank] = next_event(count, rng);
      pending_time_ = time_ + wait;
      pending_edge_ = rank;
      has_pending_ = true;
    }
    if (pending_time_ > t_end) break;
    time_ = pending_time_;
    has_pending_ = false;
    apply_ring(static_cast<std::size_t>(pending_edge_));
  }
  time_ = t_end;
}

void Lattice2DFragmentation::maybe_refresh() {
  if (events_ < next_refresh_) return;
  next_refresh_ += kRefreshInterval;
  double q = 0.0;
  for (double m : mass_) q += m * m;
  q_ = q;
}

double Lattice2DFragmentation::mass_total() const {
  double total = 0.0;
  for (double m : mass_) total += m;
  return total;
}

DispersionStats Lattice2DFragmentation::stats(Coord ball_center, double ball_radius,
                                              double alpha) const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  DispersionStats out;
  double sum_pow = 0.0;
  for (std::size_t s = 0; s < mass_.size(); ++s) {
    const double m = mass_[s];
    if (m > 0.0) {
      out.q += m * m;
      ++out.support_size;
      if (alpha != 2.0) sum_pow += std::pow(m, alpha);
      const Coord c = coords_[s];
      const std::int64_t dist = std::abs(static_cast<std::int64_t>(c.x) - ball_center.x) +
                                std::abs(static_cast<std::int64_t>(c.y) - ball_center.y);
      if (static_cast<double>(dist) < ball_radius) out.ball_mass += m;
    }
    // Energy over +x and +y edges out of every allocated cell; absent
    // neighbors hold zero mass, and zero-zero pairs contribute nothing.
    const Coord c = coords_[s];
    for (int axis = 0; axis < 2; ++axis) {
      const Coord nb{static_cast<std::int32_t>(c.x + (axis == 0 ? 1 : 0)),
                     static_cast<std::int32_t>(c.y + (axis == 1 ? 1 : 0))};
      const auto it = index_.find(key_of(nb));
      const double mn = it == index_.end() ? 0.0 : mass_[static_cast<std::size_t>(it->second)];
      const double d = m - mn;
      if (d != 0.0) out.energy += d * d;
    }
  }
  out.alpha_norm = alpha_norm_from(sum_pow, out.q, alpha);
  return out;
}

}  // namespace edgeavg
