#include "edgeavg/duality.hpp"

#include <stdexcept>

namespace edgeavg {

std::int64_t random_walk_endpoint(const Graph& g, std::int64_t origin, double t,
                                  RandomStream& rng) {
  if (origin < 0 || origin >= g.vertex_count()) {
    throw std::invalid_argument("walk origin out of range");
  }
  if (t < 0.0) throw std::invalid_argument("walk time must be >= 0");
  std::int64_t pos = origin;
  double clock = 0.0;
  while (true) {
    const auto deg = static_cast<std::uint64_t>(g.degree(pos));
    clock += rng.exponential(static_cast<double>(deg));
    if (clock > t) return pos;
    const auto* pick = g.adjacency_begin(pos) + rng.below(deg);
    if (rng.bernoulli(0.5)) pos = pick->neighbor;
  }
}

}  // namespace edgeavg
