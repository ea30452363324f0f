#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "edgeavg/fragmentation.hpp"
#include "edgeavg/graph.hpp"
#include "edgeavg/initials.hpp"
#include "edgeavg/rng.hpp"

namespace edgeavg {

struct DualitySample {
  double value = 0.0;      // one sample of the opinion at the origin
  double q_of_run = 0.0;   // sum of squared masses of the run used
  std::optional<double> alpha_norm_of_run;
};

// Evaluates the opinion at the fragmentation origin by drawing independent
// initial opinions over the support and forming the mass-weighted average.
// The sum is normalized by the accumulated mass total (1 up to rounding
// drift), which pins the sample inside the range of the drawn opinions:
// partial weighted sums never exceed partial mass sums in magnitude because
// rounding is monotone, so the final quotient cannot leave [-1, 1] when the
// opinions live there. The caller supplies a stream independent of the one
// that drove the fragmentation run.
template <class MassContainer>
DualitySample opinion_via_duality(const MassContainer& mass, const InitialLaw& law,
                                  const ArcPredicate& arc, RandomStream& rng) {
  if (law.kind == LawKind::arc_mixture) {
    throw std::invalid_argument("duality sampling requires a product law");
  }
  law.validate();
  double weighted = 0.0;
  double total = 0.0;
  double q = 0.0;
  mass.for_each_mass([&](std::int64_t pos, double m) {
    weighted += m * draw_opinion(law, pos, arc, rng);
    total += m;
    q += m * m;
  });
  DualitySample sample;
  sample.value = weighted / total;
  sample.q_of_run = q;
  return sample;
}

template <class MassContainer>
DualitySample opinion_via_duality(const MassContainer& mass, const InitialLaw& law,
                                  RandomStream& rng) {
  ArcPredicate arc{law.arc_center, law.arc_radius, 0};
  return opinion_via_duality(mass, law, arc, rng);
}

// ||mass||_alpha times one standard symmetric alpha-stable draw: the law of
// the origin opinion under i.i.d. alpha-stable initial opinions, sampled
// without drawing the whole profile.
template <class MassContainer>
double stable_opinion_magnitude(const MassContainer& mass, double alpha,
                                RandomStream& rng) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("alpha must be in (0, 2]");
  }
  double sum_pow = 0.0;
  mass.for_each_mass([&](std::int64_t, double m) { sum_pow += std::pow(m, alpha); });
  const double norm = std::pow(sum_pow, 1.0 / alpha);
  return norm * stable_standard(alpha, rng);
}

// Continuous-time random walk: waits Exponential(deg) at each vertex, picks
// a uniformly random incident edge, crosses it with probability 1/2. Returns
// the position at time t.
std::int64_t random_walk_endpoint(const Graph& g, std::int64_t origin, double t,
                                  RandomStream& rng);

}  // namespace edgeavg
