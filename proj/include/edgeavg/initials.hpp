#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgeavg/graph.hpp"
#include "edgeavg/rng.hpp"

namespace edgeavg {

enum class LawKind {
  rademacher,
  uniform01,
  biased_arc,
  arc_mixture,
  stable,
  constant,
  stripes,
};

std::string to_string(LawKind kind);
std::optional<LawKind> law_kind_from_string(const std::string& name);

// How the initial opinions are drawn. Product laws (everything except
// arc_mixture) can also be sampled vertex-by-vertex over a fragmentation
// support.
struct InitialLaw {
  LawKind kind = LawKind::rademacher;
  double epsilon = 0.0;         // biased_arc, arc_mixture: bias is 3*epsilon
  double alpha = 0.0;           // stable exponent, in (0,2]
  double value = 0.0;           // constant
  std::int64_t stripe_width = 0;
  std::int64_t arc_center = 0;  // biased_arc, in stripe_position coordinates
  double arc_radius = 0.0;      // biased_arc: biased where line distance < radius

  // Throws std::invalid_argument naming the offending parameter.
  void validate() const;
};

// One standard symmetric alpha-stable draw, characteristic function
// exp(-|theta|^alpha), via the Chambers-Mallows-Stuck transform.
double stable_standard(double alpha, RandomStream& rng);

// Arc membership on a line (lattice coordinates) or a cycle of length n
// (n = 0 means line distance).
struct ArcPredicate {
  std::int64_t center = 0;
  double radius = 0.0;
  std::int64_t cycle_n = 0;

  bool contains(std::int64_t pos) const {
    std::int64_t d = pos >= center ? pos - center : center - pos;
    if (cycle_n > 0) {
      d %= cycle_n;
      if (2 * d > cycle_n) d = cycle_n - d;
    }
    return static_cast<double>(d) < radius;
  }
};

// Single-vertex draw from a product law; pos is the stripe/arc position of
// the vertex (vertex index on cycles, signed coordinate on lattices).
double draw_opinion(const InitialLaw& law, std::int64_t pos,
                    const ArcPredicate& arc, RandomStream& rng);

// Arc layout of the mixture law on an n-cycle: k disjoint arcs of size
// 2*ell-1 with centers at pairwise distance >= 2*ell.
struct ArcMixtureLayout {
  std::int64_t ell = 0;
  std::int64_t k = 0;
  std::int64_t spacing = 0;
  std::vector<std::int64_t> centers;
};
ArcMixtureLayout arc_mixture_layout(std::int64_t n, double epsilon);

// One full draw of the initial profile on a finite graph.
std::vector<double> sample_profile(const InitialLaw& law, const Graph& g,
                                   RandomStream& rng);

struct LawMean {
  double value = 0.0;
  bool finite = true;  // false for stable laws with alpha <= 1
};

// Per-vertex mean of the law; in_arc selects the biased component of
// biased_arc. Stable laws with alpha <= 1 report their symmetry center
// with finite = false.
LawMean law_mean(const InitialLaw& law, bool in_arc = false);

}  // namespace edgeavg
