#include "edgeavg/initials.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edgeavg {

std::string to_string(LawKind kind) {
  switch (kind) {
    case LawKind::rademacher: return "rademacher";
    case LawKind::uniform01: return "uniform01";
    case LawKind::biased_arc: return "biased_arc";
    case LawKind::arc_mixture: return "arc_mixture";
    case LawKind::stable: return "stable";
    case LawKind::constant: return "constant";
    case LawKind::stripes: return "stripes";
  }
  return "unknown";
}

std::optional<LawKind> law_kind_from_string(const std::string& name) {
  if (name == "rademacher") return LawKind::rademacher;
  if (name == "uniform01") return LawKind::uniform01;
  if (name == "biased_arc") return LawKind::biased_arc;
  if (name == "arc_mixture") return LawKind::arc_mixture;
  if (name == "stable") return LawKind::stable;
  if (name == "constant") return LawKind::constant;
  if (name == "stripes") return LawKind::stripes;
  return std::nullopt;
}

void InitialLaw::validate() const {
  switch (kind) {
    case LawKind::biased_arc:
      // epsilon = 1/3 makes the arc deterministic +1; still well defined.
      if (!(epsilon > 0.0 && epsilon <= 1.0 / 3.0)) {
        throw std::invalid_argument("init.epsilon must be in (0, 1/3] for biased_arc");
      }
      if (!(arc_radius >= 0.0)) {
        throw std::invalid_argument("init.arc_radius must be >= 0");
      }
      break;
    case LawKind::arc_mixture:
      if (!(epsilon > 0.0 && epsilon <= 1.0 / 3.0)) {
        throw std::invalid_argument("init.epsilon must be in (0, 1/3] for arc_mixture");
      }
      break;
    case LawKind::stable:
      if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::invalid_argument("init.alpha must be in (0, 2]");
      }
      break;
    case LawKind::stripes:
      if (stripe_width < 1) {
        throw std::invalid_argument("init.stripe_width must be >= 1");
      }
      break;
    default:
      break;
  }
}

double stable_standard(double alpha, RandomStream& rng) {
  const double theta = std::numbers::pi * (rng.uniform01_open() - 0.5);
  if (alpha == 1.0) return std::tan(theta);
  const double w = -std::log(rng.uniform01_open());
  const double s = std::sin(alpha * theta) /
                   std::pow(std::cos(theta), 1.0 / alpha);
  const double tail = std::pow(std::cos((1.0 - alpha) * theta) / w,
                               (1.0 - alpha) / alpha);
  return s * tail;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

double stripe_value(std::int64_t pos, std::int64_t width) {
  return floor_div(pos, width) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

double draw_opinion(const InitialLaw& law, std::int64_t pos,
                    const ArcPredicate& arc, RandomStream& rng) {
  switch (law.kind) {
    case LawKind::rademacher:
      return rng.bernoulli(0.5) ? 1.0 : -1.0;
    case LawKind::uniform01:
      return rng.uniform01();
    case LawKind::biased_arc: {
      const double p_plus = arc.contains(pos) ? (1.0 + 3.0 * law.epsilon) / 2.0 : 0.5;
      return rng.bernoulli(p_plus) ? 1.0 : -1.0;
    }
    case LawKind::stable:
      return stable_standard(law.alpha, rng);
    case LawKind::constant:
      return law.value;
    case LawKind::stripes:
      return stripe_value(pos, law.stripe_width);
    case LawKind::arc_mixture:
      throw std::invalid_argument("arc_mixture is not a product law; use sample_profile");
  }
  throw std::invalid_argument("unknown initial law");
}

ArcMixtureLayout arc_mixture_layout(std::int64_t n, double epsilon) {
  ArcMixtureLayout layout;
  layout.ell = static_cast<std::int64_t>(
      std::floor(std::log(static_cast<double>(n)) / (36.0 * epsilon * epsilon)));
  if (layout.ell < 1) {
    throw std::invalid_argument("arc_mixture: derived arc half-length is < 1; increase n or epsilon");
  }
  layout.k = n / (2 * layout.ell);
  if (layout.k < 1) {
    throw std::invalid_argument("arc_mixture: derived arc count is < 1; increase n");
  }
  layout.spacing = n / layout.k;
  layout.centers.reserve(static_cast<std::size_t>(layout.k));
  for (std::int64_t i = 0; i < layout.k; ++i) {
    layout.centers.push_back(i * layout.spacing);
  }
  return layout;
}

std::vector<double> sample_profile(const InitialLaw& law, const Graph& g,
                                   RandomStream& rng) {
  law.validate();
  const std::int64_t n = g.vertex_count();
  std::vector<double> f(static_cast<std::size_t>(n));

  if (law.kind == LawKind::arc_mixture) {
    if (g.kind() != GraphKind::cycle) {
      throw std::invalid_argument("arc_mixture is defined on cycles only");
    }
    const auto layout = arc_mixture_layout(n, law.epsilon);
    const std::int64_t chosen = static_cast<std::int64_t>(
        rng.below(static_cast<std::uint64_t>(layout.k)));
    const ArcPredicate arc{layout.centers[static_cast<std::size_t>(chosen)],
                           static_cast<double>(layout.ell) - 0.5, n};
    const double p_plus = (1.0 + 3.0 * law.epsilon) / 2.0;
    for (std::int64_t v = 0; v < n; ++v) {
      const double p = arc.contains(v) ? p_plus : 0.5;
      f[static_cast<std::size_t>(v)] = rng.bernoulli(p) ? 1.0 : -1.0;
    }
    return f;
  }

  ArcPredicate arc;
  if (law.kind == LawKind::biased_arc) {
    switch (g.kind()) {
      case GraphKind::cycle:
        arc = {law.arc_center, law.arc_radius, n};
        break;
      case GraphKind::path:
      case GraphKind::lattice_window_1d:
        arc = {law.arc_center, law.arc_radius, 0};
        break;
      default:
        throw std::invalid_argument("biased_arc requires a cycle, path, or 1d lattice window");
    }
  }
  for (std::int64_t v = 0; v < n; ++v) {
    f[static_cast<std::size_t>(v)] = draw_opinion(law, g.stripe_position(v), arc, rng);
  }
  return f;
}

LawMean law_mean(const InitialLaw& law, bool in_arc) {
  switch (law.kind) {
    case LawKind::rademacher: return {0.0, true};
    case LawKind::uniform01: return {0.5, true};
    case LawKind::constant: return {law.value, true};
    case LawKind::stable: return {0.0, law.alpha > 1.0};
    case LawKind::biased_arc: return {in_arc ? 3.0 * law.epsilon : 0.0, true};
    case LawKind::arc_mixture:
    case LawKind::stripes:
      // Not a single per-vertex value; the profile average is what matters.
      return {0.0, true};
  }
  return {0.0, true};
}

}  // namespace edgeavg
