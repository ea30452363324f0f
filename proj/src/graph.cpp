#include "edgeavg/graph.hpp"

#include <queue>
#include <stdexcept>

namespace edgeavg {

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::cycle: return "cycle";
    case GraphKind::path: return "path";
    case GraphKind::torus: return "torus";
    case GraphKind::complete: return "complete";
    case GraphKind::lattice_window_1d: return "lattice_window_1d";
    case GraphKind::lattice_window_2d: return "lattice_window_2d";
  }
  return "unknown";
}

void Graph::build_adjacency() {
  adjacency_offsets_.assign(static_cast<std::size_t>(vertex_count_) + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++adjacency_offsets_[static_cast<std::size_t>(u) + 1];
    ++adjacency_offsets_[static_cast<std::size_t>(v) + 1];
  }
  for (std::size_t i = 1; i < adjacency_offsets_.size(); ++i) {
    adjacency_offsets_[i] += adjacency_offsets_[i - 1];
  }
  adjacency_.resize(static_cast<std::size_t>(adjacency_offsets_.back()));
  std::vector<std::int64_t> cursor(adjacency_offsets_.begin(),
                                   adjacency_offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    adjacency_[static_cast<std::size_t>(cursor[u]++)] = {v, static_cast<std::int32_t>(e)};
    adjacency_[static_cast<std::size_t>(cursor[v]++)] = {u, static_cast<std::int32_t>(e)};
  }
}

void Graph::check_connected() const {
  if (vertex_count_ == 0) throw std::invalid_argument("graph has no vertices");
  std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
  std::queue<std::int32_t> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::int64_t reached = 1;
  while (!frontier.empty()) {
    const std::int32_t v = frontier.front();
    frontier.pop();
    for (const auto* a = adjacency_begin(v); a != adjacency_end(v); ++a) {
      if (!seen[static_cast<std::size_t>(a->neighbor)]) {
        seen[static_cast<std::size_t>(a->neighbor)] = 1;
        ++reached;
        frontier.push(a->neighbor);
      }
    }
  }
  if (reached != vertex_count_) throw std::invalid_argument("graph is not connected");
}

Graph Graph::cycle(std::int64_t n) {
  if (n < 3) throw std::invalid_argument("cycle requires n >= 3");
  Graph g;
  g.kind_ = GraphKind::cycle;
  g.vertex_count_ = n;
  g.edges_.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    g.edges_.emplace_back(static_cast<std::int32_t>(i),
                          static_cast<std::int32_t>((i + 1) % n));
  }
  g.build_adjacency();
  g.check_connected();
  return g;
}

Graph Graph::path(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("path requires n >= 2");
  Graph g;
  g.kind_ = GraphKind::path;
  g.vertex_count_ = n;
  for (std::int64_t i = 0; i + 1 < n; ++i) {
    g.edges_.emplace_back(static_cast<std::int32_t>(i),
                          static_cast<std::int32_t>(i + 1));
  }
  g.build_adjacency();
  g.check_connected();
  return g;
}

Graph Graph::torus(std::int64_t w, std::int64_t h) {
  if (w < 3) throw std::invalid_argument("torus requires w >= 3");
  if (h < 3) throw std::invalid_argument("torus requires h >= 3");
  Graph g;
  g.kind_ = GraphKind::torus;
  g.vertex_count_ = w * h;
  g.torus_w_ = w;
  g.torus_h_ = h;
  g.edges_.reserve(static_cast<std::size_t>(2 * w * h));
  // Row-major vertices; per vertex, the edge to the right then the edge down.
  for (std::int64_t r = 0; r < h; ++r) {
    for (std::int64_t c = 0; c < w; ++c) {
      const std::int64_t v = r * w + c;
      const std::int64_t right = r * w + (c + 1) % w;
      const std::int64_t down = ((r + 1) % h) * w + c;
      g.edges_.emplace_back(static_cast<std::int32_t>(v), static_cast<std::int32_t>(right));
      g.edges_.emplace_back(static_cast<std::int32_t>(v), static_cast<std::int32_t>(down));
    }
  }
  g.build_adjacency();
  g.check_connected();
  return g;
}

Graph Graph::complete(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("complete requires n >= 2");
  Graph g;
  g.kind_ = GraphKind::complete;
  g.vertex_count_ = n;
  g.edges_.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      g.edges_.emplace_back(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j));
    }
  }
  g.build_adjacency();
  g.check_connected();
  return g;
}

Graph Graph::lattice_window_1d(std::int64_t radius) {
  if (radius < 1) throw std::invalid_argument("lattice_window_1d requires radius >= 1");
  Graph g = path(2 * radius + 1);
  g.kind_ = GraphKind::lattice_window_1d;
  g.window_radius_ = radius;
  return g;
}

Graph Graph::lattice_window_2d(std::int64_t radius) {
  if (radius < 1) throw std::invalid_argument("lattice_window_2d requires radius >= 1");
  const std::int64_t side = 2 * radius + 1;
  Graph g;
  g.kind_ = GraphKind::lattice_window_2d;
  g.vertex_count_ = side * side;
  g.window_radius_ = radius;
  for (std::int64_t r = 0; r < side; ++r) {
    for (std::int64_t c = 0; c < side; ++c) {
      const std::int64_t v = r * side + c;
      if (c + 1 < side) {
        g.edges_.emplace_back(static_cast<std::int32_t>(v), static_cast<std::int32_t>(v + 1));
      }
      if (r + 1 < side) {
        g.edges_.emplace_back(static_cast<std::int32_t>(v), static_cast<std::int32_t>(v + side));
      }
    }
  }
  g.build_adjacency();
  g.check_connected();
  return g;
}

std::int64_t Graph::stripe_position(std::int64_t v) const {
  switch (kind_) {
    case GraphKind::torus: return v % torus_w_;
    case GraphKind::lattice_window_1d: return v - window_radius_;
    case GraphKind::lattice_window_2d:
      return v % (2 * window_radius_ + 1) - window_radius_;
    default: return v;
  }
}

std::vector<std::int32_t> Graph::distances_from(std::int64_t source) const {
  if (source < 0 || source >= vertex_count_) {
    throw std::invalid_argument("vertex index out of range");
  }
  std::vector<std::int32_t> dist(static_cast<std::size_t>(vertex_count_), -1);
  std::queue<std::int32_t> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(static_cast<std::int32_t>(source));
  while (!frontier.empty()) {
    const std::int32_t v = frontier.front();
    frontier.pop();
    for (const auto* a = adjacency_begin(v); a != adjacency_end(v); ++a) {
      if (dist[static_cast<std::size_t>(a->neighbor)] < 0) {
        dist[static_cast<std::size_t>(a->neighbor)] = dist[static_cast<std::size_t>(v)] + 1;
        frontier.push(a->neighbor);
      }
    }
  }
  return dist;
}

VertexSet ball(const Graph& g, std::int64_t center, double radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  const auto dist = g.distances_from(center);
  VertexSet out;
  for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
    const std::int32_t d = dist[static_cast<std::size_t>(v)];
    if (d >= 0 && static_cast<double>(d) < radius) {
      out.push_back(static_cast<std::int32_t>(v));
    }
  }
  return out;
}

}  // namespace edgeavg
