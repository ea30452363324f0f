#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace edgeavg {

enum class GraphKind {
  cycle,
  path,
  torus,
  complete,
  lattice_window_1d,
  lattice_window_2d,
};

std::string to_string(GraphKind kind);

// Immutable undirected graph. Connected, no self-loops, no parallel edges,
// bounded degree by construction. Edge order is the canonical construction
// order so that seeded runs are reproducible.
class Graph {
 public:
  struct Adjacent {
    std::int32_t neighbor;
    std::int32_t edge;
  };

  static Graph cycle(std::int64_t n);
  static Graph path(std::int64_t n);
  static Graph torus(std::int64_t w, std::int64_t h);
  static Graph complete(std::int64_t n);
  // Finite window of the line: vertices at coordinates -radius..radius,
  // vertex index = coordinate + radius.
  static Graph lattice_window_1d(std::int64_t radius);
  // Finite window of the plane: (2r+1)x(2r+1) grid, row-major indexing,
  // no wrap-around.
  static Graph lattice_window_2d(std::int64_t radius);

  std::int64_t vertex_count() const { return vertex_count_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::pair<std::int32_t, std::int32_t>& edge(std::int64_t e) const {
    return edges_[static_cast<std::size_t>(e)];
  }
  const std::vector<std::pair<std::int32_t, std::int32_t>>& edges() const {
    return edges_;
  }

  std::int64_t degree(std::int64_t v) const {
    return adjacency_offsets_[static_cast<std::size_t>(v) + 1] -
           adjacency_offsets_[static_cast<std::size_t>(v)];
  }
  const Adjacent* adjacency_begin(std::int64_t v) const {
    return adjacency_.data() + adjacency_offsets_[static_cast<std::size_t>(v)];
  }
  const Adjacent* adjacency_end(std::int64_t v) const {
    return adjacency_.data() + adjacency_offsets_[static_cast<std::size_t>(v) + 1];
  }

  GraphKind kind() const { return kind_; }
  // Torus shape (w,h); (0,0) for other kinds.
  std::int64_t torus_w() const { return torus_w_; }
  std::int64_t torus_h() const { return torus_h_; }
  // Window radius for lattice windows, 0 otherwise.
  std::int64_t window_radius() const { return window_radius_; }

  // Position used by stripe patterns and line-distance arcs: cycle/path
  // index, torus column, or signed lattice coordinate for windows.
  std::int64_t stripe_position(std::int64_t v) const;

  // Graph distance, breadth-first.
  std::vector<std::int32_t> distances_from(std::int64_t source) const;

 private:
  Graph() = default;
  void build_adjacency();
  void check_connected() const;

  std::int64_t vertex_count_ = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges_;
  std::vector<std::int64_t> adjacency_offsets_;
  std::vector<Adjacent> adjacency_;
  GraphKind kind_ = GraphKind::cycle;
  std::int64_t torus_w_ = 0;
  std::int64_t torus_h_ = 0;
  std::int64_t window_radius_ = 0;
};

// Sorted set of vertex indices.
using VertexSet = std::vector<std::int32_t>;

// All vertices at graph distance strictly less than radius from center.
VertexSet ball(const Graph& g, std::int64_t center, double radius);

}  // namespace edgeavg
