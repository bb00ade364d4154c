#pragma once

#include <span>
#include <vector>

#include "predsearch/graph.hpp"

namespace predsearch {

// Dense all-pairs shortest-path table, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Vertex n)
      : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kInfiniteLength) {}

  Vertex size() const { return n_; }
  Length operator()(Vertex u, Vertex v) const { return data_[index(u, v)]; }
  std::span<const Length> row(Vertex u) const {
    return {data_.data() + index(u, 0), static_cast<std::size_t>(n_)};
  }
  std::span<Length> mutable_row(Vertex u) {
    return {data_.data() + index(u, 0), static_cast<std::size_t>(n_)};
  }
  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  Vertex n_ = 0;
  std::vector<Length> data_;
};

// One shortest-path search per source, sources fanned out over OpenMP threads.
DistanceMatrix all_pairs_distances(const Graph& graph);
// Single-threaded reference kept for tests and benchmarks.
DistanceMatrix all_pairs_distances_serial(const Graph& graph);

// Shortest-path distances on demand. Trees use parent/depth arrays rooted at
// the graph root; other graphs cache one search per queried source.
class DistanceOracle {
 public:
  explicit DistanceOracle(const Graph& graph);
  Length operator()(Vertex u, Vertex v);

 private:
  const Graph* graph_;
  std::vector<Vertex> parent_;
  std::vector<std::int64_t> level_;
  std::vector<Length> depth_;
  std::vector<std::vector<Length>> cache_;
};

}  // namespace predsearch
