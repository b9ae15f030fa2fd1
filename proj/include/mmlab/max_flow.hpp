#pragma once

#include <cstddef>
#include <vector>

namespace mmlab {

/// Dinic's algorithm on real capacities.
///
/// Residual capacities below `eps` are treated as saturated, which keeps the
/// augmenting-path search finite on floating-point input.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes, double eps = 1e-15);

  /// Returns the edge id, usable with flow_on().
  std::size_t add_edge(std::size_t from, std::size_t to, double capacity);
  double run(std::size_t source, std::size_t sink);
  double flow_on(std::size_t edge) const;

 private:
  struct Edge {
    std::size_t to;
    double cap;
    double flow;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  double push(std::size_t node, std::size_t sink, double limit);

  double eps_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace mmlab
