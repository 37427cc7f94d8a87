#pragma once

// The dual graph of a dataset: one vertex per observational hyperplane,
// weighted by 1 + the smaller number of points it cuts off, with an edge
// between two hyperplanes iff they share a ridge. Vertices carry their polar
// point after a small translation of the data.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tukey/geometry.hpp"

namespace tukey {

struct DualVertex {
  std::vector<int> tuple;  // sorted d indices
  int weight = 0;  // 1 + counts.smaller()
  SideCounts counts;
  Point polar;
};

class DualGraph {
 public:
  DualGraph(int n, int dim, std::vector<DualVertex> vertices, std::vector<double> shift);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  /// Lexicographic by tuple; a vertex id is its position here.
  const std::vector<DualVertex>& vertices() const noexcept { return vertices_; }
  const DualVertex& vertex(std::size_t id) const { return vertices_[id]; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<double>& shift() const noexcept { return shift_; }

  std::optional<std::size_t> id_of(std::span<const int> tuple) const;
  /// Sorted neighbour ids, generated from the tuple (no stored edge list).
  std::vector<std::size_t> neighbors(std::size_t id) const;
  bool adjacent(std::size_t a, std::size_t b) const;
  std::size_t edge_count() const;
  int max_weight() const;
  std::string id_string(std::size_t id) const;

 private:
  int n_;
  int dim_;
  std::vector<DualVertex> vertices_;
  std::vector<std::uint32_t> by_rank_;  // colex rank -> id
  std::vector<double> shift_;
};

/// u / (offset + <shift, u>) for the hyperplane <y, u> = offset translated by
/// `shift`. Throws OriginOnHyperplane if the denominator is within eps.
Point polar_vertex(const Hyperplane& h, std::span<const double> shift, double eps = 1e-9);

/// Upper bound on C(n, d) accepted by build_dual_graph.
inline constexpr std::size_t kMaxDualVertices = 5'000'000;

/// Shift = -barycentre plus a small offset from a fixed sequence; the next
/// offset is tried while some hyperplane passes through the origin (at most
/// 8 attempts, then OriginOnHyperplane).
DualGraph build_dual_graph(const Dataset& data, const Predicates& pred = {});

struct MonochromeSubgraph {
  int level = 0;
  std::vector<std::size_t> vertex_ids;               // sorted
  std::vector<std::vector<std::size_t>> components;  // sorted, by first id
};

MonochromeSubgraph monochrome_subgraph(const DualGraph& g, int k);

/// Halfspaces of level k bounded by the hyperplane of vertex `id`: none, one,
/// or (when both sides cut off k-1 points) two.
std::vector<HalfspaceKey> vertex_halfspaces(const DualGraph& g, std::size_t id, int k);

struct RidgeClique {
  Ridge ridge;
  std::vector<std::size_t> members;  // n - d + 1 ids
};

/// One clique per ridge, in lexicographic ridge order. With `check_maximal`
/// every clique is verified to admit no further common neighbour
/// (NumericalFailure otherwise).
std::vector<RidgeClique> ridge_cliques(const DualGraph& g, bool check_maximal = true);

enum class GraphFormat { Dot, Csv };

GraphFormat parse_graph_format(std::string_view text);

/// Deterministic text export. With a level only the induced subgraph G_k is
/// written; an empty level yields the header alone.
std::string export_graph(const DualGraph& g, GraphFormat fmt,
                         std::optional<int> level = std::nullopt);

struct AdjacencyRow {
  std::vector<int> tuple;
  int weight = 0;
  std::vector<std::vector<int>> neighbors;

  friend bool operator==(const AdjacencyRow&, const AdjacencyRow&) = default;
};

std::vector<AdjacencyRow> adjacency_rows(const DualGraph& g,
                                         std::optional<int> level = std::nullopt);
/// Inverse of the CSV export. Throws ParseError.
std::vector<AdjacencyRow> parse_adjacency_csv(std::string_view text);

}  // namespace tukey
