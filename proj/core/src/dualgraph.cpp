#include "tukey/dualgraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "tukey/combinatorics.hpp"
#include "tukey/errors.hpp"

namespace tukey {

DualGraph::DualGraph(int n, int dim, std::vector<DualVertex> vertices,
                     std::vector<double> shift)
    : n_(n), dim_(dim), vertices_(std::move(vertices)), shift_(std::move(shift)) {
  const std::uint64_t total = binomial(n, dim);
  if (vertices_.size() != total)
    throw PreconditionError("a dual graph needs one vertex per d-subset");
  by_rank_.assign(static_cast<std::size_t>(total), 0);
  for (std::size_t id = 0; id < vertices_.size(); ++id)
    by_rank_[static_cast<std::size_t>(colex_rank(vertices_[id].tuple))] =
        static_cast<std::uint32_t>(id);
}

std::optional<std::size_t> DualGraph::id_of(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != dim_) return std::nullopt;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (tuple[i] < 0 || tuple[i] >= n_ || (i > 0 && tuple[i] <= tuple[i - 1]))
      return std::nullopt;
  return by_rank_[static_cast<std::size_t>(colex_rank(tuple))];
}

std::vector<std::size_t> DualGraph::neighbors(std::size_t id) const {
  const auto& t = vertices_[id].tuple;
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(dim_) * (n_ - dim_));
  for (std::size_t p = 0; p < t.size(); ++p) {
    const auto ridge = erase_at(t, p);
    for (int j = 0; j < n_; ++j) {
      if (std::binary_search(t.begin(), t.end(), j)) continue;
      out.push_back(by_rank_[static_cast<std::size_t>(colex_rank(insert_sorted(ridge, j)))]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool DualGraph::adjacent(std::size_t a, std::size_t b) const {
  return shared_count(vertices_[a].tuple, vertices_[b].tuple) == dim_ - 1;
}

std::size_t DualGraph::edge_count() const {
  return vertices_.size() * static_cast<std::size_t>(dim_) * (n_ - dim_) / 2;
}

int DualGraph::max_weight() const {
  int w = 0;
  for (const auto& v : vertices_) w = std::max(w, v.weight);
  return w;
}

std::string DualGraph::id_string(std::size_t id) const {
  return join_indices(vertices_[id].tuple);
}

Point polar_vertex(const Hyperplane& h, std::span<const double> shift, double eps) {
  if (shift.size() != h.normal.size()) throw DimensionMismatch("shift dimension");
  double denom = h.offset;
  for (std::size_t i = 0; i < shift.size(); ++i) denom += shift[i] * h.normal[i];
  if (std::fabs(denom) <= eps)
    throw OriginOnHyperplane("hyperplane " + join_indices(h.indices) +
                             " passes through the origin");
  std::vector<double> p(h.normal.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = h.normal[i] / denom;
  return Point(std::move(p));
}

DualGraph build_dual_graph(const Dataset& data, const Predicates& pred) {
  const int d = data.dim();
  if (binomial(data.n(), d) > kMaxDualVertices)
    throw PreconditionError("dual graph too large (C(n, d) above " +
                            std::to_string(kMaxDualVertices) + ")");
  std::vector<DualVertex> verts;
  std::vector<Hyperplane> planes;
  for_each_combination(data.n(), d, [&](std::span<const int> t) {
    Hyperplane h = hyperplane_through(data, t, pred);
    DualVertex v;
    v.tuple.assign(t.begin(), t.end());
    v.counts = side_counts(data, h, pred);
    v.weight = 1 + v.counts.smaller();
    verts.push_back(std::move(v));
    planes.push_back(std::move(h));
    return true;
  });

  const Point centre = data.barycentre();
  double spread = 0.0;
  for (int i = 0; i < data.n(); ++i)
    for (int j = 0; j < d; ++j) spread = std::max(spread, std::fabs(data.point(i)[j] - centre[j]));
  constexpr double kGolden = 0.6180339887498949;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<double> shift(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      const double frac = std::fmod((j + 1) * kGolden * (attempt + 1), 1.0);
      shift[j] = -centre[j] + 1e-3 * spread * (attempt + 1) * (frac - 0.5);
    }
    try {
      for (std::size_t i = 0; i < verts.size(); ++i)
        verts[i].polar = polar_vertex(planes[i], shift, pred.eps);
    } catch (const OriginOnHyperplane&) {
      continue;
    }
    return DualGraph(data.n(), d, std::move(verts), std::move(shift));
  }
  throw OriginOnHyperplane("no origin shift avoids every observational hyperplane");
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

MonochromeSubgraph monochrome_subgraph(const DualGraph& g, int k) {
  if (k < 1) throw PreconditionError("level must be at least 1");
  MonochromeSubgraph sub;
  sub.level = k;
  for (std::size_t id = 0; id < g.size(); ++id)
    if (g.vertex(id).weight == k) sub.vertex_ids.push_back(id);
  UnionFind uf(g.size());
  for (std::size_t id : sub.vertex_ids)
    for (std::size_t nb : g.neighbors(id))
      if (g.vertex(nb).weight == k) uf.unite(id, nb);
  std::vector<std::vector<std::size_t>> groups(g.size());
  for (std::size_t id : sub.vertex_ids) groups[uf.find(id)].push_back(id);
  for (auto& grp : groups)
    if (!grp.empty()) sub.components.push_back(std::move(grp));
  std::sort(sub.components.begin(), sub.components.end());
  return sub;
}

std::vector<HalfspaceKey> vertex_halfspaces(const DualGraph& g, std::size_t id, int k) {
  const auto& v = g.vertex(id);
  std::vector<HalfspaceKey> out;
  // Minus keeps the negative side and cuts the positive points.
  if (v.counts.pos == k - 1) out.push_back({v.tuple, Side::Minus});
  if (v.counts.neg == k - 1) out.push_back({v.tuple, Side::Plus});
  return out;
}

std::vector<RidgeClique> ridge_cliques(const DualGraph& g, bool check_maximal) {
  std::vector<RidgeClique> out;
  for_each_combination(g.n(), g.dim() - 1, [&](std::span<const int> r) {
    RidgeClique c;
    c.ridge.indices.assign(r.begin(), r.end());
    for (int j = 0; j < g.n(); ++j) {
      if (std::binary_search(r.begin(), r.end(), j)) continue;
      c.members.push_back(*g.id_of(insert_sorted(r, j)));
    }
    std::sort(c.members.begin(), c.members.end());
    if (check_maximal) {
      for (std::size_t cand : g.neighbors(c.members.front())) {
        if (std::binary_search(c.members.begin(), c.members.end(), cand)) continue;
        const bool extends = std::all_of(c.members.begin(), c.members.end(),
                                         [&](std::size_t m) { return g.adjacent(cand, m); });
        if (extends)
          throw NumericalFailure("ridge clique " + join_indices(r) + " is not maximal");
      }
    }
    out.push_back(std::move(c));
    return true;
  });
  return out;
}

GraphFormat parse_graph_format(std::string_view text) {
  if (text == "dot" || text == "DOT") return GraphFormat::Dot;
  if (text == "csv" || text == "CSV") return GraphFormat::Csv;
  throw PreconditionError("unknown graph format '" + std::string(text) + "' (dot or csv)");
}

std::vector<AdjacencyRow> adjacency_rows(const DualGraph& g, std::optional<int> level) {
  std::vector<AdjacencyRow> rows;
  for (std::size_t id = 0; id < g.size(); ++id) {
    const auto& v = g.vertex(id);
    if (level && v.weight != *level) continue;
    AdjacencyRow row{v.tuple, v.weight, {}};
    for (std::size_t nb : g.neighbors(id))
      if (!level || g.vertex(nb).weight == *level) row.neighbors.push_back(g.vertex(nb).tuple);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string export_graph(const DualGraph& g, GraphFormat fmt, std::optional<int> level) {
  const auto rows = adjacency_rows(g, level);
  std::string out;
  if (fmt == GraphFormat::Csv) {
    out = "vertex,weight,neighbors\n";
    for (const auto& r : rows) {
      out += join_indices(r.tuple) + ',' + std::to_string(r.weight) + ',';
      for (std::size_t i = 0; i < r.neighbors.size(); ++i) {
        if (i) out += ';';
        out += join_indices(r.neighbors[i]);
      }
      out += '\n';
    }
    return out;
  }
  out = "graph G {\n";
  for (const auto& r : rows)
    out += "  \"" + join_indices(r.tuple) + "\" [weight=" + std::to_string(r.weight) + "];\n";
  for (const auto& r : rows)
    for (const auto& nb : r.neighbors)
      if (r.tuple < nb)
        out += "  \"" + join_indices(r.tuple) + "\" -- \"" + join_indices(nb) + "\";\n";
  out += "}\n";
  return out;
}

namespace {

std::vector<int> parse_tuple(std::string_view s, long row, long col) {
  std::vector<int> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = s.find('-', start);
    const auto part = s.substr(start, dash - start);
    int v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || res.ec != std::errc() || res.ptr != part.data() + part.size())
      throw ParseError("bad vertex id '" + std::string(s) + "'", row, col);
    out.push_back(v);
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return out;
}

}  // namespace

std::vector<AdjacencyRow> parse_adjacency_csv(std::string_view text) {
  std::vector<AdjacencyRow> rows;
  long row = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++row;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (row == 1) {
      if (line != "vertex,weight,neighbors") throw ParseError("bad adjacency header", 1, 1);
      continue;
    }
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw ParseError("expected three fields", row, 1);
    AdjacencyRow r;
    r.tuple = parse_tuple(line.substr(0, c1), row, 1);
    const auto w = line.substr(c1 + 1, c2 - c1 - 1);
    const auto res = std::from_chars(w.data(), w.data() + w.size(), r.weight);
    if (res.ec != std::errc() || res.ptr != w.data() + w.size())
      throw ParseError("bad weight", row, 2);
    auto nbs = line.substr(c2 + 1);
    std::size_t p = 0;
    while (p < nbs.size()) {
      std::size_t semi = nbs.find(';', p);
      if (semi == std::string_view::npos) semi = nbs.size();
      r.neighbors.push_back(parse_tuple(nbs.substr(p, semi - p), row, 3));
      p = semi + 1;
    }
    rows.push_back(std::move(r));
  }
  if (row == 0) throw ParseError("empty adjacency file", 1, 1);
  return rows;
}

}  // namespace tukey
