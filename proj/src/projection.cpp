#include "hypart/projection.hpp"

#include <algorithm>
#include <numeric>

#include "hypart/error.hpp"

namespace hypart {

std::vector<std::int64_t> BipartiteMultigraph::row_sums() const {
  std::vector<std::int64_t> out(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out[i] += at(i, j);
  }
  return out;
}

std::vector<std::int64_t> BipartiteMultigraph::col_sums() const {
  std::vector<std::int64_t> out(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out[j] += at(i, j);
  }
  return out;
}

std::int64_t BipartiteMultigraph::total() const {
  return std::accumulate(mult.begin(), mult.end(), std::int64_t{0});
}

std::vector<std::int64_t> BipartiteGraph::left_degrees() const {
  std::vector<std::int64_t> out(left, 0);
  for (const auto& [l, r] : edges) ++out[l];
  return out;
}

std::vector<std::int64_t> BipartiteGraph::right_degrees() const {
  std::vector<std::int64_t> out(right, 0);
  for (const auto& [l, r] : edges) ++out[r];
  return out;
}

bool BipartiteGraph::has_edge(std::uint32_t l, std::uint32_t r) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(l, r));
}

VertexClass third_class(ClassPair p) {
  if (p.row == p.col) throw DimensionMismatch("class pair must name two distinct classes");
  return static_cast<VertexClass>(3 - index_of(p.row) - index_of(p.col));
}

BipartiteMultigraph projection(const Hypergraph& h, ClassPair classes) {
  third_class(classes);
  BipartiteMultigraph p(h.sizes()[classes.row], h.sizes()[classes.col]);
  for (const Triple& t : h.edges()) ++p.at(t[classes.row], t[classes.col]);
  return p;
}

BipartiteGraph shadow(const Hypergraph& h, ClassPair classes) {
  const VertexClass other = third_class(classes);
  const std::uint32_t ncol = h.sizes()[classes.col];
  BipartiteGraph g;
  g.left = std::size_t{h.sizes()[classes.row]} * ncol;
  g.right = h.sizes()[other];
  g.edges.reserve(h.edge_count());
  for (const Triple& t : h.edges()) {
    g.edges.emplace_back(t[classes.row] * ncol + t[classes.col], t[other]);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

Hypergraph lift_shadow(const BipartiteGraph& g, ClassPair classes, ClassSizes sizes) {
  const VertexClass other = third_class(classes);
  const std::uint32_t ncol = sizes[classes.col];
  if (g.left != std::size_t{sizes[classes.row]} * ncol || g.right != sizes[other]) {
    throw DimensionMismatch("shadow dimensions do not match class sizes");
  }
  Hypergraph h(sizes);
  for (const auto& [l, r] : g.edges) {
    Triple t;
    t[classes.row] = l / ncol;
    t[classes.col] = l % ncol;
    t[other] = r;
    h.insert(t);
  }
  return h;
}

std::int64_t column_ceiling(std::int64_t colsum, std::size_t rows) {
  if (rows == 0) return 0;
  const auto n = static_cast<std::int64_t>(rows);
  return (colsum + n - 1) / n;
}

bool is_column_balanced(const BipartiteMultigraph& p, std::size_t col) {
  if (p.rows == 0) return true;
  std::int64_t lo = p.at(0, col);
  std::int64_t hi = lo;
  for (std::size_t i = 1; i < p.rows; ++i) {
    lo = std::min(lo, p.at(i, col));
    hi = std::max(hi, p.at(i, col));
  }
  return hi - lo <= 1;
}

bool is_balanced(const BipartiteMultigraph& p) {
  for (std::size_t j = 0; j < p.cols; ++j) {
    if (!is_column_balanced(p, j)) return false;
  }
  return true;
}

BipartiteGraph trace(const BipartiteMultigraph& p) {
  BipartiteGraph g;
  g.left = p.rows;
  g.right = p.cols;
  const auto sums = p.col_sums();
  for (std::size_t j = 0; j < p.cols; ++j) {
    if (!is_column_balanced(p, j)) {
      throw NotBalanced("column " + std::to_string(j) + " is not balanced");
    }
  }
  for (std::size_t i = 0; i < p.rows; ++i) {
    for (std::size_t j = 0; j < p.cols; ++j) {
      if (p.at(i, j) == column_ceiling(sums[j], p.rows)) {
        g.edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      }
    }
  }
  return g;
}

}  // namespace hypart
