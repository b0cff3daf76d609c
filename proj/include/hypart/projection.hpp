#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hypart/hypergraph.hpp"

namespace hypart {

/// Bipartite multigraph stored as a dense row-major multiplicity matrix.
struct BipartiteMultigraph {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> mult;

  BipartiteMultigraph() = default;
  BipartiteMultigraph(std::size_t r, std::size_t c) : rows(r), cols(c), mult(r * c, 0) {}

  std::int64_t& at(std::size_t i, std::size_t j) { return mult[i * cols + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return mult[i * cols + j]; }

  std::vector<std::int64_t> row_sums() const;
  std::vector<std::int64_t> col_sums() const;
  std::int64_t total() const;

  friend bool operator==(const BipartiteMultigraph&, const BipartiteMultigraph&) = default;
};

/// Simple bipartite graph; edges are (left, right) pairs kept sorted and unique.
struct BipartiteGraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::vector<std::int64_t> left_degrees() const;
  std::vector<std::int64_t> right_degrees() const;
  bool has_edge(std::uint32_t l, std::uint32_t r) const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;
};

/// Ordered pair of distinct vertex classes (row class, column class).
struct ClassPair {
  VertexClass row = VertexClass::A;
  VertexClass col = VertexClass::B;
};

/// The class not in the pair.
VertexClass third_class(ClassPair p);

/// mult[i][j] = number of hyperedges through row-class vertex i and column-class vertex j.
BipartiteMultigraph projection(const Hypergraph& h, ClassPair classes);

/// Bipartite graph between (row, col) vertex pairs and the third class.
/// Pair (i, j) has left index i * |col class| + j.
BipartiteGraph shadow(const Hypergraph& h, ClassPair classes);

/// Inverse of shadow(): each edge ((i, j), k) becomes the hyperedge through i, j, k.
Hypergraph lift_shadow(const BipartiteGraph& g, ClassPair classes, ClassSizes sizes);

/// True iff every column holds at most two values, differing by one.
bool is_column_balanced(const BipartiteMultigraph& p, std::size_t col);
bool is_balanced(const BipartiteMultigraph& p);

/// Column ceiling l_j = ceil(colsum_j / rows); a column whose sum is a
/// multiple of the row count is constant at l_j.
std::int64_t column_ceiling(std::int64_t colsum, std::size_t rows);

/// 0/1 matrix marking the entries equal to their column ceiling, as a
/// bipartite graph between rows and columns. Throws NotBalanced.
BipartiteGraph trace(const BipartiteMultigraph& p);

}  // namespace hypart
