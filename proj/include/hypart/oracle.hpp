#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hypart/hypergraph.hpp"

namespace hypart::oracle {

/// Largest cell count n1*n2*n3 accepted by the exhaustive enumerator.
inline constexpr std::uint64_t kMaxCells = 30;
/// Largest partition class size accepted by solve_n3dm.
inline constexpr int kMaxN3dmClass = 4;

/// A hypergraph on at most 64 cells encoded as a bitmask over packed cell
/// indices (a*n2*n3 + b*n3 + c). This is the canonical form used for set
/// equality and hashing.
using CellMask = std::uint64_t;

CellMask to_mask(const Hypergraph& h);
Hypergraph from_mask(ClassSizes sizes, CellMask mask);

/// All realizations of d, in increasing lexicographic order of their cell
/// sets' backtracking traversal. Throws TooLarge above kMaxCells.
std::vector<CellMask> enumerate_realization_masks(const PartiteDegreeSequence& d);
std::vector<Hypergraph> enumerate_realizations(const PartiteDegreeSequence& d);

/// Number of connected components of the graph whose vertices are the given
/// realizations and whose edges are single valid switches.
std::size_t switch_components(ClassSizes sizes, std::span<const CellMask> realizations);
std::size_t switch_connectivity(const std::vector<Hypergraph>& realizations);

/// Numerical 3-dimensional matching instance over [0, 3k), with blocks
/// A = [0,k), B = [k,2k), C = [2k,3k).
struct N3dmInstance {
  int k = 0;
  std::vector<std::int64_t> weights;
  std::int64_t bound = 0;
};

N3dmInstance parse_n3dm(const std::string& json_text);

/// Exhaustive over the (k!)^2 perfect 3-dimensional matchings. Throws TooLarge for k > 4.
bool solve_n3dm(const N3dmInstance& inst);

/// The hardness reduction: d(w) = 1 + sum of the indicator vectors x of all
/// block-transversal triples with w.x > 0, where w = 3a - b. If 3*sum(a) != n*b
/// the result is the non-graphic sequence with a single 1 in class A.
PartiteDegreeSequence reduce_n3dm(const N3dmInstance& inst);

}  // namespace hypart::oracle
