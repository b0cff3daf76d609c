#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypart/hypergraph.hpp"
#include "hypart/move.hpp"
#include "hypart/projection.hpp"

namespace hypart {

struct AlmostRegularity {
  bool almost_regular = false;
  std::int64_t k = 0;  // witnessing maximum; every entry is k or k-1
};

AlmostRegularity almost_regularity(std::span<const std::int64_t> degrees);

/// Whether class A takes values in {k, k-1} for some k >= 1.
AlmostRegularity is_third_almost_regular(const PartiteDegreeSequence& d);

/// North-west-corner fill of a multiplicity matrix with the given margins.
/// Throws SumMismatch.
BipartiteMultigraph realize_multigraph(std::span<const std::int64_t> row_sums,
                                       std::span<const std::int64_t> col_sums);

/// Target multiplicities for one column of a projection whose (active) row
/// sums are almost-regular. Every target is `ceiling` or `ceiling - 1`.
struct BalancePlan {
  std::size_t column = 0;
  std::int64_t ceiling = 0;
  std::vector<std::int64_t> targets;
};

/// Columns [first_active, cols) form the active submatrix whose row sums must
/// be almost-regular; earlier columns are frozen. Throws NotAlmostRegular.
BalancePlan plan_column(const BipartiteMultigraph& p, std::size_t column,
                        std::size_t first_active = 0);

/// One corrective step on the multiplicity matrix: one unit moves from
/// (donor, column) to (recipient, column) and one unit from (recipient,
/// aux_column) to (donor, aux_column).
struct BalanceStep {
  std::size_t donor = 0;
  std::size_t recipient = 0;
  std::size_t aux_column = 0;
};

struct BalanceResult {
  BipartiteMultigraph matrix;
  BalancePlan plan;
  std::vector<BalanceStep> steps;
};

/// Drives `column` onto its plan by margin-preserving steps, each lowering
/// the column's deviation from the plan by exactly 2.
BalanceResult balance_column(BipartiteMultigraph p, std::size_t column,
                             std::size_t first_active = 0);

/// Balances every column in ascending order, freezing each after it is done.
BipartiteMultigraph balance_all_columns(BipartiteMultigraph p);

/// Gale-Ryser test for a simple bipartite graph with the given degrees.
bool bipartite_graphic(std::span<const std::int64_t> left, std::span<const std::int64_t> right);

/// Max-degree-first greedy construction; nullopt iff not graphic.
std::optional<BipartiteGraph> realize_bipartite(std::span<const std::int64_t> left,
                                                std::span<const std::int64_t> right);

enum class RealizeStatus { kRealized, kNonGraphic, kNotAlmostRegular };

struct RealizeResult {
  RealizeStatus status = RealizeStatus::kNonGraphic;
  std::optional<Hypergraph> hypergraph;
  VertexClass almost_regular_class = VertexClass::A;
};

/// Decides graphicality of a third almost-regular sequence (class A almost
/// regular) and constructs a realization when one exists. Throws
/// NotAlmostRegular if class A is not almost-regular and InputError on
/// negative degrees.
RealizeResult realize_degree_sequence(const PartiteDegreeSequence& d);

/// As realize_degree_sequence, but tries A, then B, then C as the
/// almost-regular class. Reports kNotAlmostRegular instead of throwing.
RealizeResult realize_any_class(const PartiteDegreeSequence& d);

struct NormalizeResult {
  Hypergraph hypergraph;
  std::vector<Move> trail;
};

/// Hinge-flips class-A vertices until class A is almost-regular with the same
/// total. Degrees of classes B and C are untouched.
NormalizeResult normalize_to_almost_regular(const Hypergraph& h);

/// Switch sequence turning a hypergraph with almost-regular class A into one
/// whose (A,B)-projection is balanced, one column at a time.
NormalizeResult balance_realization(const Hypergraph& h);

}  // namespace hypart
