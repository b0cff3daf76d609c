#include "hypart/realize.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hypart/error.hpp"

namespace hypart {

AlmostRegularity almost_regularity(std::span<const std::int64_t> degrees) {
  if (degrees.empty()) return {true, 1};
  const auto [lo, hi] = std::minmax_element(degrees.begin(), degrees.end());
  const std::int64_t k = std::max<std::int64_t>(*hi, 1);
  return {*lo >= k - 1 && *hi <= k, k};
}

AlmostRegularity is_third_almost_regular(const PartiteDegreeSequence& d) {
  return almost_regularity(d.a);
}

BipartiteMultigraph realize_multigraph(std::span<const std::int64_t> row_sums,
                                       std::span<const std::int64_t> col_sums) {
  const auto rsum = std::accumulate(row_sums.begin(), row_sums.end(), std::int64_t{0});
  const auto csum = std::accumulate(col_sums.begin(), col_sums.end(), std::int64_t{0});
  if (rsum != csum) throw SumMismatch("row and column sums differ");
  BipartiteMultigraph p(row_sums.size(), col_sums.size());
  std::vector<std::int64_t> row_left(row_sums.begin(), row_sums.end());
  std::vector<std::int64_t> col_left(col_sums.begin(), col_sums.end());
  std::size_t i = 0, j = 0;
  while (i < p.rows && j < p.cols) {
    const std::int64_t x = std::min(row_left[i], col_left[j]);
    p.at(i, j) += x;
    row_left[i] -= x;
    col_left[j] -= x;
    if (row_left[i] == 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return p;
}

namespace {

std::vector<std::int64_t> active_row_sums(const BipartiteMultigraph& p, std::size_t first_active) {
  std::vector<std::int64_t> sums(p.rows, 0);
  for (std::size_t i = 0; i < p.rows; ++i) {
    for (std::size_t j = first_active; j < p.cols; ++j) sums[i] += p.at(i, j);
  }
  return sums;
}

std::int64_t deviation(const BipartiteMultigraph& p, const BalancePlan& plan) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < p.rows; ++i) total += std::llabs(p.at(i, plan.column) - plan.targets[i]);
  return total;
}

// Lowest-index rows whose column entry is above / below target.
std::pair<std::size_t, std::size_t> pick_rows(const BipartiteMultigraph& p, const BalancePlan& plan) {
  std::size_t donor = p.rows, recipient = p.rows;
  for (std::size_t i = 0; i < p.rows; ++i) {
    const std::int64_t x = p.at(i, plan.column);
    if (donor == p.rows && x > plan.targets[i]) donor = i;
    if (recipient == p.rows && x < plan.targets[i]) recipient = i;
  }
  if (donor == p.rows || recipient == p.rows) {
    throw std::logic_error("unbalanced column without donor/recipient pair");
  }
  return {donor, recipient};
}

std::size_t pick_aux_column(const BipartiteMultigraph& p, std::size_t column, std::size_t first_active,
                            std::size_t donor, std::size_t recipient) {
  for (std::size_t j = first_active; j < p.cols; ++j) {
    if (j != column && p.at(recipient, j) > p.at(donor, j)) return j;
  }
  throw std::logic_error("no auxiliary column for balancing step");
}

}  // namespace

BalancePlan plan_column(const BipartiteMultigraph& p, std::size_t column, std::size_t first_active) {
  if (column < first_active || column >= p.cols) throw DimensionMismatch("column outside active range");
  BalancePlan plan;
  plan.column = column;
  plan.targets.assign(p.rows, 0);
  if (p.rows == 0) return plan;

  const auto sums = active_row_sums(p, first_active);
  const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
  if (*hi - *lo > 1) throw NotAlmostRegular("active row sums are not almost-regular");

  std::int64_t colsum = 0;
  for (std::size_t i = 0; i < p.rows; ++i) colsum += p.at(i, column);
  const auto n = static_cast<std::int64_t>(p.rows);
  const std::int64_t l = column_ceiling(colsum, p.rows);
  const std::int64_t count_l = colsum - n * (l - 1);
  plan.ceiling = l;

  // Rows at sum k come first, then rows at k-1; within a group, rows already
  // holding larger entries are preferred for the ceiling, ties by index.
  std::vector<std::size_t> order(p.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (sums[x] != sums[y]) return sums[x] > sums[y];
    return p.at(x, column) > p.at(y, column);
  });
  // Covers the three cases #l = #k, #l < #k and #l > #k: the first #l rows
  // of this order receive l.
  for (std::size_t r = 0; r < p.rows; ++r) {
    plan.targets[order[r]] = static_cast<std::int64_t>(r) < count_l ? l : l - 1;
  }
  return plan;
}

BalanceResult balance_column(BipartiteMultigraph p, std::size_t column, std::size_t first_active) {
  BalanceResult result;
  result.plan = plan_column(p, column, first_active);
  std::int64_t dev = deviation(p, result.plan);
  while (dev > 0) {
    const auto [donor, recipient] = pick_rows(p, result.plan);
    const std::size_t aux = pick_aux_column(p, column, first_active, donor, recipient);
    --p.at(donor, column);
    ++p.at(recipient, column);
    --p.at(recipient, aux);
    ++p.at(donor, aux);
    result.steps.push_back({donor, recipient, aux});
    const std::int64_t next = deviation(p, result.plan);
    if (next != dev - 2) throw std::logic_error("balancing step did not reduce deviation by 2");
    dev = next;
  }
  result.matrix = std::move(p);
  return result;
}

BipartiteMultigraph balance_all_columns(BipartiteMultigraph p) {
  for (std::size_t j = 0; j < p.cols; ++j) p = balance_column(std::move(p), j, j).matrix;
  return p;
}

bool bipartite_graphic(std::span<const std::int64_t> left, std::span<const std::int64_t> right) {
  const auto lsum = std::accumulate(left.begin(), left.end(), std::int64_t{0});
  const auto rsum = std::accumulate(right.begin(), right.end(), std::int64_t{0});
  if (lsum != rsum) return false;
  for (std::int64_t x : left) {
    if (x < 0 || x > static_cast<std::int64_t>(right.size())) return false;
  }
  for (std::int64_t x : right) {
    if (x < 0 || x > static_cast<std::int64_t>(left.size())) return false;
  }
  std::vector<std::int64_t> sorted(left.begin(), left.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // conjugate[s] = #{j : right_j >= s}, so sum_j min(right_j, t) = sum_{s<=t} conjugate[s].
  std::vector<std::int64_t> conjugate(left.size() + 2, 0);
  for (std::int64_t x : right) ++conjugate[static_cast<std::size_t>(x)];
  for (std::size_t s = conjugate.size() - 1; s-- > 1;) conjugate[s] += conjugate[s + 1];
  std::int64_t lhs = 0, rhs = 0;
  for (std::size_t t = 1; t <= sorted.size(); ++t) {
    lhs += sorted[t - 1];
    rhs += conjugate[t];
    if (lhs > rhs) return false;
  }
  return true;
}

std::optional<BipartiteGraph> realize_bipartite(std::span<const std::int64_t> left,
                                                std::span<const std::int64_t> right) {
  if (!bipartite_graphic(left, right)) return std::nullopt;
  BipartiteGraph g;
  g.left = left.size();
  g.right = right.size();
  std::vector<std::size_t> lorder(left.size());
  std::iota(lorder.begin(), lorder.end(), std::size_t{0});
  std::stable_sort(lorder.begin(), lorder.end(),
                   [&](std::size_t x, std::size_t y) { return left[x] > left[y]; });
  std::vector<std::int64_t> residual(right.begin(), right.end());
  std::vector<std::size_t> rorder(right.size());
  for (std::size_t l : lorder) {
    std::iota(rorder.begin(), rorder.end(), std::size_t{0});
    std::stable_sort(rorder.begin(), rorder.end(),
                     [&](std::size_t x, std::size_t y) { return residual[x] > residual[y]; });
    for (std::int64_t e = 0; e < left[l]; ++e) {
      const std::size_t r = rorder[static_cast<std::size_t>(e)];
      if (residual[r] == 0) throw std::logic_error("greedy bipartite construction failed");
      --residual[r];
      g.edges.emplace_back(static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(r));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

RealizeResult realize_degree_sequence(const PartiteDegreeSequence& d) {
  if (validate(d) == DegreeValidity::kNegativeEntry) throw InputError("negative degree");
  if (!is_third_almost_regular(d).almost_regular) {
    throw NotAlmostRegular("class A degrees are not almost-regular");
  }
  RealizeResult result;
  result.almost_regular_class = VertexClass::A;
  const ClassSizes sizes = d.sizes();
  if (d.sum(VertexClass::A) != d.sum(VertexClass::B) ||
      d.sum(VertexClass::A) != d.sum(VertexClass::C)) {
    return result;
  }
  const BipartiteMultigraph p = balance_all_columns(realize_multigraph(d.a, d.b));
  const auto g = realize_bipartite(p.mult, d.c);
  if (!g) return result;
  result.status = RealizeStatus::kRealized;
  result.hypergraph = lift_shadow(*g, {VertexClass::A, VertexClass::B}, sizes);
  return result;
}

RealizeResult realize_any_class(const PartiteDegreeSequence& d) {
  for (VertexClass cls : kAllClasses) {
    // Relabel so that `cls` plays the role of class A; the other two keep their order.
    PartiteDegreeSequence permuted;
    permuted.a = d.of(cls);
    std::vector<VertexClass> rest;
    for (VertexClass other : kAllClasses) {
      if (other != cls) rest.push_back(other);
    }
    permuted.b = d.of(rest[0]);
    permuted.c = d.of(rest[1]);
    if (!is_third_almost_regular(permuted).almost_regular) continue;

    RealizeResult inner = realize_degree_sequence(permuted);
    RealizeResult result;
    result.status = inner.status;
    result.almost_regular_class = cls;
    if (inner.hypergraph) {
      Hypergraph h(d.sizes());
      for (const Triple& t : inner.hypergraph->edges()) {
        Triple back;
        back[cls] = t.a;
        back[rest[0]] = t.b;
        back[rest[1]] = t.c;
        h.insert(back);
      }
      result.hypergraph = std::move(h);
    }
    return result;
  }
  RealizeResult result;
  result.status = RealizeStatus::kNotAlmostRegular;
  return result;
}

NormalizeResult normalize_to_almost_regular(const Hypergraph& h) {
  NormalizeResult result{h, {}};
  Hypergraph& work = result.hypergraph;
  const std::size_t n1 = h.sizes().n1;
  if (n1 == 0) return result;

  // Positions follow the initial non-increasing degree order (ties by index).
  std::vector<std::uint32_t> order(n1);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return h.degree(VertexClass::A, x) > h.degree(VertexClass::A, y);
  });
  const auto n = static_cast<std::int64_t>(n1);
  const std::int64_t total = static_cast<std::int64_t>(h.edge_count());
  const std::int64_t k = (total + n - 1) / n;
  const std::int64_t count_k = total - n * (k - 1);
  std::vector<std::int64_t> target(n1);
  for (std::size_t pos = 0; pos < n1; ++pos) {
    target[pos] = static_cast<std::int64_t>(pos) < count_k ? k : k - 1;
  }

  for (;;) {
    std::size_t over = n1, under = n1;
    for (std::size_t pos = n1; pos-- > 0;) {
      if (work.degree(VertexClass::A, order[pos]) > target[pos]) {
        over = pos;
        break;
      }
    }
    for (std::size_t pos = 0; pos < n1; ++pos) {
      if (work.degree(VertexClass::A, order[pos]) < target[pos]) {
        under = pos;
        break;
      }
    }
    if (over == n1 && under == n1) break;
    if (over == n1 || under == n1) throw std::logic_error("unmatched excess/deficit in normalization");

    const std::uint32_t from = order[over];
    const std::uint32_t to = order[under];
    std::optional<Triple> pick;
    for (const Triple& t : work.edges()) {
      if (t.a != from || work.contains(t.with(VertexClass::A, to))) continue;
      if (!pick || t < *pick) pick = t;
    }
    if (!pick) throw std::logic_error("no hinge flip available in normalization");
    const Move m = Move::hinge_flip(VertexClass::A, *pick, to);
    apply_move(work, m);
    result.trail.push_back(m);
  }
  return result;
}

NormalizeResult balance_realization(const Hypergraph& h) {
  if (!almost_regularity(h.degrees(VertexClass::A)).almost_regular) {
    throw NotAlmostRegular("class A degrees are not almost-regular");
  }
  NormalizeResult result{h, {}};
  Hypergraph& work = result.hypergraph;
  const std::uint32_t n3 = h.sizes().n3;
  BipartiteMultigraph p = projection(work, {VertexClass::A, VertexClass::B});

  // Lowest c such that (from, b, c) is an edge and (to, b, c) is not.
  auto movable_c = [&](std::uint32_t from, std::uint32_t to, std::uint32_t b) {
    for (std::uint32_t c = 0; c < n3; ++c) {
      if (work.contains({from, b, c}) && !work.contains({to, b, c})) return c;
    }
    throw std::logic_error("pigeonhole choice of c failed");
  };

  for (std::size_t j = 0; j < p.cols; ++j) {
    const BalancePlan plan = plan_column(p, j, j);
    while (deviation(p, plan) > 0) {
      const auto [donor, recipient] = pick_rows(p, plan);
      const std::size_t aux = pick_aux_column(p, j, j, donor, recipient);
      const auto i = static_cast<std::uint32_t>(donor);
      const auto i2 = static_cast<std::uint32_t>(recipient);
      const auto b = static_cast<std::uint32_t>(j);
      const auto b2 = static_cast<std::uint32_t>(aux);
      const std::uint32_t c = movable_c(i, i2, b);
      const std::uint32_t c2 = movable_c(i2, i, b2);
      const Move m = Move::switch_edges(VertexClass::A, {i, b, c}, {i2, b2, c2});
      apply_move(work, m);
      result.trail.push_back(m);
      --p.at(donor, j);
      ++p.at(recipient, j);
      --p.at(recipient, aux);
      ++p.at(donor, aux);
    }
  }
  return result;
}

}  // namespace hypart
