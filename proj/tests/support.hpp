// Shared test oracles: exhaustive proposal distributions and transition
// matrices on tiny state spaces, computed from first principles.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <vector>

#include "hypart/hypergraph.hpp"
#include "hypart/oracle.hpp"
#include "hypart/sampler.hpp"

namespace testsupport {

using hypart::ClassSizes;
using hypart::Hypergraph;
using hypart::PartiteDegreeSequence;
using hypart::ProposalDraw;
using hypart::ProposalKind;
using hypart::Triple;
using hypart::VertexClass;

inline Hypergraph from_bits(ClassSizes s, std::uint64_t bits) { return hypart::oracle::from_mask(s, bits); }
inline std::uint64_t to_bits(const Hypergraph& h) { return hypart::oracle::to_mask(h); }

/// Degree deviation recomputed from the edge list.
inline std::int64_t recount_energy(const Hypergraph& h, const PartiteDegreeSequence& d) {
  const ClassSizes s = h.sizes();
  std::vector<std::int64_t> da(s.n1), db(s.n2), dc(s.n3);
  for (const Triple& t : h.edges()) ++da[t.a], ++db[t.b], ++dc[t.c];
  std::int64_t e = 0;
  for (std::size_t i = 0; i < s.n1; ++i) e += std::abs(d.a[i] - da[i]);
  for (std::size_t i = 0; i < s.n2; ++i) e += std::abs(d.b[i] - db[i]);
  for (std::size_t i = 0; i < s.n3; ++i) e += std::abs(d.c[i] - dc[i]);
  return e;
}

/// Exact proposal distribution from state h: target bits -> probability.
/// Invalid draws are accumulated under h's own bits.
inline std::map<std::uint64_t, double> proposal_distribution(const Hypergraph& h) {
  std::map<std::uint64_t, double> out;
  const std::uint64_t self = to_bits(h);
  const ClassSizes s = h.sizes();
  const std::size_t e = h.edge_count();
  const double third = 1.0 / 3.0;
  auto add = [&](const ProposalDraw& draw, double p) {
    const auto m = hypart::move_from_draw(h, draw);
    if (!m) {
      out[self] += p;
      return;
    }
    Hypergraph next = h;
    hypart::apply_move(next, *m);
    out[to_bits(next)] += p;
  };
  if (e == 0) {
    out[self] += 2 * third;
  } else {
    for (std::size_t s1 = 0; s1 < e; ++s1) {
      for (std::size_t s2 = 0; s2 < e; ++s2) {
        for (VertexClass cls : hypart::kAllClasses) {
          ProposalDraw d;
          d.kind = ProposalKind::kSwitch;
          d.first_slot = s1;
          d.second_slot = s2;
          d.cls = cls;
          add(d, third / static_cast<double>(e * e) * third);
        }
      }
    }
    for (std::size_t slot = 0; slot < e; ++slot) {
      for (VertexClass cls : hypart::kAllClasses) {
        const double base = third / static_cast<double>(e) * third;
        const std::uint32_t n = s[cls];
        if (n < 2) {
          out[self] += base;
          continue;
        }
        for (std::uint32_t x = 0; x < n; ++x) {
          if (x == h.edge(slot)[cls]) continue;
          ProposalDraw d;
          d.kind = ProposalKind::kHingeFlip;
          d.first_slot = slot;
          d.cls = cls;
          d.replacement = x;
          add(d, base / static_cast<double>(n - 1));
        }
      }
    }
  }
  for (std::uint64_t cell = 0; cell < s.cells(); ++cell) {
    ProposalDraw d;
    d.kind = ProposalKind::kToggle;
    d.cell = cell;
    add(d, third / static_cast<double>(s.cells()));
  }
  return out;
}

/// Row-stochastic MH transition matrix over all 2^cells hypergraphs.
inline std::vector<std::vector<double>> transition_matrix(ClassSizes s, const PartiteDegreeSequence& d, double t) {
  const std::size_t n = std::size_t{1} << s.cells();
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  for (std::size_t x = 0; x < n; ++x) {
    const Hypergraph h = from_bits(s, x);
    const std::int64_t ex = recount_energy(h, d);
    double stay = 0.0;
    for (const auto& [y, q] : proposal_distribution(h)) {
      if (y == x) {
        stay += q;
        continue;
      }
      const std::int64_t ey = recount_energy(from_bits(s, y), d);
      const double a = hypart::acceptance_probability(ey - ex, t);
      p[x][y] += q * a;
      stay += q * (1.0 - a);
    }
    p[x][x] += stay;
  }
  return p;
}

/// exp(-E/T)/Z over all 2^cells hypergraphs.
inline std::vector<double> boltzmann(ClassSizes s, const PartiteDegreeSequence& d, double t) {
  const std::size_t n = std::size_t{1} << s.cells();
  std::vector<double> w(n);
  double z = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    w[x] = std::exp(-static_cast<double>(recount_energy(from_bits(s, x), d)) / t);
    z += w[x];
  }
  for (double& v : w) v /= z;
  return w;
}

/// Every non-negative integer table with the given margins, row-major.
inline std::vector<std::vector<std::int64_t>> enumerate_tables(const std::vector<std::int64_t>& rows,
                                                               const std::vector<std::int64_t>& cols) {
  const std::size_t r = rows.size(), c = cols.size();
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cell(r * c, 0), row_left = rows, col_left = cols;
  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (k == r * c) {
      for (std::int64_t v : row_left) if (v) return;
      for (std::int64_t v : col_left) if (v) return;
      out.push_back(cell);
      return;
    }
    const std::size_t i = k / c, j = k % c;
    for (std::int64_t v = 0; v <= std::min(row_left[i], col_left[j]); ++v) {
      cell[k] = v;
      row_left[i] -= v, col_left[j] -= v;
      fill(k + 1);
      row_left[i] += v, col_left[j] += v;
    }
    cell[k] = 0;
  };
  fill(0);
  return out;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

}  // namespace testsupport
