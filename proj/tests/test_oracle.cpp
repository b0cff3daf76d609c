#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hypart/error.hpp"
#include "hypart/move.hpp"
#include "hypart/oracle.hpp"

using namespace hypart;
using namespace hypart::oracle;

namespace {

// Unpruned scan over every subset of cells.
std::vector<CellMask> subset_scan(const PartiteDegreeSequence& d) {
  const ClassSizes s = d.sizes();
  const Hypergraph probe(s);
  std::vector<CellMask> out;
  for (CellMask bits = 0; bits < (CellMask{1} << s.cells()); ++bits) {
    std::vector<std::int64_t> a(s.n1), b(s.n2), c(s.n3);
    for (std::uint64_t cell = 0; cell < s.cells(); ++cell) {
      if (!(bits >> cell & 1)) continue;
      const Triple t = probe.unpack(cell);
      ++a[t.a], ++b[t.b], ++c[t.c];
    }
    if (a == d.a && b == d.b && c == d.c) out.push_back(bits);
  }
  return out;
}

// Second N3DM solver: assign each A element a partner pair recursively.
bool n3dm_recursive(const N3dmInstance& inst, std::size_t i, std::vector<bool>& used_b, std::vector<bool>& used_c) {
  const auto k = static_cast<std::size_t>(inst.k);
  if (i == k) return true;
  for (std::size_t j = 0; j < k; ++j) {
    if (used_b[j]) continue;
    for (std::size_t l = 0; l < k; ++l) {
      if (used_c[l]) continue;
      if (inst.weights[i] + inst.weights[k + j] + inst.weights[2 * k + l] != inst.bound) continue;
      used_b[j] = used_c[l] = true;
      if (n3dm_recursive(inst, i + 1, used_b, used_c)) return true;
      used_b[j] = used_c[l] = false;
    }
  }
  return false;
}

bool n3dm_second(const N3dmInstance& inst) {
  std::vector<bool> ub(static_cast<std::size_t>(inst.k)), uc(static_cast<std::size_t>(inst.k));
  return n3dm_recursive(inst, 0, ub, uc);
}

}  // namespace

TEST_CASE("enumeration of ((1,1),(1,1),(1,1))") {
  const PartiteDegreeSequence d{{1, 1}, {1, 1}, {1, 1}};
  const auto masks = enumerate_realization_masks(d);
  // The edge through a=0 picks (b,c) in 4 ways; the edge through a=1 is then forced.
  CHECK(masks.size() == 4);
  CHECK(masks.size() == subset_scan(d).size());
  CHECK(switch_components(d.sizes(), masks) == 1);
}

TEST_CASE("enumeration edge cases") {
  const auto only_empty = enumerate_realizations({{0}, {0}, {0}});
  REQUIRE(only_empty.size() == 1);
  CHECK(only_empty[0].empty());
  CHECK(enumerate_realizations({{1, 1}, {1, 0}, {1, 0}}).empty());
  CHECK_THROWS_AS(enumerate_realizations({{0, 0, 0, 0}, {0, 0, 0}, {0, 0, 0}}), TooLarge);
  CHECK(switch_connectivity({}) == 0);
  const auto single = enumerate_realizations({{1}, {1}, {1}});
  CHECK(switch_connectivity(single) == 1);
}

TEST_CASE("enumeration matches an unpruned subset scan") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 300; ++trial) {
    const ClassSizes s{1 + static_cast<std::uint32_t>(gen() % 3), 1 + static_cast<std::uint32_t>(gen() % 2),
                       1 + static_cast<std::uint32_t>(gen() % 2)};
    // Take degrees of a random hypergraph so that many instances are graphic.
    Hypergraph h(s);
    for (std::uint64_t cell = 0; cell < s.cells(); ++cell) {
      if (gen() % 2) h.insert(h.unpack(cell));
    }
    PartiteDegreeSequence d = h.degree_sequence();
    if (gen() % 4 == 0) d.b[0] += 1, d.c[0] += 1, d.a[0] += 1;  // often non-graphic
    auto fast = enumerate_realization_masks(d);
    auto slow = subset_scan(d);
    std::sort(fast.begin(), fast.end());
    CHECK(fast == slow);
    for (CellMask m : fast) CHECK(energy(from_mask(s, m), d) == 0);
  }
}

TEST_CASE("switch components") {
  // Each class switch of {(0,0,0),(1,1,1)} reaches one of the other realizations.
  const ClassSizes s{2, 2, 2};
  Hypergraph x(s), ya(s), yb(s), yc(s);
  x.insert({0, 0, 0}), x.insert({1, 1, 1});
  ya.insert({1, 0, 0}), ya.insert({0, 1, 1});
  yb.insert({0, 1, 0}), yb.insert({1, 0, 1});
  yc.insert({0, 0, 1}), yc.insert({1, 1, 0});
  CHECK(switch_connectivity({x, ya}) == 1);
  CHECK(switch_connectivity({x, yb}) == 1);
  CHECK(switch_connectivity({x, yc}) == 1);
  // ya and yb are a class-C switch apart as well; the four form one component.
  CHECK(switch_connectivity({ya, yb}) == 1);
  CHECK(switch_connectivity({x, ya, yb, yc}) == 1);
  // Different edge counts are never one switch apart.
  Hypergraph u(s), v(s);
  u.insert({0, 0, 0});
  v.insert({1, 1, 1});
  v.insert({1, 1, 0});
  CHECK(switch_connectivity({u, v}) == 2);
}

TEST_CASE("n3dm examples") {
  CHECK(solve_n3dm({1, {1, 2, 3}, 6}));
  CHECK_FALSE(solve_n3dm({1, {1, 2, 3}, 7}));
  CHECK_THROWS_AS(solve_n3dm({5, std::vector<std::int64_t>(15, 0), 0}), TooLarge);
  const N3dmInstance parsed = parse_n3dm(R"({"k":1,"a":[1,2,3],"b":6})");
  CHECK(parsed.k == 1);
  CHECK(parsed.weights == std::vector<std::int64_t>{1, 2, 3});
  CHECK(parsed.bound == 6);
  CHECK_THROWS_AS(parse_n3dm(R"({"k":2,"a":[1,2,3],"b":6})"), InputError);
  CHECK_THROWS_AS(parse_n3dm("{"), InputError);
}

TEST_CASE("n3dm solver agrees with a second implementation") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 1 + static_cast<int>(gen() % 4);
    N3dmInstance inst{k, std::vector<std::int64_t>(static_cast<std::size_t>(3 * k)), 0};
    for (auto& w : inst.weights) w = static_cast<std::int64_t>(gen() % 5);
    inst.bound = static_cast<std::int64_t>(gen() % 10);
    CHECK(solve_n3dm(inst) == n3dm_second(inst));
  }
}

TEST_CASE("reduction examples") {
  CHECK(reduce_n3dm({1, {1, 2, 3}, 6}) == PartiteDegreeSequence{{1}, {1}, {1}});
  const PartiteDegreeSequence sentinel = reduce_n3dm({2, {1, 1, 1, 1, 1, 1}, 4});
  CHECK(sentinel == PartiteDegreeSequence{{1, 0}, {0, 0}, {0, 0}});
  CHECK(enumerate_realizations(sentinel).empty());
}

TEST_CASE("reduction equivalence for k = 1") {
  for (std::int64_t a0 = -3; a0 <= 3; ++a0) {
    for (std::int64_t a1 = -3; a1 <= 3; ++a1) {
      for (std::int64_t a2 = -3; a2 <= 3; ++a2) {
        for (std::int64_t b = 0; b <= 9; ++b) {
          const N3dmInstance inst{1, {a0, a1, a2}, b};
          const bool graphic = !enumerate_realization_masks(reduce_n3dm(inst)).empty();
          CHECK(graphic == solve_n3dm(inst));
        }
      }
    }
  }
}
