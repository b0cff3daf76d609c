#include "hypart/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "hypart/error.hpp"

namespace hypart::oracle {

namespace {

void require_mask_size(ClassSizes sizes) {
  if (sizes.cells() > 64) throw TooLarge("more than 64 cells cannot be encoded as a mask");
}

class Enumerator {
 public:
  explicit Enumerator(const PartiteDegreeSequence& d) : sizes_(d.sizes()) {
    for (VertexClass cls : kAllClasses) need_[index_of(cls)] = d.of(cls);
    remaining_[0].assign(sizes_.n1, std::int64_t{sizes_.n2} * sizes_.n3);
    remaining_[1].assign(sizes_.n2, std::int64_t{sizes_.n1} * sizes_.n3);
    remaining_[2].assign(sizes_.n3, std::int64_t{sizes_.n1} * sizes_.n2);
  }

  std::vector<CellMask> run() {
    for (VertexClass cls : kAllClasses) {
      const auto i = index_of(cls);
      for (std::size_t v = 0; v < need_[i].size(); ++v) {
        if (need_[i][v] < 0 || need_[i][v] > remaining_[i][v]) return {};
      }
    }
    recurse(0, 0);
    return std::move(found_);
  }

 private:
  void recurse(std::uint64_t cell, CellMask mask) {
    if (cell == sizes_.cells()) {
      found_.push_back(mask);
      return;
    }
    const std::uint32_t c = static_cast<std::uint32_t>(cell % sizes_.n3);
    const std::uint32_t b = static_cast<std::uint32_t>((cell / sizes_.n3) % sizes_.n2);
    const std::uint32_t a = static_cast<std::uint32_t>(cell / (std::uint64_t{sizes_.n3} * sizes_.n2));
    std::int64_t& na = need_[0][a];
    std::int64_t& nb = need_[1][b];
    std::int64_t& nc = need_[2][c];
    --remaining_[0][a];
    --remaining_[1][b];
    --remaining_[2][c];
    if (na > 0 && nb > 0 && nc > 0) {
      --na, --nb, --nc;
      recurse(cell + 1, mask | (CellMask{1} << cell));
      ++na, ++nb, ++nc;
    }
    if (na <= remaining_[0][a] && nb <= remaining_[1][b] && nc <= remaining_[2][c]) {
      recurse(cell + 1, mask);
    }
    ++remaining_[0][a];
    ++remaining_[1][b];
    ++remaining_[2][c];
  }

  ClassSizes sizes_;
  std::array<std::vector<std::int64_t>, 3> need_;
  std::array<std::vector<std::int64_t>, 3> remaining_;
  std::vector<CellMask> found_;
};

}  // namespace

CellMask to_mask(const Hypergraph& h) {
  require_mask_size(h.sizes());
  CellMask mask = 0;
  for (const Triple& t : h.edges()) mask |= CellMask{1} << h.pack(t);
  return mask;
}

Hypergraph from_mask(ClassSizes sizes, CellMask mask) {
  require_mask_size(sizes);
  Hypergraph h(sizes);
  for (std::uint64_t cell = 0; cell < sizes.cells(); ++cell) {
    if (mask >> cell & 1) h.insert(h.unpack(cell));
  }
  return h;
}

std::vector<CellMask> enumerate_realization_masks(const PartiteDegreeSequence& d) {
  const ClassSizes sizes = d.sizes();
  if (sizes.cells() > kMaxCells) {
    throw TooLarge("enumeration limited to " + std::to_string(kMaxCells) + " cells");
  }
  if (d.sum(VertexClass::A) != d.sum(VertexClass::B) ||
      d.sum(VertexClass::A) != d.sum(VertexClass::C)) {
    return {};
  }
  return Enumerator(d).run();
}

std::vector<Hypergraph> enumerate_realizations(const PartiteDegreeSequence& d) {
  std::vector<Hypergraph> out;
  for (CellMask m : enumerate_realization_masks(d)) out.push_back(from_mask(d.sizes(), m));
  return out;
}

std::size_t switch_components(ClassSizes sizes, std::span<const CellMask> realizations) {
  require_mask_size(sizes);
  std::unordered_map<CellMask, std::size_t> index;
  index.reserve(realizations.size() * 2);
  for (std::size_t i = 0; i < realizations.size(); ++i) index.emplace(realizations[i], i);

  Hypergraph decode(sizes);
  std::vector<bool> seen(realizations.size(), false);
  std::vector<Triple> edges;
  std::size_t components = 0;
  for (std::size_t start = 0; start < realizations.size(); ++start) {
    if (seen[start]) continue;
    ++components;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const CellMask mask = realizations[queue.front()];
      queue.pop_front();
      edges.clear();
      for (std::uint64_t cell = 0; cell < sizes.cells(); ++cell) {
        if (mask >> cell & 1) edges.push_back(decode.unpack(cell));
      }
      for (std::size_t x = 0; x < edges.size(); ++x) {
        for (std::size_t y = x + 1; y < edges.size(); ++y) {
          for (VertexClass cls : kAllClasses) {
            if (edges[x][cls] == edges[y][cls]) continue;
            const Triple t1 = edges[x].with(cls, edges[y][cls]);
            const Triple t2 = edges[y].with(cls, edges[x][cls]);
            const CellMask bit1 = CellMask{1} << decode.pack(t1);
            const CellMask bit2 = CellMask{1} << decode.pack(t2);
            if ((mask & bit1) || (mask & bit2)) continue;
            const CellMask next = (mask & ~(CellMask{1} << decode.pack(edges[x])) &
                                   ~(CellMask{1} << decode.pack(edges[y]))) |
                                  bit1 | bit2;
            auto it = index.find(next);
            if (it == index.end()) continue;  // switch leaves the supplied set
            if (!seen[it->second]) {
              seen[it->second] = true;
              queue.push_back(it->second);
            }
          }
        }
      }
    }
  }
  return components;
}

std::size_t switch_connectivity(const std::vector<Hypergraph>& realizations) {
  if (realizations.empty()) return 0;
  const ClassSizes sizes = realizations.front().sizes();
  std::vector<CellMask> masks;
  masks.reserve(realizations.size());
  for (const Hypergraph& h : realizations) {
    if (!(h.sizes() == sizes)) throw DimensionMismatch("realizations have different class sizes");
    masks.push_back(to_mask(h));
  }
  return switch_components(sizes, masks);
}

N3dmInstance parse_n3dm(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
    N3dmInstance inst;
    inst.k = j.at("k").get<int>();
    inst.weights = j.at("a").get<std::vector<std::int64_t>>();
    inst.bound = j.at("b").get<std::int64_t>();
    if (inst.k < 0 || inst.weights.size() != static_cast<std::size_t>(3 * inst.k) || inst.bound < 0) {
      throw InputError("N3DM instance: need k >= 0, 3k weights and b >= 0");
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("N3DM instance JSON: ") + e.what());
  }
}

bool solve_n3dm(const N3dmInstance& inst) {
  if (inst.k > kMaxN3dmClass) throw TooLarge("N3DM solver limited to k <= 4");
  const auto k = static_cast<std::size_t>(inst.k);
  if (inst.weights.size() != 3 * k) throw DimensionMismatch("N3DM weight vector must have length 3k");
  std::vector<std::size_t> sigma(k), tau(k);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  do {
    std::iota(tau.begin(), tau.end(), std::size_t{0});
    do {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        ok = inst.weights[i] + inst.weights[k + sigma[i]] + inst.weights[2 * k + tau[i]] == inst.bound;
      }
      if (ok) return true;
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

PartiteDegreeSequence reduce_n3dm(const N3dmInstance& inst) {
  const auto k = static_cast<std::size_t>(inst.k);
  if (inst.weights.size() != 3 * k) throw DimensionMismatch("N3DM weight vector must have length 3k");
  const std::int64_t n = static_cast<std::int64_t>(3 * k);
  const std::int64_t total = std::accumulate(inst.weights.begin(), inst.weights.end(), std::int64_t{0});

  PartiteDegreeSequence d;
  if (3 * total != n * inst.bound) {
    d.a.assign(k, 0);
    d.b.assign(k, 0);
    d.c.assign(k, 0);
    if (k > 0) d.a[0] = 1;
    return d;
  }
  std::vector<std::int64_t> w(3 * k);
  for (std::size_t i = 0; i < 3 * k; ++i) w[i] = 3 * inst.weights[i] - inst.bound;
  std::vector<std::int64_t> deg(3 * k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = k; j < 2 * k; ++j) {
      for (std::size_t l = 2 * k; l < 3 * k; ++l) {
        if (w[i] + w[j] + w[l] > 0) {
          ++deg[i];
          ++deg[j];
          ++deg[l];
        }
      }
    }
  }
  d.a.assign(deg.begin(), deg.begin() + static_cast<std::ptrdiff_t>(k));
  d.b.assign(deg.begin() + static_cast<std::ptrdiff_t>(k), deg.begin() + static_cast<std::ptrdiff_t>(2 * k));
  d.c.assign(deg.begin() + static_cast<std::ptrdiff_t>(2 * k), deg.end());
  return d;
}

}  // namespace hypart::oracle
