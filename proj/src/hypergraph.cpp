#include "hypart/hypergraph.hpp"

#include <algorithm>
#include <numeric>

#include "hypart/error.hpp"

namespace hypart {

char class_name(VertexClass c) { return "ABC"[index_of(c)]; }

std::int64_t PartiteDegreeSequence::sum(VertexClass cls) const {
  const auto& v = of(cls);
  return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

DegreeValidity validate(const PartiteDegreeSequence& d) {
  const ClassSizes s = d.sizes();
  const std::array<std::uint64_t, 3> caps = {std::uint64_t{s.n2} * s.n3,
                                             std::uint64_t{s.n1} * s.n3,
                                             std::uint64_t{s.n1} * s.n2};
  for (VertexClass cls : kAllClasses) {
    for (std::int64_t x : d.of(cls)) {
      if (x < 0) return DegreeValidity::kNegativeEntry;
    }
  }
  for (VertexClass cls : kAllClasses) {
    for (std::int64_t x : d.of(cls)) {
      if (static_cast<std::uint64_t>(x) > caps[index_of(cls)]) return DegreeValidity::kEntryTooLarge;
    }
  }
  if (d.sum(VertexClass::A) != d.sum(VertexClass::B) ||
      d.sum(VertexClass::A) != d.sum(VertexClass::C)) {
    return DegreeValidity::kSumMismatch;
  }
  return DegreeValidity::kOk;
}

Hypergraph::Hypergraph(ClassSizes sizes) : sizes_(sizes) {
  dense_ = sizes_.cells() <= kDenseLimit;
  if (dense_) dense_slots_.assign(sizes_.cells(), kAbsent);
  for (VertexClass cls : kAllClasses) degrees_[index_of(cls)].assign(sizes_[cls], 0);
}

Hypergraph::Hypergraph(ClassSizes sizes, std::span<const Triple> edges) : Hypergraph(sizes) {
  for (const Triple& t : edges) {
    if (!sizes_.contains(t)) throw DimensionMismatch("hyperedge vertex index out of range");
    insert(t);
  }
}

std::uint32_t Hypergraph::slot_of(std::uint64_t packed) const {
  if (dense_) return dense_slots_[packed];
  auto it = sparse_slots_.find(packed);
  return it == sparse_slots_.end() ? kAbsent : it->second;
}

void Hypergraph::set_slot(std::uint64_t packed, std::uint32_t slot) {
  if (dense_) {
    dense_slots_[packed] = slot;
  } else {
    sparse_slots_[packed] = slot;
  }
}

void Hypergraph::clear_slot(std::uint64_t packed) {
  if (dense_) {
    dense_slots_[packed] = kAbsent;
  } else {
    sparse_slots_.erase(packed);
  }
}

void Hypergraph::bump(const Triple& t, std::int64_t delta) {
  degrees_[0][t.a] += delta;
  degrees_[1][t.b] += delta;
  degrees_[2][t.c] += delta;
}

bool Hypergraph::contains(const Triple& t) const { return slot_of(pack(t)) != kAbsent; }

bool Hypergraph::insert(const Triple& t) {
  const std::uint64_t key = pack(t);
  if (slot_of(key) != kAbsent) return false;
  set_slot(key, static_cast<std::uint32_t>(edges_.size()));
  edges_.push_back(t);
  bump(t, +1);
  return true;
}

bool Hypergraph::erase(const Triple& t) {
  const std::uint64_t key = pack(t);
  const std::uint32_t slot = slot_of(key);
  if (slot == kAbsent) return false;
  const Triple last = edges_.back();
  edges_[slot] = last;
  set_slot(pack(last), slot);
  edges_.pop_back();
  clear_slot(key);
  bump(t, -1);
  return true;
}

Triple Hypergraph::unpack(std::uint64_t packed) const {
  Triple t;
  t.c = static_cast<std::uint32_t>(packed % sizes_.n3);
  packed /= sizes_.n3;
  t.b = static_cast<std::uint32_t>(packed % sizes_.n2);
  t.a = static_cast<std::uint32_t>(packed / sizes_.n2);
  return t;
}

PartiteDegreeSequence Hypergraph::degree_sequence() const {
  return {degrees_[0], degrees_[1], degrees_[2]};
}

std::vector<Triple> Hypergraph::sorted_edges() const {
  std::vector<Triple> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

bool Hypergraph::consistent() const {
  std::array<std::vector<std::int64_t>, 3> recount;
  for (VertexClass cls : kAllClasses) recount[index_of(cls)].assign(sizes_[cls], 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Triple& t = edges_[i];
    if (!sizes_.contains(t) || slot_of(pack(t)) != i) return false;
    ++recount[0][t.a];
    ++recount[1][t.b];
    ++recount[2][t.c];
  }
  const std::size_t indexed =
      dense_ ? static_cast<std::size_t>(std::count_if(dense_slots_.begin(), dense_slots_.end(),
                                                      [](std::uint32_t s) { return s != kAbsent; }))
             : sparse_slots_.size();
  return indexed == edges_.size() && recount == degrees_;
}

bool operator==(const Hypergraph& x, const Hypergraph& y) {
  if (!(x.sizes_ == y.sizes_) || x.edge_count() != y.edge_count()) return false;
  return std::all_of(x.edges_.begin(), x.edges_.end(),
                     [&](const Triple& t) { return y.contains(t); });
}

}  // namespace hypart
