#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace hypart {

enum class VertexClass : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<VertexClass, 3> kAllClasses = {VertexClass::A, VertexClass::B,
                                                            VertexClass::C};

constexpr std::size_t index_of(VertexClass c) { return static_cast<std::size_t>(c); }
char class_name(VertexClass c);

/// One hyperedge: a vertex from each of the three classes.
struct Triple {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t c = 0;

  std::uint32_t operator[](VertexClass cls) const {
    return cls == VertexClass::A ? a : cls == VertexClass::B ? b : c;
  }
  std::uint32_t& operator[](VertexClass cls) {
    return cls == VertexClass::A ? a : cls == VertexClass::B ? b : c;
  }
  /// Copy with the vertex of class `cls` replaced by `v`.
  Triple with(VertexClass cls, std::uint32_t v) const {
    Triple t = *this;
    t[cls] = v;
    return t;
  }

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct ClassSizes {
  std::uint32_t n1 = 0;
  std::uint32_t n2 = 0;
  std::uint32_t n3 = 0;

  std::uint32_t operator[](VertexClass cls) const {
    return cls == VertexClass::A ? n1 : cls == VertexClass::B ? n2 : n3;
  }
  std::uint64_t cells() const {
    return static_cast<std::uint64_t>(n1) * n2 * n3;
  }
  bool contains(const Triple& t) const { return t.a < n1 && t.b < n2 && t.c < n3; }

  friend bool operator==(const ClassSizes&, const ClassSizes&) = default;
};

/// Target degrees, one sequence per vertex class. Graphicality conditions
/// (equal sums, entry bounds) are checked by validate(), not on construction.
struct PartiteDegreeSequence {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> c;

  const std::vector<std::int64_t>& of(VertexClass cls) const {
    return cls == VertexClass::A ? a : cls == VertexClass::B ? b : c;
  }
  std::vector<std::int64_t>& of(VertexClass cls) {
    return cls == VertexClass::A ? a : cls == VertexClass::B ? b : c;
  }
  ClassSizes sizes() const {
    return {static_cast<std::uint32_t>(a.size()), static_cast<std::uint32_t>(b.size()),
            static_cast<std::uint32_t>(c.size())};
  }
  std::int64_t sum(VertexClass cls) const;

  friend bool operator==(const PartiteDegreeSequence&, const PartiteDegreeSequence&) = default;
};

enum class DegreeValidity {
  kOk,
  kNegativeEntry,
  kEntryTooLarge,  // some degree exceeds the product of the other two class sizes
  kSumMismatch,
};

DegreeValidity validate(const PartiteDegreeSequence& d);

/// Partite 3-uniform hypergraph over fixed class sizes.
///
/// Edges live in a dense vector (O(1) uniform draw, O(1) swap-delete) plus a
/// packed-index -> slot lookup for O(1) membership. Small cell counts use a
/// direct table, larger ones a hash map. Per-vertex degrees are kept in sync.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(ClassSizes sizes);
  Hypergraph(ClassSizes sizes, std::span<const Triple> edges);

  const ClassSizes& sizes() const { return sizes_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::vector<Triple>& edges() const { return edges_; }
  const Triple& edge(std::size_t slot) const { return edges_[slot]; }

  bool contains(const Triple& t) const;
  /// Returns false if the triple was already present.
  bool insert(const Triple& t);
  /// Returns false if the triple was absent.
  bool erase(const Triple& t);

  std::int64_t degree(VertexClass cls, std::uint32_t v) const {
    return degrees_[index_of(cls)][v];
  }
  const std::vector<std::int64_t>& degrees(VertexClass cls) const {
    return degrees_[index_of(cls)];
  }
  PartiteDegreeSequence degree_sequence() const;

  std::uint64_t pack(const Triple& t) const {
    return (static_cast<std::uint64_t>(t.a) * sizes_.n2 + t.b) * sizes_.n3 + t.c;
  }
  Triple unpack(std::uint64_t packed) const;

  /// Edges sorted lexicographically.
  std::vector<Triple> sorted_edges() const;

  /// Full recount of degrees and index against the edge list.
  bool consistent() const;

  friend bool operator==(const Hypergraph& x, const Hypergraph& y);

 private:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

  std::uint32_t slot_of(std::uint64_t packed) const;
  void set_slot(std::uint64_t packed, std::uint32_t slot);
  void clear_slot(std::uint64_t packed);
  void bump(const Triple& t, std::int64_t delta);

  ClassSizes sizes_;
  std::vector<Triple> edges_;
  bool dense_ = true;
  std::vector<std::uint32_t> dense_slots_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_slots_;
  std::array<std::vector<std::int64_t>, 3> degrees_;
};

}  // namespace hypart
