#pragma once

#include <cstdint>
#include <string>

#include "hypart/hypergraph.hpp"

namespace hypart {

enum class MoveKind : std::uint8_t { kSwitch, kHingeFlip, kToggleIn, kToggleOut };

/// A local modification of a hypergraph.
///
///  - Switch(cls, e1, e2): exchanges the class-`cls` vertices of e1 and e2.
///  - HingeFlip(cls, e, x): replaces the class-`cls` vertex of e by x.
///  - ToggleIn(t) / ToggleOut(t): adds / removes the hyperedge t.
struct Move {
  MoveKind kind = MoveKind::kToggleIn;
  VertexClass cls = VertexClass::A;
  Triple first;
  Triple second;
  std::uint32_t replacement = 0;

  static Move switch_edges(VertexClass cls, const Triple& e1, const Triple& e2) {
    return {MoveKind::kSwitch, cls, e1, e2, 0};
  }
  static Move hinge_flip(VertexClass cls, const Triple& e, std::uint32_t x) {
    return {MoveKind::kHingeFlip, cls, e, {}, x};
  }
  static Move toggle_in(const Triple& t) { return {MoveKind::kToggleIn, VertexClass::A, t, {}, 0}; }
  static Move toggle_out(const Triple& t) {
    return {MoveKind::kToggleOut, VertexClass::A, t, {}, 0};
  }

  friend bool operator==(const Move&, const Move&) = default;
};

/// Up to two hyperedges, as removed or added by a move.
struct EdgePair {
  Triple edge[2];
  int count = 0;
};

EdgePair removed_edges(const Move& m);
EdgePair added_edges(const Move& m);

/// True iff the preconditions of `m` hold on `h`: removed edges present,
/// added edges absent, and (for switch / hinge flip) the swapped or replaced
/// vertices differ.
bool is_valid(const Hypergraph& h, const Move& m);

/// Move that undoes `m` once `m` has been applied.
Move inverse(const Move& m);

/// L1 deviation of h's degrees from d.
std::int64_t energy(const Hypergraph& h, const PartiteDegreeSequence& d);

/// energy(after) - energy(before) for a valid move; does not modify h.
std::int64_t energy_delta(const Hypergraph& h, const PartiteDegreeSequence& d, const Move& m);

/// Applies a valid move. Throws InvalidMove (h untouched) otherwise.
void apply_move(Hypergraph& h, const Move& m);

/// Applies a valid move and returns the energy change relative to d.
std::int64_t apply_move(Hypergraph& h, const Move& m, const PartiteDegreeSequence& d);

std::string to_string(const Move& m);

}  // namespace hypart
