#include "hypart/move.hpp"

#include <cstdlib>

#include "hypart/error.hpp"

namespace hypart {

namespace {

void check_dimensions(const Hypergraph& h, const PartiteDegreeSequence& d) {
  if (!(h.sizes() == d.sizes())) {
    throw DimensionMismatch("hypergraph class sizes do not match degree sequence lengths");
  }
}

// Change in |target - degree| when degree moves by `step`.
std::int64_t deviation_change(std::int64_t target, std::int64_t degree, std::int64_t step) {
  return std::llabs(target - degree - step) - std::llabs(target - degree);
}

std::string triple_str(const Triple& t) {
  return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + ")";
}

}  // namespace

EdgePair removed_edges(const Move& m) {
  switch (m.kind) {
    case MoveKind::kSwitch:
      return {{m.first, m.second}, 2};
    case MoveKind::kHingeFlip:
    case MoveKind::kToggleOut:
      return {{m.first, {}}, 1};
    case MoveKind::kToggleIn:
      break;
  }
  return {};
}

EdgePair added_edges(const Move& m) {
  switch (m.kind) {
    case MoveKind::kSwitch:
      return {{m.first.with(m.cls, m.second[m.cls]), m.second.with(m.cls, m.first[m.cls])}, 2};
    case MoveKind::kHingeFlip:
      return {{m.first.with(m.cls, m.replacement), {}}, 1};
    case MoveKind::kToggleIn:
      return {{m.first, {}}, 1};
    case MoveKind::kToggleOut:
      break;
  }
  return {};
}

bool is_valid(const Hypergraph& h, const Move& m) {
  const ClassSizes& s = h.sizes();
  switch (m.kind) {
    case MoveKind::kSwitch:
      if (m.first[m.cls] == m.second[m.cls]) return false;
      break;
    case MoveKind::kHingeFlip:
      if (m.replacement >= s[m.cls] || m.replacement == m.first[m.cls]) return false;
      break;
    default:
      break;
  }
  const EdgePair gone = removed_edges(m);
  const EdgePair made = added_edges(m);
  for (int i = 0; i < gone.count; ++i) {
    if (!s.contains(gone.edge[i]) || !h.contains(gone.edge[i])) return false;
  }
  for (int i = 0; i < made.count; ++i) {
    if (!s.contains(made.edge[i]) || h.contains(made.edge[i])) return false;
  }
  return true;
}

Move inverse(const Move& m) {
  switch (m.kind) {
    case MoveKind::kSwitch: {
      const EdgePair made = added_edges(m);
      return Move::switch_edges(m.cls, made.edge[0], made.edge[1]);
    }
    case MoveKind::kHingeFlip:
      return Move::hinge_flip(m.cls, m.first.with(m.cls, m.replacement), m.first[m.cls]);
    case MoveKind::kToggleIn:
      return Move::toggle_out(m.first);
    case MoveKind::kToggleOut:
      return Move::toggle_in(m.first);
  }
  return m;
}

std::int64_t energy(const Hypergraph& h, const PartiteDegreeSequence& d) {
  check_dimensions(h, d);
  std::int64_t total = 0;
  for (VertexClass cls : kAllClasses) {
    const auto& want = d.of(cls);
    const auto& have = h.degrees(cls);
    for (std::size_t v = 0; v < want.size(); ++v) total += std::llabs(want[v] - have[v]);
  }
  return total;
}

std::int64_t energy_delta(const Hypergraph& h, const PartiteDegreeSequence& d, const Move& m) {
  auto change = [&](VertexClass cls, std::uint32_t v, std::int64_t step) {
    return deviation_change(d.of(cls)[v], h.degree(cls, v), step);
  };
  switch (m.kind) {
    case MoveKind::kSwitch:
      return 0;
    case MoveKind::kHingeFlip:
      return change(m.cls, m.first[m.cls], -1) + change(m.cls, m.replacement, +1);
    case MoveKind::kToggleIn:
    case MoveKind::kToggleOut: {
      const std::int64_t step = m.kind == MoveKind::kToggleIn ? 1 : -1;
      std::int64_t total = 0;
      for (VertexClass cls : kAllClasses) total += change(cls, m.first[cls], step);
      return total;
    }
  }
  return 0;
}

void apply_move(Hypergraph& h, const Move& m) {
  if (!is_valid(h, m)) throw InvalidMove("invalid move " + to_string(m));
  const EdgePair gone = removed_edges(m);
  const EdgePair made = added_edges(m);
  for (int i = 0; i < gone.count; ++i) h.erase(gone.edge[i]);
  for (int i = 0; i < made.count; ++i) h.insert(made.edge[i]);
}

std::int64_t apply_move(Hypergraph& h, const Move& m, const PartiteDegreeSequence& d) {
  check_dimensions(h, d);
  if (!is_valid(h, m)) throw InvalidMove("invalid move " + to_string(m));
  const std::int64_t delta = energy_delta(h, d, m);
  apply_move(h, m);
  return delta;
}

std::string to_string(const Move& m) {
  const std::string cls(1, class_name(m.cls));
  switch (m.kind) {
    case MoveKind::kSwitch:
      return "Switch[" + cls + "]" + triple_str(m.first) + triple_str(m.second);
    case MoveKind::kHingeFlip:
      return "HingeFlip[" + cls + "]" + triple_str(m.first) + "->" + std::to_string(m.replacement);
    case MoveKind::kToggleIn:
      return "ToggleIn" + triple_str(m.first);
    case MoveKind::kToggleOut:
      return "ToggleOut" + triple_str(m.first);
  }
  return "?";
}

}  // namespace hypart
