#pragma once

// Posets of closed subobjects of a Theta object, ordered by factorization.
// The cells-only poset is the canonical cover used by the Segal condition.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thetacat/theta.hpp"

namespace thetacat {

// Nodes are closed morphisms into `target` in the canonical enumeration
// order of closed_morphisms_into (restricted to cell sources on request).
// leq[a][b] holds iff nodes[a] factors through nodes[b] by a closed
// morphism; such factorizations are unique.
struct ClosedSlicePoset {
  ThetaObj target;
  bool cells_only = false;
  std::vector<ThetaMor> nodes;
  std::vector<std::vector<bool>> leq;

  std::size_t size() const { return nodes.size(); }

  bool less_eq(std::size_t a, std::size_t b) const { return leq[a][b]; }

  // Witness for nodes[a] <= nodes[b]: the unique closed h with
  // nodes[b] o h = nodes[a].
  std::optional<ThetaMor> connecting(std::size_t a, std::size_t b) const {
    return closed_factor_through(nodes[a], nodes[b]);
  }

  // Covering pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b = 0; b < size(); ++b) {
        if (a == b || !leq[a][b] || leq[b][a]) continue;
        bool covered = true;
        for (std::size_t c = 0; c < size() && covered; ++c) {
          if (c == a || c == b) continue;
          if (leq[a][c] && leq[c][b] && !leq[c][a] && !leq[b][c]) covered = false;
        }
        if (covered) out.emplace_back(a, b);
      }
    }
    return out;
  }

  std::vector<std::size_t> maxima() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < size(); ++a) {
      bool maximal = true;
      for (std::size_t b = 0; b < size() && maximal; ++b)
        if (b != a && leq[a][b] && !leq[b][a]) maximal = false;
      if (maximal) out.push_back(a);
    }
    return out;
  }

  bool has_maximum() const {
    for (std::size_t b = 0; b < size(); ++b) {
      bool top = true;
      for (std::size_t a = 0; a < size() && top; ++a)
        if (!leq[a][b]) top = false;
      if (top) return true;
    }
    return false;
  }
};

inline ClosedSlicePoset closed_slice_poset(const ThetaObj& T, bool cells_only) {
  ClosedSlicePoset P;
  P.target = T;
  P.cells_only = cells_only;
  for (auto& m : closed_morphisms_into(T))
    if (!cells_only || is_cell(m.source)) P.nodes.push_back(std::move(m));
  P.leq.assign(P.nodes.size(), std::vector<bool>(P.nodes.size(), false));
  for (std::size_t a = 0; a < P.nodes.size(); ++a)
    for (std::size_t b = 0; b < P.nodes.size(); ++b)
      P.leq[a][b] = closed_factor_through(P.nodes[a], P.nodes[b]).has_value();
  return P;
}

// Node label: source term plus the top-level sigma anchor.
inline std::string poset_node_label(const ThetaMor& m) {
  std::ostringstream os;
  os << to_string(m.source) << " s=";
  for (std::size_t i = 0; i < m.sigma.size(); ++i)
    os << (i ? "," : "") << m.sigma[i];
  return os.str();
}

inline std::string to_dot(const ClosedSlicePoset& P) {
  std::ostringstream os;
  os << "digraph closed_slice {\n  rankdir=BT;\n";
  for (std::size_t a = 0; a < P.size(); ++a)
    os << "  n" << a << " [label=\"" << poset_node_label(P.nodes[a]) << "\"];\n";
  for (const auto& [a, b] : P.hasse_edges())
    os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace thetacat
