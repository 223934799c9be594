#pragma once

// Realizability on the sphere through the ribbon graph of a Gauss diagram:
// one vertex per singular set whose rotation is the set's oriented cyclic
// order, one edge per arc between consecutive marked points.

#include <cstddef>
#include <vector>

#include "cactus/gauss_diagram.hpp"
#include "cactus/moves.hpp"

namespace cactus {

struct RibbonGraph {
  /// Half-edge h is the endpoint half_edges[h].
  std::vector<Endpoint> half_edges;
  /// Counterclockwise successor of h around its vertex.
  std::vector<std::size_t> rotation_next;
  /// The other end of the arc leaving through h.
  std::vector<std::size_t> twin;
  /// Vertex of h; vertices are numbered in label order.
  std::vector<std::size_t> vertex_of;
  std::vector<Label> vertex_labels;
  std::size_t edge_count = 0;
  std::size_t free_loops = 0;

  std::size_t vertex_count() const noexcept { return vertex_labels.size(); }
};

struct ComponentSummary {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  bool free_loop = false;

  long euler() const noexcept {
    return static_cast<long>(vertices) - static_cast<long>(edges) + static_cast<long>(faces);
  }
  long genus() const noexcept { return (2 - euler()) / 2; }
};

struct FaceStructure {
  /// Each face is a cyclic walk of half-edges; half-edge h stands for the
  /// arc leaving its vertex through h.
  std::vector<std::vector<std::size_t>> faces;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  /// One entry per connected component; free loops come last, each with
  /// (V, E, F) = (0, 0, 2).
  std::vector<ComponentSummary> components;

  long euler() const noexcept {
    return static_cast<long>(vertices) - static_cast<long>(edges) +
           static_cast<long>(faces.size());
  }
};

RibbonGraph ribbon_graph(GaussDiagram const& d);
FaceStructure faces(RibbonGraph const& g);

/// True iff every component of the ribbon graph has Euler characteristic 2.
bool is_realizable(GaussDiagram const& d);

/// is_realizable(apply(d, m)) for a Psi move or a Phi annihilation on a
/// realizable diagram. Throws std::invalid_argument otherwise.
bool check_lemma_preservation(GaussDiagram const& d, MoveDescriptor const& m);

}  // namespace cactus
