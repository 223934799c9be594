#pragma once

// Generators, enumerators and independent oracles shared by the tests.

#include <cstdint>
#include <optional>
#include <utility>
#include <random>
#include <string>
#include <vector>

#include "cactus/cactus_group.hpp"
#include "cactus/equivalence.hpp"
#include "cactus/gauss_diagram.hpp"
#include "cactus/moves.hpp"

namespace cactus::testing {

using Rng = std::mt19937_64;

Generator random_generator(Rng& rng, int n);
CactusWord random_word(Rng& rng, int min_n, int max_n, std::size_t max_len);

/// Every oriented cyclic order on the given branches.
std::vector<OrientedCyclicOrder> all_orders(std::vector<PointId> const& branches);

/// All diagrams with at most `max_points` marked points and at most
/// `max_free_loops` free loops, one per isomorphism class, optionally only
/// the realizable ones.
std::vector<GaussDiagram> enumerate_diagrams(std::size_t max_points, std::size_t max_free_loops,
                                             bool realizable_only, bool deduplicate = true);

/// Brute-force isomorphism test: tries every bijection of marked points.
bool isomorphic(GaussDiagram const& a, GaussDiagram const& b);

/// A uniformly shaped random diagram (not necessarily realizable).
GaussDiagram random_diagram(Rng& rng, std::size_t max_points);
/// Rejection-samples random_diagram for realizability, falling back to a
/// closure of a random word.
GaussDiagram random_realizable_diagram(Rng& rng, std::size_t max_points);
/// Random realizable diagram whose singular sets all have size 2.
GaussDiagram random_realizable_doodle(Rng& rng, std::size_t max_points);

/// Every Phi_n creation on d for the given n, with new pairs placed in any
/// gaps (several pairs may share a gap). Only descriptors that apply.
std::vector<PhiDescriptor> phi_creations(GaussDiagram const& d, std::size_t n);

struct MoveGraph {
  std::vector<GaussDiagram> nodes;
  std::vector<std::string> keys;
};

/// Realizable diagrams reachable from d by Psi moves, Phi annihilations and
/// Phi_n creations (n <= max_creation_size) while the crossing count stays at
/// most crossing_count(d) + extra_crossings.
MoveGraph bounded_move_graph(GaussDiagram const& d, std::size_t extra_crossings,
                             std::size_t max_creation_size, std::size_t max_nodes);

/// Reduces d by Psi moves and annihilations chosen at random until minimal.
GaussDiagram random_minimize(GaussDiagram const& d, Rng& rng);

/// Independent oracles.
std::vector<int> perm_by_positions(CactusWord const& w);
std::size_t cycle_count(std::vector<int> const& images);
/// Faces traced directly on the circles and orders, without a ribbon graph.
std::size_t face_count(GaussDiagram const& d);
bool connected(GaussDiagram const& d);

/// The JSON diagrams under data/corpus, sorted by file name.
std::vector<std::pair<std::string, GaussDiagram>> load_corpus();

/// Random peak (creation, Psi moves, annihilation) with every diagram
/// realizable, drawn until one of the requested case is found.
std::optional<MoveSequence> random_peak(Rng& rng, PeakCase wanted, std::size_t attempts);

}  // namespace cactus::testing
