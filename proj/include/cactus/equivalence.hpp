#pragma once

// Deciding equivalence of Gauss diagrams.
//
// Psi moves keep the number of singular sets, so the Psi-orbit of a diagram
// is finite. A diagram is minimal when no member of its Psi-orbit admits a
// Phi annihilation; two diagrams are equivalent when their minimizations
// share a Psi-orbit.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cactus/gauss_diagram.hpp"
#include "cactus/moves.hpp"

namespace cactus {

struct SearchOptions {
  /// Maximum number of distinct canonical forms visited by one orbit search.
  std::size_t max_nodes = 1'000'000;
  /// Worker threads for frontier expansion; results do not depend on it.
  unsigned threads = 1;
  CanonicalOptions canonical{};
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t limit)
      : std::runtime_error("orbit search exceeded the node budget of " +
                           std::to_string(limit)),
        limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

struct OrbitSummary {
  /// Sorted canonical encodings of every diagram Psi-reachable from the seed.
  std::vector<std::string> representatives;
  /// A member diagram for each representative (same order).
  std::vector<GaussDiagram> members;

  std::size_t size() const noexcept { return representatives.size(); }
  bool contains(std::string const& key) const;
};

struct MoveStep {
  MoveDescriptor move;
  GaussDiagram result;
  std::string key;
};

struct MoveSequence {
  GaussDiagram start;
  std::vector<MoveStep> steps;

  GaussDiagram const& finish() const { return steps.empty() ? start : steps.back().result; }
};

/// Empty when every step applies to its predecessor and yields its result.
std::optional<std::string> check_sequence(MoveSequence const& seq);

OrbitSummary psi_orbit(GaussDiagram const& d, SearchOptions const& opts = {});
bool is_minimal(GaussDiagram const& d, SearchOptions const& opts = {});

/// Reduces by Psi moves and Phi annihilations until minimal. Among all
/// annihilations available in the current Psi-orbit, the one whose result
/// has the smallest canonical form is taken.
MoveSequence minimize_path(GaussDiagram const& d, SearchOptions const& opts = {});
GaussDiagram minimize(GaussDiagram const& d, SearchOptions const& opts = {});
std::size_t min_crossing_number(GaussDiagram const& d, SearchOptions const& opts = {});

/// Smallest canonical form in the Psi-orbit of the minimization.
std::string equivalence_key(GaussDiagram const& d, SearchOptions const& opts = {});
bool equivalent(GaussDiagram const& d1, GaussDiagram const& d2,
                SearchOptions const& opts = {});

/// Equivalence of doodles using only the removal of bigons between double
/// points. Throws std::invalid_argument on a set of size other than 2.
bool doodle_equivalent(GaussDiagram const& d1, GaussDiagram const& d2,
                       CanonicalOptions opts = {});
GaussDiagram doodle_reduce(GaussDiagram const& d);

/// Which created and annihilated pairs a peak sequence shares.
enum class PeakCase { same_pair, one_common, disjoint };

/// Classifies a sequence of the form: one Phi creation, Psi moves, one Phi
/// annihilation. Throws std::invalid_argument if the shape is wrong.
PeakCase classify_peak(MoveSequence const& seq);

/// How flatten_peak produced its answer.
enum class FlattenMethod {
  /// Collapsing the lenses of the created and annihilated pairs.
  lens_collapse,
  /// Searching Psi moves and annihilations down from both endpoints.
  descent_search,
};

/// No sequence between the endpoints stays at or below their crossing count.
class PeakNotFlattenable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rewrites such a sequence into one from the same first diagram whose
/// diagrams never have more singular sets than the endpoints. The lens
/// construction ends at the last diagram exactly; the search fallback ends at
/// a diagram with the same canonical form. Every diagram of the input must be
/// realizable. Throws PeakNotFlattenable when the endpoints are not joined
/// by Psi moves and annihilations meeting in a common diagram.
MoveSequence flatten_peak(MoveSequence const& seq, FlattenMethod* method = nullptr,
                          SearchOptions const& opts = {});

}  // namespace cactus
