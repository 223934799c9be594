#pragma once

// Gauss diagrams of cactus doodles: oriented circles carrying labeled marked
// points, grouped into singular sets, each with an oriented cyclic order on
// its branch endpoints.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cactus {

using PointId = int;
using Label = int;

/// (x, -1) is the initial and (x, +1) the final endpoint of branch x.
struct Endpoint {
  PointId point;
  int sign;

  Endpoint negated() const noexcept { return {point, -sign}; }

  friend bool operator==(Endpoint const&, Endpoint const&) = default;
  friend auto operator<=>(Endpoint const&, Endpoint const&) = default;
};

/// Cyclic sequence over X x {+1, -1}, stored in full (length 2k) with the
/// antipodal redundancy: the entry at i + k is the negation of the entry at i.
class OrientedCyclicOrder {
 public:
  OrientedCyclicOrder() = default;
  explicit OrientedCyclicOrder(std::vector<Endpoint> sequence)
      : seq_(std::move(sequence)) {}

  std::vector<Endpoint> const& sequence() const noexcept { return seq_; }
  std::size_t size() const noexcept { return seq_.size(); }
  std::size_t branch_count() const noexcept { return seq_.size() / 2; }
  Endpoint const& operator[](std::size_t i) const { return seq_[i % seq_.size()]; }

  /// Branches (points) in sorted order.
  std::vector<PointId> branches() const;
  std::optional<std::size_t> position(Endpoint e) const;

  /// Empty when the antipodal invariant holds, else a description.
  std::optional<std::string> check() const;

  OrientedCyclicOrder reversed() const;
  /// Equality as cyclic sequences (any rotation).
  bool same_cycle(OrientedCyclicOrder const& other) const;
  /// Rotation starting at the smallest endpoint; a normal form for same_cycle.
  OrientedCyclicOrder normalized() const;

  friend bool operator==(OrientedCyclicOrder const&, OrientedCyclicOrder const&) = default;

 private:
  std::vector<Endpoint> seq_;
};

/// The order restricted to subset x {+1, -1}. Throws on an empty subset.
OrientedCyclicOrder induced_suborder(OrientedCyclicOrder const& order,
                                     std::span<PointId const> subset);

struct GaussDiagram {
  /// Each circle is a cyclic sequence of point ids in orientation order.
  /// Circles with no points are free loops.
  std::vector<std::vector<PointId>> circles;
  /// Singular-set label of each marked point.
  std::map<PointId, Label> labels;
  std::map<Label, OrientedCyclicOrder> orders;

  std::vector<PointId> points_of(Label label) const;
  std::size_t point_count() const noexcept { return labels.size(); }
  std::size_t free_loop_count() const noexcept;
  Label fresh_label() const noexcept;
  PointId fresh_point() const noexcept;
};

/// Position of a marked point on the circles.
struct Location {
  std::size_t circle;
  std::size_t index;
};

/// Point -> location lookup for one diagram.
class DiagramIndex {
 public:
  explicit DiagramIndex(GaussDiagram const& d);

  Location const& at(PointId p) const;
  PointId next(PointId p) const;
  PointId prev(PointId p) const;
  /// The neighbour of p on side `sign` (+1: following p, -1: preceding p).
  PointId neighbour(PointId p, int sign) const { return sign > 0 ? next(p) : prev(p); }
  std::size_t circle_size(PointId p) const;

 private:
  GaussDiagram const* d_;
  std::map<PointId, Location> where_;
};

/// Returns std::nullopt when valid, else the first violated invariant.
std::optional<std::string> validate(GaussDiagram const& d);
/// Throws std::invalid_argument with the validation message.
void require_valid(GaussDiagram const& d);

std::size_t crossing_count(GaussDiagram const& d);
bool is_doodle(GaussDiagram const& d);

/// Removes the singular sets and all their marked points.
GaussDiagram erase_sets(GaussDiagram const& d, std::span<Label const> sets);

/// Structural equality with the same point ids and labels, up to rotation of
/// each circle and reordering of circles.
bool identical(GaussDiagram const& a, GaussDiagram const& b);

struct CanonicalOptions {
  /// Keep circles in their stored order instead of minimizing over
  /// permutations of components.
  bool labeled_components = false;
};

/// Encoding invariant under relabeling of sets and points, rotation of each
/// circle and (unless labeled_components) permutation of circles.
std::string canonical_form(GaussDiagram const& d, CanonicalOptions opts = {});

/// The diagram rewritten in the arrangement chosen by canonical_form: points
/// are numbered 0.. along the canonical circle order and sets 0.. by first
/// appearance. Isomorphic diagrams yield identical results.
GaussDiagram canonical_diagram(GaussDiagram const& d, CanonicalOptions opts = {});

/// A renaming of marked points and singular sets.
struct Relabeling {
  std::map<PointId, PointId> points;
  std::map<Label, Label> labels;
};

/// The renaming that canonical_diagram applies to d.
Relabeling canonical_relabeling(GaussDiagram const& d, CanonicalOptions opts = {});
/// Applies r; points and sets missing from r keep their names.
GaussDiagram relabel(GaussDiagram const& d, Relabeling const& r);

/// Small named examples.
GaussDiagram embedded_circle();
/// One circle with points 0, 1 forming a double point with order
/// (0,-1)(1,-1)(0,+1)(1,+1).
GaussDiagram figure_eight();

}  // namespace cactus
