#pragma once

// The elementary moves on Gauss diagrams.
//
// Phi_n annihilates (or creates) two singular sets A, B of size n whose
// points are paired along n empty arcs. The rays at A that point towards B
// are n consecutive endpoints of order(A), and order(B) is the reverse of
// order(A) carried over by (a, e) -> (pairing(a), e).
//
// Psi_{k,n} passes a k-point S through an adjacent n-point B (1 < k < n).
// Each point of S sits next to a distinct point of B; the k endpoints of B
// facing S are consecutive in order(B), and order(S) is the reverse of the
// order induced by B on those branches, carried over to S. The move puts each
// small point on the other side of its big point, reverses order(S) and
// reverses order(B) on the attached branches.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cactus/gauss_diagram.hpp"

namespace cactus {

enum class PhiDirection { annihilate, create };

/// New points to splice into a circle right after `after` (or into an empty
/// circle when `after` is empty), in orientation order.
struct Insertion {
  std::size_t circle = 0;
  std::optional<PointId> after;
  std::vector<PointId> points;

  friend bool operator==(Insertion const&, Insertion const&) = default;
};

struct PhiDescriptor {
  Label set_a = 0;
  Label set_b = 0;
  /// (point of A, point of B) on the same empty arc, sorted by the A point.
  std::vector<std::pair<PointId, PointId>> pairing;
  PhiDirection direction = PhiDirection::annihilate;
  // Placement data, used only by creation.
  std::vector<Insertion> insertions;
  OrientedCyclicOrder order_a;
  OrientedCyclicOrder order_b;

  friend bool operator==(PhiDescriptor const&, PhiDescriptor const&) = default;
};

/// The small point sits next to `big` on side `side` of it (+1 after, -1 before).
struct Attachment {
  PointId small;
  PointId big;
  int side;

  friend bool operator==(Attachment const&, Attachment const&) = default;
  friend auto operator<=>(Attachment const&, Attachment const&) = default;
};

struct PsiDescriptor {
  Label big = 0;
  Label small = 0;
  /// Sorted by small point.
  std::vector<Attachment> attachment;

  friend bool operator==(PsiDescriptor const&, PsiDescriptor const&) = default;
};

/// Renames one singular set and its points; the diagram is unchanged up to
/// isomorphism.
struct RenameDescriptor {
  Label from = 0;
  Label to = 0;
  std::vector<std::pair<PointId, PointId>> points;

  friend bool operator==(RenameDescriptor const&, RenameDescriptor const&) = default;
};

using MoveDescriptor = std::variant<PhiDescriptor, PsiDescriptor, RenameDescriptor>;

/// Reverses every maximal run of consecutive endpoints whose branch lies in
/// `subset`. With subset = all branches the whole order is reversed.
OrientedCyclicOrder reverse_subset_order(OrientedCyclicOrder const& order,
                                         std::span<PointId const> subset);

/// All annihilations in a deterministic order. A descriptor is identified by
/// (set_a, set_b, pairing) with set_a < set_b.
std::vector<PhiDescriptor> enumerate_phi_annihilations(GaussDiagram const& d);
std::vector<PhiDescriptor> phi_annihilations_between(GaussDiagram const& d, Label a,
                                                     Label b);

/// Throws std::invalid_argument when the descriptor does not apply.
GaussDiagram apply_phi(GaussDiagram const& d, PhiDescriptor const& m);

/// The creation that undoes `annihilation` applied to `with_pair`.
PhiDescriptor inverse_creation(GaussDiagram const& with_pair,
                               PhiDescriptor const& annihilation);

std::vector<PsiDescriptor> enumerate_psi_moves(GaussDiagram const& d);

/// Throws std::invalid_argument when the descriptor does not apply.
GaussDiagram apply_psi(GaussDiagram const& d, PsiDescriptor const& m);

/// The descriptor that undoes `m` on apply_psi(d, m).
PsiDescriptor mirror(PsiDescriptor const& m);

bool psi_applies(GaussDiagram const& d, PsiDescriptor const& m);
bool phi_annihilation_applies(GaussDiagram const& d, PhiDescriptor const& m);

GaussDiagram apply_rename(GaussDiagram const& d, RenameDescriptor const& m);
GaussDiagram apply_move(GaussDiagram const& d, MoveDescriptor const& m);

std::string describe(MoveDescriptor const& m);

}  // namespace cactus
