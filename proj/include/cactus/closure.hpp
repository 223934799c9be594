#pragma once

#include "cactus/cactus_group.hpp"
#include "cactus/gauss_diagram.hpp"

namespace cactus {

/// Closes a planar cactus braid into a Gauss diagram.
///
/// Strands run top to bottom at positions 1..n. Letter i (0-based) becomes
/// singular set i; the strand at position p + j leaves it at position q - j.
/// Its order lists the top endpoints right to left as initial endpoints and
/// then the bottom endpoints left to right as final endpoints. Bottom
/// position j is joined to top position j, so circles follow the cycles of
/// perm_image(w). Point ids are assigned in event order.
GaussDiagram close(CactusWord const& w);

/// Number of circles of close(w) equals the number of cycles of perm_image(w).
bool component_count_check(CactusWord const& w);

}  // namespace cactus
