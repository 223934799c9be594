#pragma once

// Schematic drawings of Gauss diagrams: circles with their marked points,
// each singular set drawn as a star joining its points, orders as captions.

#include <string>

#include "cactus/gauss_diagram.hpp"

namespace cactus {

std::string to_dot(GaussDiagram const& d);
std::string to_svg(GaussDiagram const& d);

/// "(3,-)(5,-)(3,+)(5,+)"
std::string format_order(OrientedCyclicOrder const& o);

}  // namespace cactus
