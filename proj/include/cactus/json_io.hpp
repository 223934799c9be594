#pragma once

// JSON interchange for diagrams, moves and move sequences.
//
// Diagram: {"circles": [[id, ...], ...],
//           "sets": {"label": {"points": [id, ...], "order": [[id, sign], ...]}}}
// Ids may be integers or strings; string ids are mapped to fresh integers.
// Circles and orders may start at any rotation.

#include <string>

#include <json.hpp>

#include "cactus/equivalence.hpp"
#include "cactus/gauss_diagram.hpp"
#include "cactus/moves.hpp"

namespace cactus {

using Json = nlohmann::json;

/// Raised for structurally malformed input (the diagram itself may still be
/// invalid; call validate on the result).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(GaussDiagram const& d);
GaussDiagram diagram_from_json(Json const& j);
GaussDiagram parse_diagram(std::string const& text);

Json to_json(OrientedCyclicOrder const& o);
Json to_json(MoveDescriptor const& m);
MoveDescriptor move_from_json(Json const& j);

Json to_json(MoveSequence const& seq);
MoveSequence sequence_from_json(Json const& j);

}  // namespace cactus
