#pragma once

// JSON documents for operators and frames.
//
//   operator: {"n": 3, "terms": [{"re": 1.0, "im": 0.0,
//                                 "creators": [1], "annihilators": [2]}]}
//   frame:    {"n": 3, "S": 2, "alpha": [[{"re": .., "im": ..}, ...], ...]}
//
// Each operator term is read as the normal-ordered product
// (prod creators^dagger)(prod annihilators).

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cohstate/algebra.hpp"
#include "cohstate/coherent.hpp"

namespace cohstate {

/// Malformed input; the message names the offending field.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Normal orders p first, so every term fits the schema.
nlohmann::json operator_to_json(const OperatorPoly& p);
OperatorPoly operator_from_json(const nlohmann::json& doc);

nlohmann::json frame_to_json(const CoherentFrame& frame);
/// Parses and validates; orthonormality failures surface as FrameError.
CoherentFrame frame_from_json(const nlohmann::json& doc);

/// Parses an integer array such as "[1,2]".
Occupancy occupancy_from_string(const std::string& text, const std::string& field = "occupancy");

}  // namespace cohstate
