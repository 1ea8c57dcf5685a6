#pragma once

#include "ipcmu/formula.hpp"

#include <json.hpp>

namespace ipcmu {

/// Serializes a formula as a tagged tree:
///   {"kind":"var","name":...} | {"kind":"top"} | {"kind":"bot"}
///   {"kind":"and"|"or"|"imp","left":...,"right":...}
///   {"kind":"mu"|"nu","var":...,"body":...}
/// For "imp", "left" is the antecedent.
nlohmann::json to_json(const Formula& f);

/// Inverse of to_json; throws std::invalid_argument on malformed input.
Formula from_json(const nlohmann::json& j);

}  // namespace ipcmu
