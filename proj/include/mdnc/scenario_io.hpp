// SPDX-License-Identifier: Apache-2.0
//
// Scenario files are `key = value` lines. Values are JSON literals (numbers,
// booleans, nested arrays for matrices) and may span several lines while
// brackets are open. `#` starts a comment.
//
// Slot duration: either `T` directly or `codeword_bits` (default 125000), in
// which case T = codeword_bits / alpha0.
#pragma once

#include "mdnc/model.hpp"

#include <string>

namespace mdnc {

/// Throws std::invalid_argument on syntax errors, unknown keys, missing keys
/// or shape mismatches. Does not run validate_scenario.
ScenarioConfig parse_scenario(const std::string& text);

ScenarioConfig load_scenario(const std::string& path);

}  // namespace mdnc
