// SPDX-License-Identifier: Apache-2.0
// Built-in scenarios at 28 GHz with the 64-element, 0.49 lambda array
#pragma once

#include "airybeam/scenario.hpp"

#include <string>

namespace airybeam::presets
{
    // UE-1 (-5, 250) lambda, UE-2 (+10, 300) lambda, free space
    ScenarioConfig baseline();

    // UE-1 (-5, 250), UE-2 (-11, 300), knife edge at z = 150 lambda blocking x <= 0
    ScenarioConfig shadow();

    // UE-1 (-5, 250) shadowed, UE-2 (+3.5, 300) bright, same edge
    ScenarioConfig mixed();

    // "baseline", "shadow" or "mixed"
    ScenarioConfig by_name(const std::string &name);
}
