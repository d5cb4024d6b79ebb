// SPDX-License-Identifier: Apache-2.0
#include "airybeam/presets.hpp"
#include "airybeam/errors.hpp"

namespace airybeam::presets
{
    namespace
    {
        ScenarioConfig make(double x2, bool blocked)
        {
            ScenarioConfig s;
            const Carrier &c = s.carrier;
            s.users = {{c.lambda(-5.0), c.lambda(250.0), "UE-1"}, {c.lambda(x2), c.lambda(300.0), "UE-2"}};
            if (blocked)
                s.obstacle = KnifeEdgeObstacle{c.lambda(150.0), 0.0, BlockedSide::below_edge};
            s.validate();
            return s;
        }
    }

    ScenarioConfig baseline() { return make(10.0, false); }
    ScenarioConfig shadow() { return make(-11.0, true); }
    ScenarioConfig mixed() { return make(3.5, true); }

    ScenarioConfig by_name(const std::string &name)
    {
        if (name == "baseline")
            return baseline();
        if (name == "shadow")
            return shadow();
        if (name == "mixed")
            return mixed();
        throw ConfigError("Unknown scenario '" + name + "' (expected baseline, shadow or mixed).");
    }
}
