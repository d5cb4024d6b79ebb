// SPDX-License-Identifier: Apache-2.0
// Umbrella header
#pragma once

#include "airybeam/beams.hpp"
#include "airybeam/channels.hpp"
#include "airybeam/config.hpp"
#include "airybeam/errors.hpp"
#include "airybeam/experiments.hpp"
#include "airybeam/geometry.hpp"
#include "airybeam/grid.hpp"
#include "airybeam/io.hpp"
#include "airybeam/optimizer.hpp"
#include "airybeam/parallel.hpp"
#include "airybeam/precoding.hpp"
#include "airybeam/presets.hpp"
#include "airybeam/propagation.hpp"
#include "airybeam/scenario.hpp"
#include "airybeam/validation.hpp"
