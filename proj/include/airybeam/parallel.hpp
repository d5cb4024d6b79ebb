// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace airybeam
{
    // Hardware concurrency, at least 1
    std::size_t default_workers() noexcept;

    // Runs task(i) for i in [0, count) on up to `workers` threads. Tasks write to disjoint, index-addressed
    // slots, so results do not depend on scheduling. The first exception (lowest index) is rethrown.
    void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)> &task);
}
