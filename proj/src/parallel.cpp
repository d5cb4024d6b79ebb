// SPDX-License-Identifier: Apache-2.0
#include "airybeam/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace airybeam
{
    std::size_t default_workers() noexcept
    {
        const unsigned n = std::thread::hardware_concurrency();
        return n == 0 ? 1 : n;
    }

    void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)> &task)
    {
        if (count == 0)
            return;
        if (workers == 0)
            workers = default_workers();
        workers = std::min(workers, count);

        std::vector<std::exception_ptr> errors(count);
        if (workers == 1)
        {
            for (std::size_t i = 0; i < count; ++i)
            {
                try
                {
                    task(i);
                }
                catch (...)
                {
                    errors[i] = std::current_exception();
                    break;
                }
            }
        }
        else
        {
            std::atomic<std::size_t> next{0};
            std::atomic<bool> failed{false};
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w)
            {
                pool.emplace_back([&] {
                    for (;;)
                    {
                        const std::size_t i = next.fetch_add(1);
                        if (i >= count || failed.load())
                            return;
                        try
                        {
                            task(i);
                        }
                        catch (...)
                        {
                            errors[i] = std::current_exception();
                            failed.store(true);
                        }
                    }
                });
            }
        }

        for (const auto &error : errors)
            if (error)
                std::rethrow_exception(error);
    }
}
