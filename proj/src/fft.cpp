// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace airybeam::detail
{
    namespace
    {
        struct PlanPair
        {
            fftw_plan forward = nullptr;
            fftw_plan backward = nullptr;
        };

        class PlanCache
        {
        public:
            ~PlanCache()
            {
                for (auto &[size, plans] : plans_)
                {
                    fftw_destroy_plan(plans.forward);
                    fftw_destroy_plan(plans.backward);
                }
            }

            PlanPair get(std::size_t size)
            {
                std::lock_guard lock(mutex_);
                auto it = plans_.find(size);
                if (it != plans_.end())
                    return it->second;

                // FFTW_ESTIMATE leaves the scratch buffers untouched and keeps plans reproducible
                std::vector<cplx> scratch(size);
                auto *buffer = reinterpret_cast<fftw_complex *>(scratch.data());
                const int n = static_cast<int>(size);
                const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
                PlanPair plans{fftw_plan_dft_1d(n, buffer, buffer, FFTW_FORWARD, flags),
                               fftw_plan_dft_1d(n, buffer, buffer, FFTW_BACKWARD, flags)};
                plans_.emplace(size, plans);
                return plans;
            }

        private:
            std::mutex mutex_;
            std::map<std::size_t, PlanPair> plans_;
        };

        PlanCache &cache()
        {
            static PlanCache instance;
            return instance;
        }

        void execute(fftw_plan plan, std::vector<cplx> &data)
        {
            auto *buffer = reinterpret_cast<fftw_complex *>(data.data());
            fftw_execute_dft(plan, buffer, buffer);
        }
    }

    void fft_forward(std::vector<cplx> &data)
    {
        execute(cache().get(data.size()).forward, data);
    }

    void fft_inverse(std::vector<cplx> &data)
    {
        execute(cache().get(data.size()).backward, data);
        const double scale = 1.0 / static_cast<double>(data.size());
        for (auto &value : data)
            value *= scale;
    }

    double fft_frequency(std::size_t index, std::size_t size, double spacing) noexcept
    {
        const auto i = static_cast<long>(index);
        const auto n = static_cast<long>(size);
        const long k = i < (n + 1) / 2 ? i : i - n;
        return static_cast<double>(k) / (static_cast<double>(n) * spacing);
    }
}
