// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace airybeam
{
    // Invalid or inconsistent scenario description (bad keys, out-of-window users, ...)
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A caller passed an argument outside the operation's domain
    class ArgumentError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Channel model used outside its validity, e.g. free-space Green's function with an obstacle
    class ModelMismatchError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    // Mask applied to a field that was not propagated to the obstacle plane
    class DepthMismatchError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Unregularized zero-forcing on a numerically rank-deficient effective channel
    class SingularChannelError : public NumericalError
    {
    public:
        SingularChannelError(const std::string &what, double sigma_min)
            : NumericalError(what), sigma_min_(sigma_min) {}
        double sigma_min() const noexcept { return sigma_min_; }

    private:
        double sigma_min_;
    };

    // A search candidate produced a non-finite objective
    class CandidateError : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    // No candidate of the Airy parameter search met the service constraint
    class InfeasibleSearchError : public std::runtime_error
    {
    public:
        InfeasibleSearchError(const std::string &what, double max_h11_power, double threshold)
            : std::runtime_error(what), max_h11_power_(max_h11_power), threshold_(threshold) {}
        double max_h11_power() const noexcept { return max_h11_power_; }
        double threshold() const noexcept { return threshold_; }

    private:
        double max_h11_power_;
        double threshold_;
    };
}
