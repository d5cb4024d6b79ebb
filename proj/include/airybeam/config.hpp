// SPDX-License-Identifier: Apache-2.0
//
// Flat sections-and-keys text format shared by scenario configs and output sidecars:
//
//   # comment
//   [carrier]
//   frequency_ghz = 28
//   [users]
//   x = -5
//   z = 250
//   unit = lambda
//   x = 3.5          # a repeated key starts the next user
//   z = 300
//   unit = lambda
//
// Lengths are meters unless the section carries unit = lambda.
#pragma once

#include "airybeam/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace airybeam
{
    struct TextSection
    {
        std::string name;
        std::vector<std::pair<std::string, std::string>> entries;
        int line = 0;

        TextSection &set(std::string key, std::string value);
        TextSection &set(std::string key, double value);
        TextSection &set(std::string key, long long value);
        TextSection &set(std::string key, std::size_t value) { return set(std::move(key), static_cast<long long>(value)); }
        TextSection &set(std::string key, int value) { return set(std::move(key), static_cast<long long>(value)); }
        TextSection &set(std::string key, bool value) { return set(std::move(key), std::string(value ? "true" : "false")); }
        TextSection &set(std::string key, const char *value) { return set(std::move(key), std::string(value)); }
    };

    struct TextDocument
    {
        std::vector<TextSection> sections;

        TextSection &add(std::string name);
        std::string str() const;
        void write(const std::filesystem::path &path) const;

        static TextDocument parse(std::string_view text);
    };

    // Round-trip exact, locale independent
    std::string format_number(double value);

    ScenarioConfig parse_config(std::string_view text);
    ScenarioConfig load_config(const std::filesystem::path &path);

    // Canonical serialization (user and obstacle lengths in meters)
    std::string to_config_text(const ScenarioConfig &scenario);
    TextDocument to_document(const ScenarioConfig &scenario);
}
