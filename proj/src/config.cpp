// SPDX-License-Identifier: Apache-2.0
#include "airybeam/config.hpp"
#include "airybeam/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace airybeam
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        std::string where(int line) { return "line " + std::to_string(line) + ": "; }

        double parse_double(const std::string &text, const std::string &key, int line)
        {
            double value = 0.0;
            const char *begin = text.data();
            const char *end = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc() || ptr != end || !std::isfinite(value))
                throw ConfigError(where(line) + "key '" + key + "' expects a number, got '" + text + "'");
            return value;
        }

        long long parse_integer(const std::string &text, const std::string &key, int line)
        {
            long long value = 0;
            const char *begin = text.data();
            const char *end = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc() || ptr != end)
                throw ConfigError(where(line) + "key '" + key + "' expects an integer, got '" + text + "'");
            return value;
        }

        double unit_scale(const std::string &unit, double wavelength, int line)
        {
            if (unit == "lambda")
                return wavelength;
            if (unit == "m")
                return 1.0;
            throw ConfigError(where(line) + "unit must be 'lambda' or 'm', got '" + unit + "'");
        }

        // Keyed view of one section with fail-fast unknown-key detection
        class SectionReader
        {
        public:
            SectionReader(const TextSection &section, std::set<std::string> allowed)
                : section_(section)
            {
                for (const auto &[key, value] : section.entries)
                {
                    if (!allowed.contains(key))
                        throw ConfigError(where(section.line) + "unknown key '" + key + "' in [" + section.name + "]");
                    if (values_.contains(key))
                        throw ConfigError(where(section.line) + "duplicate key '" + key + "' in [" + section.name + "]");
                    values_[key] = value;
                }
            }

            bool has(const std::string &key) const { return values_.contains(key); }

            const std::string &get(const std::string &key) const
            {
                auto it = values_.find(key);
                if (it == values_.end())
                    throw ConfigError(where(section_.line) + "missing key '" + key + "' in [" + section_.name + "]");
                return it->second;
            }

            double number(const std::string &key) const { return parse_double(get(key), key, section_.line); }
            long long integer(const std::string &key) const { return parse_integer(get(key), key, section_.line); }
            std::string text(const std::string &key, std::string fallback) const { return has(key) ? get(key) : fallback; }

        private:
            const TextSection &section_;
            std::map<std::string, std::string> values_;
        };

        struct RawUser
        {
            std::map<std::string, std::string> values;
            int line = 0;
        };

        std::vector<RawUser> split_users(const TextSection &section)
        {
            static const std::set<std::string> allowed{"x", "z", "unit", "label"};
            std::vector<RawUser> users;
            for (const auto &[key, value] : section.entries)
            {
                if (!allowed.contains(key))
                    throw ConfigError(where(section.line) + "unknown key '" + key + "' in [users]");
                if (users.empty() || users.back().values.contains(key))
                    users.push_back({{}, section.line});
                users.back().values[key] = value;
            }
            return users;
        }

        const std::array<std::string_view, 6> kSections{"carrier", "array", "users", "obstacle", "link", "grid"};
    }

    TextSection &TextSection::set(std::string key, std::string value)
    {
        entries.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    TextSection &TextSection::set(std::string key, double value)
    {
        return set(std::move(key), format_number(value));
    }

    TextSection &TextSection::set(std::string key, long long value)
    {
        return set(std::move(key), std::to_string(value));
    }

    TextSection &TextDocument::add(std::string name)
    {
        sections.push_back({std::move(name), {}, 0});
        return sections.back();
    }

    std::string TextDocument::str() const
    {
        std::ostringstream out;
        bool first = true;
        for (const auto &section : sections)
        {
            if (!first)
                out << '\n';
            first = false;
            out << '[' << section.name << "]\n";
            for (const auto &[key, value] : section.entries)
                out << key << " = " << value << '\n';
        }
        return out.str();
    }

    void TextDocument::write(const std::filesystem::path &path) const
    {
        std::ofstream file(path, std::ios::binary);
        if (!file)
            throw ConfigError("cannot open '" + path.string() + "' for writing");
        file << str();
    }

    TextDocument TextDocument::parse(std::string_view text)
    {
        TextDocument doc;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const auto eol = text.find('\n', pos);
            std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            ++line_no;

            if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            if (line.front() == '[')
            {
                if (line.back() != ']')
                    throw ConfigError(where(line_no) + "malformed section header");
                doc.sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), {}, line_no});
                continue;
            }

            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(where(line_no) + "expected 'key = value'");
            if (doc.sections.empty())
                throw ConfigError(where(line_no) + "key outside of any section");
            auto key = trim(line.substr(0, eq));
            auto value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError(where(line_no) + "empty key");
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
                value = value.substr(1, value.size() - 2);
            doc.sections.back().set(std::string(key), std::string(value));
        }
        return doc;
    }

    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        std::array<char, 64> buffer{};
        auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
        if (ec != std::errc())
            throw NumericalError("number formatting failed");
        return std::string(buffer.data(), ptr);
    }

    ScenarioConfig parse_config(std::string_view text)
    {
        const TextDocument doc = TextDocument::parse(text);

        std::map<std::string, const TextSection *> single;
        std::vector<const TextSection *> user_sections;
        for (const auto &section : doc.sections)
        {
            if (std::find(kSections.begin(), kSections.end(), section.name) == kSections.end())
                throw ConfigError(where(section.line) + "unknown section [" + section.name + "]");
            if (section.name == "users")
                user_sections.push_back(&section);
            else if (!single.emplace(section.name, &section).second)
                throw ConfigError(where(section.line) + "section [" + section.name + "] given twice");
        }
        for (const char *required : {"carrier", "array", "link", "grid"})
            if (!single.contains(required))
                throw ConfigError(std::string("missing section [") + required + "]");
        if (user_sections.empty())
            throw ConfigError("missing section [users]");

        const SectionReader carrier_section(*single.at("carrier"), {"frequency_ghz"});
        const Carrier carrier(carrier_section.number("frequency_ghz") * 1e9);
        const double lambda = carrier.wavelength();

        const SectionReader array_section(*single.at("array"), {"n", "spacing_lambda"});
        const long long n = array_section.integer("n");
        if (n < 1)
            throw ConfigError("[array] n must be at least 1");
        const ArrayGeometry array(static_cast<std::size_t>(n), array_section.number("spacing_lambda") * lambda);

        const SectionReader grid_section(*single.at("grid"), {"nx", "window_lambda", "apodization_width_lambda"});
        const long long nx = grid_section.integer("nx");
        if (nx < 2)
            throw ConfigError("[grid] nx must be at least 2");
        const GridSpec grid(static_cast<std::size_t>(nx), grid_section.number("window_lambda") * lambda,
                            grid_section.number("apodization_width_lambda") * lambda);

        ScenarioConfig scenario{carrier, array, {}, std::nullopt, 1e-3, 1.0, 1e-10, grid};

        const SectionReader link(*single.at("link"), {"noise_power", "tx_power", "rzf_epsilon"});
        scenario.noise_power = link.number("noise_power");
        scenario.tx_power = link.number("tx_power");
        scenario.rzf_epsilon = link.has("rzf_epsilon") ? link.number("rzf_epsilon") : 1e-10;

        for (const TextSection *section : user_sections)
        {
            for (const RawUser &raw : split_users(*section))
            {
                auto field = [&](const std::string &key) -> const std::string & {
                    auto it = raw.values.find(key);
                    if (it == raw.values.end())
                        throw ConfigError(where(raw.line) + "user " + std::to_string(scenario.users.size() + 1) +
                                          " is missing key '" + key + "'");
                    return it->second;
                };
                const double scale = unit_scale(raw.values.contains("unit") ? raw.values.at("unit") : "m", lambda, raw.line);
                UserPosition user;
                user.x = parse_double(field("x"), "x", raw.line) * scale;
                user.z = parse_double(field("z"), "z", raw.line) * scale;
                user.label = raw.values.contains("label") ? raw.values.at("label")
                                                          : "UE-" + std::to_string(scenario.users.size() + 1);
                scenario.users.push_back(user);
            }
        }

        if (auto it = single.find("obstacle"); it != single.end())
        {
            const SectionReader obstacle(*it->second, {"z", "edge_x", "blocked_side", "unit"});
            const double scale = unit_scale(obstacle.text("unit", "m"), lambda, it->second->line);
            KnifeEdgeObstacle edge;
            edge.depth = obstacle.number("z") * scale;
            edge.edge_x = obstacle.number("edge_x") * scale;
            const std::string side = obstacle.text("blocked_side", "below_edge");
            if (side == "below_edge")
                edge.blocked_side = BlockedSide::below_edge;
            else if (side == "above_edge")
                edge.blocked_side = BlockedSide::above_edge;
            else
                throw ConfigError("[obstacle] blocked_side must be below_edge or above_edge, got '" + side + "'");
            scenario.obstacle = edge;
        }

        scenario.validate();
        return scenario;
    }

    ScenarioConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream file(path, std::ios::binary);
        if (!file)
            throw ConfigError("cannot open config '" + path.string() + "'");
        std::ostringstream buffer;
        buffer << file.rdbuf();
        try
        {
            return parse_config(buffer.str());
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(path.string() + ": " + e.what());
        }
    }

    TextDocument to_document(const ScenarioConfig &scenario)
    {
        const double lambda = scenario.carrier.wavelength();
        TextDocument doc;
        doc.add("carrier").set("frequency_ghz", scenario.carrier.frequency() / 1e9);
        doc.add("array")
            .set("n", scenario.array.num_elements())
            .set("spacing_lambda", scenario.array.spacing() / lambda);
        auto &users = doc.add("users");
        for (const auto &user : scenario.users)
            users.set("x", user.x).set("z", user.z).set("unit", "m").set("label", user.label.c_str());
        if (scenario.obstacle)
        {
            doc.add("obstacle")
                .set("z", scenario.obstacle->depth)
                .set("edge_x", scenario.obstacle->edge_x)
                .set("blocked_side", to_string(scenario.obstacle->blocked_side))
                .set("unit", "m");
        }
        doc.add("link")
            .set("noise_power", scenario.noise_power)
            .set("tx_power", scenario.tx_power)
            .set("rzf_epsilon", scenario.rzf_epsilon);
        doc.add("grid")
            .set("nx", scenario.grid.num_samples())
            .set("window_lambda", scenario.grid.window_width() / lambda)
            .set("apodization_width_lambda", scenario.grid.apodization_width() / lambda);
        return doc;
    }

    std::string to_config_text(const ScenarioConfig &scenario)
    {
        return to_document(scenario).str();
    }
}
