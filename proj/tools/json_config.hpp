#pragma once

// JSON reader for CLI11 config files. Nested objects map to subcommands, so
// {"run": {"algo": "de", "dims": [2, 10]}} is equivalent to
// `run --algo de --dims 2,10`.

#include <CLI11.hpp>
#include <json.hpp>

#include <istream>
#include <string>
#include <vector>

namespace icsi::cli {

class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App *app, bool default_also, bool,
                          std::string) const override {
        return to_json(app, default_also).dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception &e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object())
            throw CLI::ConversionError("config file must hold a JSON object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const nlohmann::json &v) {
        if (v.is_string())
            return v.get<std::string>();
        return v.dump();
    }

    static void collect(const nlohmann::json &j, const std::vector<std::string> &parents,
                        std::vector<CLI::ConfigItem> &items) {
        for (const auto &[key, value] : j.items()) {
            if (value.is_object()) {
                auto next = parents;
                next.push_back(key);
                collect(value, next, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto &e : value)
                    item.inputs.push_back(scalar(e));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }

    static nlohmann::json to_json(const CLI::App *app, bool default_also) {
        nlohmann::json j = nlohmann::json::object();
        for (const CLI::Option *opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable())
                continue;
            const std::string name = opt->get_lnames().front();
            if (opt->count() > 0) {
                const auto &res = opt->results();
                if (res.size() == 1)
                    j[name] = res.front();
                else
                    j[name] = res;
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        for (const CLI::App *sub : app->get_subcommands({}))
            if (!sub->get_name().empty()) {
                auto nested = to_json(sub, default_also);
                if (!nested.empty())
                    j[sub->get_name()] = nested;
            }
        return j;
    }
};

}  // namespace icsi::cli
