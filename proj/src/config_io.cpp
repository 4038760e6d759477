// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orthoreflect/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace orthoreflect {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
    throw Error(ErrorCode::ConfigError, "config." + field + ": " + what);
}

double number(const json& j, const std::string& field)
{
    if (!j.is_number()) {
        fail(field, "expected a number");
    }
    return j.get<double>();
}

template <std::size_t N>
std::array<double, N> number_array(const json& obj, const std::string& field)
{
    if (!obj.contains(field)) {
        fail(field, "missing required field");
    }
    const json& j = obj.at(field);
    if (!j.is_array() || j.size() != N) {
        fail(field, "expected an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = number(j[i], field + "[" + std::to_string(i) + "]");
    }
    return out;
}

std::uint64_t unsigned_int(const json& j, const std::string& field)
{
    if (!j.is_number_unsigned()) {
        fail(field, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

}  // namespace

ScenarioConfig config_from_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, std::string("config: invalid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("config") && doc.at("config").is_object()) {
        doc = doc.at("config");
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::ConfigError, "config: top level must be a JSON object");
    }

    static const std::set<std::string> known{"x0",      "c",        "lambda",
                                             "claim_rate", "alpha", "horizon",
                                             "n_trials", "seed",     "grid_points"};
    for (const auto& item : doc.items()) {
        if (!known.contains(item.key())) {
            fail(item.key(), "unknown field");
        }
    }

    ScenarioConfig cfg;
    cfg.x0 = number_array<2>(doc, "x0");
    cfg.c = number_array<2>(doc, "c");
    cfg.lambda = number_array<3>(doc, "lambda");
    cfg.claim_rate = number_array<2>(doc, "claim_rate");
    for (const char* field : {"alpha", "horizon", "n_trials"}) {
        if (!doc.contains(field)) {
            fail(field, "missing required field");
        }
    }
    cfg.alpha = number(doc.at("alpha"), "alpha");
    cfg.horizon = number(doc.at("horizon"), "horizon");
    cfg.n_trials = unsigned_int(doc.at("n_trials"), "n_trials");
    if (doc.contains("seed")) {
        cfg.seed = unsigned_int(doc.at("seed"), "seed");
    }
    if (doc.contains("grid_points")) {
        cfg.grid_points = static_cast<std::size_t>(unsigned_int(doc.at("grid_points"), "grid_points"));
    }
    validate_config(cfg);
    return cfg;
}

std::string config_to_json(const ScenarioConfig& cfg)
{
    json j;
    j["x0"] = cfg.x0;
    j["c"] = cfg.c;
    j["lambda"] = cfg.lambda;
    j["claim_rate"] = cfg.claim_rate;
    j["alpha"] = cfg.alpha;
    j["horizon"] = cfg.horizon;
    j["n_trials"] = cfg.n_trials;
    j["seed"] = cfg.seed;
    j["grid_points"] = cfg.grid_points;
    return j.dump(2);
}

ScenarioConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

}  // namespace orthoreflect
