#include "actuation/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

namespace actuation {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw ConfigError(join(prefix, key), "unknown key");
}

const json& require_object(const json& v, const std::string& key) {
    if (!v.is_object()) throw ConfigError(key, "expected an object");
    return v;
}

void read_double(const json& obj, const char* name, double& out, const std::string& prefix) {
    if (!obj.contains(name)) return;
    const json& v = obj.at(name);
    if (!v.is_number()) throw ConfigError(join(prefix, name), "expected a number");
    out = v.get<double>();
}

void read_int(const json& obj, const char* name, int& out, const std::string& prefix) {
    if (!obj.contains(name)) return;
    const json& v = obj.at(name);
    if (!v.is_number_integer()) throw ConfigError(join(prefix, name), "expected an integer");
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError(join(prefix, name), "out of range");
    out = static_cast<int>(x);
}

void read_bool(const json& obj, const char* name, bool& out, const std::string& prefix) {
    if (!obj.contains(name)) return;
    const json& v = obj.at(name);
    if (!v.is_boolean()) throw ConfigError(join(prefix, name), "expected true or false");
    out = v.get<bool>();
}

void read_initial(const json& obj, const char* name, InitialDistribution& out, const std::string& prefix) {
    if (!obj.contains(name)) return;
    const std::string key = join(prefix, name);
    const json& v = require_object(obj.at(name), key);
    reject_unknown(v, {"mean", "sd"}, key);
    read_double(v, "mean", out.mean, key);
    read_double(v, "sd", out.sd, key);
}

// The same error under a different key path.
ConfigError rekey(const ConfigError& e, const std::string& key) {
    std::string message = e.what();
    if (!e.key().empty()) message = message.substr(e.key().size() + 2);
    return ConfigError(key, message);
}

// Re-throw validation errors with the key path relative to the document.
void validate_with_prefix(const ScenarioConfig& cfg, const std::string& prefix) {
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw rekey(e, join(prefix, e.key()));
    }
}

}  // namespace

ScenarioConfig parse_scenario(const json& doc, const std::string& prefix) {
    require_object(doc, prefix.empty() ? "<root>" : prefix);
    reject_unknown(doc,
                   {"model", "seed", "lexicon", "prior", "lambda", "n", "M", "T", "init_a", "init_b", "aProb",
                    "bProb", "w", "aWeight", "bWeight", "rho", "w_max", "stable"},
                   prefix);
    ScenarioConfig cfg;
    if (doc.contains("model")) {
        const json& m = doc.at("model");
        try {
            if (m.is_string()) cfg.model = model_kind_from_string(m.get<std::string>());
            else if (m.is_number_integer()) cfg.model = model_kind_from_index(m.get<int>());
            else throw ConfigError("model", "expected a model name or index");
        } catch (const ConfigError& e) {
            throw rekey(e, join(prefix, "model"));
        }
    }
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            throw ConfigError(join(prefix, "seed"), "expected a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("lexicon")) {
        const std::string key = join(prefix, "lexicon");
        const json& lex = require_object(doc.at("lexicon"), key);
        reject_unknown(lex, {"mu_a", "mu_i", "sigma_a", "sigma_i"}, key);
        read_double(lex, "mu_a", cfg.lex.mu_a, key);
        read_double(lex, "mu_i", cfg.lex.mu_i, key);
        read_double(lex, "sigma_a", cfg.lex.sigma_a, key);
        read_double(lex, "sigma_i", cfg.lex.sigma_i, key);
    }
    if (doc.contains("prior")) {
        const std::string key = join(prefix, "prior");
        const json& p = require_object(doc.at("prior"), key);
        reject_unknown(p, {"family", "a", "tau", "scale"}, key);
        if (p.contains("family")) {
            if (!p.at("family").is_string()) throw ConfigError(key + ".family", "expected a string");
            try {
                cfg.prior.family = prior_family_from_string(p.at("family").get<std::string>());
            } catch (const ConfigError& e) {
                throw rekey(e, key + ".family");
            }
        }
        read_double(p, "a", cfg.prior.a, key);
        read_double(p, "tau", cfg.prior.tau, key);
        read_double(p, "scale", cfg.prior.scale, key);
    }
    read_double(doc, "lambda", cfg.lambda, prefix);
    read_int(doc, "n", cfg.n, prefix);
    read_int(doc, "M", cfg.M, prefix);
    read_int(doc, "T", cfg.T, prefix);
    read_initial(doc, "init_a", cfg.init_a, prefix);
    read_initial(doc, "init_b", cfg.init_b, prefix);
    read_double(doc, "aProb", cfg.a_prob, prefix);
    read_double(doc, "bProb", cfg.b_prob, prefix);
    read_double(doc, "w", cfg.w, prefix);
    read_double(doc, "aWeight", cfg.a_weight, prefix);
    read_double(doc, "bWeight", cfg.b_weight, prefix);
    read_double(doc, "rho", cfg.rho, prefix);
    read_double(doc, "w_max", cfg.w_max, prefix);
    if (doc.contains("stable")) {
        const std::string key = join(prefix, "stable");
        const json& st = require_object(doc.at("stable"), key);
        reject_unknown(st, {"enabled", "window", "delta"}, key);
        read_bool(st, "enabled", cfg.stable.enabled, key);
        read_int(st, "window", cfg.stable.window, key);
        read_double(st, "delta", cfg.stable.delta, key);
    }
    validate_with_prefix(cfg, prefix);
    return cfg;
}

SweepSpec parse_sweep(const json& doc) {
    require_object(doc, "<root>");
    reject_unknown(doc, {"base", "axes", "T_max", "replicates", "window", "delta", "stop_when_stable"}, "");
    SweepSpec spec;
    if (doc.contains("base")) spec.base = parse_scenario(doc.at("base"), "base");
    if (!doc.contains("axes")) throw ConfigError("axes", "missing");
    const json& axes = doc.at("axes");
    if (!axes.is_array()) throw ConfigError("axes", "expected an array");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const std::string key = "axes[" + std::to_string(i) + "]";
        const json& ax = require_object(axes[i], key);
        reject_unknown(ax, {"name", "values"}, key);
        SweepAxis axis;
        if (!ax.contains("name") || !ax.at("name").is_string()) throw ConfigError(key + ".name", "expected a string");
        axis.name = ax.at("name").get<std::string>();
        if (!ax.contains("values") || !ax.at("values").is_array())
            throw ConfigError(key + ".values", "expected an array of numbers");
        for (std::size_t j = 0; j < ax.at("values").size(); ++j) {
            const json& v = ax.at("values")[j];
            if (!v.is_number()) throw ConfigError(key + ".values[" + std::to_string(j) + "]", "expected a number");
            axis.values.push_back(v.get<double>());
        }
        spec.axes.push_back(std::move(axis));
    }
    read_int(doc, "T_max", spec.T_max, "");
    read_int(doc, "replicates", spec.replicates, "");
    read_int(doc, "window", spec.window, "");
    read_double(doc, "delta", spec.delta, "");
    read_bool(doc, "stop_when_stable", spec.stop_when_stable, "");
    spec.validate();
    return spec;
}

ParsedConfig parse_config_json(const json& doc) {
    if (doc.is_object() && (doc.contains("axes") || doc.contains("base"))) return parse_sweep(doc);
    return parse_scenario(doc);
}

ParsedConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("", "malformed config '" + path.string() + "': " + e.what());
    }
    return parse_config_json(doc);
}

json to_json(const ScenarioConfig& c) {
    return json{
        {"model", std::string(to_string(c.model))},
        {"seed", c.seed},
        {"lexicon", {{"mu_a", c.lex.mu_a}, {"mu_i", c.lex.mu_i}, {"sigma_a", c.lex.sigma_a}, {"sigma_i", c.lex.sigma_i}}},
        {"prior",
         {{"family", std::string(to_string(c.prior.family))},
          {"a", c.prior.a},
          {"tau", c.prior.tau},
          {"scale", c.prior.scale}}},
        {"lambda", c.lambda},
        {"n", c.n},
        {"M", c.M},
        {"T", c.T},
        {"init_a", {{"mean", c.init_a.mean}, {"sd", c.init_a.sd}}},
        {"init_b", {{"mean", c.init_b.mean}, {"sd", c.init_b.sd}}},
        {"aProb", c.a_prob},
        {"bProb", c.b_prob},
        {"w", c.w},
        {"aWeight", c.a_weight},
        {"bWeight", c.b_weight},
        {"rho", c.rho},
        {"w_max", c.w_max},
        {"stable", {{"enabled", c.stable.enabled}, {"window", c.stable.window}, {"delta", c.stable.delta}}},
    };
}

json to_json(const SweepSpec& s) {
    json axes = json::array();
    for (const SweepAxis& a : s.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
    return json{{"base", to_json(s.base)},
                {"axes", axes},
                {"T_max", s.T_max},
                {"replicates", s.replicates},
                {"window", s.window},
                {"delta", s.delta},
                {"stop_when_stable", s.stop_when_stable}};
}

}  // namespace actuation
