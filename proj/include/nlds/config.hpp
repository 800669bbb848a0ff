#pragma once

#include <algorithm>
#include <map>

#include "nlds/experiment.hpp"

namespace nlds {

/// Key-value config with [section] headers, '#'/';' comments, and numeric
/// values written as arithmetic expressions ("tau0 = pi/4"). See the README
/// for the full schema.
class Config {
public:
    static Config parse(const std::string& text) {
        Config cfg;
        std::istringstream is(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find_first_of("#;");
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw io_error("config line " + std::to_string(lineno) + ": unterminated section");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw io_error("config line " + std::to_string(lineno) + ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            cfg.values_[section + "." + key] = value;
        }
        return cfg;
    }

    static Config parse_file(const std::filesystem::path& path) {
        std::ifstream is(path);
        if (!is) throw io_error("cannot open config: " + path.string());
        std::ostringstream buf;
        buf << is.rdbuf();
        return parse(buf.str());
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback = {}) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_number(const std::string& key) const {
        return eval_scalar(require(key), key);
    }
    double get_number(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : eval_scalar(it->second, key);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        const std::string& v = it->second;
        if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
        if (v == "off" || v == "false" || v == "0" || v == "no") return false;
        throw io_error("config: boolean expected for " + key + ", got '" + v + "'");
    }

    /// Whitespace/comma separated list of expressions.
    std::vector<double> get_list(const std::string& key) const {
        std::string text = require(key);
        std::replace(text.begin(), text.end(), ',', ' ');
        std::vector<double> out;
        std::string item;
        std::istringstream is(text);
        while (is >> item) out.push_back(eval_scalar(item, key));
        if (out.empty()) throw io_error("config: empty list for " + key);
        return out;
    }

private:
    std::map<std::string, std::string> values_;

    const std::string& require(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw io_error("config: missing key " + key);
        return it->second;
    }

    static double eval_scalar(const std::string& text, const std::string& key) {
        const Expression e = Expression::parse(text);
        if (e.references_var())
            throw io_error("config: value for " + key + " must not reference x");
        return e.eval(0.0);
    }

    static std::string trim(const std::string& s) {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) return {};
        const auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    }
};

/// Builds an ExperimentPlan from a config. Schema (defaults in parentheses):
///   [domain]    a (-32), b (32), M (1024)
///   [physics]   lambda1 (1), lambda2 (0),
///               eps_list = 1 0.5 ...  |  eps0 (1) + eps_count (halvings)
///               potential = zero | rational | <expression in x>   (zero)
///   [initial]   kind = gaussians | custom (gaussians);
///               amp1 center1 width1 amp2 center2 width2 for custom
///   [run]       scheme = S1|S2 (S2), T, tau_rule = list|resonant|non_resonant,
///               tau = <list>, tau0, ratio (4), count, delta (0.15)
///   [reference] tau_e, cache_dir
///   [metrics]   h1 (on), density (off), current (off), energy (off),
///               zero_nyquist (off)
inline ExperimentPlan plan_from_config(const Config& cfg) {
    ExperimentPlan plan;
    plan.a = cfg.get_number("domain.a", -32.0);
    plan.b = cfg.get_number("domain.b", 32.0);
    plan.m = static_cast<int>(cfg.get_number("domain.M", 1024.0));

    plan.lambda1 = cfg.get_number("physics.lambda1", 1.0);
    plan.lambda2 = cfg.get_number("physics.lambda2", 0.0);
    if (cfg.has("physics.eps_list")) {
        plan.eps_list = cfg.get_list("physics.eps_list");
    } else {
        const double eps0 = cfg.get_number("physics.eps0", 1.0);
        const int count = static_cast<int>(cfg.get_number("physics.eps_count", 1.0));
        double e = eps0;
        for (int k = 0; k < count; ++k, e *= 0.5) plan.eps_list.push_back(e);
    }
    const std::string pot = cfg.get_string("physics.potential", "zero");
    if (pot == "zero")
        plan.potential = PotentialSpec::zero();
    else if (pot == "rational")
        plan.potential = PotentialSpec::rational();
    else
        plan.potential = PotentialSpec::expr(pot);

    const std::string ic = cfg.get_string("initial.kind", "gaussians");
    if (ic == "gaussians") {
        plan.initial = InitialSpec::gaussians();
    } else if (ic == "custom") {
        plan.initial.kind = InitialSpec::Kind::custom_gaussians;
        plan.initial.comp1 = {cfg.get_number("initial.amp1", 1.0),
                              cfg.get_number("initial.center1", 0.0),
                              cfg.get_number("initial.width1", 1.0)};
        plan.initial.comp2 = {cfg.get_number("initial.amp2", 1.0),
                              cfg.get_number("initial.center2", 1.0),
                              cfg.get_number("initial.width2", 1.0)};
    } else {
        throw io_error("config: unknown initial kind '" + ic + "'");
    }

    const std::string scheme = cfg.get_string("run.scheme", "S2");
    if (scheme == "S1")
        plan.scheme = Scheme::S1;
    else if (scheme == "S2")
        plan.scheme = Scheme::S2;
    else
        throw io_error("config: unknown scheme '" + scheme + "'");
    plan.final_time = cfg.get_number("run.T");

    const std::string rule = cfg.get_string("run.tau_rule", "list");
    if (rule == "list") {
        plan.tau_rule.kind = TauRule::Kind::list;
        plan.tau_rule.taus = cfg.get_list("run.tau");
    } else {
        plan.tau_rule.kind =
            rule == "resonant" ? TauRule::Kind::resonant : TauRule::Kind::non_resonant;
        if (rule != "resonant" && rule != "non_resonant")
            throw io_error("config: unknown tau_rule '" + rule + "'");
        plan.tau_rule.tau0 = cfg.get_number("run.tau0");
        plan.tau_rule.ratio = cfg.get_number("run.ratio", 4.0);
        plan.tau_rule.count = static_cast<int>(cfg.get_number("run.count"));
        plan.tau_rule.delta = cfg.get_number("run.delta", 0.15);
    }

    plan.tau_e = cfg.get_number("reference.tau_e");

    plan.metrics.h1 = cfg.get_bool("metrics.h1", true);
    plan.metrics.density = cfg.get_bool("metrics.density", false);
    plan.metrics.current = cfg.get_bool("metrics.current", false);
    plan.metrics.energy = cfg.get_bool("metrics.energy", false);
    plan.zero_nyquist = cfg.get_bool("metrics.zero_nyquist", false);
    return plan;
}

}  // namespace nlds
