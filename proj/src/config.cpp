#include "budgetsim/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace budgetsim::cli {

using nlohmann::json;

std::string_view to_string(RunKind kind) noexcept {
    switch (kind) {
        case RunKind::Simulate: return "simulate";
        case RunKind::FixedPoints: return "fixed-points";
        case RunKind::Sweep: return "sweep";
        case RunKind::PhasePortrait: return "phase-portrait";
        case RunKind::Validate: return "validate";
    }
    return "?";
}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message),
      field_(std::move(field)) {}

namespace {

std::string joined(std::string_view scope, std::string_view key) {
    if (scope.empty()) return std::string(key);
    std::string out(scope);
    out += '.';
    out += key;
    return out;
}

const json& expect_object(const json& value, std::string_view path) {
    if (!value.is_object())
        throw ConfigError(std::string(path), "must be a JSON object");
    return value;
}

/// Every recognised key of an object is listed explicitly; anything else
/// is reported by its dotted path so typos surface immediately.
void reject_unknown(const json& obj, std::string_view scope,
                    std::initializer_list<std::string_view> known) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (std::string_view k : known)
            if (key == k) { ok = true; break; }
        if (!ok) throw ConfigError(joined(scope, key), "unknown key");
    }
}

double get_number(const json& obj, std::string_view scope, std::string_view key) {
    const json& v = obj.at(std::string(key));
    if (!v.is_number())
        throw ConfigError(joined(scope, key), "must be a number");
    return v.get<double>();
}

std::optional<double> opt_number(const json& obj, std::string_view scope,
                                 std::string_view key) {
    if (!obj.contains(std::string(key))) return std::nullopt;
    return get_number(obj, scope, key);
}

std::string get_string(const json& obj, std::string_view scope, std::string_view key) {
    const json& v = obj.at(std::string(key));
    if (!v.is_string())
        throw ConfigError(joined(scope, key), "must be a string");
    return v.get<std::string>();
}

bool get_bool(const json& obj, std::string_view scope, std::string_view key) {
    const json& v = obj.at(std::string(key));
    if (!v.is_boolean())
        throw ConfigError(joined(scope, key), "must be true or false");
    return v.get<bool>();
}

RunKind parse_run_kind(const std::string& text, std::string_view path) {
    if (text == "simulate") return RunKind::Simulate;
    if (text == "fixed-points") return RunKind::FixedPoints;
    if (text == "sweep") return RunKind::Sweep;
    if (text == "phase-portrait") return RunKind::PhasePortrait;
    if (text == "validate") return RunKind::Validate;
    throw ConfigError(std::string(path),
                      "unknown run kind \"" + text +
                          "\" (expected simulate, fixed-points, sweep, "
                          "phase-portrait, or validate)");
}

SweepParameter parse_sweep_parameter(const std::string& text, std::string_view path) {
    if (text == "a") return SweepParameter::A;
    if (text == "c0") return SweepParameter::C0;
    if (text == "y0") return SweepParameter::Y0;
    if (text == "b0") return SweepParameter::B0;
    throw ConfigError(std::string(path),
                      "unknown parameter \"" + text + "\" (expected a, c0, y0, or b0)");
}

SweepOutput parse_sweep_output(const std::string& text, std::string_view path) {
    if (text == "fixed_point") return SweepOutput::FixedPoint;
    if (text == "time_to_zero") return SweepOutput::TimeToZero;
    if (text == "final_b") return SweepOutput::FinalB;
    if (text == "max_error") return SweepOutput::MaxError;
    throw ConfigError(std::string(path),
                      "unknown output \"" + text +
                          "\" (expected fixed_point, time_to_zero, final_b, "
                          "or max_error)");
}

/// Re-anchors an invariant message such as "a must be > 0 (got -1)" at
/// the config scope it came from, so the diagnostic reads
/// "params.a: must be > 0 (got -1)".
ConfigError scoped_invariant(std::string_view scope, const std::string& message) {
    const auto space = message.find(' ');
    if (space == std::string::npos || space == 0)
        return ConfigError(std::string(scope), message);
    return ConfigError(joined(scope, message.substr(0, space)),
                       message.substr(space + 1));
}

ModelParams parse_params(const json& root) {
    const json& obj = expect_object(root.at("params"), "params");
    reject_unknown(obj, "params", {"a", "c0", "y0", "r", "b_s"});

    ModelParams params;
    if (!obj.contains("a")) throw ConfigError("params.a", "missing");
    params.a = get_number(obj, "params", "a");
    if (!obj.contains("c0")) throw ConfigError("params.c0", "missing");
    params.c0 = get_number(obj, "params", "c0");
    params.r = opt_number(obj, "params", "r").value_or(0.0);

    const auto y0 = opt_number(obj, "params", "y0");
    const auto b_s = opt_number(obj, "params", "b_s");
    if (y0 && b_s)
        throw ConfigError("params.b_s", "mutually exclusive with params.y0");
    if (!y0 && !b_s)
        throw ConfigError("params.y0", "missing (give either y0 or b_s)");
    if (y0) {
        params.y0 = *y0;
    } else {
        if (!std::isfinite(*b_s) || *b_s < 0.0)
            throw ConfigError("params.b_s", "must be >= 0 and finite");
        params.y0 = params.c0 + params.a * *b_s * *b_s;
    }

    if (const auto msg = invariant_violation(params))
        throw scoped_invariant("params", *msg);
    return params;
}

ExpenditureRule parse_rule(const json& root) {
    if (!root.contains("rule")) return ExpenditureRule::quadratic();
    const json& obj = expect_object(root.at("rule"), "rule");
    if (!obj.contains("kind")) throw ConfigError("rule.kind", "missing");
    const std::string kind = get_string(obj, "rule", "kind");
    if (kind == "quadratic") {
        reject_unknown(obj, "rule", {"kind"});
        return ExpenditureRule::quadratic();
    }
    if (kind == "sqrt_hydro") {
        reject_unknown(obj, "rule", {"kind", "k"});
        if (!obj.contains("k")) throw ConfigError("rule.k", "missing");
        const double k = get_number(obj, "rule", "k");
        if (!std::isfinite(k) || k < 0.0)
            throw ConfigError("rule.k", "must be >= 0 and finite");
        return ExpenditureRule::sqrt_hydro(k);
    }
    throw ConfigError("rule.kind",
                      "unknown kind \"" + kind + "\" (expected quadratic or sqrt_hydro)");
}

IntegratorConfig parse_integrator(const json& root) {
    IntegratorConfig config;
    if (!root.contains("integrator")) return config;
    const json& obj = expect_object(root.at("integrator"), "integrator");
    reject_unknown(obj, "integrator", {"method", "dt", "t_end", "event_tolerance"});
    if (obj.contains("method")) {
        const std::string method = get_string(obj, "integrator", "method");
        if (method == "euler")
            config.method = Method::Euler;
        else if (method == "rk4")
            config.method = Method::RK4;
        else
            throw ConfigError("integrator.method",
                              "unknown method \"" + method + "\" (expected euler or rk4)");
    }
    if (const auto dt = opt_number(obj, "integrator", "dt")) config.dt = *dt;
    if (const auto t_end = opt_number(obj, "integrator", "t_end")) config.t_end = *t_end;
    if (const auto tol = opt_number(obj, "integrator", "event_tolerance"))
        config.event_tolerance = *tol;
    if (const auto msg = invariant_violation(config))
        throw scoped_invariant("integrator", *msg);
    return config;
}

SweepConfig parse_sweep(const json& root) {
    if (!root.contains("sweep")) throw ConfigError("sweep", "missing");
    const json& obj = expect_object(root.at("sweep"), "sweep");
    reject_unknown(obj, "sweep", {"varying", "values", "outputs"});

    SweepConfig sweep;
    if (!obj.contains("varying")) throw ConfigError("sweep.varying", "missing");
    sweep.varying = parse_sweep_parameter(get_string(obj, "sweep", "varying"),
                                          "sweep.varying");

    if (!obj.contains("values")) throw ConfigError("sweep.values", "missing");
    const json& values = obj.at("values");
    if (!values.is_array() || values.empty())
        throw ConfigError("sweep.values", "must be a non-empty array of numbers");
    for (const json& v : values) {
        if (!v.is_number())
            throw ConfigError("sweep.values", "must be a non-empty array of numbers");
        sweep.values.push_back(v.get<double>());
    }

    if (obj.contains("outputs")) {
        const json& outputs = obj.at("outputs");
        if (!outputs.is_array())
            throw ConfigError("sweep.outputs", "must be an array of strings");
        for (const json& o : outputs) {
            if (!o.is_string())
                throw ConfigError("sweep.outputs", "must be an array of strings");
            sweep.outputs.push_back(
                parse_sweep_output(o.get<std::string>(), "sweep.outputs"));
        }
    }
    return sweep;
}

PortraitConfig parse_portrait(const json& root) {
    if (!root.contains("portrait")) throw ConfigError("portrait", "missing");
    const json& obj = expect_object(root.at("portrait"), "portrait");
    reject_unknown(obj, "portrait", {"b_min", "b_max", "n"});

    PortraitConfig portrait;
    if (!obj.contains("b_min")) throw ConfigError("portrait.b_min", "missing");
    portrait.b_min = get_number(obj, "portrait", "b_min");
    if (!obj.contains("b_max")) throw ConfigError("portrait.b_max", "missing");
    portrait.b_max = get_number(obj, "portrait", "b_max");
    if (!std::isfinite(portrait.b_min) || !std::isfinite(portrait.b_max) ||
        portrait.b_min >= portrait.b_max)
        throw ConfigError("portrait.b_min", "must satisfy b_min < b_max, both finite");

    if (!obj.contains("n")) throw ConfigError("portrait.n", "missing");
    const json& n = obj.at("n");
    if (!n.is_number_integer() || n.get<long long>() < 2)
        throw ConfigError("portrait.n", "must be an integer >= 2");
    portrait.n = static_cast<std::size_t>(n.get<long long>());
    return portrait;
}

ValidationTolerances parse_tolerances(const json& root) {
    ValidationTolerances tol;
    if (!root.contains("tolerances")) return tol;
    const json& obj = expect_object(root.at("tolerances"), "tolerances");
    reject_unknown(obj, "tolerances", {"sup_norm", "event_time"});
    if (const auto v = opt_number(obj, "tolerances", "sup_norm")) tol.sup_norm = *v;
    if (const auto v = opt_number(obj, "tolerances", "event_time")) tol.event_time = *v;
    if (!std::isfinite(tol.sup_norm) || tol.sup_norm <= 0.0)
        throw ConfigError("tolerances.sup_norm", "must be > 0 and finite");
    if (!std::isfinite(tol.event_time) || tol.event_time <= 0.0)
        throw ConfigError("tolerances.event_time", "must be > 0 and finite");
    return tol;
}

/// Applies one "dotted.key=value" override onto the parsed document.
/// The value text is parsed as JSON when possible so numbers, booleans,
/// and arrays keep their types; anything unparseable becomes a string.
void apply_override(json& root, const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("", "--set expects key=value (got \"" + text + "\")");
    const std::string key = text.substr(0, eq);
    const std::string value_text = text.substr(eq + 1);

    json value = json::parse(value_text, nullptr, false);
    if (value.is_discarded()) value = value_text;

    json* node = &root;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot - start);
        if (part.empty())
            throw ConfigError(key, "--set key has an empty path component");
        if (!node->is_object())
            throw ConfigError(key, "--set path walks through a non-object value");
        if (dot == std::string::npos) {
            (*node)[part] = std::move(value);
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

}  // namespace

ScenarioConfig load_config(const std::string& path,
                           const std::vector<std::string>& overrides,
                           std::optional<RunKind> expected_kind) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file \"" + path + "\"");

    json root = json::parse(in, nullptr, false);
    if (root.is_discarded())
        throw ConfigError("", "config file \"" + path + "\" is not valid JSON");
    expect_object(root, "config");

    for (const std::string& text : overrides) apply_override(root, text);

    reject_unknown(root, "",
                   {"run", "params", "rule", "b0", "include_interest", "integrator",
                    "sweep", "portrait", "tolerances", "output", "report"});

    ScenarioConfig config;

    std::optional<RunKind> declared;
    if (root.contains("run"))
        declared = parse_run_kind(get_string(root, "", "run"), "run");
    if (expected_kind && declared && *declared != *expected_kind)
        throw ConfigError("run", std::string("config declares \"") +
                                     std::string(to_string(*declared)) +
                                     "\" but the subcommand is \"" +
                                     std::string(to_string(*expected_kind)) + "\"");
    if (expected_kind)
        config.run = *expected_kind;
    else if (declared)
        config.run = *declared;
    else
        throw ConfigError("run", "missing (no subcommand selected either)");

    if (!root.contains("params")) throw ConfigError("params", "missing");
    config.params = parse_params(root);
    config.rule = parse_rule(root);
    config.integrator = parse_integrator(root);
    config.tolerances = parse_tolerances(root);

    if (root.contains("b0")) {
        config.b0 = get_number(root, "", "b0");
        if (!std::isfinite(config.b0)) throw ConfigError("b0", "must be finite");
    }
    if (root.contains("include_interest"))
        config.include_interest = get_bool(root, "", "include_interest");

    if (config.run == RunKind::Sweep) config.sweep = parse_sweep(root);
    if (config.run == RunKind::PhasePortrait) config.portrait = parse_portrait(root);

    bool needs_b0 =
        config.run == RunKind::Simulate || config.run == RunKind::Validate;
    if (config.run == RunKind::Sweep && config.sweep->varying != SweepParameter::B0) {
        for (const SweepOutput output : config.sweep->outputs)
            if (output != SweepOutput::FixedPoint) needs_b0 = true;
    }
    if (needs_b0 && !root.contains("b0"))
        throw ConfigError("b0", "missing (required for this run kind)");

    if (root.contains("output")) config.output = get_string(root, "", "output");
    if (root.contains("report")) config.report = get_string(root, "", "report");

    return config;
}

}  // namespace budgetsim::cli
