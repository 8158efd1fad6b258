#pragma once

// Experiment configuration: a single versioned JSON object describing the
// backend, grid, exponent, initial body, flow/solver parameters, and output
// paths.  Parsing is strict — unknown backends, missing required keys, and
// out-of-range values all raise ConfigError naming the offending key.
//
// {
//   "config_version": 1,
//   "backend": "curve" | "axisym",
//   "n_grid": 256,
//   "alpha": 1.0,
//   "seed": 1,
//   "initial": { "kind": "sphere" | "ellipsoid" | "perturbed" | "random", ... },
//   "flow":    { "dt_safety", "max_steps", "normalize_every", "emit_every",
//                "stop": { "max_time", "roundness_below", "residual_below",
//                          "fit_below" } },
//   "solve":   { "tol", "max_iters", "damping", "tikhonov",
//                "continuation": { "alpha_to", "steps" } },
//   "outputs": { "records_path", "snapshot_path", "snapshot_every" }
// }

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gcf/errors.hpp"
#include "gcf/flow.hpp"
#include "gcf/shapes.hpp"
#include "gcf/soliton.hpp"
#include "gcf/support.hpp"

namespace gcf {

struct InitialSpec {
    std::string kind = "sphere";
    double radius = 1.0;                        // sphere
    double a = 1.0, b = 1.0, c = 1.0;           // ellipsoid semi-axes
    std::vector<std::pair<int, double>> modes;  // perturbed: cos-mode bumps
    int max_mode = 6;                           // random
    double amplitude = 0.05;                    // random
};

struct ContinuationSpec {
    double alpha_to = 0.0;
    int steps = 1;
};

struct OutputsSpec {
    std::string records_path;
    std::string snapshot_path;
    long snapshot_every = 0;  // 0: final snapshot only
};

struct ExperimentConfig {
    int config_version = 1;
    std::string backend = "curve";
    int n_grid = 256;
    double alpha = 1.0;
    std::uint64_t seed = 1;
    InitialSpec initial;
    FlowConfig flow;  // flow.alpha mirrors alpha
    SolveOptions solve;
    std::optional<ContinuationSpec> continuation;
    OutputsSpec outputs;
};

namespace detail {

inline int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline const nlohmann::json& require_key(const nlohmann::json& obj,
                                         const std::string& path, const char* key) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path + "." + key + ": required key missing");
    return *it;
}

inline double as_number(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    return v.get<double>();
}

inline long as_integer(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
    return v.get<long>();
}

inline std::string as_string(const nlohmann::json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + ": expected a string");
    return v.get<std::string>();
}

inline std::optional<double> opt_number(const nlohmann::json& obj, const char* key,
                                        const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return as_number(*it, path + "." + key);
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("line " + std::to_string(detail::line_of_byte(text, e.byte)) +
                          ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError("top level: expected an object");

    ExperimentConfig cfg;

    const long version = detail::as_integer(
        detail::require_key(root, "config", "config_version"), "config_version");
    if (version != 1)
        throw ConfigError("config_version: only version 1 is supported, got " +
                          std::to_string(version));
    cfg.config_version = static_cast<int>(version);

    cfg.backend = detail::as_string(detail::require_key(root, "config", "backend"),
                                    "backend");
    if (cfg.backend != "curve" && cfg.backend != "axisym")
        throw ConfigError("backend: expected 'curve' or 'axisym', got '" + cfg.backend +
                          "'");
    const int min_samples =
        cfg.backend == "curve" ? CurveBody::min_samples : AxisymBody::min_samples;

    cfg.n_grid = static_cast<int>(
        detail::as_integer(detail::require_key(root, "config", "n_grid"), "n_grid"));
    if (cfg.n_grid < min_samples)
        throw ConfigError("n_grid: " + cfg.backend + " backend needs at least " +
                          std::to_string(min_samples) + " samples, got " +
                          std::to_string(cfg.n_grid));

    cfg.alpha = detail::as_number(detail::require_key(root, "config", "alpha"), "alpha");
    if (!(cfg.alpha > 0.0)) throw ConfigError("alpha: must be > 0");

    if (const auto it = root.find("seed"); it != root.end())
        cfg.seed = static_cast<std::uint64_t>(detail::as_integer(*it, "seed"));

    {
        const nlohmann::json& init = detail::require_key(root, "config", "initial");
        if (!init.is_object()) throw ConfigError("initial: expected an object");
        cfg.initial.kind =
            detail::as_string(detail::require_key(init, "initial", "kind"),
                              "initial.kind");
        if (cfg.initial.kind != "sphere" && cfg.initial.kind != "ellipsoid" &&
            cfg.initial.kind != "perturbed" && cfg.initial.kind != "random")
            throw ConfigError(
                "initial.kind: expected sphere | ellipsoid | perturbed | random, got '" +
                cfg.initial.kind + "'");
        if (const auto v = detail::opt_number(init, "radius", "initial"))
            cfg.initial.radius = *v;
        if (const auto v = detail::opt_number(init, "a", "initial")) cfg.initial.a = *v;
        if (const auto v = detail::opt_number(init, "b", "initial")) cfg.initial.b = *v;
        if (const auto v = detail::opt_number(init, "c", "initial")) cfg.initial.c = *v;
        if (const auto v = detail::opt_number(init, "amplitude", "initial"))
            cfg.initial.amplitude = *v;
        if (const auto it = init.find("max_mode"); it != init.end())
            cfg.initial.max_mode =
                static_cast<int>(detail::as_integer(*it, "initial.max_mode"));
        if (const auto it = init.find("modes"); it != init.end()) {
            if (!it->is_array())
                throw ConfigError("initial.modes: expected an array of [mode, amplitude]");
            for (const auto& entry : *it) {
                if (!entry.is_array() || entry.size() != 2)
                    throw ConfigError(
                        "initial.modes: each entry must be a [mode, amplitude] pair");
                const long mode = detail::as_integer(entry[0], "initial.modes[].mode");
                const double amp = detail::as_number(entry[1], "initial.modes[].amplitude");
                if (mode < 1) throw ConfigError("initial.modes: mode must be >= 1");
                cfg.initial.modes.emplace_back(static_cast<int>(mode), amp);
            }
        }
    }

    cfg.flow.alpha = cfg.alpha;
    if (const auto it = root.find("flow"); it != root.end()) {
        const nlohmann::json& flow = *it;
        if (!flow.is_object()) throw ConfigError("flow: expected an object");
        if (const auto v = detail::opt_number(flow, "dt_safety", "flow"))
            cfg.flow.dt_safety = *v;
        if (const auto f = flow.find("max_steps"); f != flow.end())
            cfg.flow.max_steps = detail::as_integer(*f, "flow.max_steps");
        if (const auto f = flow.find("normalize_every"); f != flow.end())
            cfg.flow.normalize_every = detail::as_integer(*f, "flow.normalize_every");
        if (const auto f = flow.find("emit_every"); f != flow.end())
            cfg.flow.emit_every = detail::as_integer(*f, "flow.emit_every");
        if (const auto f = flow.find("stop"); f != flow.end()) {
            if (!f->is_object()) throw ConfigError("flow.stop: expected an object");
            cfg.flow.stop.max_time = detail::opt_number(*f, "max_time", "flow.stop");
            cfg.flow.stop.roundness_below =
                detail::opt_number(*f, "roundness_below", "flow.stop");
            cfg.flow.stop.residual_below =
                detail::opt_number(*f, "residual_below", "flow.stop");
            cfg.flow.stop.fit_below = detail::opt_number(*f, "fit_below", "flow.stop");
        }
        try {
            cfg.flow.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("flow: ") + e.what());
        }
    }

    if (const auto it = root.find("solve"); it != root.end()) {
        const nlohmann::json& solve = *it;
        if (!solve.is_object()) throw ConfigError("solve: expected an object");
        if (const auto v = detail::opt_number(solve, "tol", "solve")) cfg.solve.tol = *v;
        if (const auto f = solve.find("max_iters"); f != solve.end())
            cfg.solve.max_iters =
                static_cast<int>(detail::as_integer(*f, "solve.max_iters"));
        if (const auto v = detail::opt_number(solve, "damping", "solve"))
            cfg.solve.damping = *v;
        cfg.solve.tikhonov = detail::opt_number(solve, "tikhonov", "solve");
        if (const auto f = solve.find("continuation"); f != solve.end() && !f->is_null()) {
            if (!f->is_object())
                throw ConfigError("solve.continuation: expected an object");
            ContinuationSpec cont;
            cont.alpha_to = detail::as_number(
                detail::require_key(*f, "solve.continuation", "alpha_to"),
                "solve.continuation.alpha_to");
            cont.steps = static_cast<int>(detail::as_integer(
                detail::require_key(*f, "solve.continuation", "steps"),
                "solve.continuation.steps"));
            if (cont.steps < 1)
                throw ConfigError("solve.continuation.steps: must be >= 1");
            if (!(cont.alpha_to > 0.0))
                throw ConfigError("solve.continuation.alpha_to: must be > 0");
            cfg.continuation = cont;
        }
        try {
            cfg.solve.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("solve: ") + e.what());
        }
    }

    {
        const nlohmann::json& out = detail::require_key(root, "config", "outputs");
        if (!out.is_object()) throw ConfigError("outputs: expected an object");
        cfg.outputs.records_path =
            detail::as_string(detail::require_key(out, "outputs", "records_path"),
                              "outputs.records_path");
        if (cfg.outputs.records_path.empty())
            throw ConfigError("outputs.records_path: must not be empty");
        if (const auto f = out.find("snapshot_path"); f != out.end() && !f->is_null())
            cfg.outputs.snapshot_path = detail::as_string(*f, "outputs.snapshot_path");
        if (const auto f = out.find("snapshot_every"); f != out.end())
            cfg.outputs.snapshot_every = detail::as_integer(*f, "outputs.snapshot_every");
        if (cfg.outputs.snapshot_every < 0)
            throw ConfigError("outputs.snapshot_every: must be >= 0");
    }

    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// Initial-body construction.  Callers dispatch on cfg.backend and use the
// matching builder; perturbed bodies are multiplicative cosine bumps on an
// ellipsoid base (a = b = c = 1 gives a bumped unit sphere).

inline CurveBody make_initial_curve(const ExperimentConfig& cfg) {
    const InitialSpec& s = cfg.initial;
    if (s.kind == "sphere") return circle(cfg.n_grid, s.radius);
    if (s.kind == "ellipsoid") return ellipse(cfg.n_grid, s.a, s.b);
    if (s.kind == "perturbed") return bumped_ellipse(cfg.n_grid, s.a, s.b, s.modes);
    return random_convex_curve(cfg.n_grid, cfg.seed, s.max_mode, s.amplitude);
}

inline AxisymBody make_initial_axisym(const ExperimentConfig& cfg) {
    const InitialSpec& s = cfg.initial;
    if (s.kind == "sphere") return sphere(cfg.n_grid, s.radius);
    if (s.kind == "ellipsoid") return spheroid(cfg.n_grid, s.a, s.c);
    if (s.kind == "perturbed") return bumped_spheroid(cfg.n_grid, s.a, s.c, s.modes);
    return random_convex_axisym(cfg.n_grid, cfg.seed, s.max_mode, s.amplitude);
}

}  // namespace gcf
