#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gftg/error.hpp"
#include "gftg/forward/profiles.hpp"
#include "gftg/fracops/grunwald.hpp"
#include "gftg/fracops/psi_map.hpp"

namespace gftg::experiment {

using forward::Example;
using fracops::PsiKind;

enum class PriorKind { TG, GFTG };

inline std::string_view to_string(PriorKind p) { return p == PriorKind::TG ? "TG" : "GFTG"; }

inline PriorKind prior_kind_from_string(std::string_view s) {
    if (s == "TG" || s == "tg") return PriorKind::TG;
    if (s == "GFTG" || s == "gftg") return PriorKind::GFTG;
    throw ConfigError("unknown prior '" + std::string(s) + "' (expected TG or GFTG)");
}

/// Fully resolved experiment settings.
struct RunConfig {
    Example example = Example::Deconvolution;
    PsiKind psi = PsiKind::Identity;
    PriorKind prior = PriorKind::GFTG;
    double alpha = 0.9;
    double lambda = 2.0;
    double beta = 0.03;
    std::size_t n_grid = 100;
    std::size_t n_samples = 200000;
    std::size_t burn_in = 100000;
    std::size_t thinning = 1;
    double sigma_noise = 0.01;
    double gamma = 0.01;
    double corr_length = 0.02;
    double jitter = 1e-12;
    std::uint64_t seed = 1;
    std::uint64_t data_seed = 2023;
    std::vector<std::size_t> marginal_indices;
    std::size_t bins = 40;
    std::string output_dir = "out";
    double kernel_width = 0.03;
    std::size_t time_steps = 120;
    double final_time = 1.0;
    double theta = 0.5;
};

/// Raw key/value settings as read from a config file or flags.
using KeyValues = std::map<std::string, std::string>;

inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "example", "psi",  "prior",        "alpha",      "lambda",           "beta",
        "n_grid",  "samples", "burn_in",   "thinning",   "sigma",            "gamma",
        "corr_length", "jitter", "seed",   "data_seed",  "marginal_indices", "bins",
        "out",     "kernel_width", "time_steps", "final_time", "theta"};
    return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    return out;
}

inline std::uint64_t to_uint(const std::string& key, const std::string& v) {
    // Accept integral values written in float notation (2e5, 200000.0).
    const double d = to_double(key, v);
    if (d < 0.0 || d != std::floor(d) || d > 1.8e19)
        throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
    return static_cast<std::uint64_t>(d);
}

inline std::vector<std::size_t> to_index_list(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(static_cast<std::size_t>(to_uint(key, item)));
    }
    return out;
}

struct ExamplePreset {
    std::size_t n_grid;
    std::size_t samples;
    double sigma;
    std::size_t thinning;
};

inline ExamplePreset example_preset(Example e) {
    switch (e) {
    case Example::Deconvolution: return {100, 200000, 0.01, 1};
    case Example::HeatSource: return {200, 1000000, 0.001, 5};
    case Example::EllipticParam: return {200, 100000, 0.001, 1};
    }
    return {100, 200000, 0.01, 1};
}

struct ReferencePreset {
    double gamma;
    double corr_length;
    double beta;
};

inline ReferencePreset reference_preset(Example e, PsiKind psi) {
    switch (e) {
    case Example::Deconvolution: return {0.01, 0.02, 0.03};
    case Example::HeatSource:
        if (psi == PsiKind::Log) return {0.5, 0.03, 0.02};
        if (psi == PsiKind::Exp) return {1.0, 0.04, 0.01};
        return {1.0, 0.04, 0.009};
    case Example::EllipticParam:
        if (psi == PsiKind::Identity) return {0.05, 0.03, 0.01};
        return {0.01, 0.03, 0.01};
    }
    return {0.01, 0.02, 0.03};
}

/// Regularisation weights per example and psi: alpha = 0.1, 0.9, 1.1, 1.9, then TG.
inline std::optional<double> lambda_preset(Example e, PsiKind psi, PriorKind prior, double alpha) {
    using Row = std::array<double, 5>;
    auto pick = [&](const Row& x, const Row& ln, const Row& ex) -> const Row& {
        if (psi == PsiKind::Log) return ln;
        if (psi == PsiKind::Exp) return ex;
        return x;
    };
    const Row* row = nullptr;
    switch (e) {
    case Example::Deconvolution: {
        static const Row x{0.01, 2, 0.01, 0.06, 2}, ln{0.5, 0.4, 0.01, 0.0005, 2},
            ex{9, 8, 0.09, 0.05, 10};
        row = &pick(x, ln, ex);
        break;
    }
    case Example::HeatSource: {
        static const Row x{0.05, 0.3, 0.06, 0.003, 0.16}, ln{0.001, 0.06, 0.008, 0.0002, 0.08},
            ex{0.9, 1, 0.8, 0.08, 1.1};
        row = &pick(x, ln, ex);
        break;
    }
    case Example::EllipticParam: {
        static const Row x{0.1, 1, 0.06, 0.01, 1}, ln{0.08, 2, 0.5, 0.001, 2}, ex{1, 10, 2, 0.5, 10};
        row = &pick(x, ln, ex);
        break;
    }
    }
    if (prior == PriorKind::TG) return (*row)[4];
    static constexpr std::array<double, 4> orders{0.1, 0.9, 1.1, 1.9};
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (std::abs(alpha - orders[i]) < 1e-12) return (*row)[i];
    return std::nullopt;
}

inline std::vector<std::size_t> default_marginal_indices(Example e, std::size_t n_grid) {
    const bool deconv = e == Example::Deconvolution;
    const std::vector<std::size_t> base =
        deconv ? std::vector<std::size_t>{20, 40, 60, 80, 90} : std::vector<std::size_t>{20, 50, 100, 150, 180};
    const double ref = deconv ? 100.0 : 200.0;
    std::vector<std::size_t> out;
    for (std::size_t i : base) {
        auto scaled = static_cast<std::size_t>(std::lround(static_cast<double>(i) * n_grid / ref));
        out.push_back(std::min(scaled, n_grid));
    }
    return out;
}

} // namespace detail

/// Parses "key = value" lines; '#' starts a comment. A document starting with '{' is read
/// as JSON, taking the "config" object when present (so run_meta.json can be replayed).
inline KeyValues parse_key_values(std::string_view text) {
    KeyValues kv;
    const std::string trimmed = detail::trim(text);
    if (!trimmed.empty() && trimmed.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(trimmed);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("invalid JSON config: ") + e.what());
        }
        const nlohmann::json& obj = doc.contains("config") ? doc.at("config") : doc;
        for (const auto& [k, v] : obj.items())
            kv[k] = v.is_string() ? v.get<std::string>() : v.dump();
        return kv;
    }
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
    }
    return kv;
}

inline KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_key_values(ss.str());
}

/// Validates keys and fills every unset field from the example's presets.
inline RunConfig parse_config(const KeyValues& kv) {
    for (const auto& [k, v] : kv) {
        bool known = false;
        for (const auto& name : known_keys()) known = known || name == k;
        if (!known) throw ConfigError("unknown config key '" + k + "'");
    }
    auto get = [&](const char* key) -> std::optional<std::string> {
        if (auto it = kv.find(key); it != kv.end() && !it->second.empty()) return it->second;
        return std::nullopt;
    };
    auto num = [&](const char* key, double fallback) {
        auto v = get(key);
        return v ? detail::to_double(key, *v) : fallback;
    };
    auto count = [&](const char* key, std::uint64_t fallback) {
        auto v = get(key);
        return v ? detail::to_uint(key, *v) : fallback;
    };

    RunConfig c;
    const auto example = get("example");
    if (!example) throw ConfigError("missing required key 'example'");
    c.example = forward::example_from_string(*example);
    c.psi = fracops::psi_kind_from_string(get("psi").value_or("x"));
    c.prior = prior_kind_from_string(get("prior").value_or("GFTG"));

    if (c.prior == PriorKind::GFTG) {
        c.alpha = num("alpha", 0.9);
        fracops::FracOrder::make(c.alpha);
    } else {
        c.alpha = 1.0;
    }

    if (auto l = get("lambda")) {
        c.lambda = detail::to_double("lambda", *l);
    } else if (auto preset = detail::lambda_preset(c.example, c.psi, c.prior, c.alpha)) {
        c.lambda = *preset;
    } else {
        throw ConfigError("no preset lambda for alpha = " + std::to_string(c.alpha) +
                          "; set 'lambda' explicitly");
    }
    if (!(c.lambda >= 0.0)) throw ConfigError("lambda must be >= 0");

    const auto ex = detail::example_preset(c.example);
    const auto ref = detail::reference_preset(c.example, c.psi);
    c.beta = num("beta", ref.beta);
    if (!(c.beta > 0.0 && c.beta <= 1.0)) throw ConfigError("beta must lie in (0, 1]");
    c.gamma = num("gamma", ref.gamma);
    c.corr_length = num("corr_length", ref.corr_length);
    if (!(c.gamma > 0.0) || !(c.corr_length > 0.0))
        throw ConfigError("gamma and corr_length must be positive");
    c.jitter = num("jitter", 1e-10 * c.gamma);
    if (!(c.jitter >= 0.0)) throw ConfigError("jitter must be >= 0");

    c.n_grid = count("n_grid", ex.n_grid);
    if (c.n_grid < 4) throw ConfigError("n_grid must be at least 4");
    c.n_samples = count("samples", ex.samples);
    if (c.n_samples == 0) throw ConfigError("samples must be positive");
    c.burn_in = count("burn_in", c.n_samples / 2);
    if (c.burn_in >= c.n_samples) throw ConfigError("burn_in must be smaller than samples");
    c.thinning = count("thinning", ex.thinning);
    if (c.thinning == 0) throw ConfigError("thinning must be >= 1");
    c.sigma_noise = num("sigma", ex.sigma);
    if (!(c.sigma_noise >= 0.0)) throw ConfigError("sigma must be >= 0");

    c.seed = count("seed", 1);
    c.data_seed = count("data_seed", 2023 + static_cast<std::uint64_t>(c.example));
    c.bins = count("bins", 40);
    if (c.bins < 2) throw ConfigError("bins must be >= 2");
    c.output_dir = get("out").value_or("out");
    c.kernel_width = num("kernel_width", 0.03);
    if (!(c.kernel_width > 0.0)) throw ConfigError("kernel_width must be positive");
    c.time_steps = count("time_steps", 120);
    if (c.time_steps == 0) throw ConfigError("time_steps must be >= 1");
    c.final_time = num("final_time", 1.0);
    if (!(c.final_time > 0.0)) throw ConfigError("final_time must be positive");
    c.theta = num("theta", 0.5);
    if (!(c.theta >= 0.0 && c.theta <= 1.0)) throw ConfigError("theta must lie in [0, 1]");

    if (auto m = get("marginal_indices"))
        c.marginal_indices = detail::to_index_list("marginal_indices", *m);
    else
        c.marginal_indices = detail::default_marginal_indices(c.example, c.n_grid);
    for (std::size_t idx : c.marginal_indices)
        if (idx > c.n_grid) throw ConfigError("marginal index " + std::to_string(idx) + " exceeds n_grid");

    const auto [a, b] = forward::domain(c.example);
    fracops::PsiMap(c.psi).validate_domain(a, b);
    return c;
}

/// Shortest decimal that round-trips to the same double.
inline std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) return std::to_string(v);
    return std::string(buf, ptr);
}

/// The resolved configuration as key/value pairs; feeding it back reproduces the run.
inline KeyValues to_key_values(const RunConfig& c) {
    KeyValues kv;
    kv["example"] = std::string(forward::to_string(c.example));
    kv["psi"] = std::string(fracops::to_string(c.psi));
    kv["prior"] = std::string(to_string(c.prior));
    kv["alpha"] = format_number(c.alpha);
    kv["lambda"] = format_number(c.lambda);
    kv["beta"] = format_number(c.beta);
    kv["n_grid"] = std::to_string(c.n_grid);
    kv["samples"] = std::to_string(c.n_samples);
    kv["burn_in"] = std::to_string(c.burn_in);
    kv["thinning"] = std::to_string(c.thinning);
    kv["sigma"] = format_number(c.sigma_noise);
    kv["gamma"] = format_number(c.gamma);
    kv["corr_length"] = format_number(c.corr_length);
    kv["jitter"] = format_number(c.jitter);
    kv["seed"] = std::to_string(c.seed);
    kv["data_seed"] = std::to_string(c.data_seed);
    std::string idx;
    for (std::size_t i = 0; i < c.marginal_indices.size(); ++i)
        idx += (i ? "," : "") + std::to_string(c.marginal_indices[i]);
    kv["marginal_indices"] = idx;
    kv["bins"] = std::to_string(c.bins);
    kv["out"] = c.output_dir;
    kv["kernel_width"] = format_number(c.kernel_width);
    kv["time_steps"] = std::to_string(c.time_steps);
    kv["final_time"] = format_number(c.final_time);
    kv["theta"] = format_number(c.theta);
    return kv;
}

inline std::string to_config_text(const RunConfig& c) {
    std::string out;
    for (const auto& [k, v] : to_key_values(c)) out += k + " = " + v + "\n";
    return out;
}

} // namespace gftg::experiment
