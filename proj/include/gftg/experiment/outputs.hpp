#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gftg/error.hpp"
#include "gftg/experiment/config.hpp"
#include "gftg/experiment/pipeline.hpp"
#include "gftg/random.hpp"

namespace gftg::experiment {

/// File names written under the output directory.
inline constexpr const char* summary_file = "summary.csv";
inline constexpr const char* chain_diag_file = "chain_diag.csv";
inline constexpr const char* marginals_file = "marginals.csv";
inline constexpr const char* meta_file = "run_meta.json";
inline constexpr const char* resolved_config_file = "resolved_config.txt";

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& p) {
    out.flush();
    if (!out) throw IoError("write failed for '" + p.string() + "'");
}

} // namespace detail

/// Columns: x, truth, posterior_mean, ci_lower, ci_upper (one row per node).
inline void write_summary_csv(const ExperimentResult& r, const std::filesystem::path& p) {
    auto out = detail::open_out(p);
    out << "x,truth,posterior_mean,ci_lower,ci_upper\n";
    for (std::size_t j = 0; j < r.grid.n_nodes(); ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        out << format_number(r.grid.x(j)) << ',' << format_number(r.truth[i]) << ','
            << format_number(r.summary.mean[i]) << ',' << format_number(r.summary.ci_lower[i]) << ','
            << format_number(r.summary.ci_upper[i]) << '\n';
    }
    detail::finish(out, p);
}

/// Columns: iteration, energy, accepted (1-based iterations, energy of the current state).
inline void write_chain_diag_csv(const ExperimentResult& r, const std::filesystem::path& p) {
    auto out = detail::open_out(p);
    out << "iteration,energy,accepted\n";
    for (std::size_t i = 0; i < r.chain.energy_trace.size(); ++i)
        out << (i + 1) << ',' << format_number(r.chain.energy_trace[i]) << ','
            << static_cast<int>(r.chain.accepted[i]) << '\n';
    detail::finish(out, p);
}

/// Long format: index, sample_id, value for every recorded state.
inline void write_marginals_csv(const ExperimentResult& r, const std::filesystem::path& p) {
    auto out = detail::open_out(p);
    out << "index,sample_id,value\n";
    const auto& s = r.chain.samples;
    for (std::size_t idx : r.config.marginal_indices)
        for (Eigen::Index k = 0; k < s.cols(); ++k)
            out << idx << ',' << k << ',' << format_number(s(static_cast<Eigen::Index>(idx), k)) << '\n';
    detail::finish(out, p);
}

inline nlohmann::json run_meta(const ExperimentResult& r) {
    nlohmann::json meta;
    meta["schema_version"] = 1;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : to_key_values(r.config)) cfg[k] = v;
    meta["config"] = cfg;
    meta["rng_algorithm"] = std::string(rng_algorithm);
    meta["acceptance_rate"] = r.summary.acceptance_rate;
    meta["rmsd"] = r.rmsd;
    meta["recorded_states"] = r.chain.recorded();
    meta["jitter_used"] = r.jitter_used;
    meta["wall_time_s"] = r.wall_time_s;
    return meta;
}

/// Emits the four run files plus the resolved configuration echo.
inline void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    write_summary_csv(r, dir / summary_file);
    write_chain_diag_csv(r, dir / chain_diag_file);
    write_marginals_csv(r, dir / marginals_file);
    {
        const auto p = dir / meta_file;
        auto out = detail::open_out(p);
        out << run_meta(r).dump(2) << '\n';
        detail::finish(out, p);
    }
    {
        const auto p = dir / resolved_config_file;
        auto out = detail::open_out(p);
        out << to_config_text(r.config);
        detail::finish(out, p);
    }
}

inline ExperimentResult run_experiment(const RunConfig& c) {
    ExperimentResult r = run_pipeline(c);
    write_outputs(r, c.output_dir);
    return r;
}

} // namespace gftg::experiment
