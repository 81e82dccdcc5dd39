#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "gftg/error.hpp"
#include "gftg/experiment/config.hpp"
#include "gftg/experiment/pipeline.hpp"

namespace gftg::experiment {

struct TableRow {
    std::size_t n_grid = 0;
    PsiKind psi = PsiKind::Identity;
    PriorKind prior = PriorKind::GFTG;
    double alpha = 0.0;
    double rmsd = std::numeric_limits<double>::quiet_NaN();
    /// Empty on success.
    std::string error;
};

/// Runs each configuration and scores its posterior mean. A failing row keeps a NaN
/// rmsd and its error message; the remaining rows still run.
inline std::vector<TableRow> run_rows(const std::vector<RunConfig>& configs) {
    std::vector<TableRow> rows;
    rows.reserve(configs.size());
    for (const auto& c : configs) {
        TableRow row{c.n_grid, c.psi, c.prior, c.alpha};
        try {
            row.rmsd = run_pipeline(c).rmsd;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Columns: N, psi, prior, alpha, rmsd.
inline void write_table_csv(const std::vector<TableRow>& rows, const std::filesystem::path& p) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    out << "N,psi,prior,alpha,rmsd\n";
    for (const auto& r : rows)
        out << r.n_grid << ',' << fracops::to_string(r.psi) << ',' << to_string(r.prior) << ','
            << format_number(r.alpha) << ',' << (std::isnan(r.rmsd) ? "nan" : format_number(r.rmsd))
            << '\n';
    out.flush();
    if (!out) throw IoError("write failed for '" + p.string() + "'");
}

inline std::vector<TableRow> run_table(const std::vector<RunConfig>& configs,
                                       const std::filesystem::path& table_path) {
    auto rows = run_rows(configs);
    write_table_csv(rows, table_path);
    return rows;
}

/// Grid-refinement study: every psi x N with the GFTG prior, plus a TG row per N (psi = x).
/// `overrides` is applied to every row (samples, seeds, alpha, ...).
inline std::vector<RunConfig> invariance_configs(Example example, const std::vector<std::size_t>& grid_sizes,
                                                 const std::vector<PsiKind>& psis, bool include_tg,
                                                 KeyValues overrides = {}) {
    std::vector<RunConfig> configs;
    overrides["example"] = std::string(forward::to_string(example));
    for (std::size_t n : grid_sizes) {
        for (PsiKind psi : psis) {
            KeyValues kv = overrides;
            kv["n_grid"] = std::to_string(n);
            kv["psi"] = std::string(fracops::to_string(psi));
            kv["prior"] = "GFTG";
            configs.push_back(parse_config(kv));
        }
        if (include_tg) {
            KeyValues kv = overrides;
            kv["n_grid"] = std::to_string(n);
            kv["psi"] = "x";
            kv["prior"] = "TG";
            kv.erase("lambda");
            configs.push_back(parse_config(kv));
        }
    }
    return configs;
}

inline std::vector<TableRow> invariance_table(Example example, const std::vector<std::size_t>& grid_sizes,
                                              const std::vector<PsiKind>& psis, bool include_tg,
                                              KeyValues overrides = {}) {
    return run_rows(invariance_configs(example, grid_sizes, psis, include_tg, std::move(overrides)));
}

} // namespace gftg::experiment
