#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "salss/smc.hpp"

namespace salss {

enum class OutputFormat { csv, json, markdown };

std::optional<OutputFormat> parse_format(std::string_view name);

inline constexpr std::string_view kResultsCsvHeader =
    "model,goal,class,n,m,p_min,p_max,argmin_id,argmax_id,runs_stage1,runs_stage2,truncated";

/// RFC 4180 quoting for fields containing commas, quotes or newlines.
std::string csv_field(const std::string& s);

/// Probabilities are printed with six decimals so equal results give equal bytes.
void write_results(std::ostream& out, const std::vector<ExperimentResult>& results, OutputFormat format);

/// One entry of the reference results table.
struct Fig8Row {
    std::string model;
    int group = 0;
    SchedulerClass cls;
    double ref_min = 0.0;
    double ref_max = 0.0;
    std::vector<std::uint32_t> ref_factors;

    /// Rows whose reference value is (0, 1) or (0.49, 0.51) are checked tighter.
    bool pinned() const noexcept;
};

/// Rows in table order: M1, M3, M2, M4, M5, M6.
const std::vector<Fig8Row>& fig8_rows();

struct Fig8Entry {
    Fig8Row row;
    double p_min = 0.0;
    double p_max = 0.0;
    /// Factors whose results round (two decimals) to the reported extremes;
    /// if no factor attains both, the ones attaining p_max.
    std::vector<std::uint32_t> factors;
    std::vector<ExperimentResult> per_factor;
};

std::vector<Fig8Entry> run_fig8(ExperimentCache& cache, const std::vector<Discretisation>& factors,
                                std::string_view goal = "win");

/// Blocks per model with rows "hist ℓ,v,e: (0.24, 0.76){2,4}".
std::string render_fig8(const std::vector<Fig8Entry>& entries);

/// Like render_fig8 with the reference values next to the measured ones.
std::string render_fig8_comparison(const std::vector<Fig8Entry>& entries);

std::string format_factors(const std::vector<std::uint32_t>& factors);

}  // namespace salss
