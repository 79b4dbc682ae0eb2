#include "salss/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "salss/builtin.hpp"
#include "salss/errors.hpp"

namespace salss {

namespace {

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

long rounded(double x) {
    return std::lround(x * 100.0);
}

SchedulerClass cls(std::string_view spec) {
    return *SchedulerClass::parse(spec);
}

}  // namespace

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::optional<OutputFormat> parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    if (name == "markdown" || name == "md") return OutputFormat::markdown;
    return std::nullopt;
}

void write_results(std::ostream& out, const std::vector<ExperimentResult>& results, OutputFormat format) {
    switch (format) {
        case OutputFormat::csv:
            out << kResultsCsvHeader << '\n';
            for (const auto& r : results) {
                out << csv_field(r.model) << ',' << csv_field(r.goal) << ',' << csv_field(r.cls.spec()) << ',' << r.n.factor << ',' << r.m << ','
                    << fixed(r.p_min, 6) << ',' << fixed(r.p_max, 6) << ',' << r.argmin_id.value << ','
                    << r.argmax_id.value << ',' << r.runs_stage1 << ',' << r.runs_stage2 << ',' << r.truncated
                    << '\n';
            }
            break;
        case OutputFormat::json: {
            auto rows = nlohmann::ordered_json::array();
            for (const auto& r : results) {
                rows.push_back({{"model", r.model},
                                {"goal", r.goal},
                                {"class", r.cls.spec()},
                                {"n", r.n.factor},
                                {"m", r.m},
                                {"p_min", r.p_min},
                                {"p_max", r.p_max},
                                {"argmin_id", r.argmin_id.value},
                                {"argmax_id", r.argmax_id.value},
                                {"runs_stage1", r.runs_stage1},
                                {"runs_stage2", r.runs_stage2},
                                {"truncated", r.truncated}});
            }
            out << rows.dump(2) << '\n';
            break;
        }
        case OutputFormat::markdown:
            out << "| model | goal | class | n | m | p_min | p_max | argmin_id | argmax_id | runs_stage1 | "
                   "runs_stage2 | truncated |\n";
            out << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
            for (const auto& r : results) {
                out << "| " << r.model << " | " << r.goal << " | `" << r.cls.spec() << "` | " << r.n.factor << " | "
                    << r.m << " | " << fixed(r.p_min, 4) << " | " << fixed(r.p_max, 4) << " | " << r.argmin_id.value
                    << " | " << r.argmax_id.value << " | " << r.runs_stage1 << " | " << r.runs_stage2 << " | "
                    << r.truncated << " |\n";
            }
            break;
    }
}

bool Fig8Row::pinned() const noexcept {
    const bool saturated = rounded(ref_min) == 0 && rounded(ref_max) == 100;
    const bool coin = rounded(ref_min) == 49 && rounded(ref_max) == 51;
    return saturated || coin;
}

const std::vector<Fig8Row>& fig8_rows() {
    static const std::vector<Fig8Row> rows = {
        {"M1", 1, cls("hist:v,e"), 0.24, 0.76, {2, 4}},
        {"M1", 1, cls("hist:v,o"), 0.49, 0.51, {1, 2, 4}},
        {"M1", 2, cls("ml:v,e"), 0.24, 0.76, {2, 4}},
        {"M1", 2, cls("ml:v,o"), 0.49, 0.51, {1, 2, 4}},
        {"M1", 3, cls("ml:t,e"), 0.24, 0.76, {2, 4}},
        {"M1", 3, cls("ml:t,o"), 0.49, 0.51, {1, 2, 4}},
        {"M1", 4, cls("ml:e"), 0.24, 0.76, {2, 4}},
        {"M1", 4, cls("ml:o"), 0.49, 0.51, {1, 2, 4}},
        {"M3", 1, cls("hist:t,e"), 0.00, 1.00, {1}},
        {"M3", 1, cls("ml:v,e"), 0.22, 0.78, {2}},
        {"M3", 1, cls("ml:t,e"), 0.40, 0.60, {2}},
        {"M3", 2, cls("ml:t,e"), 0.40, 0.60, {2}},
        {"M3", 2, cls("ml:t,o"), 0.00, 1.00, {1}},
        {"M3", 3, cls("ml:e"), 0.38, 0.63, {2}},
        {"M3", 3, cls("ml:o"), 0.00, 1.00, {1, 2, 4}},
        {"M3", 4, cls("hist:t"), 0.00, 1.00, {1, 2}},
        {"M3", 4, cls("ml:v"), 0.22, 0.78, {4}},
        {"M3", 4, cls("ml:t"), 0.49, 0.51, {1, 2, 4}},
        {"M2", 1, cls("hist:o"), 0.06, 0.94, {1, 2, 4}},
        {"M2", 1, cls("ml:v,o"), 0.18, 0.83, {1}},
        {"M4", 1, cls("ml:t,e"), 0.25, 0.79, {1}},
        {"M4", 1, cls("ml:e"), 0.29, 0.71, {1}},
        {"M4", 2, cls("ml:t"), 0.22, 0.78, {2, 4}},
        {"M4", 2, cls("ml:"), 0.28, 0.72, {1, 2, 4}},
        {"M5", 1, cls("ml:t,o"), 0.15, 0.86, {4}},
        {"M5", 1, cls("ml:o"), 0.16, 0.84, {1, 2, 4}},
        {"M6", 1, cls("hist:v"), 0.00, 1.00, {1, 2}},
        {"M6", 1, cls("ml:v"), 0.49, 0.51, {1, 2, 4}},
    };
    return rows;
}

std::vector<Fig8Entry> run_fig8(ExperimentCache& cache, const std::vector<Discretisation>& factors,
                                std::string_view goal) {
    if (factors.empty()) {
        throw ContractViolation("run_fig8 needs at least one discretisation factor");
    }
    std::map<std::string, SaModel> models;
    std::vector<Fig8Entry> entries;
    for (const Fig8Row& row : fig8_rows()) {
        auto it = models.find(row.model);
        if (it == models.end()) {
            it = models.emplace(row.model, builtin(row.model)).first;
        }
        Fig8Entry entry{row, 1.0, 0.0, {}, {}};
        for (const Discretisation n : factors) {
            const ExperimentResult& r = cache.get(it->second, goal, row.cls, n);
            entry.per_factor.push_back(r);
            entry.p_min = std::min(entry.p_min, r.p_min);
            entry.p_max = std::max(entry.p_max, r.p_max);
        }
        for (const ExperimentResult& r : entry.per_factor) {
            if (rounded(r.p_min) == rounded(entry.p_min) && rounded(r.p_max) == rounded(entry.p_max)) {
                entry.factors.push_back(r.n.factor);
            }
        }
        if (entry.factors.empty()) {
            for (const ExperimentResult& r : entry.per_factor) {
                if (rounded(r.p_max) == rounded(entry.p_max)) entry.factors.push_back(r.n.factor);
            }
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string format_factors(const std::vector<std::uint32_t>& factors) {
    std::string out = "{";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(factors[i]);
    }
    return out + "}";
}

namespace {

template <class Line>
std::string render_blocks(const std::vector<Fig8Entry>& entries, Line&& line) {
    std::string out;
    const Fig8Entry* prev = nullptr;
    for (const Fig8Entry& e : entries) {
        if (prev == nullptr || prev->row.model != e.row.model) {
            if (prev != nullptr) out += "\n";
            out += e.row.model + "\n";
        } else if (prev->row.group != e.row.group) {
            out += "  --\n";
        }
        out += "  " + line(e) + "\n";
        prev = &e;
    }
    return out;
}

std::string pair(double lo, double hi) {
    return "(" + fixed(lo, 2) + ", " + fixed(hi, 2) + ")";
}

}  // namespace

std::string render_fig8(const std::vector<Fig8Entry>& entries) {
    return render_blocks(entries, [](const Fig8Entry& e) {
        return e.row.cls.display_name() + ": " + pair(e.p_min, e.p_max) + format_factors(e.factors);
    });
}

std::string render_fig8_comparison(const std::vector<Fig8Entry>& entries) {
    return render_blocks(entries, [](const Fig8Entry& e) {
        return e.row.cls.display_name() + ": " + pair(e.p_min, e.p_max) + format_factors(e.factors) +
               "  expected " + pair(e.row.ref_min, e.row.ref_max) + format_factors(e.row.ref_factors);
    });
}

}  // namespace salss
