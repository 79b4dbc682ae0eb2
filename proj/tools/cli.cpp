#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "salss/builtin.hpp"
#include "salss/errors.hpp"
#include "salss/hierarchy.hpp"
#include "salss/model_io.hpp"
#include "salss/oracle.hpp"
#include "salss/report.hpp"
#include "salss/smc.hpp"

namespace salss::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::string model;
    std::string goal = "win";
    std::string class_spec;
    std::uint32_t n = 1;
    std::size_t m = 10000;
    double epsilon = 0.01;
    double delta = 0.05;
    std::uint64_t max_steps = 100;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
    std::string format;
    std::string out_path;
    bool strict = false;
    bool fast = false;
    bool compare = false;
    bool verbose = false;
    std::string strategy;
    std::uint64_t runs = 1000000;
};

std::string class_list() {
    std::string out;
    for (const auto& c : all_classes()) {
        if (!out.empty()) out += " ";
        out += c.spec();
    }
    return out;
}

std::uint64_t resolve_seed(const CliConfig& cfg) {
    if (cfg.seed) {
        return *cfg.seed;
    }
    if (const char* env = std::getenv("SA_LSS_SEED"); env != nullptr && *env != '\0') {
        const std::string_view text{env};
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw UsageError("SA_LSS_SEED must be a decimal 64-bit integer, got '" + std::string{text} + "'");
        }
        return value;
    }
    return 1;
}

EstimationParams params_of(const CliConfig& cfg) {
    EstimationParams p;
    p.epsilon = cfg.epsilon;
    p.delta = cfg.delta;
    p.max_steps = cfg.max_steps;
    p.master_seed = resolve_seed(cfg);
    p.jobs = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.jobs;
    p.strict = cfg.strict;
    return p;
}

SchedulerClass class_of(const std::string& spec) {
    const auto cls = SchedulerClass::parse(spec);
    if (!cls) {
        throw UsageError("unknown scheduler class '" + spec + "'; valid specs: " + class_list());
    }
    return *cls;
}

SaModel model_of(const std::string& source) {
    try {
        return resolve_model(source);
    } catch (const NotFound&) {
        std::string names;
        for (const auto& n : builtin_names()) names += " " + n;
        throw UsageError("unknown model '" + source + "'; expected a model file or one of" + names);
    }
}

std::optional<OutputFormat> format_of(const CliConfig& cfg) {
    if (cfg.format.empty()) {
        return std::nullopt;
    }
    const auto f = parse_format(cfg.format);
    if (!f) {
        throw UsageError("unknown format '" + cfg.format + "' (csv, json, markdown)");
    }
    return f;
}

// Writes to --out when given, otherwise to `out`.
class Sink {
  public:
    Sink(const CliConfig& cfg, std::ostream& out) : _out{&out} {
        if (!cfg.out_path.empty()) {
            _file = std::make_unique<std::ofstream>(cfg.out_path, std::ios::binary);
            if (!*_file) {
                throw UsageError("cannot open '" + cfg.out_path + "' for writing");
            }
            _out = _file.get();
        }
    }
    std::ostream& stream() {
        return *_out;
    }

  private:
    std::ostream* _out;
    std::unique_ptr<std::ofstream> _file;
};

void add_estimation_options(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--goal", cfg.goal, "Goal set name")->capture_default_str();
    cmd->add_option("--epsilon", cfg.epsilon, "Precision of the reported estimates")->capture_default_str();
    cmd->add_option("--delta", cfg.delta, "Error probability")->capture_default_str();
    cmd->add_option("--max-steps", cfg.max_steps, "Step bound per run")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Master seed (default: $SA_LSS_SEED or 1)");
    cmd->add_option("--jobs", cfg.jobs, "Worker threads (0: one per core)")->capture_default_str();
    cmd->add_option("--format", cfg.format, "Output format: csv, json or markdown");
    cmd->add_option("--out", cfg.out_path, "Write output to this file");
    cmd->add_flag("--strict", cfg.strict, "Fail when a run hits the step bound");
    cmd->add_flag("--verbose", cfg.verbose, "Report each finished experiment on stderr");
}

void apply_fast_preset(CLI::App* cmd, CliConfig& cfg) {
    if (!cfg.fast) {
        return;
    }
    if (cmd->get_option("-m")->count() == 0) cfg.m = 1000;
    if (cmd->get_option("--epsilon")->count() == 0) cfg.epsilon = 0.05;
}

void attach_listener(ExperimentCache& cache, const CliConfig& cfg, std::ostream& err) {
    if (!cfg.verbose) {
        return;
    }
    cache.set_listener([&err](const ExperimentResult& r) {
        err << "done " << r.model << " " << r.cls.spec() << " n=" << r.n.factor << " p_min=" << r.p_min
            << " p_max=" << r.p_max << "\n";
    });
}

const std::vector<Discretisation> kFactors = {{1}, {2}, {4}};

int cmd_models_list(std::ostream& out) {
    for (const auto& name : builtin_names()) {
        const SaModel m = builtin(name);
        out << name << ": " << m.locations.size() << " locations, " << m.clocks.size() << " clocks";
        for (std::size_t c = 0; c < m.clocks.size(); ++c) {
            out << (c == 0 ? " (" : ", ") << m.clocks[c] << ": " << describe(m.delays[c]);
        }
        out << ")\n";
    }
    return kOk;
}

int cmd_validate(const std::string& source, std::ostream& out, std::ostream& err) {
    try {
        const SaModel m = model_of(source);
        const auto violations = validate(m);
        if (!violations.empty()) {
            for (const auto& v : violations) err << source << ": " << to_string(v.code) << ": " << v.message << "\n";
            return kFailed;
        }
        out << source << ": ok (" << m.locations.size() << " locations, " << m.clocks.size() << " clocks)\n";
        return kOk;
    } catch (const ParseError& e) {
        err << source << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
        return kFailed;
    } catch (const ValidationFailed& e) {
        for (const auto& v : e.violations()) err << source << ": " << to_string(v.code) << ": " << v.message << "\n";
        return kFailed;
    }
}

int cmd_simulate(const CliConfig& cfg, std::ostream& out) {
    const SaModel model = model_of(cfg.model);
    NamedStrategy strategy;
    try {
        strategy = named_strategy(model, cfg.strategy);
    } catch (const NotFound&) {
        std::string names;
        for (const auto& n : strategy_names(model.name)) names += " " + n;
        throw UsageError("unknown strategy '" + cfg.strategy + "' for " + model.name + "; available:" +
                         (names.empty() ? std::string{" none"} : names));
    }
    if (cfg.runs == 0) {
        throw UsageError("--runs must be positive");
    }
    const Estimate est =
        mc_reference(model, strategy, cfg.runs, resolve_seed(cfg), cfg.delta, cfg.goal, cfg.max_steps);
    Sink sink{cfg, out};
    auto& os = sink.stream();
    const auto fmt = format_of(cfg).value_or(OutputFormat::csv);
    char p[32];
    char hw[32];
    std::snprintf(p, sizeof p, "%.6f", est.p_hat);
    std::snprintf(hw, sizeof hw, "%.6f", est.half_width);
    if (fmt == OutputFormat::json) {
        os << "{\"model\": \"" << model.name << "\", \"strategy\": \"" << strategy.rule << "\", \"class\": \""
           << strategy.declared.spec() << "\", \"runs\": " << est.runs << ", \"p_hat\": " << p
           << ", \"half_width\": " << hw << ", \"truncated\": " << est.truncated << "}\n";
    } else if (fmt == OutputFormat::markdown) {
        os << "| model | strategy | class | runs | p_hat | half_width | truncated |\n|---|---|---|---|---|---|---|\n";
        os << "| " << model.name << " | " << strategy.rule << " | `" << strategy.declared.spec() << "` | " << est.runs
           << " | " << p << " | " << hw << " | " << est.truncated << " |\n";
    } else {
        os << "model,strategy,class,runs,p_hat,half_width,truncated\n";
        os << csv_field(model.name) << ',' << csv_field(strategy.rule) << ',' << csv_field(strategy.declared.spec()) << ',' << est.runs << ',' << p
           << ',' << hw << ',' << est.truncated << '\n';
    }
    return kOk;
}

int cmd_lss(const CliConfig& cfg, std::ostream& out) {
    const SaModel model = model_of(cfg.model);
    const SchedulerClass cls = class_of(cfg.class_spec);
    if (cfg.n == 0) throw UsageError("--n must be positive");
    if (cfg.m == 0) throw UsageError("-m must be positive");
    const auto fmt = format_of(cfg).value_or(OutputFormat::csv);
    const ExperimentResult r = lss_experiment(model, cfg.goal, cls, Discretisation{cfg.n}, cfg.m, params_of(cfg));
    Sink sink{cfg, out};
    write_results(sink.stream(), {r}, fmt);
    return kOk;
}

int cmd_fig8(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto fmt = format_of(cfg);
    ExperimentCache cache{cfg.m, params_of(cfg)};
    attach_listener(cache, cfg, err);
    const auto entries = run_fig8(cache, kFactors, cfg.goal);
    Sink sink{cfg, out};
    if (fmt) {
        std::vector<ExperimentResult> all;
        for (const auto& e : entries) {
            for (const auto& r : e.per_factor) {
                const bool seen = std::any_of(all.begin(), all.end(), [&](const ExperimentResult& x) {
                    return x.model == r.model && x.cls == r.cls && x.n == r.n;
                });
                if (!seen) all.push_back(r);
            }
        }
        write_results(sink.stream(), all, *fmt);
    } else {
        sink.stream() << (cfg.compare ? render_fig8_comparison(entries) : render_fig8(entries));
    }
    return kOk;
}

int cmd_hierarchy(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    ExperimentCache cache{cfg.m, params_of(cfg)};
    attach_listener(cache, cfg, err);
    const auto mode = cfg.fast ? HierarchyMode::fast : HierarchyMode::full;
    const HierarchyReport report = hierarchy_check(cache, hierarchy_scenarios(), kFactors, mode, cfg.goal);
    Sink sink{cfg, out};
    auto& os = sink.stream();
    for (const auto& r : report.results) {
        os << (r.passed ? "PASS " : "FAIL ") << r.scenario.describe() << "  p_max:";
        for (const double p : r.p_max) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.4f", p);
            os << buf;
        }
        os << "\n";
    }
    os << (report.all_passed() ? "all scenarios passed" : "some scenarios failed") << " (slack " << report.slack
       << ", " << (cfg.fast ? "fast" : "full") << " mode)\n";
    return report.all_passed() ? kOk : kFailed;
}

int cmd_reference(const CliConfig& cfg, std::ostream& out) {
    Sink sink{cfg, out};
    write_reference_csv(sink.stream(), reference_table());
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Simulation and lightweight scheduler sampling for stochastic automata"};
    app.name("salss");
    app.require_subcommand(1);
    app.footer("Scheduler class specs: " + class_list());

    auto* models = app.add_subcommand("models", "Builtin models");
    auto* models_list = models->add_subcommand("list", "List the builtin models");
    models->require_subcommand(1);

    std::string source;
    auto* validate_cmd = app.add_subcommand("validate", "Check a model file or builtin");
    validate_cmd->add_option("source", source, "Builtin name (M0..M6) or model file")->required();

    auto* simulate_cmd = app.add_subcommand("simulate", "Estimate the goal probability of a fixed strategy");
    simulate_cmd->add_option("--model", cfg.model, "Builtin name or model file")->required();
    simulate_cmd->add_option("--strategy", cfg.strategy, "Named strategy")->required();
    simulate_cmd->add_option("--runs", cfg.runs, "Number of runs")->capture_default_str();
    add_estimation_options(simulate_cmd, cfg);

    auto* lss_cmd = app.add_subcommand("lss", "Lightweight scheduler sampling for one class");
    lss_cmd->add_option("--model", cfg.model, "Builtin name or model file")->required();
    lss_cmd->add_option("--class", cfg.class_spec, "Scheduler class, e.g. hist:v,e or ml:")->required();
    lss_cmd->add_option("--n", cfg.n, "Discretisation factor")->capture_default_str();
    lss_cmd->add_option("-m", cfg.m, "Number of sampled schedulers")->capture_default_str();
    add_estimation_options(lss_cmd, cfg);

    auto* table_cmd = app.add_subcommand("table", "Reproduce a results table");
    auto* fig8_cmd = table_cmd->add_subcommand("fig8", "All scenarios of the scheduler-class table, n in {1,2,4}");
    table_cmd->require_subcommand(1);
    fig8_cmd->add_flag("--fast", cfg.fast, "Use m=1000 and epsilon=0.05");
    fig8_cmd->add_flag("--compare", cfg.compare, "Show the reference values next to the results");
    fig8_cmd->add_option("-m", cfg.m, "Number of sampled schedulers")->capture_default_str();
    add_estimation_options(fig8_cmd, cfg);

    auto* hierarchy_cmd = app.add_subcommand("hierarchy", "Check the expected orderings between classes");
    hierarchy_cmd->add_flag("--fast", cfg.fast, "Use m=1000 and epsilon=0.05 and only check ordering with slack");
    hierarchy_cmd->add_option("-m", cfg.m, "Number of sampled schedulers")->capture_default_str();
    add_estimation_options(hierarchy_cmd, cfg);

    auto* reference_cmd = app.add_subcommand("reference", "Print the table of exact reference values as CSV");
    reference_cmd->add_option("--out", cfg.out_path, "Write output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kUsage;
    }

    try {
        if (models_list->parsed()) return cmd_models_list(out);
        if (validate_cmd->parsed()) return cmd_validate(source, out, err);
        if (simulate_cmd->parsed()) return cmd_simulate(cfg, out);
        if (lss_cmd->parsed()) return cmd_lss(cfg, out);
        if (fig8_cmd->parsed()) {
            apply_fast_preset(fig8_cmd, cfg);
            return cmd_fig8(cfg, out, err);
        }
        if (hierarchy_cmd->parsed()) {
            apply_fast_preset(hierarchy_cmd, cfg);
            return cmd_hierarchy(cfg, out, err);
        }
        if (reference_cmd->parsed()) return cmd_reference(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NotFound& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const ValidationFailed& e) {
        for (const auto& v : e.violations()) err << "error: " << to_string(v.code) << ": " << v.message << "\n";
        return kFailed;
    } catch (const TruncationError& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace salss::cli
