#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "salss/lss.hpp"
#include "salss/model.hpp"
#include "salss/runner.hpp"

namespace salss {

struct EstimationParams {
    double epsilon = 0.01;
    double delta = 0.05;
    std::uint64_t max_steps = 100;
    std::uint64_t master_seed = 0;
    unsigned jobs = 1;
    std::size_t top_k = 10;
    std::uint64_t min_stage1_runs = 100;
    bool strict = false;
};

/// ⌈ln(2/δ) / (2ε²)⌉. Throws ContractViolation outside (0, 1).
std::uint64_t okamoto_runs(double epsilon, double delta);

/// sqrt(ln(2/δ) / (2 runs)).
double hoeffding_half_width(std::uint64_t runs, double delta);

/// Seed of the RNG stream for one run: FNV-1a(master_seed ‖ id ‖ run_index).
std::uint64_t run_seed(std::uint64_t master_seed, SchedulerId id, std::uint64_t run_index);

RunOutcome simulate_run(const SaModel& model, const GoalSet& goal, const LssScheduler& sched,
                        const EstimationParams& params, std::uint64_t run_index, RunWorkspace& ws);
RunOutcome simulate_run(const SaModel& model, const GoalSet& goal, const LssScheduler& sched,
                        const EstimationParams& params, std::uint64_t run_index);

struct Estimate {
    std::uint64_t runs = 0;
    std::uint64_t reached = 0;
    std::uint64_t truncated = 0;
    double p_hat = 0.0;
    double half_width = 0.0;

    /// Truncated runs counted as reached.
    double p_upper() const noexcept {
        return runs == 0 ? 0.0 : static_cast<double>(reached + truncated) / static_cast<double>(runs);
    }
};

/// Runs indices [first_run, first_run + runs). p_hat counts truncated runs as
/// not reached. Throws TruncationError in strict mode.
Estimate estimate(const SaModel& model, const GoalSet& goal, const LssScheduler& sched, std::uint64_t runs,
                  const EstimationParams& params, std::uint64_t first_run = 0);
Estimate estimate(const SaModel& model, const GoalSet& goal, const LssScheduler& sched, std::uint64_t runs,
                  const EstimationParams& params, std::uint64_t first_run, RunWorkspace& ws);

struct ExperimentResult {
    std::string model;
    std::string goal;
    SchedulerClass cls;
    Discretisation n;
    std::uint64_t m = 0;
    double p_min = 0.0;
    double p_max = 0.0;
    SchedulerId argmin_id;
    SchedulerId argmax_id;
    std::uint64_t runs_stage1 = 0;
    std::uint64_t runs_stage2 = 0;
    std::uint64_t truncated = 0;

    bool operator==(const ExperimentResult&) const = default;
};

/// Stage-1 run count: max(min_stage1_runs, okamoto_runs(10ε, δ)), or
/// min_stage1_runs when 10ε >= 1.
std::uint64_t stage1_runs(const EstimationParams& params);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Two-stage LSS: every sampled id gets stage1_runs() runs; the top_k ids by
/// estimate and the bottom top_k are re-estimated with okamoto_runs(ε, δ)
/// fresh runs, and the extremes of the fresh estimates are reported.
ExperimentResult lss_experiment(const SaModel& model, std::string_view goal, SchedulerClass cls, Discretisation n,
                                std::size_t m, const EstimationParams& params, const ProgressFn& progress = {});

/// Memoises lss_experiment by (model, goal, class, n) for fixed m and params.
class ExperimentCache {
  public:
    ExperimentCache(std::size_t m, EstimationParams params) : _m{m}, _params{params} {}

    const ExperimentResult& get(const SaModel& model, std::string_view goal, SchedulerClass cls, Discretisation n);

    std::size_t m() const noexcept {
        return _m;
    }
    const EstimationParams& params() const noexcept {
        return _params;
    }

    void set_progress(ProgressFn fn) {
        _progress = std::move(fn);
    }

    /// Called once per experiment that was actually computed.
    void set_listener(std::function<void(const ExperimentResult&)> fn) {
        _listener = std::move(fn);
    }

  private:
    using Key = std::tuple<std::string, std::string, std::uint64_t, std::uint32_t>;
    std::size_t _m;
    EstimationParams _params;
    ProgressFn _progress;
    std::function<void(const ExperimentResult&)> _listener;
    std::map<Key, std::unique_ptr<ExperimentResult>> _results;
    std::mutex _mutex;
};

}  // namespace salss
