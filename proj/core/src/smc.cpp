#include "salss/smc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include "salss/errors.hpp"

namespace salss {

std::uint64_t okamoto_runs(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw ContractViolation("okamoto_runs expects epsilon and delta in (0, 1)");
    }
    return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

double hoeffding_half_width(std::uint64_t runs, double delta) {
    if (runs == 0) {
        throw ContractViolation("half width of an empty sample");
    }
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(runs)));
}

std::uint64_t run_seed(std::uint64_t master_seed, SchedulerId id, std::uint64_t run_index) {
    Fnv1a64 h;
    h.add_u64(master_seed);
    h.add_u32(id.value);
    h.add_u64(run_index);
    return h.value();
}

RunOutcome simulate_run(const SaModel& model, const GoalSet& goal, const LssScheduler& sched,
                        const EstimationParams& params, std::uint64_t run_index, RunWorkspace& ws) {
    SplitMix64 rng{run_seed(params.master_seed, sched.id, run_index)};
    const Observer observer = sched.observer();
    return run_to_outcome(model, goal, params.max_steps, rng, &observer, ws,
                          [&](const RunContext& ctx, std::span<const std::size_t> enabled) {
                              project_into(observer, ctx, ws.key);
                              return decide(sched.id, ws.key, enabled.size());
                          });
}

RunOutcome simulate_run(const SaModel& model, const GoalSet& goal, const LssScheduler& sched,
                        const EstimationParams& params, std::uint64_t run_index) {
    RunWorkspace ws;
    return simulate_run(model, goal, sched, params, run_index, ws);
}

Estimate estimate(const SaModel& model, const GoalSet& goal, const LssScheduler& sched, std::uint64_t runs,
                  const EstimationParams& params, std::uint64_t first_run, RunWorkspace& ws) {
    if (runs == 0) {
        throw ContractViolation("estimate needs at least one run");
    }
    Estimate est;
    est.runs = runs;
    for (std::uint64_t i = 0; i < runs; ++i) {
        const RunOutcome out = simulate_run(model, goal, sched, params, first_run + i, ws);
        if (out.kind == OutcomeKind::reached) {
            ++est.reached;
        } else if (out.kind == OutcomeKind::truncated) {
            if (params.strict) {
                throw TruncationError("run " + std::to_string(first_run + i) + " of scheduler " +
                                      std::to_string(sched.id.value) + " hit the step bound of " +
                                      std::to_string(params.max_steps));
            }
            ++est.truncated;
        }
    }
    est.p_hat = static_cast<double>(est.reached) / static_cast<double>(runs);
    est.half_width = hoeffding_half_width(runs, params.delta);
    return est;
}

Estimate estimate(const SaModel& model, const GoalSet& goal, const LssScheduler& sched, std::uint64_t runs,
                  const EstimationParams& params, std::uint64_t first_run) {
    RunWorkspace ws;
    return estimate(model, goal, sched, runs, params, first_run, ws);
}

std::uint64_t stage1_runs(const EstimationParams& params) {
    const double coarse = 10.0 * params.epsilon;
    if (coarse >= 1.0) {
        return params.min_stage1_runs;
    }
    return std::max(params.min_stage1_runs, okamoto_runs(coarse, params.delta));
}

namespace {

// Calls fn(i, workspace) for i in [0, count) on up to `jobs` threads. Results
// must be written to slot i so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, const ProgressFn& progress, Fn&& fn) {
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        RunWorkspace ws;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                fn(i, ws);
            } catch (...) {
                std::lock_guard lock{failure_mutex};
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(count);
                return;
            }
            const std::size_t d = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard lock{progress_mutex};
                progress(d, count);
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace

ExperimentResult lss_experiment(const SaModel& model, std::string_view goal_name, SchedulerClass cls,
                                Discretisation n, std::size_t m, const EstimationParams& params,
                                const ProgressFn& progress) {
    if (m == 0) {
        throw ContractViolation("lss_experiment needs at least one scheduler");
    }
    if (n.factor == 0) {
        throw ContractViolation("discretisation factor must be positive");
    }
    const GoalSet goal = goal_set(model, goal_name);
    const std::vector<SchedulerId> ids = sample_ids(m, params.master_seed);
    const std::uint64_t n1 = stage1_runs(params);
    const std::uint64_t n2 = okamoto_runs(params.epsilon, params.delta);

    std::vector<Estimate> coarse(m);
    parallel_for(m, params.jobs, progress, [&](std::size_t i, RunWorkspace& ws) {
        coarse[i] = estimate(model, goal, LssScheduler{ids[i], cls, n}, n1, params, 0, ws);
    });

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t k = std::min(params.top_k, m);
    std::set<std::size_t> chosen;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (coarse[a].p_hat != coarse[b].p_hat) return coarse[a].p_hat > coarse[b].p_hat;
        return ids[a] < ids[b];
    });
    chosen.insert(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (coarse[a].p_upper() != coarse[b].p_upper()) return coarse[a].p_upper() < coarse[b].p_upper();
        return ids[a] < ids[b];
    });
    chosen.insert(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));

    const std::vector<std::size_t> finalists(chosen.begin(), chosen.end());
    std::vector<Estimate> fresh(finalists.size());
    parallel_for(finalists.size(), params.jobs, {}, [&](std::size_t j, RunWorkspace& ws) {
        fresh[j] = estimate(model, goal, LssScheduler{ids[finalists[j]], cls, n}, n2, params, n1, ws);
    });

    ExperimentResult result;
    result.model = model.name;
    result.goal = std::string{goal_name};
    result.cls = cls;
    result.n = n;
    result.m = m;
    result.runs_stage1 = n1;
    result.runs_stage2 = n2;
    for (const Estimate& e : coarse) {
        result.truncated += e.truncated;
    }
    for (const Estimate& e : fresh) {
        result.truncated += e.truncated;
    }
    bool first = true;
    for (std::size_t j = 0; j < finalists.size(); ++j) {
        const SchedulerId id = ids[finalists[j]];
        const double hi = fresh[j].p_hat;
        const double lo = fresh[j].p_upper();
        if (first || hi > result.p_max || (hi == result.p_max && id < result.argmax_id)) {
            result.p_max = hi;
            result.argmax_id = id;
        }
        if (first || lo < result.p_min || (lo == result.p_min && id < result.argmin_id)) {
            result.p_min = lo;
            result.argmin_id = id;
        }
        first = false;
    }
    result.p_min = std::min(result.p_min, result.p_max);
    return result;
}

const ExperimentResult& ExperimentCache::get(const SaModel& model, std::string_view goal, SchedulerClass cls,
                                             Discretisation n) {
    Key key{model.name, std::string{goal}, cls.tag(), n.factor};
    std::lock_guard lock{_mutex};
    auto it = _results.find(key);
    if (it == _results.end()) {
        auto result = std::make_unique<ExperimentResult>(lss_experiment(model, goal, cls, n, _m, _params, _progress));
        it = _results.emplace(std::move(key), std::move(result)).first;
        if (_listener) {
            _listener(*it->second);
        }
    }
    return *it->second;
}

}  // namespace salss
