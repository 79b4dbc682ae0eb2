// Prints one PASS/FAIL line per acceptance criterion. Exits nonzero only for
// failures outside the documented deviations listed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "properties.hpp"
#include "salss/builtin.hpp"
#include "salss/hierarchy.hpp"
#include "salss/oracle.hpp"
#include "salss/report.hpp"
#include "salss/smc.hpp"

using namespace salss;

namespace {

// Measured deviations that reproduce with every seed tried. Each still prints
// FAIL; see the README section on known deviations.
const std::vector<std::pair<std::string, std::string>> kKnownFig8 = {{"M4", "ml:t,e"}};
const std::vector<std::string> kKnownHierarchy = {"M5: ml ℓ,t,o > ml ℓ,o"};

struct Verdict {
    bool passed = true;
    bool unexpected = false;
};

int g_unexpected = 0;

void report(const char* name, const Verdict& v, const std::string& note = {}) {
    std::cout << name << ' ' << (v.passed ? "PASS" : "FAIL");
    if (!note.empty()) std::cout << "  (" << note << ')';
    std::cout << std::endl;
    if (v.unexpected) ++g_unexpected;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

unsigned jobs() {
    return std::max(1u, std::thread::hardware_concurrency());
}

void ac1() {
    struct Case {
        const char* model;
        std::vector<const char*> strategies;  // best of these
        double expected;
    };
    const std::vector<Case> cases = {
        {"M1", {"x-threshold-1/2"}, 0.75},
        {"M2", {"left-iff-x-before-z"}, 77.0 / 96.0},
        {"M2", {"left-iff-x-before-z-and-vx<35/12"}, 7561.0 / 9216.0},
        {"M4", {"always-l3", "always-l4"}, 17.0 / 24.0},
        {"M0", {"always-left"}, 0.5},
    };
    constexpr std::uint64_t kRuns = 10'000'000;
    Verdict v;
    std::uint64_t seed = 1;
    for (const auto& c : cases) {
        const SaModel m = builtin(c.model);
        double best = 0.0;
        for (const char* s : c.strategies) {
            best = std::max(best, mc_reference(m, named_strategy(m, s), kRuns, seed++).p_hat);
        }
        const bool ok = std::fabs(best - c.expected) <= 0.002;
        std::cout << "  " << c.model << ' ' << c.strategies.front() << fmt(": %.4f vs %.4f", best, c.expected)
                  << (ok ? "" : "  out of tolerance") << '\n';
        v.passed = v.passed && ok;
    }
    v.unexpected = !v.passed;
    report("AC1", v, "fixed-strategy references, 1e7 runs, tolerance 0.002");
}

void ac2(ExperimentCache& cache) {
    const auto entries = run_fig8(cache, {{1}, {2}, {4}});
    std::cout << render_fig8_comparison(entries);
    Verdict v;
    std::size_t known = 0;
    for (const auto& e : entries) {
        const double tol = e.row.pinned() ? 0.02 : 0.05;
        const bool ok = std::fabs(e.p_min - e.row.ref_min) <= tol && std::fabs(e.p_max - e.row.ref_max) <= tol;
        if (ok) continue;
        v.passed = false;
        const bool is_known = std::find(kKnownFig8.begin(), kKnownFig8.end(),
                                        std::pair{e.row.model, e.row.cls.spec()}) != kKnownFig8.end();
        known += is_known;
        v.unexpected = v.unexpected || !is_known;
        std::cout << "  outside tolerance: " << e.row.model << ' ' << e.row.cls.display_name()
                  << fmt(" (%.2f, %.2f)", e.p_min, e.p_max) << fmt(" vs (%.2f, %.2f)", e.row.ref_min, e.row.ref_max)
                  << (is_known ? "  known deviation" : "") << '\n';
    }
    report("AC2", v,
           std::to_string(entries.size()) + " entries, m=" + std::to_string(cache.m()) +
               (known ? ", " + std::to_string(known) + " known deviation" : ""));
}

void ac3(ExperimentCache& cache) {
    const auto rep = hierarchy_check(cache, hierarchy_scenarios(), {{1}, {2}, {4}}, HierarchyMode::full);
    Verdict v;
    std::size_t known = 0;
    for (const auto& r : rep.results) {
        std::cout << "  " << (r.passed ? "ok   " : "fail ") << r.scenario.describe() << "  p_max:";
        for (const double p : r.p_max) std::cout << fmt(" %.4f", p);
        const bool is_known =
            std::find(kKnownHierarchy.begin(), kKnownHierarchy.end(), r.scenario.describe()) != kKnownHierarchy.end();
        if (!r.passed) {
            v.passed = false;
            known += is_known;
            v.unexpected = v.unexpected || !is_known;
            if (is_known) std::cout << "  known deviation";
        }
        std::cout << '\n';
    }
    report("AC3", v,
           std::to_string(rep.results.size()) + " scenarios, slack " + fmt("%.2f", rep.slack) +
               (known ? ", " + std::to_string(known) + " known deviation" : ""));
}

std::string cli(std::vector<std::string> args) {
    args.insert(args.begin(), "salss");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    if (cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err) != 0) {
        return "error: " + err.str();
    }
    return out.str();
}

// Byte-level reimplementation of the decision function.
std::size_t decide_oracle(std::uint32_t id, const ObservationKey& key, std::size_t k) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](std::uint64_t word, int bytes) {
        for (int i = 0; i < bytes; ++i) {
            h ^= (word >> (8 * i)) & 0xFF;
            h *= 0x100000001b3ULL;
        }
    };
    feed(id, 4);
    for (const auto w : key.words()) feed(w, 8);
    std::uint64_t z = h + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
    return std::min(k - 1, static_cast<std::size_t>(u * static_cast<double>(k)));
}

void ac4() {
    Verdict v;
    const std::string j = std::to_string(jobs());
    const std::vector<std::vector<std::string>> commands = {
        {"lss", "--model", "M1", "--class", "hist:v,e", "--n", "2", "-m", "2000", "--seed", "5"},
        {"lss", "--model", "M3", "--class", "ml:t,o", "-m", "2000", "--seed", "6"},
        {"table", "fig8", "--fast", "--format", "csv", "--seed", "7"},
    };
    for (const auto& base : commands) {
        auto one = base;
        one.insert(one.end(), {"--jobs", "1"});
        auto many = base;
        many.insert(many.end(), {"--jobs", "4"});
        auto all = base;
        all.insert(all.end(), {"--jobs", j});
        const std::string a = cli(one);
        const bool ok = a.rfind("model,", 0) == 0 && cli(one) == a && cli(many) == a && cli(all) == a;
        std::cout << "  csv " << base[0] << ' ' << base[2] << ": " << (ok ? "identical" : "differs") << '\n';
        v.passed = v.passed && ok;
    }

    SplitMix64 rng{99};
    std::size_t impure = 0;
    for (int i = 0; i < 100000; ++i) {
        const SaModel m = builtin(builtin_names()[i % 7]);
        const Observer o{all_classes()[i % 18], {1u << (i % 3)}};
        const ObservationKey key = project(o, testkit::random_context(m, rng));
        const SchedulerId id{static_cast<std::uint32_t>(rng.next())};
        const std::size_t k = 1 + rng.next() % 6;
        const std::size_t d = decide(id, key, k);
        impure += d != decide(id, key, k) || d != decide_oracle(id.value, key, k);
    }
    std::cout << "  decide mismatches: " << impure << " of 100000\n";
    const std::size_t masking = testkit::masking_violations(10000, 2024);
    std::cout << "  masking violations: " << masking << " of " << 18 * 10000 << '\n';
    v.passed = v.passed && impure == 0 && masking == 0;
    v.unexpected = !v.passed;
    report("AC4", v, "csv determinism, decide purity, masking");
}

void ac5() {
    Verdict v;
    for (const auto& name : builtin_names()) {
        std::size_t checked = 0;
        const std::size_t bad = testkit::min_delay_grid_violations(builtin(name), 1000, 10000, 17, &checked);
        std::cout << "  min_delay " << name << ": " << bad << " mismatches on " << checked << " states\n";
        v.passed = v.passed && bad == 0 && checked == 1000;
    }
    const std::size_t expired = testkit::expired_stays_expired_violations(100000, 18);
    const double ks = testkit::ks_distance_m0(100000, 19);
    std::cout << "  expired-stays-expired violations: " << expired << " of 100000\n";
    std::cout << fmt("  KS distance: %.5f\n", ks);
    v.passed = v.passed && expired == 0 && ks < 0.01;
    v.unexpected = !v.passed;
    report("AC5", v, "min_delay grid scan, expired-stays-expired, KS");
}

void ac6() {
    const auto a = okamoto_runs(0.01, 0.05);
    const auto b = okamoto_runs(0.1, 0.05);
    const auto direct = [](double e, double d) {
        return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / d) / (2.0 * e * e)));
    };
    Verdict v;
    v.passed = a == 18445 && b == 185 && a == direct(0.01, 0.05) && b == direct(0.1, 0.05);
    v.unexpected = !v.passed;
    report("AC6", v, "okamoto_runs = " + std::to_string(a) + ", " + std::to_string(b));
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t m = 10000;
    if (argc > 1) m = std::stoull(argv[1]);
    const auto start = std::chrono::steady_clock::now();

    ac6();
    ac5();
    ac4();
    ac1();
    EstimationParams params;
    params.epsilon = 0.01;
    params.delta = 0.05;
    params.master_seed = 1;
    params.jobs = jobs();
    ExperimentCache cache{m, params};
    ac2(cache);
    ac3(cache);

    const auto secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << fmt("finished in %.0f s, ", secs) << g_unexpected << " unexpected failure(s)\n";
    return g_unexpected == 0 ? 0 : 1;
}
