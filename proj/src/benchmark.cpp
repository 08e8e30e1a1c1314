#include "probeboost/benchmark.hpp"

#include "probeboost/csv.hpp"
#include "probeboost/error.hpp"
#include "probeboost/parallel.hpp"
#include "probeboost/probing.hpp"

#include <chrono>
#include <exception>

namespace probeboost {

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string error_label(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const ConfigError&) {
        return "error:config";
    } catch (const DataError&) {
        return "error:data";
    } catch (...) {
        return "error:runtime";
    }
}

}  // namespace

std::string MethodSpec::label() const {
    switch (kind) {
    case MethodKind::Probing:
        return "probing";
    case MethodKind::Cv:
        return "cv";
    case MethodKind::CvAugmented:
        return "cv_augmented";
    case MethodKind::Stability: {
        std::string out = "stabsel";
        if (bound.pfer) {
            out += "_pfer" + format_double(*bound.pfer);
        }
        if (bound.pi_thr) {
            out += "_pi" + format_double(*bound.pi_thr);
        }
        if (bound.q) {
            out += "_q" + std::to_string(*bound.q);
        }
        return out;
    }
    }
    return "unknown";
}

MethodSpec probing_method() {
    return {MethodKind::Probing, {}};
}

MethodSpec cv_method() {
    return {MethodKind::Cv, {}};
}

MethodSpec cv_augmented_method() {
    return {MethodKind::CvAugmented, {}};
}

MethodSpec stability_method(PartialErrorBound bound) {
    return {MethodKind::Stability, bound};
}

std::vector<MethodSpec> standard_stability_grid() {
    std::vector<MethodSpec> out;
    for (const double pfer : {1.0, 2.5, 8.0}) {
        for (const double pi : {0.6, 0.75, 0.9}) {
            out.push_back(stability_method({std::nullopt, pi, pfer}));
        }
    }
    return out;
}

Seed instance_seed(Seed root, std::size_t scenario_index, const SimulationScenario& scenario) {
    return derive_seed(root, {scenario_index, scenario.seed});
}

MethodOutcome run_method(const MethodSpec& method, const Dataset& data,
                         const BenchmarkConfig& config, Seed shadow_seed, Seed method_seed) {
    using Clock = std::chrono::steady_clock;
    MethodOutcome out;
    Clock::time_point start;

    switch (method.kind) {
    case MethodKind::Probing: {
        auto boost = config.boost;
        boost.m_stop = config.probe_cap.value_or(default_probe_cap(data.rows()));
        start = Clock::now();
        out.selected = probe_select(data, boost, shadow_seed).selected;
        break;
    }
    case MethodKind::Cv: {
        auto cv = config.cv;
        cv.seed = method_seed;
        start = Clock::now();
        out.selected = distinct_selected(bootstrap_cv(data, config.boost, cv).final_trace);
        break;
    }
    case MethodKind::CvAugmented: {
        auto cv = config.cv;
        cv.seed = method_seed;
        start = Clock::now();
        const auto augmented = make_shadows(data, shadow_seed);
        const auto trace = bootstrap_cv(augmented.base, config.boost, cv).final_trace;
        for (const auto j : distinct_selected(trace)) {
            if (!augmented.base.shadow_mask[j]) {
                out.selected.push_back(j);
            }
        }
        break;
    }
    case MethodKind::Stability: {
        auto stab = StabilityConfig::from_bound(complete_config(method.bound, data.cols()));
        stab.b_subsamples = config.stability_subsamples;
        stab.m_stop_cap = config.stability_m_stop_cap;
        stab.seed = method_seed;
        start = Clock::now();
        out.selected = stability_select(data, config.boost, stab).stable_set;
        break;
    }
    }
    out.runtime_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
}

std::vector<SelectionMetrics> run_benchmark(const BenchmarkConfig& config) {
    if (config.methods.empty()) {
        throw ConfigError("benchmark needs at least one method");
    }
    config.boost.validate();
    config.cv.validate();
    for (const auto& s : config.scenarios) {
        s.validate();
    }

    std::vector<SelectionMetrics> rows;
    for (std::size_t k = 0; k < config.scenarios.size(); ++k) {
        auto scenario = config.scenarios[k];
        const auto reps = scenario.replications;
        const auto methods = config.methods.size();
        std::vector<SelectionMetrics> slots(reps * methods);

        parallel_for(reps, config.threads, [&](std::size_t r) {
            auto sim = scenario;
            sim.seed = instance_seed(config.seed, k, scenario);
            const auto inst = simulate_instance(sim, r);
            const auto shadow_seed = derive_seed(sim.seed, {r, 0x5ad0});
            for (std::size_t m = 0; m < methods; ++m) {
                const auto& method = config.methods[m];
                const auto label = method.label();
                auto& slot = slots[r * methods + m];
                try {
                    const auto method_seed = derive_seed(sim.seed, {r, fnv1a(label)});
                    const auto outcome = run_method(method, inst.data, config, shadow_seed, method_seed);
                    slot = evaluate_selection(scenario, r, label, outcome.selected,
                                              inst.informative_set,
                                              config.timing ? outcome.runtime_seconds : 0.0);
                } catch (...) {
                    slot.scenario = scenario;
                    slot.replicate = r;
                    slot.method = label;
                    slot.status = error_label(std::current_exception());
                }
            }
        });
        for (auto& s : slots) {
            rows.push_back(std::move(s));
        }
    }
    return rows;
}

}  // namespace probeboost
