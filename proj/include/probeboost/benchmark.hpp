#pragma once

#include "probeboost/boosting.hpp"
#include "probeboost/metrics.hpp"
#include "probeboost/resampling.hpp"
#include "probeboost/simgen.hpp"
#include "probeboost/stability.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace probeboost {

enum class MethodKind {
    Probing,
    Cv,           // bootstrap CV on the raw design
    CvAugmented,  // bootstrap CV on the shadow-augmented design (shadows dropped from the selection)
    Stability,
};

struct MethodSpec {
    MethodKind kind = MethodKind::Probing;
    PartialErrorBound bound;  // Stability only: two of q / pi_thr / pfer, completed per scenario

    std::string label() const;
};

MethodSpec probing_method();
MethodSpec cv_method();
MethodSpec cv_augmented_method();
MethodSpec stability_method(PartialErrorBound bound);

// PFER in {1, 2.5, 8} x pi_thr in {0.6, 0.75, 0.9}, q completed from the bound.
std::vector<MethodSpec> standard_stability_grid();

struct BenchmarkConfig {
    std::vector<SimulationScenario> scenarios;
    std::vector<MethodSpec> methods;
    BoostConfig boost{0.1, 100, LossKind::Logistic, true};
    CvConfig cv;
    std::size_t stability_subsamples = 100;
    std::size_t stability_m_stop_cap = 5000;
    std::optional<std::size_t> probe_cap;  // default_probe_cap(n) when empty
    Seed seed = 0;
    std::size_t threads = 1;
    bool timing = true;  // when false runtime_seconds is written as 0
};

// One instance per (scenario, replicate), shared by every method. Rows come
// back ordered by (scenario, replicate, method) regardless of threading. A
// method that throws produces a row with status "error:<kind>" and the run
// continues.
std::vector<SelectionMetrics> run_benchmark(const BenchmarkConfig& config);

// Seed used for the instance of replicate r in scenario k.
Seed instance_seed(Seed root, std::size_t scenario_index, const SimulationScenario& scenario);

struct MethodOutcome {
    IndexList selected;
    double runtime_seconds = 0.0;
};

// Runs one method on one instance. shadow_seed is shared by Probing and
// CvAugmented so both see the same shadows; method_seed drives resampling.
MethodOutcome run_method(const MethodSpec& method, const Dataset& data,
                         const BenchmarkConfig& config, Seed shadow_seed, Seed method_seed);

}  // namespace probeboost
