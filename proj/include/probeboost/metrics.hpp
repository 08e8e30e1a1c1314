#pragma once

#include "probeboost/dataset.hpp"
#include "probeboost/simgen.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace probeboost {

// |selected ∩ informative| / |informative|. Throws std::invalid_argument for
// an empty informative set.
double tpr(const IndexList& selected, const IndexList& informative);

// |selected \ informative| / |selected|, and 0 for an empty selection.
double fdr(const IndexList& selected, const IndexList& informative);

// Number of selected indices outside the informative set.
std::size_t false_positives(const IndexList& selected, const IndexList& informative);

struct SelectionMetrics {
    SimulationScenario scenario;
    std::size_t replicate = 0;
    std::string method;
    std::size_t n_selected = 0;
    std::optional<double> tpr;  // empty when the scenario has no informative variables
    double fdr = 0.0;
    double runtime_seconds = 0.0;
    std::string status = "ok";  // "error:<label>" for failed runs

    bool ok() const { return status == "ok"; }
};

SelectionMetrics evaluate_selection(const SimulationScenario& scenario, std::size_t replicate,
                                    std::string method, const IndexList& selected,
                                    const IndexList& informative, double runtime_seconds);

inline constexpr const char* kMetricsHeader =
    "scenario_id,n,p,p_inf,rho,replicate,method,n_selected,tpr,fdr,runtime_seconds,status";

void write_metrics_csv(std::ostream& out, const std::vector<SelectionMetrics>& rows);

// { scenario_id: { method: {tpr_mean, tpr_sd, fdr_mean, fdr_sd, runtime_mean, runs, failed} } }
// Standard deviations use the n-1 denominator (0 for a single run). Failed
// rows are counted but excluded from the statistics; tpr_* is null when no
// row has a defined TPR.
nlohmann::ordered_json summarize(const std::vector<SelectionMetrics>& rows);

}  // namespace probeboost
