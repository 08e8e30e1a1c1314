#pragma once

#include "probeboost/boosting.hpp"
#include "probeboost/rng.hpp"

#include <cstddef>
#include <vector>

namespace probeboost {

struct CvConfig {
    std::size_t folds = 25;  // bootstrap replicates
    std::size_t m_max = 100;  // grid 0..m_max, as in mboost's cvrisk default
    Seed seed = 0;

    void validate() const;
    bool operator==(const CvConfig&) const = default;
};

struct BootstrapDraw {
    IndexList in_bag;      // n draws with replacement, in draw order
    IndexList out_of_bag;  // rows never drawn, ascending
};

// Deterministic in (seed, fold, attempt).
BootstrapDraw bootstrap_draw(std::size_t n, Seed seed, std::size_t fold, std::size_t attempt = 0);

struct CvResult {
    Matrix risk_matrix;  // folds x (m_max + 1), out-of-bag mean loss
    Vector mean_risk;
    std::size_t m_opt = 0;
    FitTrace final_trace;
    std::vector<BootstrapDraw> draws;  // the draw actually used per fold
    std::size_t redraws = 0;
};

// Out-of-bag risk after every iteration 0..trace.iterations_performed, built
// by updating the out-of-bag predictor one selected column at a time.
std::vector<double> incremental_oob_risk(const FitTrace& trace, const Dataset& data,
                                         const IndexList& rows);

// Chooses m_stop in {0..m_max} by mean out-of-bag risk over bootstrap
// replicates (ties to the smaller m), then refits on all rows. Requires n >= 10.
CvResult bootstrap_cv(const Dataset& data, const BoostConfig& boost, const CvConfig& cv,
                      std::size_t threads = 1);

}  // namespace probeboost
