#pragma once

#include "probeboost/dataset.hpp"
#include "probeboost/loss.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace probeboost {

struct BoostConfig {
    double nu = 0.1;
    std::size_t m_stop = 100;
    LossKind loss = LossKind::SquaredError;
    bool center_covariates = true;

    // Throws ConfigError unless 0 < nu <= 1 and m_stop >= 1.
    void validate() const;

    bool operator==(const BoostConfig&) const = default;
};

// Component-wise linear boosting path. Slopes act on centered covariates;
// the offset is fixed at the loss-minimal constant.
struct FitTrace {
    LossKind loss = LossKind::SquaredError;
    double offset = 0.0;
    Vector column_means;
    Vector coefficients;
    IndexList selection_path;
    std::vector<double> step_path;  // nu * slope added at each iteration
    std::vector<double> risk_path;  // risk_path[0] is the offset-only risk
    std::size_t iterations_performed = 0;
    bool stopped_by_rule = false;
    Vector fitted;  // in-sample predictor after the last applied update

    bool operator==(const FitTrace& other) const;
};

struct BaseLearnerFit {
    double slope = 0.0;
    double sse = 0.0;
    bool fittable = true;
};

// Least-squares slope of u on a (centered) column and the residual sum of
// squares. A column with zero norm is unfittable and reports sse = +inf.
BaseLearnerFit fit_base_learner(const Vector& column, const Vector& u);

enum class StopAction {
    Continue,
    StopAfterUpdate,   // apply the update for this iteration, then stop
    StopBeforeUpdate,  // discard this iteration and stop
};

// Passed to the stopping rule after j* has been chosen in iteration m and
// before the update is applied. path holds the selections of iterations
// 1..m-1.
struct SelectionEvent {
    std::size_t column;
    std::size_t iteration;
    const std::vector<bool>& shadow_mask;
    std::span<const std::size_t> path;
};

using StoppingRule = std::function<StopAction(const SelectionEvent&)>;

// Never fires; the fit runs to config.m_stop.
StoppingRule fixed_iterations();

FitTrace boost_fit(const Dataset& data, const BoostConfig& config,
                   const StoppingRule& stop = fixed_iterations());

// offset + sum_j coefficients[j] * (x_new[., j] - column_means[j]).
Vector predict(const FitTrace& trace, const Matrix& x_new);

// Sorted distinct indices from the selection path.
IndexList distinct_selected(const FitTrace& trace);

}  // namespace probeboost
