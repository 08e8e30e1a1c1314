#include "probeboost/boosting.hpp"

#include "probeboost/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace probeboost {

void BoostConfig::validate() const {
    if (!(nu > 0.0 && nu <= 1.0)) {
        throw ConfigError("nu must lie in (0, 1], got " + std::to_string(nu));
    }
    if (m_stop < 1) {
        throw ConfigError("m_stop must be at least 1");
    }
}

bool FitTrace::operator==(const FitTrace& other) const {
    return loss == other.loss && offset == other.offset &&
           column_means == other.column_means && coefficients == other.coefficients &&
           selection_path == other.selection_path && step_path == other.step_path &&
           risk_path == other.risk_path && iterations_performed == other.iterations_performed &&
           stopped_by_rule == other.stopped_by_rule && fitted == other.fitted;
}

BaseLearnerFit fit_base_learner(const Vector& column, const Vector& u) {
    const double xx = column.squaredNorm();
    if (!(xx > 0.0)) {
        return {0.0, std::numeric_limits<double>::infinity(), false};
    }
    const double slope = column.dot(u) / xx;
    return {slope, (u - slope * column).squaredNorm(), true};
}

StoppingRule fixed_iterations() {
    return [](const SelectionEvent&) { return StopAction::Continue; };
}

namespace {

bool is_constant(const Eigen::Ref<const Vector>& column) {
    return (column.array() == column(0)).all();
}

}  // namespace

FitTrace boost_fit(const Dataset& data, const BoostConfig& config, const StoppingRule& stop) {
    config.validate();
    data.validate();
    check_response(config.loss, data.y);

    const auto n = data.x.rows();
    const auto p = data.x.cols();

    FitTrace trace;
    trace.loss = config.loss;
    trace.offset = init_offset(data.y, config.loss);
    trace.column_means = config.center_covariates ? Vector(data.x.colwise().mean().transpose())
                                                  : Vector::Zero(p);
    trace.coefficients = Vector::Zero(p);

    Matrix xc = data.x;
    if (config.center_covariates) {
        xc.rowwise() -= trace.column_means.transpose();
    }
    Vector norms = xc.colwise().squaredNorm().transpose();
    std::vector<bool> usable(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        bool ok = norms(j) > 0.0;
        if (config.center_covariates && is_constant(data.x.col(j))) {
            ok = false;
        }
        usable[static_cast<std::size_t>(j)] = ok;
    }
    if (std::none_of(usable.begin(), usable.end(), [](bool b) { return b; })) {
        throw NoUsableCovariateError("all " + std::to_string(p) + " columns are constant");
    }

    Vector f = Vector::Constant(n, trace.offset);
    trace.risk_path.push_back(empirical_risk(config.loss, data.y, f));
    trace.selection_path.reserve(config.m_stop);

    Vector scores(p);
    for (std::size_t m = 1; m <= config.m_stop; ++m) {
        const Vector u = negative_gradient(config.loss, data.y, f);
        const double uu = u.squaredNorm();
        scores.noalias() = xc.transpose() * u;

        // argmin over sse_j = |u|^2 - <x_j,u>^2/<x_j,x_j>, ties to lowest j
        Eigen::Index best = -1;
        double best_sse = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < p; ++j) {
            if (!usable[static_cast<std::size_t>(j)]) {
                continue;
            }
            const double sse = uu - scores(j) * scores(j) / norms(j);
            if (best < 0 || sse < best_sse) {
                best = j;
                best_sse = sse;
            }
        }

        const auto chosen = static_cast<std::size_t>(best);
        const auto action = stop(SelectionEvent{chosen, m, data.shadow_mask, trace.selection_path});
        if (action == StopAction::StopBeforeUpdate) {
            trace.stopped_by_rule = true;
            break;
        }

        const double step = config.nu * scores(best) / norms(best);
        trace.coefficients(best) += step;
        f.noalias() += step * xc.col(best);
        trace.selection_path.push_back(chosen);
        trace.step_path.push_back(step);
        trace.risk_path.push_back(empirical_risk(config.loss, data.y, f));
        ++trace.iterations_performed;

        if (action == StopAction::StopAfterUpdate) {
            trace.stopped_by_rule = true;
            break;
        }
    }
    trace.fitted = std::move(f);
    return trace;
}

Vector predict(const FitTrace& trace, const Matrix& x_new) {
    if (x_new.cols() != trace.coefficients.size()) {
        throw DataError("predict: expected " + std::to_string(trace.coefficients.size()) +
                        " columns, got " + std::to_string(x_new.cols()));
    }
    Vector f = Vector::Constant(x_new.rows(), trace.offset);
    for (Eigen::Index j = 0; j < trace.coefficients.size(); ++j) {
        const double beta = trace.coefficients(j);
        if (beta != 0.0) {
            f.array() += beta * (x_new.col(j).array() - trace.column_means(j));
        }
    }
    return f;
}

IndexList distinct_selected(const FitTrace& trace) {
    IndexList out = trace.selection_path;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace probeboost
