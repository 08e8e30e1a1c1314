#include "probeboost/resampling.hpp"

#include "probeboost/error.hpp"
#include "probeboost/parallel.hpp"

#include <string>

namespace probeboost {

void CvConfig::validate() const {
    if (folds < 2) {
        throw ConfigError("bootstrap CV needs at least 2 replicates");
    }
    if (m_max < 1) {
        throw ConfigError("m_max must be at least 1");
    }
}

BootstrapDraw bootstrap_draw(std::size_t n, Seed seed, std::size_t fold, std::size_t attempt) {
    Rng rng(derive_seed(seed, {fold, attempt}));
    BootstrapDraw draw;
    draw.in_bag.resize(n);
    std::vector<bool> hit(n, false);
    for (auto& row : draw.in_bag) {
        row = static_cast<std::size_t>(rng.below(n));
        hit[row] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!hit[i]) {
            draw.out_of_bag.push_back(i);
        }
    }
    return draw;
}

std::vector<double> incremental_oob_risk(const FitTrace& trace, const Dataset& data,
                                         const IndexList& rows) {
    const auto held_out = take_rows(data, rows);
    Vector f = Vector::Constant(held_out.x.rows(), trace.offset);
    std::vector<double> risk;
    risk.reserve(trace.iterations_performed + 1);
    risk.push_back(empirical_risk(trace.loss, held_out.y, f));
    for (std::size_t m = 0; m < trace.iterations_performed; ++m) {
        const auto j = static_cast<Eigen::Index>(trace.selection_path[m]);
        f.array() += trace.step_path[m] * (held_out.x.col(j).array() - trace.column_means(j));
        risk.push_back(empirical_risk(trace.loss, held_out.y, f));
    }
    return risk;
}

CvResult bootstrap_cv(const Dataset& data, const BoostConfig& boost, const CvConfig& cv,
                      std::size_t threads) {
    cv.validate();
    boost.validate();
    data.validate();
    const auto n = data.rows();
    if (n < 10) {
        throw DataError("bootstrap CV needs n >= 10, got " + std::to_string(n));
    }

    BoostConfig fold_config = boost;
    fold_config.m_stop = cv.m_max;
    const auto width = static_cast<Eigen::Index>(cv.m_max + 1);

    CvResult result;
    result.risk_matrix.resize(static_cast<Eigen::Index>(cv.folds), width);
    result.draws.resize(cv.folds);
    std::vector<std::size_t> redraws(cv.folds, 0);

    parallel_for(cv.folds, threads, [&](std::size_t fold) {
        for (std::size_t attempt = 0;; ++attempt) {
            auto draw = bootstrap_draw(n, cv.seed, fold, attempt);
            if (!draw.out_of_bag.empty()) {
                try {
                    const auto trace = boost_fit(take_rows(data, draw.in_bag), fold_config);
                    const auto risk = incremental_oob_risk(trace, data, draw.out_of_bag);
                    for (Eigen::Index m = 0; m < width; ++m) {
                        result.risk_matrix(static_cast<Eigen::Index>(fold), m) =
                            risk[static_cast<std::size_t>(m)];
                    }
                    result.draws[fold] = std::move(draw);
                    redraws[fold] = attempt;
                    return;
                } catch (const DegenerateResponseError&) {
                } catch (const NoUsableCovariateError&) {
                }
            }
            if (attempt + 1 >= 100) {
                throw DataError("bootstrap replicate " + std::to_string(fold) +
                                " stayed degenerate after 100 draws");
            }
        }
    });

    for (const auto r : redraws) {
        result.redraws += r;
    }
    result.mean_risk = result.risk_matrix.colwise().mean().transpose();
    Eigen::Index best = 0;
    for (Eigen::Index m = 1; m < width; ++m) {
        if (result.mean_risk(m) < result.mean_risk(best)) {
            best = m;
        }
    }
    result.m_opt = static_cast<std::size_t>(best);

    BoostConfig final_config = boost;
    if (result.m_opt == 0) {
        final_config.m_stop = 1;
        result.final_trace = boost_fit(data, final_config, [](const SelectionEvent&) {
            return StopAction::StopBeforeUpdate;
        });
    } else {
        final_config.m_stop = result.m_opt;
        result.final_trace = boost_fit(data, final_config);
    }
    return result;
}

}  // namespace probeboost
