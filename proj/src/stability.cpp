#include "probeboost/stability.hpp"

#include "probeboost/error.hpp"
#include "probeboost/parallel.hpp"

#include <cmath>
#include <string>

namespace probeboost {

namespace {

void check_pi_thr(double pi_thr) {
    if (!(pi_thr > 0.5 && pi_thr <= 1.0)) {
        throw ConfigError("pi_thr must lie in (0.5, 1], got " + std::to_string(pi_thr));
    }
}

void check_q(std::size_t q, std::size_t p) {
    if (q < 1) {
        throw ConfigError("q must be at least 1");
    }
    if (q > p) {
        throw ConfigError("q = " + std::to_string(q) + " exceeds the number of covariates " +
                          std::to_string(p));
    }
}

void check_pfer(double pfer) {
    if (!(pfer > 0.0) || !std::isfinite(pfer)) {
        throw ConfigError("pfer must be positive, got " + std::to_string(pfer));
    }
}

}  // namespace

double pfer_bound(std::size_t q, double pi_thr, std::size_t p) {
    const auto qd = static_cast<double>(q);
    return qd * qd / ((2.0 * pi_thr - 1.0) * static_cast<double>(p));
}

ErrorBoundParams complete_config(const PartialErrorBound& given, std::size_t p) {
    const int provided = static_cast<int>(given.q.has_value()) +
                         static_cast<int>(given.pi_thr.has_value()) +
                         static_cast<int>(given.pfer.has_value());
    if (provided != 2) {
        throw ConfigError("exactly two of q, pi_thr and pfer must be given, got " +
                          std::to_string(provided));
    }
    if (p < 1) {
        throw ConfigError("p must be at least 1");
    }
    const auto pd = static_cast<double>(p);

    ErrorBoundParams out;
    if (!given.q) {
        check_pi_thr(*given.pi_thr);
        check_pfer(*given.pfer);
        // 1e-9 absorbs rounding in products that are mathematically exact squares
        const double root = std::sqrt(*given.pfer * (2.0 * *given.pi_thr - 1.0) * pd);
        const double q = std::floor(root + 1e-9);
        if (q < 1.0) {
            throw ConfigError("derived q = floor(" + std::to_string(root) + ") is below 1");
        }
        out.q = static_cast<std::size_t>(q);
        out.pi_thr = *given.pi_thr;
        out.pfer = *given.pfer;
        check_q(out.q, p);
    } else if (!given.pi_thr) {
        check_q(*given.q, p);
        check_pfer(*given.pfer);
        const auto qd = static_cast<double>(*given.q);
        out.q = *given.q;
        out.pfer = *given.pfer;
        out.pi_thr = (qd * qd / (*given.pfer * pd) + 1.0) / 2.0;
        check_pi_thr(out.pi_thr);
    } else {
        check_q(*given.q, p);
        check_pi_thr(*given.pi_thr);
        out.q = *given.q;
        out.pi_thr = *given.pi_thr;
        out.pfer = pfer_bound(out.q, out.pi_thr, p);
    }
    return out;
}

void StabilityConfig::validate(std::size_t p) const {
    if (b_subsamples < 2) {
        throw ConfigError("stability selection needs at least 2 subsamples");
    }
    if (m_stop_cap < 1) {
        throw ConfigError("m_stop_cap must be at least 1");
    }
    check_q(q, p);
    check_pi_thr(pi_thr);
}

StabilityConfig StabilityConfig::from_bound(const ErrorBoundParams& bound) {
    StabilityConfig config;
    config.q = bound.q;
    config.pi_thr = bound.pi_thr;
    config.pfer = bound.pfer;
    return config;
}

IndexList subsample_indices(std::size_t n, Seed seed, std::size_t b, std::size_t attempt) {
    if (n < 4) {
        throw DataError("subsampling needs n >= 4, got " + std::to_string(n));
    }
    Rng rng(derive_seed(seed, {b, attempt}));
    return rng.sample_without_replacement(n, n / 2);
}

StoppingRule distinct_count_rule(std::size_t q, std::size_t p) {
    return [q, seen = std::vector<bool>(p, false), count = std::size_t{0}](
               const SelectionEvent& event) mutable {
        if (!seen[event.column]) {
            seen[event.column] = true;
            ++count;
        }
        return count >= q ? StopAction::StopAfterUpdate : StopAction::Continue;
    };
}

IndexList stable_set_at(const std::vector<double>& frequencies, double pi_thr) {
    IndexList out;
    for (std::size_t j = 0; j < frequencies.size(); ++j) {
        if (frequencies[j] >= pi_thr) {
            out.push_back(j);
        }
    }
    return out;
}

StabilityResult stability_select(const Dataset& data, const BoostConfig& boost,
                                 const StabilityConfig& stab, std::size_t threads) {
    data.validate();
    if (data.has_shadows()) {
        throw DataError("stability selection expects a dataset without shadow columns");
    }
    const auto p = data.cols();
    stab.validate(p);

    BoostConfig fit_config = boost;
    fit_config.m_stop = stab.m_stop_cap;
    fit_config.validate();

    const auto B = stab.b_subsamples;
    std::vector<IndexList> sets(B);
    std::vector<char> capped(B, 0);
    std::vector<std::size_t> redraws(B, 0);

    parallel_for(B, threads, [&](std::size_t b) {
        for (std::size_t attempt = 0;; ++attempt) {
            const auto rows = subsample_indices(data.rows(), stab.seed, b, attempt);
            const auto half = take_rows(data, rows);
            try {
                const auto trace = boost_fit(half, fit_config, distinct_count_rule(stab.q, p));
                sets[b] = distinct_selected(trace);
                capped[b] = trace.stopped_by_rule ? 0 : 1;
                redraws[b] = attempt;
                return;
            } catch (const DegenerateResponseError&) {
            } catch (const NoUsableCovariateError&) {
            }
            if (attempt + 1 >= kMaxRedraws) {
                throw DataError("subsample " + std::to_string(b) + " stayed degenerate after " +
                                std::to_string(kMaxRedraws) + " draws");
            }
        }
    });

    StabilityResult result;
    result.frequencies.assign(p, 0.0);
    std::vector<std::size_t> counts(p, 0);
    for (std::size_t b = 0; b < B; ++b) {
        for (const auto j : sets[b]) {
            ++counts[j];
        }
        result.cap_hits += static_cast<std::size_t>(capped[b]);
        result.redraws += redraws[b];
    }
    for (std::size_t j = 0; j < p; ++j) {
        result.frequencies[j] = static_cast<double>(counts[j]) / static_cast<double>(B);
    }
    result.stable_set = stable_set_at(result.frequencies, stab.pi_thr);
    result.per_subsample_sets = std::move(sets);
    if (result.cap_hits > 0) {
        result.warnings.push_back(std::to_string(result.cap_hits) + " of " + std::to_string(B) +
                                  " subsample fits hit m_stop_cap = " +
                                  std::to_string(stab.m_stop_cap) +
                                  " before selecting q variables; frequencies may be biased low");
    }
    return result;
}

}  // namespace probeboost
