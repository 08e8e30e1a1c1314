#pragma once

#include "probeboost/boosting.hpp"
#include "probeboost/rng.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace probeboost {

// The three quantities tied together by the per-family error bound
//   E(V) <= q^2 / ((2 pi_thr - 1) p).
struct ErrorBoundParams {
    std::size_t q = 0;
    double pi_thr = 0.0;
    double pfer = 0.0;
};

struct PartialErrorBound {
    std::optional<std::size_t> q;
    std::optional<double> pi_thr;
    std::optional<double> pfer;
};

// Solves the bound at equality for the missing quantity. Exactly two of the
// three must be given. q is floored, which keeps the bound valid.
// Throws ConfigError when the inputs or the derived value are out of range
// (pi_thr outside (0.5, 1], q < 1 or q > p, pfer <= 0).
ErrorBoundParams complete_config(const PartialErrorBound& given, std::size_t p);

// Right-hand side of the bound.
double pfer_bound(std::size_t q, double pi_thr, std::size_t p);

struct StabilityConfig {
    std::size_t b_subsamples = 100;
    std::size_t q = 0;
    double pi_thr = 0.0;
    double pfer = 0.0;
    std::size_t m_stop_cap = 5000;
    Seed seed = 0;

    void validate(std::size_t p) const;

    static StabilityConfig from_bound(const ErrorBoundParams& bound);
};

struct StabilityResult {
    std::vector<double> frequencies;
    IndexList stable_set;
    std::vector<IndexList> per_subsample_sets;
    std::size_t cap_hits = 0;  // fits that reached m_stop_cap before q selections
    std::size_t redraws = 0;   // subsamples redrawn after a degenerate draw
    std::vector<std::string> warnings;
};

// floor(n/2) distinct row indices, sorted; deterministic in (seed, b, attempt).
// Throws DataError for n < 4.
IndexList subsample_indices(std::size_t n, Seed seed, std::size_t b, std::size_t attempt = 0);

// Fires (after applying the update) once q distinct columns have been chosen.
StoppingRule distinct_count_rule(std::size_t q, std::size_t p);

// { j : frequencies[j] >= pi_thr }
IndexList stable_set_at(const std::vector<double>& frequencies, double pi_thr);

inline constexpr std::size_t kMaxRedraws = 100;

// Boosting fits on B half-subsamples, each stopped after q distinct
// selections or boost.m_stop = stab.m_stop_cap iterations.
StabilityResult stability_select(const Dataset& data, const BoostConfig& boost,
                                 const StabilityConfig& stab, std::size_t threads = 1);

}  // namespace probeboost
