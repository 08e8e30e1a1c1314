#pragma once

#include "probeboost/boosting.hpp"
#include "probeboost/rng.hpp"

#include <cstddef>

namespace probeboost {

// [x_1 .. x_p  shadow(x_1) .. shadow(x_p)]; shadow columns are p..2p-1.
struct ShadowAugmentedDataset {
    Dataset base;
    IndexList origin_index;  // origin_index[k] = original column of shadow column p + k
    Seed permutation_seed = 0;

    std::size_t original_columns() const { return origin_index.size(); }
};

// Each shadow column is an independent uniform permutation of its origin,
// drawn from Rng(derive_seed(seed, {j})). Shadow names are "shadow_<name>".
ShadowAugmentedDataset make_shadows(const Dataset& data, Seed seed);

struct ProbeResult {
    IndexList selected;  // sorted original-column indices
    // Iteration at which the first shadow was chosen (kept iterations + 1).
    // When no shadow was chosen within the cap, capped is set and
    // stop_iteration = m_stop + 1.
    std::size_t stop_iteration = 0;
    bool capped = false;
    FitTrace trace;  // kept prefix, on the augmented design
    Seed seed = 0;
};

// Safety cap used by the CLI when no m_stop is given: min(10 n, 10000).
std::size_t default_probe_cap(std::size_t n);

// Stops the path at the first shadow selection, discarding that update.
StoppingRule first_shadow_rule();

ProbeResult probe_select(const Dataset& data, const BoostConfig& config, Seed seed);

// Same as probe_select on an already augmented design.
ProbeResult probe_select(const ShadowAugmentedDataset& augmented, const BoostConfig& config);

}  // namespace probeboost
