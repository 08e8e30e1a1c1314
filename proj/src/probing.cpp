#include "probeboost/probing.hpp"

#include "probeboost/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace probeboost {

ShadowAugmentedDataset make_shadows(const Dataset& data, Seed seed) {
    if (data.has_shadows()) {
        throw DataError("make_shadows: dataset already contains shadow columns");
    }
    const auto n = data.x.rows();
    const auto p = data.x.cols();

    ShadowAugmentedDataset out;
    out.permutation_seed = seed;
    out.base.x.resize(n, 2 * p);
    out.base.x.leftCols(p) = data.x;
    out.base.y = data.y;
    out.base.column_names = data.column_names;
    out.base.column_names.reserve(static_cast<std::size_t>(2 * p));
    out.base.shadow_mask.assign(static_cast<std::size_t>(2 * p), false);
    out.origin_index.resize(static_cast<std::size_t>(p));

    for (Eigen::Index j = 0; j < p; ++j) {
        Vector column = data.x.col(j);
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(j)}));
        rng.shuffle(std::span<double>(column.data(), static_cast<std::size_t>(n)));
        out.base.x.col(p + j) = column;
        out.base.column_names.push_back("shadow_" + data.column_names[static_cast<std::size_t>(j)]);
        out.base.shadow_mask[static_cast<std::size_t>(p + j)] = true;
        out.origin_index[static_cast<std::size_t>(j)] = static_cast<std::size_t>(j);
    }
    return out;
}

std::size_t default_probe_cap(std::size_t n) {
    return std::min<std::size_t>(10 * n, 10000);
}

StoppingRule first_shadow_rule() {
    return [](const SelectionEvent& event) {
        return event.shadow_mask[event.column] ? StopAction::StopBeforeUpdate
                                               : StopAction::Continue;
    };
}

ProbeResult probe_select(const ShadowAugmentedDataset& augmented, const BoostConfig& config) {
    ProbeResult result;
    result.seed = augmented.permutation_seed;
    result.trace = boost_fit(augmented.base, config, first_shadow_rule());
    result.capped = !result.trace.stopped_by_rule;
    result.stop_iteration = result.capped ? config.m_stop + 1 : result.trace.iterations_performed + 1;

    result.selected = distinct_selected(result.trace);
    for (const auto j : result.selected) {
        if (augmented.base.shadow_mask[j]) {
            throw std::logic_error("probe_select: shadow column leaked into the selection");
        }
    }
    return result;
}

ProbeResult probe_select(const Dataset& data, const BoostConfig& config, Seed seed) {
    data.validate();
    return probe_select(make_shadows(data, seed), config);
}

}  // namespace probeboost
