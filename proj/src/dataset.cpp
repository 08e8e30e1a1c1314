#include "probeboost/dataset.hpp"

#include "probeboost/error.hpp"

#include <algorithm>
#include <string>

namespace probeboost {

bool Dataset::has_shadows() const {
    return std::any_of(shadow_mask.begin(), shadow_mask.end(), [](bool b) { return b; });
}

void Dataset::validate() const {
    if (x.rows() < 2) {
        throw DataError("dataset needs at least 2 rows, got " + std::to_string(x.rows()));
    }
    if (x.cols() < 1) {
        throw DataError("dataset needs at least 1 column");
    }
    if (y.size() != x.rows()) {
        throw DataError("response length " + std::to_string(y.size()) +
                        " does not match row count " + std::to_string(x.rows()));
    }
    if (column_names.size() != cols()) {
        throw DataError("column_names has " + std::to_string(column_names.size()) +
                        " entries for " + std::to_string(cols()) + " columns");
    }
    if (shadow_mask.size() != cols()) {
        throw DataError("shadow_mask has " + std::to_string(shadow_mask.size()) +
                        " entries for " + std::to_string(cols()) + " columns");
    }
    if (!x.allFinite()) {
        throw DataError("design matrix contains non-finite entries");
    }
    if (!y.allFinite()) {
        throw DataError("response contains non-finite entries");
    }
}

Dataset make_dataset(Matrix x, Vector y) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        names.push_back("x" + std::to_string(j + 1));
    }
    return make_dataset(std::move(x), std::move(y), std::move(names));
}

Dataset make_dataset(Matrix x, Vector y, std::vector<std::string> names) {
    Dataset data;
    const auto p = static_cast<std::size_t>(x.cols());
    data.x = std::move(x);
    data.y = std::move(y);
    data.column_names = std::move(names);
    data.shadow_mask.assign(p, false);
    return data;
}

Dataset take_rows(const Dataset& data, std::span<const std::size_t> rows) {
    Dataset out;
    const auto n = static_cast<Eigen::Index>(rows.size());
    out.x.resize(n, data.x.cols());
    out.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]);
        out.x.row(i) = data.x.row(r);
        out.y(i) = data.y(r);
    }
    out.column_names = data.column_names;
    out.shadow_mask = data.shadow_mask;
    return out;
}

}  // namespace probeboost
