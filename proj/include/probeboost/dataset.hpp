#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace probeboost {

using Matrix = Eigen::MatrixXd;  // column-major
using Vector = Eigen::VectorXd;
using IndexList = std::vector<std::size_t>;

// Design matrix, response and per-column metadata. Columns flagged in
// shadow_mask are permuted copies of original covariates.
struct Dataset {
    Matrix x;
    Vector y;
    std::vector<std::string> column_names;
    std::vector<bool> shadow_mask;

    std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(x.cols()); }
    bool has_shadows() const;

    // Throws DataError when n < 2, p < 1, shapes disagree or any entry is
    // non-finite.
    void validate() const;
};

// Builds a raw dataset with default names x1..xp and an all-false shadow mask.
Dataset make_dataset(Matrix x, Vector y);
Dataset make_dataset(Matrix x, Vector y, std::vector<std::string> names);

// Rows selected by index (duplicates allowed, as in bootstrap samples).
Dataset take_rows(const Dataset& data, std::span<const std::size_t> rows);

}  // namespace probeboost
