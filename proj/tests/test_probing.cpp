#include "probeboost/error.hpp"
#include "probeboost/probing.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace probeboost;

namespace {

std::vector<double> sorted_column(const Matrix& x, Eigen::Index j) {
    std::vector<double> v(x.col(j).data(), x.col(j).data() + x.rows());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("make_shadows shape and multiset invariant") {
    Matrix x(3, 2);
    x << 1, 10,
         2, 20,
         3, 30;
    Vector y(3);
    y << 0, 1, 1;
    const auto aug = make_shadows(make_dataset(x, y), 1);
    CHECK(aug.base.x.rows() == 3);
    CHECK(aug.base.x.cols() == 4);
    CHECK(aug.base.shadow_mask == std::vector<bool>{false, false, true, true});
    CHECK(aug.origin_index == IndexList{0, 1});
    CHECK(aug.base.column_names[2] == "shadow_x1");
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(sorted_column(aug.base.x, j) == sorted_column(aug.base.x, j + 2));
    }
    CHECK(aug.base.x.leftCols(2) == x);
}

TEST_CASE("make_shadows with a single row copies the column") {
    Matrix x(1, 2);
    x << 4, 5;
    Vector y(1);
    y << 1;
    const auto aug = make_shadows(make_dataset(x, y), 9);
    CHECK(aug.base.x(0, 2) == 4.0);
    CHECK(aug.base.x(0, 3) == 5.0);
}

TEST_CASE("make_shadows frozen permutation for seed 42") {
    Matrix x(5, 1);
    x << 1, 2, 3, 4, 5;
    Vector y(5);
    y << 0, 1, 0, 1, 1;
    const auto aug = make_shadows(make_dataset(x, y), 42);
    Vector expected(5);
    expected << 5, 2, 1, 3, 4;
    CHECK(aug.base.x.col(1) == expected);
    CHECK(make_shadows(make_dataset(x, y), 42).base.x == aug.base.x);
}

TEST_CASE("make_shadows rejects augmented input") {
    const auto data = testing::random_dataset(10, 3, LossKind::SquaredError, 1);
    const auto aug = make_shadows(data, 1);
    CHECK_THROWS_AS(make_shadows(aug.base, 2), DataError);
}

TEST_CASE("marginal preservation on random data") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto data = testing::random_dataset(37, 6, LossKind::SquaredError, seed);
        const auto aug = make_shadows(data, seed + 100);
        for (Eigen::Index j = 0; j < 6; ++j) {
            CHECK(sorted_column(aug.base.x, j) == sorted_column(aug.base.x, j + 6));
        }
    }
}

TEST_CASE("probe_select under the null selects little") {
    std::size_t total = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        auto data = testing::random_dataset(100, 10, LossKind::SquaredError, 500 + rep, 0);
        const auto result = probe_select(data, {0.1, default_probe_cap(100), LossKind::SquaredError, true}, rep);
        total += result.selected.size();
    }
    CHECK(static_cast<double>(total) / 100.0 < 2.0);
}

TEST_CASE("probe_select finds an exact signal before any shadow") {
    int found = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        auto data = testing::random_dataset(100, 10, LossKind::SquaredError, 900 + rep, 0);
        data.y = data.x.col(0);
        const auto result = probe_select(data, {0.1, default_probe_cap(100), LossKind::SquaredError, true}, rep);
        found += std::find(result.selected.begin(), result.selected.end(), 0) != result.selected.end() ? 1 : 0;
    }
    CHECK(found >= 99);
}

TEST_CASE("first pick is a shadow gives an empty selection") {
    bool seen = false;
    for (std::uint64_t rep = 0; rep < 200 && !seen; ++rep) {
        const auto data = testing::random_dataset(50, 5, LossKind::SquaredError, 3000 + rep, 0);
        const auto result = probe_select(data, {0.1, 500, LossKind::SquaredError, true}, rep);
        if (result.stop_iteration == 1) {
            seen = true;
            CHECK(result.selected.empty());
            CHECK(result.trace.iterations_performed == 0);
            CHECK_FALSE(result.capped);
        }
    }
    CHECK(seen);
}

TEST_CASE("prefix property, no shadow leak, determinism") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto loss = seed % 2 == 0 ? LossKind::SquaredError : LossKind::Logistic;
        const auto data = testing::random_dataset(60, 12, loss, 40 + seed, 3);
        const BoostConfig config{0.1, 600, loss, true};
        const auto aug = make_shadows(data, seed);
        const auto probe = probe_select(aug, config);
        const auto full = boost_fit(aug.base, config);
        REQUIRE(probe.stop_iteration >= 1);
        const auto kept = probe.stop_iteration - 1;
        REQUIRE(kept <= full.selection_path.size());
        CHECK(probe.trace.selection_path ==
              IndexList(full.selection_path.begin(), full.selection_path.begin() + static_cast<std::ptrdiff_t>(kept)));
        if (!probe.capped) {
            CHECK(aug.base.shadow_mask[full.selection_path[kept]]);
        }
        for (const auto j : probe.selected) {
            CHECK(j < 12);
        }
        CHECK(probe.selected == distinct_selected(probe.trace));
        const auto again = probe_select(data, config, seed);
        CHECK(again.selected == probe.selected);
        CHECK(again.trace == probe.trace);
    }
}

TEST_CASE("cap reached reports m_stop + 1") {
    auto data = testing::random_dataset(60, 4, LossKind::SquaredError, 77, 0);
    data.y = data.x.col(0) + data.x.col(1);
    const auto result = probe_select(data, {0.1, 3, LossKind::SquaredError, true}, 1);
    CHECK(result.capped);
    CHECK(result.stop_iteration == 4);
    CHECK(result.trace.iterations_performed == 3);
    CHECK(default_probe_cap(50) == 500);
    CHECK(default_probe_cap(5000) == 10000);
}
