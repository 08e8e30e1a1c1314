#include "probeboost/error.hpp"
#include "probeboost/loss.hpp"

#include "test_support.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

#include <cmath>

using namespace probeboost;
using Float50 = boost::multiprecision::cpp_bin_float_50;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (const auto x : v) {
        out(i++) = x;
    }
    return out;
}

// Golden-section minimization of the mean logistic loss over a constant.
double minimize_logistic_offset(const Vector& y) {
    auto risk = [&](double c) { return empirical_risk(LossKind::Logistic, y, Vector::Constant(y.size(), c)); };
    double lo = -10.0;
    double hi = 10.0;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double a = hi - g * (hi - lo);
        const double b = lo + g * (hi - lo);
        if (risk(a) < risk(b)) {
            hi = b;
        } else {
            lo = a;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("init_offset") {
    CHECK(init_offset(vec({1, 2, 3}), LossKind::SquaredError) == doctest::Approx(2.0));
    CHECK(init_offset(vec({0, 1}), LossKind::Logistic) == doctest::Approx(0.0));

    const auto y = vec({0, 1, 1, 1});
    const double closed = init_offset(y, LossKind::Logistic);
    const double numeric = minimize_logistic_offset(y);
    CHECK(numeric == doctest::Approx(std::log(3.0)).epsilon(1e-7));
    CHECK(closed == doctest::Approx(numeric).epsilon(1e-7));
    CHECK(closed == doctest::Approx(1.0986122886681098));

    CHECK_THROWS_AS(init_offset(vec({0, 0, 0}), LossKind::Logistic), DegenerateResponseError);
    CHECK_THROWS_AS(init_offset(vec({1, 1}), LossKind::Logistic), DegenerateResponseError);
    CHECK_THROWS_AS(init_offset(Vector(), LossKind::SquaredError), DataError);
}

TEST_CASE("negative_gradient examples") {
    const auto sq = negative_gradient(LossKind::SquaredError, vec({1, 0}), vec({0, 0}));
    CHECK(sq(0) == 1.0);
    CHECK(sq(1) == 0.0);

    const auto lg = negative_gradient(LossKind::Logistic, vec({1, 0}), vec({0, 0}));
    CHECK(lg(0) == doctest::Approx(0.5));
    CHECK(lg(1) == doctest::Approx(-0.5));

    // 1 - sigmoid(10) = 1 / (1 + e^10), evaluated in 50 digits
    const Float50 ten(10);
    const double oracle = static_cast<double>(Float50(1) / (Float50(1) + exp(ten)));
    const auto far = negative_gradient(LossKind::Logistic, vec({1}), vec({10}));
    CHECK(far(0) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(far(0) == doctest::Approx(4.5398e-5).epsilon(1e-4));
}

TEST_CASE("sigmoid and softplus stay finite for large |f|") {
    CHECK(sigmoid(800.0) == 1.0);
    CHECK(sigmoid(-800.0) == 0.0);
    CHECK(std::isfinite(softplus(800.0)));
    CHECK(softplus(800.0) == doctest::Approx(800.0));
    CHECK(softplus(-800.0) == 0.0);
    const auto u = negative_gradient(LossKind::Logistic, vec({0, 1}), vec({-1000, 1000}));
    CHECK(u.allFinite());
}

TEST_CASE("empirical_risk") {
    const auto y = vec({0.5, -1.0, 3.0});
    CHECK(empirical_risk(LossKind::SquaredError, y, y) == 0.0);
    CHECK(empirical_risk(LossKind::Logistic, vec({0, 1}), vec({0, 0})) ==
          doctest::Approx(std::log(2.0)));

    // compensated summation in 50-digit arithmetic as the reference
    Rng rng(7);
    const Eigen::Index n = 500;
    Vector yb(n);
    Vector f(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        yb(i) = rng.uniform01() < 0.4 ? 1.0 : 0.0;
        f(i) = 6.0 * rng.normal();
    }
    Float50 sum = 0;
    Float50 comp = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Float50 fi(f(i));
        const Float50 term = log(Float50(1) + exp(fi)) - Float50(yb(i)) * fi;
        const Float50 yk = term - comp;
        const Float50 t = sum + yk;
        comp = (t - sum) - yk;
        sum = t;
    }
    const double oracle = static_cast<double>(sum / n);
    CHECK(empirical_risk(LossKind::Logistic, yb, f) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("negative_gradient matches finite differences of the total loss") {
    Rng rng(11);
    for (const auto loss : {LossKind::SquaredError, LossKind::Logistic}) {
        for (int rep = 0; rep < 20; ++rep) {
            const Eigen::Index n = 8;
            Vector y(n);
            Vector f(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                y(i) = loss == LossKind::Logistic ? (rng.uniform01() < 0.5 ? 0.0 : 1.0) : rng.normal();
                f(i) = 2.0 * rng.normal();
            }
            const auto u = negative_gradient(loss, y, f);
            const double h = 1e-5;
            for (Eigen::Index i = 0; i < n; ++i) {
                Vector fp = f;
                Vector fm = f;
                fp(i) += h;
                fm(i) -= h;
                // empirical_risk is a mean, so scale by n to get d(sum)/df_i
                const double fd = -(empirical_risk(loss, y, fp) - empirical_risk(loss, y, fm)) *
                                  static_cast<double>(n) / (2.0 * h);
                CHECK(u(i) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("check_response and parse_loss") {
    CHECK_THROWS_AS(check_response(LossKind::Logistic, vec({0, 2})), DataError);
    CHECK_NOTHROW(check_response(LossKind::Logistic, vec({0, 1, 1})));
    CHECK(parse_loss("logistic") == LossKind::Logistic);
    CHECK(parse_loss("gaussian") == LossKind::SquaredError);
    CHECK_THROWS_AS(parse_loss("poisson"), ConfigError);
}
