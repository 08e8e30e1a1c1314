#include "probeboost/simgen.hpp"

#include "probeboost/error.hpp"
#include "probeboost/loss.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

namespace probeboost {

namespace {

std::string format_rho(double rho) {
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), rho);
    return std::string(buffer, end);
}

void check_rho(double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) {
        throw ConfigError("rho must lie in [0, 1), got " + std::to_string(rho));
    }
}

}  // namespace

void SimulationScenario::validate() const {
    if (n < 2) {
        throw ConfigError("scenario needs n >= 2");
    }
    if (p < 1) {
        throw ConfigError("scenario needs p >= 1");
    }
    if (p_inf > p) {
        throw ConfigError("p_inf = " + std::to_string(p_inf) + " exceeds p = " + std::to_string(p));
    }
    if (replications < 1) {
        throw ConfigError("scenario needs at least one replication");
    }
    check_rho(rho);
}

std::string SimulationScenario::id() const {
    return "n" + std::to_string(n) + "_p" + std::to_string(p) + "_pinf" + std::to_string(p_inf) +
           "_rho" + format_rho(rho);
}

Matrix gen_toeplitz_gaussian(std::size_t n, std::size_t p, double rho, Seed seed) {
    check_rho(rho);
    const double innovation = std::sqrt(1.0 - rho * rho);
    Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, {i}));
        const auto r = static_cast<Eigen::Index>(i);
        double prev = 0.0;
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const double e = rng.normal();
            prev = (j == 0) ? e : rho * prev + innovation * e;
            x(r, j) = prev;
        }
    }
    return x;
}

CoefficientDraw gen_coefficients(std::size_t p, std::size_t p_inf, Seed seed) {
    if (p_inf > p) {
        throw ConfigError("p_inf = " + std::to_string(p_inf) + " exceeds p = " + std::to_string(p));
    }
    Rng rng(seed);
    CoefficientDraw draw;
    draw.beta = Vector::Zero(static_cast<Eigen::Index>(p));
    draw.informative_set = rng.sample_without_replacement(p, p_inf);
    for (const auto j : draw.informative_set) {
        double value = 0.0;
        while (value == 0.0) {
            value = rng.uniform_open(-1.0, 1.0);
        }
        draw.beta(static_cast<Eigen::Index>(j)) = value;
    }
    return draw;
}

Vector gen_response_binary(const Matrix& x, const Vector& beta, Seed seed) {
    if (x.cols() != beta.size()) {
        throw DataError("gen_response_binary: x has " + std::to_string(x.cols()) +
                        " columns, beta has " + std::to_string(beta.size()) + " entries");
    }
    const Vector eta = x * beta;
    Rng rng(seed);
    Vector y(x.rows());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double clamped = std::clamp(eta(i), -kEtaSaturation, kEtaSaturation);
        y(i) = rng.bernoulli(sigmoid(clamped)) ? 1.0 : 0.0;
    }
    return y;
}

Vector gen_response_gaussian(const Matrix& x, const Vector& beta, Seed seed, double noise_sd) {
    if (x.cols() != beta.size()) {
        throw DataError("gen_response_gaussian: dimension mismatch");
    }
    Vector y = x * beta;
    Rng rng(seed);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        y(i) += noise_sd * rng.normal();
    }
    return y;
}

SimulatedInstance simulate_instance(const SimulationScenario& scenario, std::size_t replicate) {
    scenario.validate();
    SimulatedInstance inst;
    auto x = gen_toeplitz_gaussian(scenario.n, scenario.p, scenario.rho,
                                   derive_seed(scenario.seed, {replicate, 0}));
    auto coef = gen_coefficients(scenario.p, scenario.p_inf,
                                 derive_seed(scenario.seed, {replicate, 1}));
    auto y = gen_response_binary(x, coef.beta, derive_seed(scenario.seed, {replicate, 2}));
    inst.eta = x * coef.beta;
    inst.beta = std::move(coef.beta);
    inst.informative_set = std::move(coef.informative_set);
    inst.data = make_dataset(std::move(x), std::move(y));
    return inst;
}

}  // namespace probeboost
