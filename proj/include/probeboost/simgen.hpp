#pragma once

#include "probeboost/dataset.hpp"
#include "probeboost/rng.hpp"

#include <cstddef>
#include <string>

namespace probeboost {

// One cell of the benchmark grid.
struct SimulationScenario {
    std::size_t n = 100;
    std::size_t p = 100;
    std::size_t p_inf = 5;
    double rho = 0.9;
    std::size_t replications = 100;
    Seed seed = 0;

    void validate() const;
    // e.g. "n100_p500_pinf5_rho0.9"
    std::string id() const;

    bool operator==(const SimulationScenario&) const = default;
};

struct CoefficientDraw {
    Vector beta;
    IndexList informative_set;  // sorted
};

struct SimulatedInstance {
    Dataset data;
    Vector beta;
    IndexList informative_set;
    Vector eta;
};

// Rows follow the AR(1) recursion x_1 = e_1, x_j = rho x_{j-1} + sqrt(1 - rho^2) e_j,
// giving unit variances and Cov(x_i, x_j) = rho^|i-j|. Row i draws from
// Rng(derive_seed(seed, {i})). Throws ConfigError unless 0 <= rho < 1.
Matrix gen_toeplitz_gaussian(std::size_t n, std::size_t p, double rho, Seed seed);

// p_inf positions drawn without replacement; values uniform on (-1, 1), zero
// draws rejected.
CoefficientDraw gen_coefficients(std::size_t p, std::size_t p_inf, Seed seed);

inline constexpr double kEtaSaturation = 35.0;

// y_i ~ Bernoulli(sigmoid(eta_i)) with eta = x beta clamped to +-35.
Vector gen_response_binary(const Matrix& x, const Vector& beta, Seed seed);

// eta + N(0, noise_sd^2). Extension utility for squared-error demos; the
// benchmark uses binary responses only.
Vector gen_response_gaussian(const Matrix& x, const Vector& beta, Seed seed, double noise_sd = 1.0);

// Binary-response instance for (scenario, replicate); X, beta and y use
// streams derived from (scenario.seed, replicate).
SimulatedInstance simulate_instance(const SimulationScenario& scenario, std::size_t replicate);

}  // namespace probeboost
