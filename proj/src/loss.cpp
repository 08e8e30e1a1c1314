#include "probeboost/loss.hpp"

#include "probeboost/error.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace probeboost {

std::string_view to_string(LossKind loss) {
    switch (loss) {
    case LossKind::SquaredError:
        return "squared";
    case LossKind::Logistic:
        return "logistic";
    }
    return "unknown";
}

LossKind parse_loss(std::string_view name) {
    if (name == "squared" || name == "squared_error" || name == "gaussian") {
        return LossKind::SquaredError;
    }
    if (name == "logistic" || name == "binomial") {
        return LossKind::Logistic;
    }
    throw ConfigError("unknown loss '" + std::string(name) + "' (expected squared or logistic)");
}

double sigmoid(double f) {
    if (f >= 0.0) {
        return 1.0 / (1.0 + std::exp(-f));
    }
    const double e = std::exp(f);
    return e / (1.0 + e);
}

double softplus(double f) {
    return std::max(f, 0.0) + std::log1p(std::exp(-std::abs(f)));
}

double pointwise_loss(LossKind loss, double y, double f) {
    switch (loss) {
    case LossKind::SquaredError: {
        const double r = y - f;
        return 0.5 * r * r;
    }
    case LossKind::Logistic:
        return softplus(f) - y * f;
    }
    return 0.0;
}

void check_response(LossKind loss, const Vector& y) {
    if (!y.allFinite()) {
        throw DataError("response contains non-finite entries");
    }
    if (loss == LossKind::Logistic) {
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            if (y(i) != 0.0 && y(i) != 1.0) {
                throw DataError("logistic loss needs a 0/1 response; row " + std::to_string(i + 1) +
                                " has " + std::to_string(y(i)));
            }
        }
    }
}

double init_offset(const Vector& y, LossKind loss) {
    if (y.size() == 0) {
        throw DataError("cannot compute an offset for an empty response");
    }
    const double mean = y.mean();
    if (loss == LossKind::SquaredError) {
        return mean;
    }
    if (!(mean > 0.0 && mean < 1.0)) {
        throw DegenerateResponseError("logistic response has a single class (mean " +
                                      std::to_string(mean) + "); offset is infinite");
    }
    return std::log(mean / (1.0 - mean));
}

Vector negative_gradient(LossKind loss, const Vector& y, const Vector& f) {
    if (y.size() != f.size()) {
        throw std::invalid_argument("negative_gradient: y and f differ in length");
    }
    if (loss == LossKind::SquaredError) {
        return y - f;
    }
    Vector u(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        u(i) = y(i) - sigmoid(f(i));
    }
    return u;
}

double empirical_risk(LossKind loss, const Vector& y, const Vector& f) {
    if (y.size() != f.size()) {
        throw std::invalid_argument("empirical_risk: y and f differ in length");
    }
    if (y.size() == 0) {
        return 0.0;
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        total += pointwise_loss(loss, y(i), f(i));
    }
    return total / static_cast<double>(y.size());
}

}  // namespace probeboost
