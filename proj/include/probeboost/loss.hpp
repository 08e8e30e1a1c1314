#pragma once

#include "probeboost/dataset.hpp"

#include <string_view>

namespace probeboost {

// SquaredError: rho(y, f) = (y - f)^2 / 2 on real y.
// Logistic:     rho(y, f) = log(1 + e^f) - y f on y in {0, 1}, f the log-odds.
//
// Logistic uses the {0,1} encoding. Tools working with y in {-1,1} and a
// half-log-odds predictor select the same paths with nu rescaled by 2.
enum class LossKind { SquaredError, Logistic };

std::string_view to_string(LossKind loss);
// Accepts "squared"/"squared_error"/"gaussian" and "logistic"/"binomial".
LossKind parse_loss(std::string_view name);

// 1 / (1 + e^-f), evaluated without overflow for large |f|.
double sigmoid(double f);
// log(1 + e^f) without overflow.
double softplus(double f);

double pointwise_loss(LossKind loss, double y, double f);

// Throws DataError unless every y is 0 or 1 (Logistic) or finite.
void check_response(LossKind loss, const Vector& y);

// argmin_c sum_i rho(y_i, c). Throws DegenerateResponseError for a
// single-class logistic response.
double init_offset(const Vector& y, LossKind loss);

// u_i = -d rho / d f at (y_i, f_i).
Vector negative_gradient(LossKind loss, const Vector& y, const Vector& f);

// Mean loss over observations.
double empirical_risk(LossKind loss, const Vector& y, const Vector& f);

}  // namespace probeboost
