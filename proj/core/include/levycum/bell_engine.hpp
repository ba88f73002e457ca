#pragma once

#include "levycum/multiindex.hpp"
#include "levycum/subordinated_model.hpp"

namespace levycum {

/// c_i(Y) for Y = A Z(T): the generalized complete Bell polynomial of
/// the inner cgf coefficients, evaluated umbrally so that the monomial
/// T_1^{l_1} ... T_d^{l_d} becomes the joint cumulant of T at
/// (l_1, ..., l_d).  Sums over all decompositions s_1 + ... + s_d = i
/// and partitions of each part.
double cumulant(const SubordinatedModel& model, const MultiIndex& i,
                int order_cap = kDefaultOrderCap);

/// Same value as cumulant() for all-Gaussian bases, restricting each
/// partition to columns of order <= 2 (higher Brownian cumulants
/// vanish) and reading coefficients from the drift/variance directly.
double cumulant_brownian(const SubordinatedModel& model, const MultiIndex& i,
                         int order_cap = kDefaultOrderCap);

/// One-dimensional collapse: c_i(Y) for Y = B(T) with B Brownian of
/// the given mean and variance, as a sum over order-<=2 partitions of
/// the integer i.
double cumulant_univariate(double mean, double variance, const UnivariateCumulants& subordinator,
                           int order, int order_cap = kDefaultOrderCap);

}  // namespace levycum
