#pragma once

#include <vector>

#include <Eigen/Dense>

#include "levycum/cumulants.hpp"

namespace levycum {

/// Y(t) = A Z(T(t)): an n x d mixing matrix applied to d independent
/// base processes, each run on its own coordinate of a d-dimensional
/// subordinator T.  T is independent of the bases.
struct SubordinatedModel {
  Eigen::MatrixXd mixing;                   // A, n x d
  std::vector<UnivariateCumulants> bases;   // laws of Z_1(1), ..., Z_d(1)
  JointCumulantProvider subordinator;       // joint cumulants of T(1)

  int num_components() const { return static_cast<int>(mixing.rows()); }
  int num_factors() const { return static_cast<int>(mixing.cols()); }

  void validate() const {
    if (mixing.rows() < 1 || mixing.cols() < 1)
      throw std::invalid_argument("SubordinatedModel: empty mixing matrix");
    if (static_cast<int>(bases.size()) != num_factors())
      throw std::invalid_argument("SubordinatedModel: base count != mixing columns");
    if (subordinator.dimension() != num_factors())
      throw std::invalid_argument("SubordinatedModel: subordinator dimension != mixing columns");
  }
};

}  // namespace levycum
