/// \file common.hpp
/// \brief Basic types shared by all modules.

#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <stdexcept>
#include <string>

namespace stis {

template <int D>
using Point = Eigen::Matrix<double, D, 1>;

template <int D>
using Matrix = Eigen::Matrix<double, D, D>;

/// Space-time point: the first d coordinates are space, the last one is time.
template <int d>
using STPoint = Eigen::Matrix<double, d + 1, 1>;

/// Error raised for invalid input or a failed numerical stage.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subdomain tag. Neg is {phi < 0} (phase 2), Pos is {phi > 0} (phase 1).
enum class Phase { Neg = 0, Pos = 1 };

inline const char* to_string(Phase p) { return p == Phase::Neg ? "neg" : "pos"; }

template <int d>
STPoint<d> make_st(const Point<d>& x, double t) {
  STPoint<d> p;
  p.template head<d>() = x;
  p[d] = t;
  return p;
}

}  // namespace stis
