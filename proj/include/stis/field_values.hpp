/// \file field_values.hpp
/// \brief Pointwise values of an exact velocity/pressure pair in one phase.

#pragma once

#include "stis/common.hpp"

namespace stis {

template <int d>
struct FieldValues {
  Point<d> u;
  Matrix<d> grad_u;  // grad_u(i, j) = d u_i / d x_j
  Point<d> dt_u;
  Point<d> lap_u;
  double p;
  Point<d> grad_p;
};

}  // namespace stis
