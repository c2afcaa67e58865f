/// \file manufactured_data.hpp
/// \brief Closed-form exact fields of the built-in cases.
///
/// Generated by tools/gen_manufactured.py; do not edit.

#pragma once

#include "stis/field_values.hpp"

#include <cmath>

namespace stis::manufactured {

inline void disk2d_smooth_neg(double x, double y, double t, FieldValues<2>& f) {
  const double c0 = 2*t;
  const double c1 = sin(c0);
  const double c2 = pow(x, 2);
  const double c3 = c2 - 1;
  const double c4 = -c3;
  const double c5 = pow(c4, 2);
  const double c6 = pow(y, 2);
  const double c7 = c6 - 1;
  const double c8 = -c7;
  const double c9 = pow(c8, 2);
  const double c10 = c5*c9;
  const double c11 = (1.0/2.0)*c1*c10;
  const double c12 = c5*c8;
  const double c13 = t*y;
  const double c14 = (1.0/2.0)*c13 + (1.0/2.0)*x + 1;
  const double c15 = c1*c14;
  const double c16 = 4*c15;
  const double c17 = c12*c16;
  const double c18 = c4*c9;
  const double c19 = c18*x;
  const double c20 = 2*c1;
  const double c21 = c20*y;
  const double c22 = c0*c1*c19 - 16*c1*c14*c4*c8*x*y + c12*c21;
  const double c23 = 4*c1;
  const double c24 = 8*c2;
  const double c25 = cos(c0);
  const double c26 = c10*c25;
  const double c27 = c14*c25;
  const double c28 = 8*x;
  const double c29 = c7*t;
  const double c30 = c13 + x + 2;
  const double c31 = 2*c30;
  const double c32 = 6*c1;
  const double c33 = c3*y;
  const double c34 = 4*c30;
  const double c35 = 2*c3;
  const double c36 = (96.0/5.0)*c1;
  const double c37 = c36*y;
  f.u[0] = c11*t - c17*y;
  f.u[1] = -c11 + c16*c19;
  f.grad_u(0, 0) = -c22;
  f.grad_u(0, 1) = 8*c1*c14*c5*c6 - c12*c13*c23 - c17;
  f.grad_u(1, 0) = -c15*c24*c9 + c16*c18 + c19*c23;
  f.grad_u(1, 1) = c22;
  f.dt_u[0] = c11 - c12*c20*c6 - 8*c12*c27*y + c26*t;
  f.dt_u[1] = c18*c27*c28 + c19*c21 - c26;
  f.lap_u[0] = c20*c7*(c0*c2*c7 + c24*c30*y + c28*c33 + c29*c3 + c33*c34) + pow(c3, 2)*c32*(c0*c6 + c29 + c31*y);
  f.lap_u[1] = -c1*c35*(c13*c28*c7 + c28*c30*c6 + c3*c7 + c34*c7*x + c35*c6) - c32*pow(c7, 2)*(3*c2 + c31*x - 1);
  f.p = c37*x + 4;
  f.grad_p[0] = c37;
  f.grad_p[1] = c36*x;
}

inline void disk2d_smooth_pos(double x, double y, double t, FieldValues<2>& f) {
  const double c0 = 2*t;
  const double c1 = sin(c0);
  const double c2 = pow(x, 2);
  const double c3 = c2 - 1;
  const double c4 = -c3;
  const double c5 = pow(c4, 2);
  const double c6 = pow(y, 2);
  const double c7 = c6 - 1;
  const double c8 = -c7;
  const double c9 = pow(c8, 2);
  const double c10 = c5*c9;
  const double c11 = (1.0/2.0)*c1*c10;
  const double c12 = c5*c8;
  const double c13 = t*y;
  const double c14 = (1.0/2.0)*c13 + (1.0/2.0)*x + 1;
  const double c15 = c1*c14;
  const double c16 = 4*c15;
  const double c17 = c12*c16;
  const double c18 = c4*c9;
  const double c19 = c18*x;
  const double c20 = 2*c1;
  const double c21 = c20*y;
  const double c22 = c0*c1*c19 - 16*c1*c14*c4*c8*x*y + c12*c21;
  const double c23 = 4*c1;
  const double c24 = 8*c2;
  const double c25 = cos(c0);
  const double c26 = c10*c25;
  const double c27 = c14*c25;
  const double c28 = 8*x;
  const double c29 = c7*t;
  const double c30 = c13 + x + 2;
  const double c31 = 2*c30;
  const double c32 = 6*c1;
  const double c33 = c3*y;
  const double c34 = 4*c30;
  const double c35 = 2*c3;
  f.u[0] = c11*t - c17*y;
  f.u[1] = -c11 + c16*c19;
  f.grad_u(0, 0) = -c22;
  f.grad_u(0, 1) = 8*c1*c14*c5*c6 - c12*c13*c23 - c17;
  f.grad_u(1, 0) = -c15*c24*c9 + c16*c18 + c19*c23;
  f.grad_u(1, 1) = c22;
  f.dt_u[0] = c11 - c12*c20*c6 - 8*c12*c27*y + c26*t;
  f.dt_u[1] = c18*c27*c28 + c19*c21 - c26;
  f.lap_u[0] = c20*c7*(c0*c2*c7 + c24*c30*y + c28*c33 + c29*c3 + c33*c34) + pow(c3, 2)*c32*(c0*c6 + c29 + c31*y);
  f.lap_u[1] = -c1*c35*(c13*c28*c7 + c28*c30*c6 + c3*c7 + c34*c7*x + c35*c6) - c32*pow(c7, 2)*(3*c2 + c31*x - 1);
  f.p = 0;
  f.grad_p[0] = 0;
  f.grad_p[1] = 0;
}

inline void disk2d_kink_neg(double x, double y, double t, FieldValues<2>& f) {
  const double c0 = 2*t;
  const double c1 = sin(c0);
  const double c2 = pow(x, 2);
  const double c3 = c2 - 1;
  const double c4 = -c3;
  const double c5 = pow(c4, 2);
  const double c6 = pow(y, 2);
  const double c7 = c6 - 1;
  const double c8 = -c7;
  const double c9 = pow(c8, 2);
  const double c10 = 2*y;
  const double c11 = c10 - t + 1.0/2.0;
  const double c12 = exp(-1.0/4.0);
  const double c13 = (1.0/4.0)*c12;
  const double c14 = -c11;
  const double c15 = -1.0/2.0*t + y + 1.0/4.0;
  const double c16 = pow(c15, 2) + c2;
  const double c17 = exp(-c16);
  const double c18 = (1.0/2.0)*c17;
  const double c19 = c14*c18;
  const double c20 = c11*c13 + c19;
  const double c21 = 4*y;
  const double c22 = -5.0/16.0*c12 + c13*c16 + c18;
  const double c23 = c1*c5;
  const double c24 = c22*c23;
  const double c25 = c24*c8;
  const double c26 = c17*x;
  const double c27 = (1.0/2.0)*c12*x - c26;
  const double c28 = c23*c9;
  const double c29 = c22*c9;
  const double c30 = c1*x;
  const double c31 = 4*c30*c4;
  const double c32 = c26*c28;
  const double c33 = c23*c8;
  const double c34 = c21*c33;
  const double c35 = -16*c1*c22*c4*c8*x*y + c14*c32 + c20*c31*c9 + c27*c34;
  const double c36 = 8*y;
  const double c37 = (1.0/2.0)*c12 - c17;
  const double c38 = 2*c2;
  const double c39 = -c13*c15 + c15*c18;
  const double c40 = cos(c0);
  const double c41 = c40*c5;
  const double c42 = pow(c3, 2);
  const double c43 = -c0 + c21 + 1;
  const double c44 = pow(c43, 2);
  const double c45 = exp(-c2 - 1.0/16.0*c44);
  const double c46 = 2*c45;
  const double c47 = -c12 + c46;
  const double c48 = c43*c47;
  const double c49 = (3.0/2.0)*c7;
  const double c50 = 16*c2;
  const double c51 = c12*(c44 + c50);
  const double c52 = -20*c12 + 32*c45 + c51;
  const double c53 = c52*y;
  const double c54 = pow(c7, 2);
  const double c55 = 4*c12 + c44*c45 - 8*c45;
  const double c56 = c43*c7;
  const double c57 = c42*c56;
  const double c58 = c2*c45;
  const double c59 = 4*c58;
  const double c60 = c3*c56;
  const double c61 = c2*c47;
  const double c62 = c12 - c46 + c59;
  const double c63 = 6*c3;
  f.u[0] = c1*c20*c5*c9 - c21*c25;
  f.u[1] = -c27*c28 + c29*c31;
  f.grad_u(0, 0) = -c35;
  f.grad_u(0, 1) = -c20*c33*c36 + 8*c24*c6 - 4*c25 + c28*(pow(c14, 2)*c18 + c37);
  f.grad_u(1, 0) = -8*c1*c2*c29 + 4*c1*c22*c4*c9 + 8*c1*c27*c4*c9*x - c28*(c17*c38 + c37);
  f.grad_u(1, 1) = c35;
  f.dt_u[0] = c1*c5*c9*(-c13 + c15*c19 + c18) + 2*c20*c40*c5*c9 - c22*c36*c41*c8 - c34*c39;
  f.dt_u[1] = c15*c32 - 2*c27*c41*c9 + 8*c29*c4*c40*x + c31*c39*c9;
  f.lap_u[0] = c1*c42*((1.0/16.0)*c43*c45*c54*(24 - c44) - c48*c49 - 3*c48*c6 + c49*c55*y + (3.0/8.0)*c53) + c1*c7*(c10*c42*c62 + (1.0/2.0)*c2*c53 - c3*c47*c50*y - 1.0/2.0*c3*c48*c7 + (1.0/4.0)*c3*c53 + (1.0/2.0)*c45*c57 - c56*c61 - c57*c58 + c59*c60);
  f.lap_u[1] = c3*c30*(-c21*c45*c60 + (1.0/4.0)*c3*c44*c45*c54 - c3*c46*c54 + 4*c3*c47*c6 + 2*c3*c47*c7 + 4*c43*c47*c7*y - 1.0/2.0*c52*c6 - 1.0/4.0*c52*c7 - 1.0/2.0*c54*c55) + c30*c54*((15.0/2.0)*c12 + c42*c46*(c38 - 3) - 12*c45 + c47*c63 - 3.0/8.0*c51 + 12*c61 - c62*c63);
  f.p = 4;
  f.grad_p[0] = 0;
  f.grad_p[1] = 0;
}

inline void disk2d_kink_pos(double x, double y, double t, FieldValues<2>& f) {
  const double c0 = pow(y, 2);
  const double c1 = c0 - 1;
  const double c2 = -c1;
  const double c3 = pow(x, 2);
  const double c4 = c3 - 1;
  const double c5 = -c4;
  const double c6 = pow(c5, 2);
  const double c7 = -1.0/2.0*t + y + 1.0/4.0;
  const double c8 = exp(-c3 - pow(c7, 2));
  const double c9 = 2*t;
  const double c10 = sin(c9);
  const double c11 = c10*c8;
  const double c12 = c11*c6;
  const double c13 = c12*c2;
  const double c14 = c13*y;
  const double c15 = 2*y;
  const double c16 = -c15 + t - 1.0/2.0;
  const double c17 = pow(c2, 2);
  const double c18 = c11*c17;
  const double c19 = c18*c5;
  const double c20 = c19*x;
  const double c21 = c12*c17;
  const double c22 = (1.0/2.0)*c21;
  const double c23 = c22*x;
  const double c24 = 4*y;
  const double c25 = c5*x;
  const double c26 = c13*c15;
  const double c27 = c11*c2*c24*c25 - c16*c20 - c16*c23 + c26*x;
  const double c28 = cos(c9);
  const double c29 = c28*c6*c8;
  const double c30 = (1.0/4.0)*c21;
  const double c31 = c17*c29;
  const double c32 = pow(c4, 2);
  const double c33 = c24 - c9 + 1;
  const double c34 = c1*c33;
  const double c35 = pow(c1, 2);
  const double c36 = pow(c33, 2);
  const double c37 = c10*exp(-c3 - 1.0/16.0*c36);
  const double c38 = c3*y;
  const double c39 = c3*c34;
  const double c40 = c34*c4;
  const double c41 = 2*c4;
  const double c42 = c37*x;
  const double c43 = c35*c4;
  f.u[0] = (1.0/4.0)*c10*c16*c17*c6*c8 - c14;
  f.u[1] = c20 + c23;
  f.grad_u(0, 0) = c27;
  f.grad_u(0, 1) = 2*c0*c10*c6*c8 + (1.0/4.0)*c10*pow(c16, 2)*c17*c6*c8 - c13 - c16*c26 - c22;
  f.grad_u(1, 0) = c10*c17*c5*c8 - 2*c18*c3 - 4*c19*c3 - c21*c3 + c22;
  f.grad_u(1, 1) = -c27;
  f.dt_u[0] = -c14*c7 - c15*c2*c29 + c16*c30*c7 + (1.0/2.0)*c16*c31 + c30;
  f.dt_u[1] = 2*c17*c25*c28*c8 + c20*c7 + c23*c7 + c31*x;
  f.lap_u[0] = c1*c37*(-c15*c32 + c24*c3*c32 + c24*c4 + (1.0/4.0)*c32*c34 - 1.0/2.0*c32*c39 - 16*c38*c4 + 8*c38 + c39*c41 - c39 - 1.0/2.0*c40) + c32*c37*(-3*c0*c33 + (3.0/4.0)*c1*c36*y - 6*c1*y - 1.0/32.0*pow(c33, 3)*c35 + (3.0/4.0)*c33*c35 - 3.0/2.0*c34 + 6*y);
  f.lap_u[1] = c35*c42*(2*c3*c32 - 12*c3*c4 + 24*c3 - 3*c32 - 18) + c4*c42*(4*c0*c4 - 12*c0 + c1*c41 - c15*c40 + c24*c34 - 1.0/4.0*c35*c36 + 2*c35 + (1.0/8.0)*c36*c43 - c43 + 4);
  f.p = 0;
  f.grad_p[0] = 0;
  f.grad_p[1] = 0;
}

inline void poly2d_neg(double x, double y, double t, FieldValues<2>& f) {
  const double c0 = pow(x, 2) + y;
  const double c1 = 2*y;
  const double c2 = -c1*x + x;
  const double c3 = 2*t;
  const double c4 = c3*x;
  const double c5 = t + 1;
  f.u[0] = c0*t;
  f.u[1] = c2*t;
  f.grad_u(0, 0) = c4;
  f.grad_u(0, 1) = t;
  f.grad_u(1, 0) = t*(1 - c1);
  f.grad_u(1, 1) = -c4;
  f.dt_u[0] = c0;
  f.dt_u[1] = c2;
  f.lap_u[0] = c3;
  f.lap_u[1] = 0;
  f.p = c5*x;
  f.grad_p[0] = c5;
  f.grad_p[1] = 0;
}

inline void poly2d_pos(double x, double y, double t, FieldValues<2>& f) {
  const double c0 = pow(x, 2) + y;
  const double c1 = 2*y;
  const double c2 = -c1*x + x;
  const double c3 = 2*t;
  const double c4 = c3*x;
  const double c5 = t + 1;
  f.u[0] = c0*t;
  f.u[1] = c2*t;
  f.grad_u(0, 0) = c4;
  f.grad_u(0, 1) = t;
  f.grad_u(1, 0) = t*(1 - c1);
  f.grad_u(1, 1) = -c4;
  f.dt_u[0] = c0;
  f.dt_u[1] = c2;
  f.lap_u[0] = c3;
  f.lap_u[1] = 0;
  f.p = c5*x;
  f.grad_p[0] = c5;
  f.grad_p[1] = 0;
}

inline void paper3d_case1_neg(double x, double y, double z, double t, FieldValues<3>& f) {
  const double c0 = pow(x, 2);
  const double c1 = pow(y, 2);
  const double c2 = 10*t;
  const double c3 = -c2*z + 5*pow(z, 2);
  const double c4 = c0 + 5*c1 + c3;
  const double c5 = 2*t;
  const double c6 = sin(c5);
  const double c7 = (1.0/5.0)*c6;
  const double c8 = c4*c7;
  const double c9 = 5*c0 + c1 + c3 + 10*pow(t, 2) - 8;
  const double c10 = c7*c9;
  const double c11 = c6*y;
  const double c12 = t - z;
  const double c13 = (4.0/5.0)*c12;
  const double c14 = c11*c13;
  const double c15 = (2.0/5.0)*x;
  const double c16 = c11*c15;
  const double c17 = 2*c6;
  const double c18 = -10*z;
  const double c19 = c7*(-c18 - c2);
  const double c20 = (4.0/5.0)*c11*x;
  const double c21 = cos(c5);
  const double c22 = (42.0/5.0)*c6;
  const double c23 = (96.0/5.0)*c6;
  const double c24 = c23*y;
  f.u[0] = c8*y;
  f.u[1] = c10*x;
  f.u[2] = c14*x;
  f.grad_u(0, 0) = c16;
  f.grad_u(0, 1) = c1*c17 + c8;
  f.grad_u(0, 2) = c19*y;
  f.grad_u(1, 0) = c0*c17 + c10;
  f.grad_u(1, 1) = c16;
  f.grad_u(1, 2) = c19*x;
  f.grad_u(2, 0) = c14;
  f.grad_u(2, 1) = c13*c6*x;
  f.grad_u(2, 2) = -c20;
  f.dt_u[0] = -c17*y*z + (2.0/5.0)*c21*c4*y;
  f.dt_u[1] = c15*c21*c9 + c7*x*(c18 + 20*t);
  f.dt_u[2] = (8.0/5.0)*c12*c21*x*y + c20;
  f.lap_u[0] = c22*y;
  f.lap_u[1] = c22*x;
  f.lap_u[2] = 0;
  f.p = c24*x + 2*M_SQRT2;
  f.grad_p[0] = c24;
  f.grad_p[1] = c23*x;
  f.grad_p[2] = 0;
}

inline void paper3d_case1_pos(double x, double y, double z, double t, FieldValues<3>& f) {
  const double c0 = pow(x, 2);
  const double c1 = pow(y, 2);
  const double c2 = 10*t;
  const double c3 = -c2*z + 5*pow(z, 2);
  const double c4 = c0 + 5*c1 + c3;
  const double c5 = 2*t;
  const double c6 = sin(c5);
  const double c7 = (1.0/5.0)*c6;
  const double c8 = c4*c7;
  const double c9 = 5*c0 + c1 + c3 + 10*pow(t, 2) - 8;
  const double c10 = c7*c9;
  const double c11 = c6*y;
  const double c12 = t - z;
  const double c13 = (4.0/5.0)*c12;
  const double c14 = c11*c13;
  const double c15 = (2.0/5.0)*x;
  const double c16 = c11*c15;
  const double c17 = 2*c6;
  const double c18 = -10*z;
  const double c19 = c7*(-c18 - c2);
  const double c20 = (4.0/5.0)*c11*x;
  const double c21 = cos(c5);
  const double c22 = (42.0/5.0)*c6;
  f.u[0] = c8*y;
  f.u[1] = c10*x;
  f.u[2] = c14*x;
  f.grad_u(0, 0) = c16;
  f.grad_u(0, 1) = c1*c17 + c8;
  f.grad_u(0, 2) = c19*y;
  f.grad_u(1, 0) = c0*c17 + c10;
  f.grad_u(1, 1) = c16;
  f.grad_u(1, 2) = c19*x;
  f.grad_u(2, 0) = c14;
  f.grad_u(2, 1) = c13*c6*x;
  f.grad_u(2, 2) = -c20;
  f.dt_u[0] = -c17*y*z + (2.0/5.0)*c21*c4*y;
  f.dt_u[1] = c15*c21*c9 + c7*x*(c18 + 20*t);
  f.dt_u[2] = (8.0/5.0)*c12*c21*x*y + c20;
  f.lap_u[0] = c22*y;
  f.lap_u[1] = c22*x;
  f.lap_u[2] = 0;
  f.p = 0;
  f.grad_p[0] = 0;
  f.grad_p[1] = 0;
  f.grad_p[2] = 0;
}

inline void paper3d_case2_neg(double x, double y, double z, double t, FieldValues<3>& f) {
  const double c0 = 2*t;
  const double c1 = sin(c0);
  const double c2 = pow(x, 2);
  const double c3 = pow(y, 2);
  const double c4 = pow(t - z, 2);
  const double c5 = exp(-c2 - c3 - c4);
  const double c6 = c5 - 1.0/2.0*exp(-1.0/2.0);
  const double c7 = c1*c6;
  const double c8 = c1*c5;
  const double c9 = 2*y;
  const double c10 = c8*c9;
  const double c11 = c10*x;
  const double c12 = 2*c3;
  const double c13 = -c7;
  const double c14 = c0 - 2*z;
  const double c15 = c14*c8;
  const double c16 = 2*c2;
  const double c17 = c6*cos(c0);
  const double c18 = -c14*c8;
  const double c19 = 2*x;
  const double c20 = 2*c4 - 1;
  const double c21 = c19*c8;
  f.u[0] = -c7*y;
  f.u[1] = c7*x;
  f.u[2] = 0;
  f.grad_u(0, 0) = c11;
  f.grad_u(0, 1) = c12*c8 + c13;
  f.grad_u(0, 2) = -c15*y;
  f.grad_u(1, 0) = -c13 - c16*c8;
  f.grad_u(1, 1) = -c11;
  f.grad_u(1, 2) = c15*x;
  f.grad_u(2, 0) = 0;
  f.grad_u(2, 1) = 0;
  f.grad_u(2, 2) = 0;
  f.dt_u[0] = -c17*c9 - c18*y;
  f.dt_u[1] = c17*c19 + c18*x;
  f.dt_u[2] = 0;
  f.lap_u[0] = 2*c1*c5*y*(3 - c12) - c10*c20 - c10*(c16 - 1);
  f.lap_u[1] = c20*c21 + c21*(c12 - 1) + c21*(c16 - 3);
  f.lap_u[2] = 0;
  f.p = 2*M_SQRT2;
  f.grad_p[0] = 0;
  f.grad_p[1] = 0;
  f.grad_p[2] = 0;
}

inline void paper3d_case2_pos(double x, double y, double z, double t, FieldValues<3>& f) {
  const double c0 = pow(x, 2);
  const double c1 = pow(y, 2);
  const double c2 = pow(t - z, 2);
  const double c3 = exp(-c0 - c1 - c2);
  const double c4 = 2*t;
  const double c5 = sin(c4);
  const double c6 = c3*c5;
  const double c7 = (1.0/2.0)*c6;
  const double c8 = c7*y;
  const double c9 = c7*x;
  const double c10 = c6*y;
  const double c11 = c10*x;
  const double c12 = -c7;
  const double c13 = c4 - 2*z;
  const double c14 = c3*cos(c4);
  const double c15 = -c13;
  const double c16 = 2*c0;
  const double c17 = 2*c1;
  const double c18 = 2*c2 - 1;
  const double c19 = c6*x;
  f.u[0] = -c8;
  f.u[1] = c9;
  f.u[2] = 0;
  f.grad_u(0, 0) = c11;
  f.grad_u(0, 1) = c1*c6 + c12;
  f.grad_u(0, 2) = -c13*c8;
  f.grad_u(1, 0) = -c0*c6 - c12;
  f.grad_u(1, 1) = -c11;
  f.grad_u(1, 2) = c13*c9;
  f.grad_u(2, 0) = 0;
  f.grad_u(2, 1) = 0;
  f.grad_u(2, 2) = 0;
  f.dt_u[0] = -c14*y - c15*c8;
  f.dt_u[1] = c14*x + c15*c9;
  f.dt_u[2] = 0;
  f.lap_u[0] = -c10*c18 - c10*(c16 - 1) + c3*c5*y*(3 - c17);
  f.lap_u[1] = c18*c19 + c19*(c16 - 3) + c19*(c17 - 1);
  f.lap_u[2] = 0;
  f.p = 0;
  f.grad_p[0] = 0;
  f.grad_p[1] = 0;
  f.grad_p[2] = 0;
}

}  // namespace stis::manufactured
