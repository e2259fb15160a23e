#pragma once

#include <Eigen/Dense>

#include "hopf/algebra.hpp"
#include "hopf/clifford.hpp"

namespace hopf {

// Point u = (u1, u2) on the total space R^{2n}.
struct BundlePoint {
    Element u1, u2;

    int dim() const { return u1.dim(); }
    double radius2() const { return dot(u1, u1) + dot(u2, u2); }

    // Real 2n-column in the spinor ordering (u2 coefficients first, then u1),
    // the ordering under which x^A = U^T Gamma^A U matches project().
    Eigen::VectorXd spinor() const;
    static BundlePoint from_spinor(int n, const Eigen::VectorXd& U);
};

// Projection x in R^{n+1}, ordering (x^1, ..., x^n, x^{n+1}); r = |x|.
struct BasePoint {
    int n = 0;
    Eigen::VectorXd x; // length n+1
    double r = 0.0;

    // The first n components as an algebra element (real part = x^n).
    Element base_element() const;
};

struct FiberCoords {
    Element g;         // unit algebra element
    Eigen::VectorXd v; // length n, v = coefficients of g, v_n real part
    Eigen::VectorXd y; // length n-1, stereographic chart y_mu = v_mu/(1+v_n)
};

inline constexpr double kChartEps = 1e-8;

BasePoint project(const BundlePoint& u);
BasePoint project_spinor(const MatrixRep& rep, const Eigen::VectorXd& U);

// Inverse of project on the north chart: u_alpha = g * r_alpha.
BundlePoint lift(const BasePoint& x, const Element& g, double chart_eps = kChartEps);

FiberCoords fiber_coords(const BundlePoint& u, double chart_eps = kChartEps);

// Finite fiber action u_alpha -> G u_alpha (n = 2, 4 only).
BundlePoint fiber_rotate(const BundlePoint& u, const Element& G);

// Modified octonionic action u_alpha -> (G u1)(conj(u1) u_alpha) / |u1|^2 (n = 8).
BundlePoint fiber_rotate_oct(const BundlePoint& u, const Element& G);

// Naive left action for n=8, exposed for the counterexample search.
BundlePoint fiber_rotate_naive(const BundlePoint& u, const Element& G);

// U + eps * dU with dU = -(1/6) w_{AB} (U^T G^{ABCD} U) G^{CD} U, free sums over
// A,B,C,D in 1..n+1. omega must be antisymmetric (n+1)x(n+1). n = 8.
Eigen::VectorXd infinitesimal_rotate(const MatrixRep& rep, const Eigen::VectorXd& U,
                                     const Eigen::MatrixXd& omega, double eps);

} // namespace hopf
