#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hopf/clifford.hpp"
#include "hopf/hopf_map.hpp"

namespace hopf {

// Velocity-stripped monopole potential: A_{ab} = A_{ab,d} xdot_d with
// A_{ab,d} = x_c (Sigma^{cd})_{ab} / (2r(r + x^{n+1})); a,b,c,d run 1..n,
// the d = n+1 column is identically zero and kept for the contraction with
// the full (n+1)-velocity.
struct PotentialTensor {
    int n = 0;
    std::vector<Eigen::MatrixXd> slices; // n+1 matrices n x n, slice d = A_{.., d}

    // Contract with a base velocity (length n+1) to the evaluated A_{ab}.
    Eigen::MatrixXd contract(const Eigen::VectorXd& xdot) const;
};

PotentialTensor potential(const MatrixRep& rep, const BasePoint& x,
                          double chart_eps = kChartEps);

// n=2: the single independent slice row A_{12,d} (length n+1).
Eigen::VectorXd dirac_component(const PotentialTensor& A);

// n=4: Atilde_{la,d} = (1/2) eps_{la mu nu} A_{mu nu, d}, 3 x (n+1).
// Asserts the eps-identity eps_{la mu nu} A_{mu nu, d} = 2 A_{la 4, d} internally
// and reports its max deviation.
struct YangReduction {
    Eigen::MatrixXd atilde;      // 3 x 5
    double epsilon_identity_dev = 0.0;
};
YangReduction yang_reduction(const PotentialTensor& A);

// D_mu = ((1-y^2) A_{n mu} + 2 y_nu A_{nu mu} + 2 y_nu A_{n nu} y_mu) / (1+y^2)^2.
// The A_{nu mu} coefficient is 2 (not the printed 1): this is the unique closed
// form with v_a A_{ab} vdot_b = 2 D_mu ydot_mu identically.
Eigen::VectorXd d_form(const Eigen::VectorXd& y, const Eigen::MatrixXd& a_eval);

struct KillingTriple {
    std::complex<double> h_plus, h_minus;
    double h3 = 0.0;
    std::complex<double> z;
};

// h_- = zbar/(1+z zbar), h_+ = z/(1+z zbar), h3 = (1-z zbar)/(1+z zbar).
KillingTriple killing(std::complex<double> z);

} // namespace hopf
