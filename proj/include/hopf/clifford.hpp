#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hopf/algebra.hpp"

namespace hopf {

// Matrix families built from the structure constants:
//   lambda^mu (n x n, antisymmetric, square -1), mu = 1..n-1
//   gamma^c   (n x n), c = 1..n, gamma^n = identity
//   Gamma^A   (2n x 2n, symmetric), A = 1..n+1
//   Sigma^{cd} (n x n), c,d = 1..n, Sigma^{mu nu} = [lambda^mu, lambda^nu]/2,
//   Sigma^{mu n} = -Sigma^{n mu} = lambda^mu.
//
// Anticommutator normalization carries the factor 2 forced by (lambda^mu)^2 = -1:
//   {gamma^mu, gamma^nu} = -2 delta^{mu nu},  {Gamma^A, Gamma^B} = 2 delta^{AB}.
struct MatrixRep {
    int n = 0;
    std::vector<Eigen::MatrixXd> lambda; // n-1 matrices
    std::vector<Eigen::MatrixXd> gamma;  // n matrices
    std::vector<Eigen::MatrixXd> big_gamma; // n+1 matrices, 2n x 2n
    std::vector<Eigen::MatrixXd> sigma;  // n*n matrices, row-major (c,d), 0-based

    const Eigen::MatrixXd& Sigma(int c, int d) const { // c,d 0-based in 0..n-1
        return sigma[static_cast<std::size_t>(c * n + d)];
    }
};

// n in {2,4,8}.
MatrixRep build_rep(int n);
const MatrixRep& matrix_rep(int n); // cached, immutable

struct CliffordReport {
    double max_big_gamma_dev = 0.0; // ||{G^A,G^B} - 2 d^{AB} I||_inf over all A,B
    double max_lambda_dev = 0.0;    // ||{l^mu,l^nu} + 2 d^{mu nu} I||_inf
    double max_gamma_dev = 0.0;     // ||{g^mu,g^nu} + 2 d^{mu nu} I||_inf, mu,nu < n
    double max_symmetry_dev = 0.0;  // ||G^A - (G^A)^T||_inf
};

CliffordReport clifford_check(const MatrixRep& rep);

// (xy)_a = x_c (gamma^c)_{ab} y_b; must equal algebra multiply.
Element gamma_multiply(const MatrixRep& rep, const Element& x, const Element& y);

// Totally antisymmetrized product of the named Gamma matrices (1/k! normalization).
// indices: 2 or 4 values, 1-based in 1..n+1.
Eigen::MatrixXd antisym_product(const MatrixRep& rep, const std::vector<int>& indices);

} // namespace hopf
