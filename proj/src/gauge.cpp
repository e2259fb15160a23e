#include "hopf/gauge.hpp"

#include <cmath>

namespace hopf {

Eigen::MatrixXd PotentialTensor::contract(const Eigen::VectorXd& xdot) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int d = 0; d < static_cast<int>(slices.size()) && d < xdot.size(); ++d)
        out += xdot[d] * slices[static_cast<std::size_t>(d)];
    return out;
}

PotentialTensor potential(const MatrixRep& rep, const BasePoint& x, double chart_eps) {
    const int n = rep.n;
    if (x.n != n) throw DimensionError("dimension mismatch");
    const double denom = x.r + x.x[n];
    if (!(denom > chart_eps * x.r) || x.r == 0.0)
        throw ChartSingularity("potential undefined at the south pole");
    const double scale = 1.0 / (2.0 * x.r * denom);
    PotentialTensor A;
    A.n = n;
    A.slices.assign(static_cast<std::size_t>(n + 1), Eigen::MatrixXd::Zero(n, n));
    for (int d = 0; d < n; ++d) {
        Eigen::MatrixXd& s = A.slices[static_cast<std::size_t>(d)];
        for (int c = 0; c < n; ++c) {
            if (x.x[c] == 0.0) continue;
            s += x.x[c] * rep.Sigma(c, d);
        }
        s *= scale;
    }
    return A;
}

Eigen::VectorXd dirac_component(const PotentialTensor& A) {
    if (A.n != 2) throw DimensionError("dirac_component requires n=2");
    Eigen::VectorXd out(3);
    for (int d = 0; d < 3; ++d) out[d] = A.slices[static_cast<std::size_t>(d)](0, 1);
    return out;
}

YangReduction yang_reduction(const PotentialTensor& A) {
    if (A.n != 4) throw DimensionError("yang_reduction requires n=4");
    static const int eps3[3][3][3] = {
        {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
        {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
        {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    YangReduction red;
    red.atilde = Eigen::MatrixXd::Zero(3, 5);
    for (int l = 0; l < 3; ++l)
        for (int d = 0; d < 5; ++d) {
            double v = 0.0;
            for (int m = 0; m < 3; ++m)
                for (int nu = 0; nu < 3; ++nu)
                    v += eps3[l][m][nu] * A.slices[static_cast<std::size_t>(d)](m, nu);
            red.atilde(l, d) = 0.5 * v;
            red.epsilon_identity_dev = std::max(
                red.epsilon_identity_dev,
                std::abs(v - 2.0 * A.slices[static_cast<std::size_t>(d)](l, 3)));
        }
    return red;
}

Eigen::VectorXd d_form(const Eigen::VectorXd& y, const Eigen::MatrixXd& a_eval) {
    const int n = static_cast<int>(a_eval.rows());
    if (y.size() != n - 1) throw DimensionError("y must have length n-1");
    const double y2 = y.squaredNorm();
    const double f = 1.0 / ((1.0 + y2) * (1.0 + y2));
    Eigen::VectorXd D(n - 1);
    double yAn = 0.0;
    for (int nu = 0; nu < n - 1; ++nu) yAn += y[nu] * a_eval(n - 1, nu);
    for (int m = 0; m < n - 1; ++m) {
        double v = (1.0 - y2) * a_eval(n - 1, m);
        for (int nu = 0; nu < n - 1; ++nu) v += 2.0 * y[nu] * a_eval(nu, m);
        v += 2.0 * yAn * y[m];
        D[m] = f * v;
    }
    return D;
}

KillingTriple killing(std::complex<double> z) {
    KillingTriple k;
    k.z = z;
    const double zz = std::norm(z);
    k.h_minus = std::conj(z) / (1.0 + zz);
    k.h_plus = z / (1.0 + zz);
    k.h3 = (1.0 - zz) / (1.0 + zz);
    return k;
}

} // namespace hopf
