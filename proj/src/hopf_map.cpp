#include "hopf/hopf_map.hpp"

#include <cmath>

namespace hopf {

Eigen::VectorXd BundlePoint::spinor() const {
    const int n = dim();
    Eigen::VectorXd U(2 * n);
    for (int i = 0; i < n; ++i) U[i] = u2[i];
    for (int i = 0; i < n; ++i) U[n + i] = u1[i];
    return U;
}

BundlePoint BundlePoint::from_spinor(int n, const Eigen::VectorXd& U) {
    if (U.size() != 2 * n) throw DimensionError("spinor length must be 2n");
    BundlePoint u{Element(n), Element(n)};
    for (int i = 0; i < n; ++i) u.u2[i] = U[i];
    for (int i = 0; i < n; ++i) u.u1[i] = U[n + i];
    return u;
}

Element BasePoint::base_element() const {
    Element e(n);
    for (int i = 0; i < n; ++i) e[i] = x[i];
    return e;
}

BasePoint project(const BundlePoint& u) {
    const int n = u.dim();
    BasePoint b;
    b.n = n;
    b.x.resize(n + 1);
    const Element xb = multiply(conjugate(u.u1), u.u2) * 2.0;
    for (int i = 0; i < n; ++i) b.x[i] = xb[i];
    b.x[n] = dot(u.u1, u.u1) - dot(u.u2, u.u2);
    b.r = dot(u.u1, u.u1) + dot(u.u2, u.u2);
    return b;
}

BasePoint project_spinor(const MatrixRep& rep, const Eigen::VectorXd& U) {
    const int n = rep.n;
    if (U.size() != 2 * n) throw DimensionError("spinor length must be 2n");
    BasePoint b;
    b.n = n;
    b.x.resize(n + 1);
    for (int A = 0; A <= n; ++A)
        b.x[A] = U.dot(rep.big_gamma[static_cast<std::size_t>(A)] * U);
    b.r = U.squaredNorm();
    return b;
}

BundlePoint lift(const BasePoint& x, const Element& g, double chart_eps) {
    const int n = x.n;
    if (g.dim() != n) throw DimensionError("fiber element dimension mismatch");
    if (std::abs(norm(g) - 1.0) > 1e-12)
        throw DivisionByZero("fiber element must have unit norm");
    const double denom = x.r + x.x[n];
    if (!(denom > chart_eps * x.r) || x.r == 0.0)
        throw ChartSingularity("base point at or near the south pole of the north chart");
    const double r1 = std::sqrt(denom / 2.0);
    const Element r2 = x.base_element() * (1.0 / std::sqrt(2.0 * denom));
    return BundlePoint{g * r1, multiply(g, r2)};
}

FiberCoords fiber_coords(const BundlePoint& u, double chart_eps) {
    const int n = u.dim();
    const BasePoint b = project(u);
    const double denom = b.r + b.x[n];
    if (!(denom > chart_eps * b.r) || b.r == 0.0)
        throw ChartSingularity("base point at or near the south pole of the north chart");
    const double r1 = std::sqrt(denom / 2.0);
    FiberCoords fc;
    fc.g = u.u1 * (1.0 / r1);
    fc.v.resize(n);
    for (int i = 0; i < n; ++i) fc.v[i] = fc.g[i];
    const double vn = fc.v[n - 1];
    if (!(1.0 + vn > chart_eps))
        throw ChartSingularity("fiber element at or near the antipode of the stereographic chart");
    fc.y.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) fc.y[i] = fc.v[i] / (1.0 + vn);
    return fc;
}

BundlePoint fiber_rotate(const BundlePoint& u, const Element& G) {
    if (u.dim() > 4) throw DimensionError("group fiber action only for n <= 4; use fiber_rotate_oct");
    return BundlePoint{multiply(G, u.u1), multiply(G, u.u2)};
}

BundlePoint fiber_rotate_naive(const BundlePoint& u, const Element& G) {
    return BundlePoint{multiply(G, u.u1), multiply(G, u.u2)};
}

BundlePoint fiber_rotate_oct(const BundlePoint& u, const Element& G) {
    if (u.dim() != 8) throw DimensionError("modified action is the n=8 case");
    const double n1 = dot(u.u1, u.u1);
    if (n1 == 0.0) throw DivisionByZero("fiber_rotate_oct requires u1 != 0");
    const Element Gu1 = multiply(G, u.u1);
    const Element cu1 = conjugate(u.u1);
    const double inv = 1.0 / n1;
    return BundlePoint{multiply(Gu1, multiply(cu1, u.u1)) * inv,
                       multiply(Gu1, multiply(cu1, u.u2)) * inv};
}

Eigen::VectorXd infinitesimal_rotate(const MatrixRep& rep, const Eigen::VectorXd& U,
                                     const Eigen::MatrixXd& omega, double eps) {
    const int n = rep.n;
    const int N = n + 1;
    if (U.size() != 2 * n) throw DimensionError("spinor length must be 2n");
    if (omega.rows() != N || omega.cols() != N) throw DimensionError("omega must be (n+1)x(n+1)");
    if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw DimensionError("omega must be antisymmetric");

    // For pairwise distinct indices the 1/k!-antisymmetrized product collapses
    // to the ordered product with the permutation sign (the Gammas anticommute),
    // and terms with any repeated index drop out of the sum (Gamma^{ABCD} = 0
    // unless all distinct, Gamma^{CC} = 0, omega_{AA} = 0). So only ordered
    // products are needed.
    std::vector<Eigen::MatrixXd> pair(static_cast<std::size_t>(N * N));
    for (int C = 0; C < N; ++C)
        for (int D = 0; D < N; ++D)
            if (C != D)
                pair[static_cast<std::size_t>(C * N + D)] =
                    rep.big_gamma[static_cast<std::size_t>(C)] * rep.big_gamma[static_cast<std::size_t>(D)];

    // Quartic scalars s_{ABCD} = U^T Gamma^{ABCD} U for sorted A<B<C<D; other
    // orderings follow by the permutation sign.
    auto qidx = [N](int a, int b, int c, int d) {
        return ((a * N + b) * N + c) * N + d;
    };
    std::vector<double> quart(static_cast<std::size_t>(N * N * N * N), 0.0);
    for (int A = 0; A < N; ++A)
        for (int B = A + 1; B < N; ++B)
            for (int C = B + 1; C < N; ++C)
                for (int D = C + 1; D < N; ++D) {
                    const Eigen::MatrixXd q =
                        pair[static_cast<std::size_t>(A * N + B)] * pair[static_cast<std::size_t>(C * N + D)];
                    quart[static_cast<std::size_t>(qidx(A, B, C, D))] = U.dot(q * U);
                }
    auto s_of = [&](int a, int b, int c, int d) {
        int v[4] = {a, b, c, d};
        int sign = 1;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3 - i; ++j)
                if (v[j] > v[j + 1]) {
                    std::swap(v[j], v[j + 1]);
                    sign = -sign;
                }
        return sign * quart[static_cast<std::size_t>(qidx(v[0], v[1], v[2], v[3]))];
    };

    Eigen::VectorXd dU = Eigen::VectorXd::Zero(2 * n);
    for (int A = 0; A < N; ++A)
        for (int B = 0; B < N; ++B) {
            if (B == A || omega(A, B) == 0.0) continue;
            for (int C = 0; C < N; ++C) {
                if (C == A || C == B) continue;
                for (int D = 0; D < N; ++D) {
                    if (D == A || D == B || D == C) continue;
                    const double s = s_of(A, B, C, D);
                    if (s == 0.0) continue;
                    dU += -(1.0 / 6.0) * omega(A, B) * s *
                          (pair[static_cast<std::size_t>(C * N + D)] * U);
                }
            }
        }
    return U + eps * dU;
}

} // namespace hopf
