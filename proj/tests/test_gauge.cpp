#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopf/checks.hpp"
#include "hopf/gauge.hpp"
#include "hopf/rng.hpp"

using namespace hopf;

namespace {

BasePoint rand_base(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (;;) {
        BasePoint b;
        b.n = n;
        b.x.resize(n + 1);
        for (int i = 0; i <= n; ++i) b.x[i] = dist(rng);
        b.r = b.x.norm();
        if (b.r > 0.1 && b.x[n] + b.r > 0.1 * b.r) return b;
    }
}

} // namespace

TEST_CASE("potential: north pole, antisymmetry, singular locus") {
    for (int n : {2, 4, 8}) {
        const MatrixRep& rep = matrix_rep(n);

        BasePoint north;
        north.n = n;
        north.x = Eigen::VectorXd::Zero(n + 1);
        north.x[n] = 1.0;
        north.r = 1.0;
        const PotentialTensor A0 = potential(rep, north);
        CHECK(static_cast<int>(A0.slices.size()) == n + 1);
        for (const auto& s : A0.slices) CHECK(s.cwiseAbs().maxCoeff() == 0.0);

        std::mt19937_64 rng = trial_rng(kDefaultSeed, 20);
        const BasePoint b = rand_base(rng, n);
        const PotentialTensor A = potential(rep, b);
        for (const auto& s : A.slices)
            CHECK((s + s.transpose()).cwiseAbs().maxCoeff() == 0.0);
        // d = n+1 slice identically zero.
        CHECK(A.slices[static_cast<std::size_t>(n)].cwiseAbs().maxCoeff() == 0.0);

        BasePoint south = north;
        south.x[n] = -1.0;
        CHECK_THROWS_AS(potential(rep, south), ChartSingularity);

        // Homogeneity of degree -1.
        BasePoint b2 = b;
        b2.x *= 3.0;
        b2.r *= 3.0;
        const PotentialTensor A2 = potential(rep, b2);
        for (std::size_t k = 0; k < A.slices.size(); ++k)
            CHECK((A2.slices[k] - A.slices[k] / 3.0).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("dirac component and curl") {
    const MatrixRep& rep = matrix_rep(2);
    std::mt19937_64 rng = trial_rng(kDefaultSeed, 21);
    const BasePoint b = rand_base(rng, 2);
    const PotentialTensor A = potential(rep, b);
    const Eigen::VectorXd aD = dirac_component(A);
    CHECK(aD.size() == 3);
    CHECK(aD[0] == A.slices[0](0, 1));
    CHECK(aD[1] == A.slices[1](0, 1));
    CHECK(aD[2] == 0.0);

    // FD curl on the unit sphere equals x/(2 r^3) = x/2.
    auto a_at = [&](const Eigen::Vector3d& x) {
        BasePoint bb;
        bb.n = 2;
        bb.x = x;
        bb.r = x.norm();
        return dirac_component(potential(rep, bb));
    };
    for (int t = 0; t < 20; ++t) {
        std::mt19937_64 r2 = trial_rng(kDefaultSeed, 1000 + t);
        BasePoint p = rand_base(r2, 2);
        Eigen::Vector3d x = p.x / p.r;
        const double h = 1e-5;
        Eigen::Matrix3d J;
        for (int k = 0; k < 3; ++k) {
            Eigen::Vector3d xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            J.col(k) = (a_at(xp) - a_at(xm)) / (2.0 * h);
        }
        const Eigen::Vector3d curl(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0),
                                   J(1, 0) - J(0, 1));
        CHECK((curl - x / 2.0).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("yang reduction") {
    const MatrixRep& rep = matrix_rep(4);
    for (int t = 0; t < 100; ++t) {
        std::mt19937_64 rng = trial_rng(kDefaultSeed, 1100 + t);
        const BasePoint b = rand_base(rng, 4);
        const YangReduction red = yang_reduction(potential(rep, b));
        CHECK(red.atilde.rows() == 3);
        CHECK(red.atilde.cols() == 5);
        CHECK(red.epsilon_identity_dev <= 1e-12);
    }
}

TEST_CASE("d_form") {
    std::mt19937_64 rng = trial_rng(kDefaultSeed, 22);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int n : {2, 4, 8}) {
        Eigen::MatrixXd a_eval(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a_eval(i, j) = dist(rng);
        a_eval = (a_eval - Eigen::MatrixXd(a_eval.transpose())).eval();

        // y = 0 -> D_mu = A_{n mu}.
        const Eigen::VectorXd D0 = d_form(Eigen::VectorXd::Zero(n - 1), a_eval);
        for (int m = 0; m < n - 1; ++m) CHECK(D0[m] == a_eval(n - 1, m));

        // A = 0 -> D = 0.
        Eigen::VectorXd y(n - 1);
        for (int m = 0; m < n - 1; ++m) y[m] = dist(rng);
        CHECK(d_form(y, Eigen::MatrixXd::Zero(n, n)).cwiseAbs().maxCoeff() == 0.0);

        // Defining property: v_a A_{ab} vdot_b = 2 D_mu ydot_mu for any ydot,
        // with v = v(y) and vdot the chain-rule image of ydot.
        const double y2 = y.squaredNorm();
        Eigen::VectorXd v(n);
        for (int m = 0; m < n - 1; ++m) v[m] = 2.0 * y[m] / (1.0 + y2);
        v[n - 1] = (1.0 - y2) / (1.0 + y2);
        Eigen::VectorXd ydot(n - 1);
        for (int m = 0; m < n - 1; ++m) ydot[m] = dist(rng);
        const double yyd = y.dot(ydot);
        Eigen::VectorXd vdot(n);
        for (int m = 0; m < n - 1; ++m)
            vdot[m] = 2.0 * ydot[m] / (1.0 + y2) - 4.0 * y[m] * yyd / ((1.0 + y2) * (1.0 + y2));
        vdot[n - 1] = -4.0 * yyd / ((1.0 + y2) * (1.0 + y2));
        const Eigen::VectorXd D = d_form(y, a_eval);
        CHECK(v.dot(a_eval * vdot) == doctest::Approx(2.0 * D.dot(ydot)).epsilon(1e-11));
    }
}

TEST_CASE("killing potentials") {
    // Pinned values.
    const KillingTriple k0 = killing({0.0, 0.0});
    CHECK(std::abs(k0.h_plus) == 0.0);
    CHECK(std::abs(k0.h_minus) == 0.0);
    CHECK(k0.h3 == 1.0);

    const KillingTriple k1 = killing({1.0, 0.0});
    CHECK(k1.h_plus.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(k1.h_minus.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(k1.h3 == doctest::Approx(0.0).epsilon(1e-15));

    std::mt19937_64 rng = trial_rng(kDefaultSeed, 23);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int t = 0; t < 1000; ++t) {
        const std::complex<double> z(dist(rng), dist(rng));
        const KillingTriple k = killing(z);
        CHECK(k.h_minus == std::conj(k.h_plus));
        CHECK(std::abs(k.h3 * k.h3 + 4.0 * (k.h_plus * k.h_minus).real() - 1.0) <= 1e-12);
    }
}
