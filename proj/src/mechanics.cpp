#include "hopf/mechanics.hpp"

#include <cmath>

namespace hopf {

namespace {

const int kEps3[3][3][3] = {
    {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
    {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
    {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};

Element element_from(const Eigen::VectorXd& v, int n) {
    Element e(n);
    for (int i = 0; i < n; ++i) e[i] = v[i];
    return e;
}

// v(y) on the fiber sphere and its ydot-directional derivative.
Eigen::VectorXd v_of_y(const Eigen::VectorXd& y) {
    const int n = static_cast<int>(y.size()) + 1;
    const double y2 = y.squaredNorm();
    Eigen::VectorXd v(n);
    for (int i = 0; i < n - 1; ++i) v[i] = 2.0 * y[i] / (1.0 + y2);
    v[n - 1] = (1.0 - y2) / (1.0 + y2);
    return v;
}

Eigen::VectorXd vdot_of_y(const Eigen::VectorXd& y, const Eigen::VectorXd& ydot) {
    const int n = static_cast<int>(y.size()) + 1;
    const double y2 = y.squaredNorm();
    const double yyd = y.dot(ydot);
    const double f = 1.0 + y2;
    Eigen::VectorXd vd(n);
    for (int i = 0; i < n - 1; ++i)
        vd[i] = 2.0 * ydot[i] / f - 4.0 * y[i] * yyd / (f * f);
    vd[n - 1] = -4.0 * yyd / (f * f);
    return vd;
}

} // namespace

BundleVelocity bundle_velocity(const BundlePoint& u, const BundlePoint& udot,
                               double chart_eps) {
    const int n = u.dim();
    BundleVelocity bv;
    bv.x = project(u);
    bv.xdot.resize(n + 1);
    const Element xbd =
        (multiply(conjugate(udot.u1), u.u2) + multiply(conjugate(u.u1), udot.u2)) * 2.0;
    for (int i = 0; i < n; ++i) bv.xdot[i] = xbd[i];
    bv.xdot[n] = 2.0 * (dot(u.u1, udot.u1) - dot(u.u2, udot.u2));

    const double r = bv.x.r;
    const double denom = r + bv.x.x[n];
    if (!(denom > chart_eps * r) || r == 0.0)
        throw ChartSingularity("bundle point on the singular locus of the north chart");
    const double rdot = bv.x.x.dot(bv.xdot) / r;
    bv.r1 = std::sqrt(denom / 2.0);
    bv.r1dot = (rdot + bv.xdot[n]) / (4.0 * bv.r1);
    bv.r2 = bv.x.base_element() * (1.0 / (2.0 * bv.r1));
    Element xd_elem(n);
    for (int i = 0; i < n; ++i) xd_elem[i] = bv.xdot[i];
    bv.r2dot = xd_elem * (1.0 / (2.0 * bv.r1)) - bv.r2 * (bv.r1dot / bv.r1);
    bv.rdot2 = bv.r1dot * bv.r1dot + dot(bv.r2dot, bv.r2dot);
    return bv;
}

FiberVelocity fiber_velocity(const BundlePoint& u, const BundlePoint& udot,
                             double chart_eps) {
    const int n = u.dim();
    FiberVelocity fv;
    fv.fc = fiber_coords(u, chart_eps);
    const BundleVelocity bv = bundle_velocity(u, udot, chart_eps);
    const Element gdot = udot.u1 * (1.0 / bv.r1) - u.u1 * (bv.r1dot / (bv.r1 * bv.r1));
    const double vn = fv.fc.v[n - 1];
    const double vdn = gdot[n - 1];
    fv.ydot.resize(n - 1);
    for (int i = 0; i < n - 1; ++i)
        fv.ydot[i] = gdot[i] / (1.0 + vn) - fv.fc.v[i] * vdn / ((1.0 + vn) * (1.0 + vn));
    return fv;
}

// rdot_A rdot_A from base data alone (derivative of Eq. inve at fixed g).
static double rdot_squared(const BasePoint& x, const Eigen::VectorXd& xdot) {
    const int n = x.n;
    const double r = x.r;
    const double denom = r + x.x[n];
    const double rdot = x.x.dot(xdot) / r;
    const double r1 = std::sqrt(denom / 2.0);
    const double r1dot = (rdot + xdot[n]) / (4.0 * r1);
    double acc = r1dot * r1dot;
    for (int i = 0; i < n; ++i) {
        const double r2d = xdot[i] / (2.0 * r1) - x.x[i] * r1dot / (2.0 * r1 * r1);
        acc += r2d * r2d;
    }
    return acc;
}

double lagrangian_base_fiber(const MatrixRep& rep, const BasePoint& x,
                             const Eigen::VectorXd& xdot, const Eigen::VectorXd& y,
                             const Eigen::VectorXd& ydot, const LagrangianParams& params) {
    const double r = x.r;
    const double y2 = y.squaredNorm();
    const PotentialTensor A = potential(rep, x, params.chart_eps);
    const Eigen::MatrixXd a_eval = A.contract(xdot);
    const Eigen::VectorXd D = d_form(y, a_eval);
    const double f = (1.0 + y2) * (1.0 + y2);
    return 0.5 * params.g0 *
           (rdot_squared(x, xdot) + 4.0 * r * D.dot(ydot) + 4.0 * r * ydot.squaredNorm() / f);
}

double lagrangian_bundle(const BundlePoint& u, const BundlePoint& udot,
                         const LagrangianParams& params) {
    const MatrixRep& rep = matrix_rep(u.dim());
    const BundleVelocity bv = bundle_velocity(u, udot, params.chart_eps);
    const FiberVelocity fv = fiber_velocity(u, udot, params.chart_eps);
    return lagrangian_base_fiber(rep, bv.x, bv.xdot, fv.fc.y, fv.ydot, params);
}

Eigen::VectorXd legendre(const Eigen::VectorXd& y, const Eigen::VectorXd& ydot,
                         const BasePoint& x, const Eigen::VectorXd& xdot,
                         const LagrangianParams& params) {
    const MatrixRep& rep = matrix_rep(x.n);
    const PotentialTensor A = potential(rep, x, params.chart_eps);
    const Eigen::VectorXd D = d_form(y, A.contract(xdot));
    const double f = (1.0 + y.squaredNorm()) * (1.0 + y.squaredNorm());
    return 2.0 * params.g0 * x.r * (D + 2.0 * ydot / f);
}

Eigen::MatrixXd s_matrix(int n, const Eigen::VectorXd& y) {
    require_dimension(n);
    const StructureTable& C = structure_table(n);
    const double y2 = y.squaredNorm();
    Eigen::MatrixXd S(n - 1, n - 1);
    for (int m = 0; m < n - 1; ++m)
        for (int v = 0; v < n - 1; ++v) {
            double val = 2.0 * y[m] * y[v] + (m == v ? 1.0 - y2 : 0.0);
            for (int l = 0; l < n - 1; ++l) val -= 2.0 * C(m, v, l) * y[l];
            S(m, v) = val / (1.0 + y2);
        }
    return S;
}

ObservableSet generators(const Eigen::VectorXd& y, const Eigen::VectorXd& p, int n) {
    ObservableSet obs;
    obs.n = n;
    const double y2 = y.squaredNorm();
    const double yp = y.dot(p);
    obs.J = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < n - 1; ++m) {
        for (int v = 0; v < n - 1; ++v) obs.J(m, v) = y[m] * p[v] - y[v] * p[m];
        obs.J(m, n - 1) = 0.5 * (1.0 - y2) * p[m] + yp * y[m];
        obs.J(n - 1, m) = -obs.J(m, n - 1);
    }
    obs.I = 0.25 * (1.0 + y2) * (s_matrix(n, y) * p);
    obs.casimir = obs.I.squaredNorm();
    if (n == 4) {
        // The printed P_la = J_{n la} - (1/2) eps J closes so(3) only after the
        // -1/2 normalization (and printed J_{n la} carries an index-order typo,
        // see I cross-check in identity_checks); this P satisfies
        // {P_mu, P_nu} = eps_{mu nu la} P_la, {P, I} = 0 and P.P = I.I.
        obs.has_P = true;
        for (int l = 0; l < 3; ++l) {
            double epsJ = 0.0;
            for (int m = 0; m < 3; ++m)
                for (int v = 0; v < 3; ++v) epsJ += kEps3[l][m][v] * obs.J(m, v);
            obs.P[l] = -0.5 * (obs.J(l, 3) - 0.5 * epsJ);
        }
    }
    return obs;
}

double poisson(const PhaseScalar& f, const PhaseScalar& h, const Eigen::VectorXd& y,
               const Eigen::VectorXd& p, double step) {
    double acc = 0.0;
    Eigen::VectorXd yp = y, ym = y, pp = p, pm = p;
    for (int m = 0; m < y.size(); ++m) {
        yp[m] += step;
        ym[m] -= step;
        pp[m] += step;
        pm[m] -= step;
        const double dfdy = (f(yp, p) - f(ym, p)) / (2.0 * step);
        const double dhdy = (h(yp, p) - h(ym, p)) / (2.0 * step);
        const double dfdp = (f(y, pp) - f(y, pm)) / (2.0 * step);
        const double dhdp = (h(y, pp) - h(y, pm)) / (2.0 * step);
        acc += dfdy * dhdp - dfdp * dhdy;
        yp[m] = y[m];
        ym[m] = y[m];
        pp[m] = p[m];
        pm[m] = p[m];
    }
    return acc;
}

IdentityReport identity_checks(const BundlePoint& u, const BundlePoint& udot,
                               const LagrangianParams& params) {
    const int n = u.dim();
    const MatrixRep& rep = matrix_rep(n);
    const BundleVelocity bv = bundle_velocity(u, udot, params.chart_eps);
    const FiberVelocity fv = fiber_velocity(u, udot, params.chart_eps);
    const Eigen::VectorXd& y = fv.fc.y;
    const double y2 = y.squaredNorm();
    const double r = bv.x.r;
    const double g0 = params.g0;

    IdentityReport rpt;
    const Eigen::MatrixXd S = s_matrix(n, y);
    rpt.ss_t_dev = (S * S.transpose() - Eigen::MatrixXd::Identity(n - 1, n - 1))
                       .cwiseAbs()
                       .maxCoeff();

    const Eigen::VectorXd p = legendre(y, fv.ydot, bv.x, bv.xdot, params);
    const ObservableSet obs = generators(y, p, n);
    rpt.casimir_lhs = obs.casimir / (2.0 * g0 * r);
    rpt.casimir_rhs = (1.0 + y2) * (1.0 + y2) * p.squaredNorm() / (16.0 * r * g0);
    rpt.casimir_scale = rpt.casimir_rhs != 0.0 ? rpt.casimir_lhs / rpt.casimir_rhs : 1.0;
    rpt.casimir_resid =
        std::abs(rpt.casimir_lhs - 0.5 * rpt.casimir_rhs) / std::max(std::abs(rpt.casimir_lhs), 1e-300);

    const PotentialTensor A = potential(rep, bv.x, params.chart_eps);
    const Eigen::VectorXd D = d_form(y, A.contract(bv.xdot));
    rpt.kinetic_lhs = bv.rdot2 - r * D.squaredNorm() * (1.0 + y2) * (1.0 + y2);
    rpt.kinetic_rhs = bv.xdot.squaredNorm() / (4.0 * r);
    rpt.kinetic_rel_dev =
        std::abs(rpt.kinetic_lhs - rpt.kinetic_rhs) / std::max(std::abs(rpt.kinetic_rhs), 1e-300);

    const double flat = 0.5 * g0 * (dot(udot.u1, udot.u1) + dot(udot.u2, udot.u2));
    const double lb = lagrangian_bundle(u, udot, params);
    rpt.decomposition_rel_dev = std::abs(lb - flat) / std::max(std::abs(flat), 1e-300);

    if (n == 4) {
        // Printed J-form P_la = J_{n la} - (1/2) eps_{la mu nu} J_{mu nu}
        // against the direct S-form I: equal up to the global scale -2.
        Eigen::Vector3d jform;
        for (int l = 0; l < 3; ++l) {
            double epsJ = 0.0;
            for (int m = 0; m < 3; ++m)
                for (int v = 0; v < 3; ++v) epsJ += kEps3[l][m][v] * obs.J(m, v);
            jform[l] = obs.J(3, l) - 0.5 * epsJ;
        }
        const double denom = obs.I.squaredNorm();
        rpt.i_cross_scale = denom != 0.0 ? jform.dot(obs.I) / denom : 0.0;
        rpt.i_cross_resid =
            (jform - rpt.i_cross_scale * obs.I).norm() / std::max(jform.norm(), 1e-300);
    }
    return rpt;
}

BundlePoint free_flow(const BundlePoint& u0, const BundlePoint& udot0, double t) {
    return BundlePoint{u0.u1 + udot0.u1 * t, u0.u2 + udot0.u2 * t};
}

ObservableSet pullback_observables(const BundlePoint& u, const BundlePoint& udot,
                                   const LagrangianParams& params) {
    const int n = u.dim();
    const BundleVelocity bv = bundle_velocity(u, udot, params.chart_eps);
    const double h = params.fd_step;
    const FiberCoords fp = fiber_coords(free_flow(u, udot, h), params.chart_eps);
    const FiberCoords fm = fiber_coords(free_flow(u, udot, -h), params.chart_eps);
    const FiberCoords f0 = fiber_coords(u, params.chart_eps);
    const Eigen::VectorXd ydot = (fp.y - fm.y) / (2.0 * h);
    const Eigen::VectorXd p = legendre(f0.y, ydot, bv.x, bv.xdot, params);
    ObservableSet obs = generators(f0.y, p, n);
    obs.energy = 0.5 * params.g0 * (dot(udot.u1, udot.u1) + dot(udot.u2, udot.u2));
    return obs;
}

namespace {

std::vector<std::string> observable_names_for(int n) {
    std::vector<std::string> names;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            names.push_back("J_" + std::to_string(a) + std::to_string(b));
    for (int m = 1; m < n; ++m) names.push_back("I_" + std::to_string(m));
    names.push_back("casimir");
    if (n == 4) {
        names.push_back("P_1");
        names.push_back("P_2");
        names.push_back("P_3");
    }
    names.push_back("energy");
    return names;
}

Eigen::VectorXd observable_row(const ObservableSet& obs) {
    const int n = obs.n;
    std::vector<double> vals;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) vals.push_back(obs.J(a, b));
    for (int m = 0; m < n - 1; ++m) vals.push_back(obs.I[m]);
    vals.push_back(obs.casimir);
    if (obs.has_P)
        for (int l = 0; l < 3; ++l) vals.push_back(obs.P[l]);
    vals.push_back(obs.energy);
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
}

} // namespace

Trajectory free_pullback_trajectory(const BundlePoint& u0, const BundlePoint& udot0,
                                    double t_final, int samples,
                                    const LagrangianParams& params) {
    const int n = u0.dim();
    Trajectory traj;
    traj.observable_names = observable_names_for(n);
    const long ncols = static_cast<long>(traj.observable_names.size());
    traj.observables.resize(samples, ncols);
    traj.times.reserve(static_cast<std::size_t>(samples));
    traj.states.reserve(static_cast<std::size_t>(samples));
    int filled = 0;
    for (int k = 0; k < samples; ++k) {
        const double t = samples > 1 ? t_final * k / (samples - 1) : 0.0;
        const BundlePoint u = free_flow(u0, udot0, t);
        try {
            const ObservableSet obs = pullback_observables(u, udot0, params);
            Eigen::VectorXd state(4 * n);
            for (int i = 0; i < n; ++i) {
                state[i] = u.u1[i];
                state[n + i] = u.u2[i];
                state[2 * n + i] = udot0.u1[i];
                state[3 * n + i] = udot0.u2[i];
            }
            traj.times.push_back(t);
            traj.states.push_back(std::move(state));
            traj.observables.row(filled++) = observable_row(obs);
        } catch (const ChartSingularity&) {
            traj.truncated = true;
            break;
        }
    }
    traj.observables.conservativeResize(filled, ncols);
    return traj;
}

// ---------------------------------------------------------------------------
// Reduced systems
// ---------------------------------------------------------------------------

double reduced_lagrangian_n2(const Eigen::VectorXd& x, const Eigen::VectorXd& xdot,
                             const LagrangianParams& params) {
    BasePoint b;
    b.n = 2;
    b.x = x;
    b.r = x.norm();
    const PotentialTensor A = potential(matrix_rep(2), b, params.chart_eps);
    const Eigen::VectorXd aD = dirac_component(A);
    return params.g0 * xdot.squaredNorm() / (8.0 * b.r) - params.s * aD.dot(xdot) -
           params.s * params.s / (2.0 * params.g0 * b.r);
}

namespace {

// P(z) on the reduced sphere |P| = s: inverse of z = (P1 + i P2)/(s - P3).
Eigen::Vector3d p_of_z(const Eigen::Vector2d& z, double s) {
    const KillingTriple k = killing({z[0], z[1]});
    return {2.0 * s * k.h_plus.real(), 2.0 * s * k.h_plus.imag(), -s * k.h3};
}

} // namespace

double reduced_lagrangian_n4(const Eigen::VectorXd& x, const Eigen::VectorXd& xdot,
                             const Eigen::Vector2d& z, const Eigen::Vector2d& zdot,
                             const LagrangianParams& params) {
    BasePoint b;
    b.n = 4;
    b.x = x;
    b.r = x.norm();
    const PotentialTensor A = potential(matrix_rep(4), b, params.chart_eps);
    const YangReduction red = yang_reduction(A);
    const Eigen::Vector3d atilde_ev = red.atilde * xdot;
    const double zz = z.squaredNorm();
    const double theta = 2.0 * params.s * (z[0] * zdot[1] - z[1] * zdot[0]) / (1.0 + zz);
    const Eigen::Vector3d P = p_of_z(z, params.s);
    return params.g0 * xdot.squaredNorm() / (8.0 * b.r) + theta - 2.0 * P.dot(atilde_ev) -
           2.0 * params.s * params.s / (params.g0 * b.r);
}

namespace {

// EL acceleration for the n=2 reduced system; only the Dirac slice Jacobian
// comes from finite differences.
Eigen::VectorXd accel_n2(const Eigen::VectorXd& x, const Eigen::VectorXd& xdot,
                         const LagrangianParams& params) {
    const double r = x.norm();
    const double g0 = params.g0, s = params.s, h = params.fd_step;
    auto aD = [&params](const Eigen::VectorXd& xx) {
        BasePoint b;
        b.n = 2;
        b.x = xx;
        b.r = xx.norm();
        return dirac_component(potential(matrix_rep(2), b, params.chart_eps));
    };
    Eigen::MatrixXd dA(3, 3); // dA(d, B) = d A_d / d x_B
    for (int B = 0; B < 3; ++B) {
        Eigen::VectorXd xp = x, xm = x;
        xp[B] += h;
        xm[B] -= h;
        dA.col(B) = (aD(xp) - aD(xm)) / (2.0 * h);
    }
    // g0 xdd/(4r) = dL/dx + g0 xdot (x.xdot)/(4 r^3) + s (d_B A_A) xdot_B
    // dL/dx_A = -g0 |xdot|^2 x_A/(8 r^3) - s (d_A A_B) xdot_B + s^2 x_A/(2 g0 r^3)
    Eigen::VectorXd rhs = -g0 * xdot.squaredNorm() * x / (8.0 * r * r * r) +
                          s * s * x / (2.0 * g0 * r * r * r) +
                          g0 * xdot * x.dot(xdot) / (4.0 * r * r * r);
    rhs += s * (dA * xdot - dA.transpose() * xdot); // (d_B A_A - d_A A_B) xdot_B
    return (4.0 * r / g0) * rhs;
}

struct N4Rates {
    Eigen::VectorXd xdd;
    Eigen::Vector2d zdot;
};

N4Rates rates_n4(const Eigen::VectorXd& x, const Eigen::VectorXd& xdot,
                 const Eigen::Vector2d& z, const LagrangianParams& params) {
    const double r = x.norm();
    const double g0 = params.g0, s = params.s, h = params.fd_step;
    auto atilde = [&params](const Eigen::VectorXd& xx) {
        BasePoint b;
        b.n = 4;
        b.x = xx;
        b.r = xx.norm();
        return yang_reduction(potential(matrix_rep(4), b, params.chart_eps)).atilde;
    };
    const Eigen::MatrixXd At = atilde(x); // 3 x 5
    const Eigen::Vector3d P = p_of_z(z, s);

    // z sector: F zdot = grad_z W with W = -2 P(z) . Atilde_ev,
    // F = [[0, -c], [c, 0]], c = 4 s / (1+|z|^2)^2.
    const Eigen::Vector3d at_ev = At * xdot;
    Eigen::Vector2d gradW;
    for (int i = 0; i < 2; ++i) {
        Eigen::Vector2d zp = z, zm = z;
        zp[i] += h;
        zm[i] -= h;
        gradW[i] = -2.0 * (p_of_z(zp, s) - p_of_z(zm, s)).dot(at_ev) / (2.0 * h);
    }
    const double c = 4.0 * s / ((1.0 + z.squaredNorm()) * (1.0 + z.squaredNorm()));
    N4Rates out;
    if (s == 0.0) {
        out.zdot.setZero();
    } else {
        out.zdot[0] = -gradW[1] / c;
        out.zdot[1] = gradW[0] / c;
    }

    // x sector: g0 xdd/(4r) = dL/dx + g0 xdot (x.xdot)/(4 r^3)
    //                         + 2 P_l (d_B At_{lA}) xdot_B + 2 Pdot_l At_{lA}
    Eigen::MatrixXd dPA(5, 5); // dPA(A, B) = d (P_l At_{lA}) / d x_B at fixed z
    for (int B = 0; B < 5; ++B) {
        Eigen::VectorXd xp = x, xm = x;
        xp[B] += h;
        xm[B] -= h;
        dPA.col(B) = ((atilde(xp) - atilde(xm)).transpose() * P) / (2.0 * h);
    }
    Eigen::Vector3d Pdot;
    {
        Eigen::Vector2d zp = z + h * out.zdot, zm = z - h * out.zdot;
        Pdot = (p_of_z(zp, s) - p_of_z(zm, s)) / (2.0 * h);
    }
    Eigen::VectorXd rhs = -g0 * xdot.squaredNorm() * x / (8.0 * r * r * r) +
                          2.0 * s * s * x / (g0 * r * r * r) +
                          g0 * xdot * x.dot(xdot) / (4.0 * r * r * r);
    rhs += 2.0 * (dPA * xdot - dPA.transpose() * xdot); // (d_B(P.At_A) - d_A(P.At_B)) xdot_B
    rhs += 2.0 * (At.transpose() * Pdot);
    out.xdd = (4.0 * r / g0) * rhs;
    return out;
}

} // namespace

Trajectory integrate_reduced_n2(const Eigen::VectorXd& x0, const Eigen::VectorXd& xdot0,
                                const LagrangianParams& params) {
    Trajectory traj;
    traj.observable_names = {"energy", "J_12"};
    traj.observables.resize(params.steps + 1, 2);
    Eigen::VectorXd x = x0, v = xdot0;
    const double dt = params.dt;
    int filled = 0;
    for (int k = 0; k <= params.steps; ++k) {
        const double r = x.norm();
        if (!(r + x[2] > params.chart_eps * r)) {
            traj.truncated = true;
            break;
        }
        traj.times.push_back(k * dt);
        Eigen::VectorXd state(6);
        state << x, v;
        traj.states.push_back(state);
        // E = g0 |xdot|^2/(8r) + s^2/(2 g0 r); the A term cancels in the energy.
        traj.observables(filled, 0) =
            params.g0 * v.squaredNorm() / (8.0 * r) + params.s * params.s / (2.0 * params.g0 * r);
        traj.observables(filled, 1) = params.s;
        ++filled;
        if (k == params.steps) break;
        // RK4
        const Eigen::VectorXd k1x = v, k1v = accel_n2(x, v, params);
        const Eigen::VectorXd k2x = v + 0.5 * dt * k1v,
                              k2v = accel_n2(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, params);
        const Eigen::VectorXd k3x = v + 0.5 * dt * k2v,
                              k3v = accel_n2(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, params);
        const Eigen::VectorXd k4x = v + dt * k3v,
                              k4v = accel_n2(x + dt * k3x, v + dt * k3v, params);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    traj.observables.conservativeResize(filled, 2);
    return traj;
}

Trajectory integrate_reduced_n4(const Eigen::VectorXd& x0, const Eigen::VectorXd& xdot0,
                                Eigen::Vector2d z0, const LagrangianParams& params) {
    Trajectory traj;
    traj.observable_names = {"energy", "P_1", "P_2", "P_3", "casimir"};
    traj.observables.resize(params.steps + 1, 5);
    Eigen::VectorXd x = x0, v = xdot0;
    Eigen::Vector2d z = z0;
    const double dt = params.dt;
    int filled = 0;
    for (int k = 0; k <= params.steps; ++k) {
        const double r = x.norm();
        if (!(r + x[4] > params.chart_eps * r)) {
            traj.truncated = true;
            break;
        }
        traj.times.push_back(k * dt);
        Eigen::VectorXd state(12);
        state << x, v, z;
        traj.states.push_back(state);
        const Eigen::Vector3d P = p_of_z(z, params.s);
        traj.observables(filled, 0) = params.g0 * v.squaredNorm() / (8.0 * r) +
                                      2.0 * params.s * params.s / (params.g0 * r);
        traj.observables(filled, 1) = P[0];
        traj.observables(filled, 2) = P[1];
        traj.observables(filled, 3) = P[2];
        traj.observables(filled, 4) = P.squaredNorm();
        ++filled;
        if (k == params.steps) break;
        auto f = [&params](const Eigen::VectorXd& xx, const Eigen::VectorXd& vv,
                           const Eigen::Vector2d& zz) { return rates_n4(xx, vv, zz, params); };
        const N4Rates k1 = f(x, v, z);
        const N4Rates k2 = f(x + 0.5 * dt * v, v + 0.5 * dt * k1.xdd, z + 0.5 * dt * k1.zdot);
        const Eigen::VectorXd v2 = v + 0.5 * dt * k1.xdd;
        const N4Rates k3 = f(x + 0.5 * dt * v2, v + 0.5 * dt * k2.xdd, z + 0.5 * dt * k2.zdot);
        const Eigen::VectorXd v3 = v + 0.5 * dt * k2.xdd;
        const N4Rates k4 = f(x + dt * v3, v + dt * k3.xdd, z + dt * k3.zdot);
        x += dt / 6.0 * (v + 2.0 * v2 + 2.0 * v3 + (v + dt * k3.xdd));
        v += dt / 6.0 * (k1.xdd + 2.0 * k2.xdd + 2.0 * k3.xdd + k4.xdd);
        z += dt / 6.0 * (k1.zdot + 2.0 * k2.zdot + 2.0 * k3.zdot + k4.zdot);
    }
    traj.observables.conservativeResize(filled, 5);
    return traj;
}

ConservationReport drift_report(const Trajectory& traj, double threshold) {
    if (traj.times.empty()) throw DimensionError("empty trajectory");
    ConservationReport rpt;
    rpt.threshold = threshold;
    const long rows = traj.observables.rows();
    for (long c = 0; c < traj.observables.cols(); ++c) {
        ObservableDrift d;
        d.name = traj.observable_names[static_cast<std::size_t>(c)];
        d.initial = traj.observables(0, c);
        for (long k = 0; k < rows; ++k)
            d.max_abs_drift =
                std::max(d.max_abs_drift, std::abs(traj.observables(k, c) - d.initial));
        d.max_rel_drift = d.max_abs_drift / std::max(std::abs(d.initial), 1e-12);
        d.conserved = d.max_rel_drift <= threshold;
        rpt.drifts.push_back(std::move(d));
    }
    return rpt;
}

BundlePoint horizontal_lift_velocity(const BundlePoint& u, const Eigen::VectorXd& xdot,
                                     const LagrangianParams& params) {
    const int n = u.dim();
    const MatrixRep& rep = matrix_rep(n);
    const BasePoint b = project(u);
    const FiberCoords fc = fiber_coords(u, params.chart_eps);
    const Eigen::VectorXd D = d_form(fc.y, potential(rep, b, params.chart_eps).contract(xdot));
    const double y2 = fc.y.squaredNorm();
    const Eigen::VectorXd ydot = -0.5 * (1.0 + y2) * (1.0 + y2) * D; // p = 0
    const Eigen::VectorXd vdot = vdot_of_y(fc.y, ydot);
    const Element gdot = element_from(vdot, n);

    const double r = b.r;
    const double denom = r + b.x[n];
    const double rdot = b.x.dot(xdot) / r;
    const double r1 = std::sqrt(denom / 2.0);
    const double r1dot = (rdot + xdot[n]) / (4.0 * r1);
    const Element r2 = b.base_element() * (1.0 / (2.0 * r1));
    Element xd_elem(n);
    for (int i = 0; i < n; ++i) xd_elem[i] = xdot[i];
    const Element r2dot = xd_elem * (1.0 / (2.0 * r1)) - r2 * (r1dot / r1);

    return BundlePoint{gdot * r1 + fc.g * r1dot,
                       multiply(gdot, r2) + multiply(fc.g, r2dot)};
}

} // namespace hopf
