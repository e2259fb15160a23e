#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hopf/gauge.hpp"
#include "hopf/hopf_map.hpp"

namespace hopf {

struct LagrangianParams {
    double g0 = 1.0;   // constant conformal factor g(r_alpha)
    double s = 0.0;    // fixed isospin value for the reductions
    double dt = 1e-3;  // RK4 step
    int steps = 10000;
    double fd_step = 1e-6; // central-difference step (Legendre/EOM/pullback chain)
    double chart_eps = kChartEps;
};

struct ObservableSet {
    int n = 0;
    Eigen::MatrixXd J;  // n x n, antisymmetric
    Eigen::VectorXd I;  // n-1
    double casimir = 0.0; // I . I
    Eigen::Vector3d P = Eigen::Vector3d::Zero(); // n=4 only (so(3)-normalized)
    bool has_P = false;
    double energy = 0.0;
};

struct PhaseState {
    int n = 0;
    Eigen::VectorXd x, xdot; // base position/velocity, length n+1
    Eigen::VectorXd y, p;    // fiber chart / momenta, length n-1
    double t = 0.0;
};

struct Trajectory {
    std::vector<std::string> observable_names;
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    Eigen::MatrixXd observables; // samples x observables
    bool truncated = false;      // chart singularity hit mid-run
};

struct ObservableDrift {
    std::string name;
    double initial = 0.0;
    double max_abs_drift = 0.0;
    double max_rel_drift = 0.0;
    bool conserved = false;
};

struct ConservationReport {
    double threshold = 0.0;
    std::vector<ObservableDrift> drifts;
};

// Time derivatives of (x, r_alpha) along a straight bundle path, all analytic.
struct BundleVelocity {
    BasePoint x;
    Eigen::VectorXd xdot; // length n+1
    double r1 = 0.0, r1dot = 0.0;
    Element r2, r2dot;
    double rdot2 = 0.0; // rdot_A rdot_A = r1dot^2 + |r2dot|^2
};

BundleVelocity bundle_velocity(const BundlePoint& u, const BundlePoint& udot,
                               double chart_eps = kChartEps);

// Fiber chart velocity (y, ydot) from the bundle data, analytic.
struct FiberVelocity {
    FiberCoords fc;
    Eigen::VectorXd ydot;
};
FiberVelocity fiber_velocity(const BundlePoint& u, const BundlePoint& udot,
                             double chart_eps = kChartEps);

// L = g0/2 ( rdot_A rdot_A + 4 r D_mu ydot_mu + 4 r ydot^2/(1+y^2)^2 ),
// the exact base/fiber rewriting of the flat kinetic energy.
double lagrangian_base_fiber(const MatrixRep& rep, const BasePoint& x,
                             const Eigen::VectorXd& xdot, const Eigen::VectorXd& y,
                             const Eigen::VectorXd& ydot, const LagrangianParams& params);

// Same value computed from bundle data; equals (g0/2) |udot|^2 up to roundoff.
double lagrangian_bundle(const BundlePoint& u, const BundlePoint& udot,
                         const LagrangianParams& params);

// p_mu = 2 g0 r (D_mu + 2 ydot_mu/(1+y^2)^2).
Eigen::VectorXd legendre(const Eigen::VectorXd& y, const Eigen::VectorXd& ydot,
                         const BasePoint& x, const Eigen::VectorXd& xdot,
                         const LagrangianParams& params);

// S^mu_nu = (2 y_mu y_nu + (1-y^2) delta - 2 y_la C_{mu nu la}) / (1+y^2).
Eigen::MatrixXd s_matrix(int n, const Eigen::VectorXd& y);

ObservableSet generators(const Eigen::VectorXd& y, const Eigen::VectorXd& p, int n);

using PhaseScalar = std::function<double(const Eigen::VectorXd& y, const Eigen::VectorXd& p)>;

// Canonical bracket via central finite differences.
double poisson(const PhaseScalar& f, const PhaseScalar& h, const Eigen::VectorXd& y,
               const Eigen::VectorXd& p, double step = 1e-6);

struct IdentityReport {
    double ss_t_dev = 0.0;            // ||S S^T - 1||_inf
    double casimir_lhs = 0.0;         // I.I / (2 g r)
    double casimir_rhs = 0.0;         // (1+y^2)^2 p^2 / (16 r g)
    double casimir_scale = 0.0;       // lhs/rhs; 0.5 with the verbatim I prefactor
    double casimir_resid = 0.0;       // |lhs - rhs/2| / max(|lhs|, tiny)
    double kinetic_lhs = 0.0;         // rdot.rdot - r D.D (1+y^2)^2
    double kinetic_rhs = 0.0;         // xdot.xdot / (4r)
    double kinetic_rel_dev = 0.0;
    double decomposition_rel_dev = 0.0; // |L_bundle - flat| / |flat|
    double i_cross_scale = 0.0;       // (J-form I) / (S-form I); -2 with paper's printed form
    double i_cross_resid = 0.0;       // n=4 only
};

IdentityReport identity_checks(const BundlePoint& u, const BundlePoint& udot,
                               const LagrangianParams& params);

BundlePoint free_flow(const BundlePoint& u0, const BundlePoint& udot0, double t);

// Along the free flow: observables of the pulled-back fiber dynamics.
// ydot comes from a central difference of the projection chain (step params.fd_step).
ObservableSet pullback_observables(const BundlePoint& u, const BundlePoint& udot,
                                   const LagrangianParams& params);

// Free flow over t in [0, t_final] with `samples` evenly spaced samples,
// observables from pullback_observables. State row: (u, udot) as 4n reals.
Trajectory free_pullback_trajectory(const BundlePoint& u0, const BundlePoint& udot0,
                                    double t_final, int samples,
                                    const LagrangianParams& params);

// Reduced systems. n=2: state (x in R^3, xdot); n=4: state (x in R^5, xdot, z as 2 reals).
// Euler-Lagrange equations by central finite differences of the reduced Lagrangian,
// fixed-step RK4.
double reduced_lagrangian_n2(const Eigen::VectorXd& x, const Eigen::VectorXd& xdot,
                             const LagrangianParams& params);
double reduced_lagrangian_n4(const Eigen::VectorXd& x, const Eigen::VectorXd& xdot,
                             const Eigen::Vector2d& z, const Eigen::Vector2d& zdot,
                             const LagrangianParams& params);

Trajectory integrate_reduced_n2(const Eigen::VectorXd& x0, const Eigen::VectorXd& xdot0,
                                const LagrangianParams& params);
Trajectory integrate_reduced_n4(const Eigen::VectorXd& x0, const Eigen::VectorXd& xdot0,
                                Eigen::Vector2d z0, const LagrangianParams& params);

ConservationReport drift_report(const Trajectory& traj, double threshold);

// Horizontal lift of a base velocity: the unique udot over (x, xdot) with p = 0.
// Used to set up the s=0 comparison between reduced dynamics and projected free flow.
BundlePoint horizontal_lift_velocity(const BundlePoint& u, const Eigen::VectorXd& xdot,
                                     const LagrangianParams& params);

} // namespace hopf
