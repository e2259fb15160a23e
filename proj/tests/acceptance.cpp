// Acceptance gate: ten criteria, one PASS/FAIL line each, pinned tolerances.
// Exit status 0 iff all criteria pass.
#include <cstdio>
#include <string>
#include <vector>

#include "hopf/checks.hpp"

using namespace hopf;

namespace {

int g_failures = 0;

void verdict(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion-%02d  %-28s  %s\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

std::string dev_str(double dev, double tol) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max_dev=%.3e tol=%.0e", dev, tol);
    return buf;
}

const SuiteResult& find(const std::vector<SuiteResult>& v, const std::string& name) {
    for (const auto& r : v)
        if (r.name == name) return r;
    throw std::runtime_error("missing suite " + name);
}

} // namespace

int main() {
    CheckOptions opt; // default seed, parallel

    // 1: norm composition, 1e4 pairs per n, 1e-12.
    {
        double dev = 0.0;
        bool pass = true;
        for (int n : {1, 2, 4, 8}) {
            const SuiteResult r = find(verify_algebra(n, 10000, opt), "norm_composition");
            dev = std::max(dev, r.max_dev);
            pass = pass && r.pass;
        }
        verdict(1, "norm-composition", pass, dev_str(dev, 1e-12));
    }

    // 2: associativity dichotomy, 1e3 triples, witness, alternativity.
    {
        double dev = 0.0;
        bool pass = true;
        for (int n : {1, 2, 4}) {
            const SuiteResult r = find(verify_algebra(n, 1000, opt), "associator_vanishes");
            dev = std::max(dev, r.max_dev);
            pass = pass && r.pass;
        }
        const auto a8 = verify_algebra(8, 1000, opt);
        const SuiteResult& alt = find(a8, "alternativity");
        const SuiteResult& wit = find(a8, "associator_witness");
        dev = std::max(dev, alt.max_dev);
        pass = pass && alt.pass && wit.pass;
        char extra[160];
        std::snprintf(extra, sizeof(extra), "max_dev=%.3e tol=1e-12 witness_dev=%.1e",
                      dev, wit.max_dev);
        verdict(2, "associativity-dichotomy", pass, extra);
    }

    // 3: Clifford relations, all n, 1e-12.
    {
        double dev = 0.0;
        bool pass = true;
        for (int n : {2, 4, 8}) {
            const SuiteResult r = find(verify_clifford(n), "clifford_relations");
            dev = std::max(dev, r.max_dev);
            pass = pass && r.pass;
            if (n == 8)
                pass = pass && r.details.at("matrix_count") == 9.0 &&
                       r.details.at("matrix_dim") == 16.0;
        }
        verdict(3, "clifford-relations", pass, dev_str(dev, 1e-12));
    }

    // 4: Hopf consistency, 1e3 points per n, 1e-10.
    {
        double dev = 0.0;
        bool pass = true;
        for (int n : {2, 4, 8}) {
            const auto v = verify_hopf(n, 1000, opt);
            for (const char* s : {"radius_identity", "round_trip", "spinor_agreement"}) {
                const SuiteResult& r = find(v, s);
                dev = std::max(dev, r.max_dev);
                pass = pass && r.pass;
            }
        }
        verdict(4, "hopf-consistency", pass, dev_str(dev, 1e-10));
    }

    // 5: fiber-action dichotomy + naive counterexample.
    {
        bool pass = true;
        double act_dev = 0.0;
        for (int n : {2, 4}) {
            const SuiteResult r =
                find(verify_hopf(n, 1000, opt), "fiber_action_invariance");
            act_dev = std::max(act_dev, r.max_dev);
            pass = pass && r.pass;
        }
        const auto h8 = verify_hopf(8, 1000, opt);
        const SuiteResult& mod = find(h8, "modified_action_invariance");
        const SuiteResult& cex = find(h8, "naive_action_counterexample");
        act_dev = std::max(act_dev, mod.max_dev);
        pass = pass && mod.pass && cex.pass;
        char extra[200];
        std::snprintf(extra, sizeof(extra),
                      "action_dev=%.3e counterexample_dev=%.3e (> 1e-3) witness_trial=%d",
                      act_dev, cex.max_dev,
                      static_cast<int>(cex.details.at("first_witness_trial")));
        verdict(5, "fiber-action-dichotomy", pass, extra);
    }

    // 6: O(eps^2) infinitesimal invariance, 100 pairs, ratio in [3.5, 4.5].
    {
        const SuiteResult r =
            find(verify_hopf(8, 100, opt), "infinitesimal_quadratic_decay");
        char extra[160];
        std::snprintf(extra, sizeof(extra), "ratio_range=[%.3f, %.3f] required=[3.5, 4.5]",
                      r.details.at("min_ratio"), r.details.at("max_ratio"));
        verdict(6, "infinitesimal-invariance", r.pass, extra);
    }

    // 7: identity suite, 1e3 states per n, 1e-9 (plus epsilon-reduction and
    // Killing sphere constraint).
    {
        double dev = 0.0;
        bool pass = true;
        for (int n : {2, 4, 8}) {
            const SuiteResult r = find(verify_mechanics(n, 1000, opt), "identity_suite");
            dev = std::max(dev, r.max_dev);
            pass = pass && r.pass;
        }
        const SuiteResult eps4 =
            find(verify_gauge(4, 1000, opt), "epsilon_reduction_identity");
        const SuiteResult kil =
            find(verify_gauge(2, 1000, opt), "killing_sphere_constraint");
        pass = pass && eps4.pass && kil.pass;
        verdict(7, "identity-suite", pass, dev_str(dev, 1e-9));
    }

    // 8: bracket closure, 100 points, 1e-5.
    {
        const SuiteResult r = find(verify_mechanics(4, 100, opt), "bracket_closure");
        verdict(8, "bracket-closure", r.pass, dev_str(r.max_dev, 1e-5));
    }

    // 9: conservation headline, t in [0,10], 1e4 samples; n=8 over 10 seeds.
    {
        LagrangianParams params;
        bool pass = true;
        double drift24 = 0.0;
        for (int n : {2, 4}) {
            const ConservationSummary cs =
                free_flow_conservation(n, opt.seed, 10.0, 10000, params);
            drift24 = std::max(drift24, cs.max_i_rel_drift);
            pass = pass && cs.max_i_rel_drift <= 1e-6;
        }
        int dichotomy_seeds = 0;
        double cas_worst = 0.0, i_min = 1e300;
        for (int k = 0; k < 10; ++k) {
            const ConservationSummary cs = free_flow_conservation(
                8, splitmix64(opt.seed + 977) + static_cast<std::uint64_t>(k), 10.0,
                10000, params);
            cas_worst = std::max(cas_worst, cs.casimir_rel_drift);
            i_min = std::min(i_min, cs.max_i_rel_drift);
            if (cs.casimir_rel_drift <= 1e-6 && cs.max_i_rel_drift > 1e-2)
                ++dichotomy_seeds;
        }
        pass = pass && cas_worst <= 1e-6 && dichotomy_seeds >= 9;
        char extra[240];
        std::snprintf(extra, sizeof(extra),
                      "n2/n4_I_drift=%.3e (tol 1e-6) n8_casimir_drift=%.3e (tol 1e-6) "
                      "n8_min_I_drift=%.3e (> 1e-2) seeds=%d/10",
                      drift24, cas_worst, i_min, dichotomy_seeds);
        verdict(9, "conservation-headline", pass, extra);
    }

    // 10: n=2 reduced dynamics, 1e4 RK4 steps at dt=1e-3; s=0 free limit.
    {
        LagrangianParams params;
        params.s = 0.5;
        params.dt = 1e-3;
        params.steps = 10000;
        std::mt19937_64 rng = trial_rng(opt.seed, 424242);
        const BundlePoint u = random_bundle_point(rng, 2);
        const BasePoint b = project(u);
        Eigen::VectorXd v(3);
        for (int i = 0; i < 3; ++i)
            v[i] = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);

        const Trajectory traj = integrate_reduced_n2(b.x, v, params);
        bool pass = !traj.truncated;
        double drift = 0.0;
        if (pass) {
            const ConservationReport rpt = drift_report(traj, 1e-6);
            for (const auto& d : rpt.drifts) {
                drift = std::max(drift, d.max_rel_drift);
                pass = pass && d.conserved;
            }
        }

        LagrangianParams p0 = params;
        p0.s = 0.0;
        p0.steps = 1000;
        const BundlePoint ud = horizontal_lift_velocity(u, v, p0);
        const Trajectory red = integrate_reduced_n2(b.x, v, p0);
        double free_dev = 0.0;
        if (red.truncated) {
            pass = false;
        } else {
            for (std::size_t k = 0; k < red.times.size(); ++k) {
                const BasePoint bp = project(free_flow(u, ud, red.times[k]));
                free_dev = std::max(
                    free_dev, (red.states[k].head(3) - bp.x).cwiseAbs().maxCoeff());
            }
            pass = pass && free_dev <= 1e-5;
        }
        char extra[200];
        std::snprintf(extra, sizeof(extra),
                      "energy/J12_drift=%.3e (tol 1e-6) s0_free_flow_dev=%.3e (tol 1e-5)",
                      drift, free_dev);
        verdict(10, "reduced-dynamics", pass, extra);
    }

    if (g_failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
