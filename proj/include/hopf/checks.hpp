#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hopf/mechanics.hpp"
#include "hopf/rng.hpp"

namespace hopf {

// One verification suite outcome. `max_dev` is the worst deviation seen over
// all trials; `pass` is the suite-specific verdict (usually max_dev <= tolerance,
// but e.g. the counterexample search passes when the deviation *exceeds* the
// threshold). `details` carries named auxiliary numbers for the reports.
struct SuiteResult {
    std::string name;
    int n = 0;
    long trials = 0;
    double max_dev = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::map<std::string, double> details;
};

struct CheckOptions {
    std::uint64_t seed = kDefaultSeed;
    bool parallel = true; // OpenMP over trials; results are identical either way
};

std::vector<SuiteResult> verify_algebra(int n, long trials, const CheckOptions& opt);
std::vector<SuiteResult> verify_clifford(int n);
std::vector<SuiteResult> verify_hopf(int n, long trials, const CheckOptions& opt);
std::vector<SuiteResult> verify_gauge(int n, long trials, const CheckOptions& opt);
std::vector<SuiteResult> verify_mechanics(int n, long trials, const CheckOptions& opt);

// Every suite for every valid n (desk-scale default trial counts).
std::vector<SuiteResult> verify_all(const CheckOptions& opt);

// Free-flow conservation audit over t in [0, t_final] with `samples` samples.
// Relative drifts are measured against the inf-norm of the initial vector
// (I components) or the initial value (casimir). Initial data is redrawn
// deterministically until the whole window keeps safe chart margins.
struct ConservationSummary {
    int n = 0;
    double max_i_rel_drift = 0.0;
    double casimir_rel_drift = 0.0;
    int redraws = 0;
};

ConservationSummary free_flow_conservation(int n, std::uint64_t seed, double t_final,
                                           int samples, const LagrangianParams& params,
                                           bool parallel = true);

// Chart-safe random state helpers (deterministic redraw inside one RNG stream).
BundlePoint random_bundle_point(std::mt19937_64& rng, int n, double margin = 0.1);
BundlePoint random_bundle_tangent(std::mt19937_64& rng, int n);

} // namespace hopf
