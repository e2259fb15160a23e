// Command-line front end: table dumps, verification suites, projections,
// field evaluation, simulations, and drift reports. Deterministic given the
// seed; all numeric text output uses 17 significant digits.
//
// Exit codes: 0 success, 1 check failure, 2 usage error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hopf/checks.hpp"

using namespace hopf;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t env_seed() {
    if (const char* s = std::getenv("HOPF_SEED")) {
        try {
            return std::stoull(s, nullptr, 0);
        } catch (...) {
            std::cerr << "error: HOPF_SEED is not a valid unsigned integer\n";
            std::exit(2);
        }
    }
    return kDefaultSeed;
}

json config_echo(const std::string& subcommand, const json& fields) {
    json cfg = fields;
    cfg["subcommand"] = subcommand;
    cfg["version"] = kVersion;
    cfg["schema"] = 1;
    return cfg;
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        f << doc.dump(2) << "\n";
    }
}

std::vector<double> parse_vec(const std::string& text, std::size_t expect,
                              const char* what) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << what << " is not valid JSON: " << e.what() << "\n";
        std::exit(2);
    }
    if (!j.is_array() || j.size() != expect) {
        std::cerr << "error: " << what << " must be a JSON array of " << expect
                  << " numbers\n";
        std::exit(2);
    }
    std::vector<double> v;
    for (const auto& e : j) {
        if (!e.is_number()) {
            std::cerr << "error: " << what << " must contain only numbers\n";
            std::exit(2);
        }
        v.push_back(e.get<double>());
    }
    return v;
}

json suite_json(const SuiteResult& r) {
    json j{{"name", r.name},        {"n", r.n},       {"trials", r.trials},
           {"max_dev", r.max_dev},  {"pass", r.pass}, {"tolerance", r.tolerance}};
    for (const auto& [k, v] : r.details) j["details"][k] = v;
    return j;
}

int run_table(int n) {
    const StructureTable& C = structure_table(n);
    if (n <= 2) {
        std::printf("n=%d: all structure constants vanish\n", n);
        return 0;
    }
    // One line per independent triple a<b<c, oriented so the entry is +1.
    for (int a = 0; a < n - 1; ++a)
        for (int b = a + 1; b < n - 1; ++b)
            for (int c = b + 1; c < n - 1; ++c) {
                if (C(a, b, c) == 1.0)
                    std::printf("C_%d%d%d = 1\n", a + 1, b + 1, c + 1);
                else if (C(a, b, c) == -1.0)
                    std::printf("C_%d%d%d = 1\n", a + 1, c + 1, b + 1);
            }
    return 0;
}

int run_verify(const std::string& module, int n, long trials, std::uint64_t seed,
               bool serial, const std::string& out_path) {
    CheckOptions opt;
    opt.seed = seed;
    opt.parallel = !serial;

    std::vector<SuiteResult> results;
    auto for_each_n = [&](auto&& fn) {
        if (n != 0) {
            fn(n);
        } else {
            for (int nn : {2, 4, 8}) fn(nn);
        }
    };
    try {
        if (module == "algebra") {
            if (n != 0) {
                results = verify_algebra(n, trials, opt);
            } else {
                for (int nn : {1, 2, 4, 8})
                    for (auto& r : verify_algebra(nn, trials, opt))
                        results.push_back(std::move(r));
            }
        } else if (module == "clifford") {
            for_each_n([&](int nn) {
                for (auto& r : verify_clifford(nn)) results.push_back(std::move(r));
            });
        } else if (module == "hopf") {
            for_each_n([&](int nn) {
                for (auto& r : verify_hopf(nn, trials, opt)) results.push_back(std::move(r));
            });
        } else if (module == "gauge") {
            for_each_n([&](int nn) {
                for (auto& r : verify_gauge(nn, trials, opt)) results.push_back(std::move(r));
            });
        } else if (module == "mechanics") {
            for_each_n([&](int nn) {
                for (auto& r : verify_mechanics(nn, trials, opt))
                    results.push_back(std::move(r));
            });
        } else if (module == "all") {
            results = verify_all(opt);
        } else {
            std::cerr << "error: unknown verify module '" << module << "'\n";
            return 2;
        }
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    bool all_pass = true;
    json suites = json::array();
    json failures = json::array();
    for (const auto& r : results) {
        suites.push_back(suite_json(r));
        if (!r.pass) {
            all_pass = false;
            failures.push_back({{"suite", r.name},
                                {"n", r.n},
                                {"max_dev", r.max_dev},
                                {"tolerance", r.tolerance},
                                {"seed", seed},
                                {"trials", r.trials}});
        }
    }
    json doc{{"config", config_echo("verify", {{"module", module},
                                               {"n", n},
                                               {"trials", trials},
                                               {"seed", seed},
                                               {"parallel", !serial}})},
             {"suites", suites},
             {"pass", all_pass}};
    if (!all_pass) doc["failures"] = failures;
    emit(doc, out_path);
    return all_pass ? 0 : 1;
}

int run_project(int n, const std::string& u_text, const std::string& out_path) {
    const auto v = parse_vec(u_text, static_cast<std::size_t>(2 * n), "--u");
    Element u1(n), u2(n);
    for (int i = 0; i < n; ++i) {
        u1[i] = v[static_cast<std::size_t>(i)];
        u2[i] = v[static_cast<std::size_t>(n + i)];
    }
    const BasePoint b = project(BundlePoint{u1, u2});
    json x = json::array();
    for (int i = 0; i <= n; ++i) x.push_back(b.x[i]);
    emit(json{{"config", config_echo("project", {{"n", n}})}, {"x", x}, {"r", b.r}},
         out_path);
    return 0;
}

int run_lift(int n, const std::string& x_text, const std::string& g_text,
             const std::string& out_path) {
    const auto xv = parse_vec(x_text, static_cast<std::size_t>(n + 1), "--x");
    const auto gv = parse_vec(g_text, static_cast<std::size_t>(n), "--g");
    BasePoint b;
    b.n = n;
    b.x = Eigen::Map<const Eigen::VectorXd>(xv.data(), n + 1);
    b.r = b.x.norm();
    Element g(n);
    for (int i = 0; i < n; ++i) g[i] = gv[static_cast<std::size_t>(i)];
    try {
        const BundlePoint u = lift(b, g);
        json u1 = json::array(), u2 = json::array();
        for (int i = 0; i < n; ++i) {
            u1.push_back(u.u1[i]);
            u2.push_back(u.u2[i]);
        }
        emit(json{{"config", config_echo("lift", {{"n", n}})}, {"u1", u1}, {"u2", u2}},
             out_path);
        return 0;
    } catch (const std::exception& e) {
        emit(json{{"config", config_echo("lift", {{"n", n}})}, {"error", e.what()}},
             out_path);
        return 1;
    }
}

int run_field(int n, const std::string& x_text, bool reduce,
              const std::string& out_path) {
    const auto xv = parse_vec(x_text, static_cast<std::size_t>(n + 1), "--x");
    BasePoint b;
    b.n = n;
    b.x = Eigen::Map<const Eigen::VectorXd>(xv.data(), n + 1);
    b.r = b.x.norm();
    json doc{{"config", config_echo("field", {{"n", n}, {"reduce", reduce}})}};
    try {
        const PotentialTensor A = potential(matrix_rep(n), b);
        if (!reduce) {
            json slices = json::array();
            for (const auto& s : A.slices) {
                json rows = json::array();
                for (int i = 0; i < n; ++i) {
                    json row = json::array();
                    for (int j = 0; j < n; ++j) row.push_back(s(i, j));
                    rows.push_back(row);
                }
                slices.push_back(rows);
            }
            doc["A"] = slices;
        } else if (n == 2) {
            const Eigen::VectorXd d = dirac_component(A);
            doc["dirac"] = {d[0], d[1], d[2]};
        } else if (n == 4) {
            const YangReduction red = yang_reduction(A);
            json rows = json::array();
            for (int l = 0; l < 3; ++l) {
                json row = json::array();
                for (int d = 0; d < 5; ++d) row.push_back(red.atilde(l, d));
                rows.push_back(row);
            }
            doc["yang"] = rows;
            doc["epsilon_identity_dev"] = red.epsilon_identity_dev;
        } else {
            std::cerr << "error: --reduce supports n in {2,4} only\n";
            return 2;
        }
    } catch (const std::exception& e) {
        doc["error"] = e.what();
        emit(doc, out_path);
        return 1;
    }
    emit(doc, out_path);
    return 0;
}

void write_csv(const Trajectory& traj, int state_len, const json& cfg,
               const std::string& out_path) {
    std::ostringstream os;
    os << "# config " << cfg.dump() << "\n";
    os << "t";
    for (int i = 0; i < state_len; ++i) os << ",state_" << i;
    for (const auto& name : traj.observable_names) os << "," << name;
    os << "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << fmt(traj.times[k]);
        for (int i = 0; i < state_len; ++i) os << "," << fmt(traj.states[k][i]);
        for (long c = 0; c < traj.observables.cols(); ++c)
            os << "," << fmt(traj.observables(static_cast<long>(k), c));
        os << "\n";
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path);
        f << os.str();
    }
}

int run_simulate(int n, const std::string& mode, double dt, int steps,
                 std::uint64_t seed, double s, const std::string& out_path) {
    LagrangianParams params;
    params.dt = dt;
    params.steps = steps;
    params.s = s;
    const json cfg = config_echo("simulate", {{"n", n},
                                              {"mode", mode},
                                              {"dt", dt},
                                              {"steps", steps},
                                              {"seed", seed},
                                              {"s", s}});
    std::mt19937_64 rng = trial_rng(seed, 0);
    if (mode == "free-pullback") {
        const BundlePoint u0 = random_bundle_point(rng, n);
        const BundlePoint ud0 = random_bundle_tangent(rng, n);
        const Trajectory traj =
            free_pullback_trajectory(u0, ud0, dt * steps, steps + 1, params);
        write_csv(traj, 4 * n, cfg, out_path);
        return traj.truncated ? 1 : 0;
    }
    if (mode == "reduced") {
        if (n != 2 && n != 4) {
            std::cerr << "error: reduced mode requires n in {2,4}\n";
            return 2;
        }
        const BundlePoint u0 = random_bundle_point(rng, n);
        const BasePoint b = project(u0);
        Eigen::VectorXd v(n + 1);
        for (int i = 0; i <= n; ++i)
            v[i] = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        Trajectory traj;
        int state_len;
        if (n == 2) {
            traj = integrate_reduced_n2(b.x, v, params);
            state_len = 6;
        } else {
            traj = integrate_reduced_n4(b.x, v, Eigen::Vector2d(0.3, -0.2), params);
            state_len = 12;
        }
        write_csv(traj, state_len, cfg, out_path);
        return traj.truncated ? 1 : 0;
    }
    std::cerr << "error: unknown simulate mode '" << mode << "'\n";
    return 2;
}

int run_report(const std::string& path, double threshold, const std::string& out_path) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 2;
    }
    std::string line;
    json source_cfg;
    // Comment lines carry the embedded config.
    while (std::getline(f, line) && !line.empty() && line[0] == '#') {
        const auto pos = line.find('{');
        if (pos != std::string::npos) {
            try {
                source_cfg = json::parse(line.substr(pos));
            } catch (...) {
            }
        }
    }
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
    }
    if (cols.empty() || cols[0] != "t") {
        std::cerr << "error: '" << path << "' is not a simulate CSV\n";
        return 2;
    }
    std::vector<long> obs_cols;
    std::vector<std::string> obs_names;
    for (std::size_t c = 1; c < cols.size(); ++c)
        if (cols[c].rfind("state_", 0) != 0) {
            obs_cols.push_back(static_cast<long>(c));
            obs_names.push_back(cols[c]);
        }

    Trajectory traj;
    traj.observable_names = obs_names;
    std::vector<std::vector<double>> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        if (row.size() != cols.size()) {
            std::cerr << "error: malformed CSV row\n";
            return 2;
        }
        traj.times.push_back(row[0]);
        rows.push_back(std::move(row));
    }
    traj.observables.resize(static_cast<long>(rows.size()),
                            static_cast<long>(obs_cols.size()));
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (std::size_t c = 0; c < obs_cols.size(); ++c)
            traj.observables(static_cast<long>(k), static_cast<long>(c)) =
                rows[k][static_cast<std::size_t>(obs_cols[c])];

    try {
        const ConservationReport rpt = drift_report(traj, threshold);
        json drifts = json::array();
        for (const auto& d : rpt.drifts)
            drifts.push_back({{"name", d.name},
                              {"initial", d.initial},
                              {"max_abs_drift", d.max_abs_drift},
                              {"max_rel_drift", d.max_rel_drift},
                              {"conserved", d.conserved}});
        emit(json{{"config",
                   config_echo("report", {{"input", path}, {"threshold", threshold}})},
                  {"source_config", source_cfg},
                  {"threshold", threshold},
                  {"drifts", drifts}},
             out_path);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Division algebras, Hopf fibrations, monopole potentials, and "
                 "fiber-reduction dynamics"};
    app.require_subcommand(1);

    int n = 0;
    long trials = 1000;
    std::uint64_t seed = env_seed();
    bool serial = false;
    std::string out_path, u_text, x_text, g_text, mode = "free-pullback", module;
    double dt = 1e-3, s = 0.0, threshold = 1e-6;
    int steps = 10000;
    bool reduce = false;
    std::string report_path;

    auto* t = app.add_subcommand("table", "print the structure-constant table");
    t->add_option("--n", n, "dimension (1,2,4,8)")->required();

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("module", module, "algebra|clifford|hopf|gauge|mechanics|all")
        ->required();
    ver->add_option("--n", n, "dimension (0 = all valid)");
    ver->add_option("--trials", trials, "trial count");
    ver->add_option("--seed", seed, "RNG seed");
    ver->add_flag("--serial", serial, "disable OpenMP batches");
    ver->add_option("--out", out_path, "output path (default stdout)");

    auto* pr = app.add_subcommand("project", "project a bundle point");
    pr->add_option("--n", n)->required();
    pr->add_option("--u", u_text, "JSON array of 2n reals (u1 then u2)")->required();
    pr->add_option("--out", out_path);

    auto* li = app.add_subcommand("lift", "lift a base point with a fiber element");
    li->add_option("--n", n)->required();
    li->add_option("--x", x_text, "JSON array of n+1 reals")->required();
    li->add_option("--g", g_text, "JSON array of n reals, unit norm")->required();
    li->add_option("--out", out_path);

    auto* fi = app.add_subcommand("field", "evaluate the monopole potential");
    fi->add_option("--n", n)->required();
    fi->add_option("--x", x_text, "JSON array of n+1 reals")->required();
    fi->add_flag("--reduce", reduce, "emit the Dirac/Yang components");
    fi->add_option("--out", out_path);

    auto* si = app.add_subcommand("simulate", "integrate and sample observables");
    si->add_option("--n", n)->required();
    si->add_option("--mode", mode, "free-pullback|reduced");
    si->add_option("--dt", dt, "time step");
    si->add_option("--steps", steps, "step count");
    si->add_option("--seed", seed, "RNG seed");
    si->add_option("--s", s, "fixed isospin value (reduced mode)");
    si->add_option("--out", out_path, "CSV output path (default stdout)");

    auto* re = app.add_subcommand("report", "drift report for a simulate CSV");
    re->add_option("path", report_path, "CSV produced by simulate")->required();
    re->add_option("--threshold", threshold, "relative drift threshold");
    re->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (t->parsed()) {
            require_dimension(n);
            return run_table(n);
        }
        if (ver->parsed()) {
            if (n != 0) require_dimension(n);
            return run_verify(module, n, trials, seed, serial, out_path);
        }
        if (pr->parsed()) {
            require_dimension(n);
            return run_project(n, u_text, out_path);
        }
        if (li->parsed()) {
            require_dimension(n);
            return run_lift(n, x_text, g_text, out_path);
        }
        if (fi->parsed()) {
            require_dimension(n);
            return run_field(n, x_text, reduce, out_path);
        }
        if (si->parsed()) {
            require_dimension(n);
            return run_simulate(n, mode, dt, steps, seed, s, out_path);
        }
        if (re->parsed()) return run_report(report_path, threshold, out_path);
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
