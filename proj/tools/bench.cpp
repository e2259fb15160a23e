// Benchmark: serial vs OpenMP batch drivers on the heavier verification
// suites. Prints wall time, speedup, and checks that both paths report an
// identical maximum deviation.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hopf/checks.hpp"

using namespace hopf;
using clock_type = std::chrono::steady_clock;

namespace {

struct BenchCase {
    std::string name;
    std::vector<SuiteResult> (*run)(int, long, const CheckOptions&);
    int n;
    long trials;
};

double seconds(clock_type::time_point a, clock_type::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

} // namespace

int main(int argc, char** argv) {
    long scale = 1;
    if (argc > 1) scale = std::strtol(argv[1], nullptr, 10);
    if (scale < 1) scale = 1;

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: unavailable (serial build)\n");
#endif

    const std::vector<BenchCase> cases = {
        {"algebra n=8", &verify_algebra, 8, 200000 * scale},
        {"hopf n=8", &verify_hopf, 8, 20000 * scale},
        {"gauge n=4", &verify_gauge, 4, 20000 * scale},
        {"mechanics n=4", &verify_mechanics, 4, 2000 * scale},
    };

    std::printf("%-14s %10s %12s %12s %9s %s\n", "case", "trials", "serial[s]",
                "parallel[s]", "speedup", "max_dev match");
    bool all_match = true;
    for (const auto& c : cases) {
        CheckOptions serial_opt, par_opt;
        serial_opt.parallel = false;
        par_opt.parallel = true;

        const auto t0 = clock_type::now();
        const auto serial = c.run(c.n, c.trials, serial_opt);
        const auto t1 = clock_type::now();
        const auto parallel = c.run(c.n, c.trials, par_opt);
        const auto t2 = clock_type::now();

        bool match = serial.size() == parallel.size();
        if (match)
            for (std::size_t i = 0; i < serial.size(); ++i)
                match = match && serial[i].max_dev == parallel[i].max_dev &&
                        serial[i].pass == parallel[i].pass;
        all_match = all_match && match;

        const double ts = seconds(t0, t1), tp = seconds(t1, t2);
        std::printf("%-14s %10ld %12.4f %12.4f %8.2fx %s\n", c.name.c_str(),
                    c.trials, ts, tp, ts / tp, match ? "yes" : "NO");
    }
    return all_match ? 0 : 1;
}
