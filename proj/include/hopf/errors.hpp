#pragma once

#include <stdexcept>
#include <string>

namespace hopf {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when a point is too close to a singular locus of the north chart:
// the base south pole r + x^{n+1} ~ 0, or the fiber antipode v_n ~ -1.
struct ChartSingularity : std::domain_error {
    using std::domain_error::domain_error;
};

struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

} // namespace hopf
