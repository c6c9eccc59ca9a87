#pragma once

#include <stdexcept>

namespace fandec {

// Error taxonomy, mapped to distinct CLI exit codes:
//   argument_error / parse_error / resource_error / unsupported_error -> 2
//   precondition_error                                                -> 3
// Solver non-convergence is a result state, not an exception (exit 4).
struct argument_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fandec
