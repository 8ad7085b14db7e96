#pragma once

#include <stdexcept>
#include <string>

namespace stabest {

// Validation failures (bad parameters, malformed configs).
using validation_error = std::domain_error;

// Quadrature non-convergence, bracket exhaustion and similar numeric failures.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Inputs on which the statistics are undefined, e.g. an exactly-zero filtered
// increment (|0|^beta diverges for beta < 0). Occurs with probability zero for
// the continuous laws in scope, so it signals a malformed or deterministic input.
struct degenerate_input_error : std::runtime_error {
    explicit degenerate_input_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace stabest
