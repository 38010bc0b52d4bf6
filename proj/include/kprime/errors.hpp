#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kprime {

/// Invalid parameters or unsupported ranges. CLI maps this to exit code 1.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Data that parses but violates a correctness law (ordering, counts,
/// symmetry). CLI maps this to exit code 2.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input stream; carries the 1-based offending line. Exit code 2.
struct parse_error : validation_error {
    parse_error(const std::string& what, std::size_t line_arg)
        : validation_error(what + " (line " + std::to_string(line_arg) + ")"),
          line(line_arg) {}
    std::size_t line;
};

/// Required data is absent, e.g. a character with no zero list. Exit code 2.
struct incompleteness_error : validation_error {
    using validation_error::validation_error;
};

/// Work refused because it exceeds a stated budget. Exit code 3.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested accuracy cannot be met by the available data or by the
/// refinement budget. Exit code 3.
struct accuracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace kprime
