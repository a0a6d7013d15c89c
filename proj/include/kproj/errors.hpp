#pragma once

#include <stdexcept>
#include <string>

namespace kproj {

// Bad input: mismatched tags, wrong shapes, points outside a domain, ...
// The CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical contract failed: spectral pairing broke down, an iteration
// did not converge, a residual exceeded its bound.  CLI exit code 1.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kproj
