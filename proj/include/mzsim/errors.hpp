#ifndef MZSIM_ERRORS_HPP
#define MZSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mzsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cutoff / shape mismatch between operands.
struct DimensionError : Error {
    using Error::Error;
};

// Parameter outside its documented range, or a degenerate input
// such as a zero-photon NOON state.
struct ParameterError : Error {
    using Error::Error;
};

// Malformed or inconsistent caller-provided data (files, distributions).
struct InputError : Error {
    using Error::Error;
};

// Phase grid unsuitable for the requested operation.
struct GridError : Error {
    using Error::Error;
};

// Fit cannot be determined from the given grid.
struct IdentifiabilityError : Error {
    using Error::Error;
};

// Exact-arithmetic failure surfaced explicitly (vanishing denominator).
struct ArithmeticError : Error {
    using Error::Error;
};

// Visibility requested for a scan with zero mean.
struct UndefinedVisibilityError : Error {
    using Error::Error;
};

}  // namespace mzsim

#endif
