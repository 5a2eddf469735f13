// Exception types shared across the library. Each maps to one failure
// contract of the public API; all derive from std::exception via the
// standard categories so callers may catch coarsely.

#pragma once

#include <stdexcept>

namespace qtransfer {

struct NonHermitianInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct InvalidDensityMatrix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A closed form requiring product (rank-1) amplitude structure was asked
// for a state that is not of product form; use the brute-force path instead.
struct NonProductState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WrongSector : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct WrongShape : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooManyKept : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Guards corrupted register states: more than one excitation inside a
// collapsed subset. Cannot occur for states produced by this library.
struct WeightOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qtransfer
