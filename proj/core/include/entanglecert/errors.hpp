#pragma once

#include <stdexcept>
#include <string>

namespace entanglecert {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A matrix that should be Hermitian is not (within tolerance).
struct NonHermitianInput : Error {
    using Error::Error;
};

/// A Bloch direction whose norm deviates from 1 beyond tolerance.
struct NonUnitDirection : Error {
    using Error::Error;
};

/// A measurement branch with probability below the renormalization cutoff.
struct ZeroProbabilityBranch : Error {
    using Error::Error;
};

/// A strength-compensated statistic was requested with zero strength.
struct ZeroStrength : Error {
    using Error::Error;
};

/// A correlation for a required measurement direction is missing.
struct MissingDirection : Error {
    using Error::Error;
};

/// An outcome-count table with zero total shots.
struct EmptyCounts : Error {
    using Error::Error;
};

/// A scalar argument outside its documented domain.
struct OutOfRange : Error {
    using Error::Error;
};

/// A Pauli expectation required for tomography is missing.
struct MissingExpectation : Error {
    using Error::Error;
};

/// Malformed configuration text; message carries line/field diagnostics.
struct ParseError : Error {
    using Error::Error;
};

/// Well-formed configuration with an invalid field value; message names the field.
struct ValidationError : Error {
    using Error::Error;
};

/// File could not be opened or written.
struct IoError : Error {
    using Error::Error;
};

}  // namespace entanglecert
