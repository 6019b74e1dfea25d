#pragma once

#include <stdexcept>
#include <string>

namespace qbild {

// Base class for everything this library throws; catching qbild::Error at a
// CLI or harness boundary is enough to distinguish library failures from
// programming errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A vector expected to be unit length deviates beyond tolerance.
struct NotUnit : Error {
    using Error::Error;
};

// A matrix expected to be Hermitian is not, beyond tolerance.
struct NotHermitian : Error {
    using Error::Error;
};

// A quaternionic matrix was passed where complex entries are required.
struct NotComplex : Error {
    using Error::Error;
};

// A geometric query was made against an empty region.
struct EmptyRegion : Error {
    using Error::Error;
};

// The constraint set is provably empty (no feasible point exists).
struct Infeasible : Error {
    using Error::Error;
};

// A bounded rejection-sampling loop gave up.
struct RetriesExhausted : Error {
    using Error::Error;
};

// An iterative solver hit its iteration cap without meeting tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

// Invalid run configuration (e.g. a sweep grid below the minimum).
struct ConfigError : Error {
    using Error::Error;
};

// Malformed input file; carries 1-based line/column of the offending byte.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace qbild
