#pragma once

#include <stdexcept>
#include <string>

namespace cfs {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file: ragged rows, empty file, unparseable structure.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or out-of-range configuration: unknown names, bad k, bad flags.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Invalid data content: non-numeric cells, non-finite values, missing labels,
/// empty datasets, too few rows for curvature.
class DataError : public Error {
public:
    using Error::Error;
};

} // namespace cfs
