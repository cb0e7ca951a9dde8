#pragma once

#include <stdexcept>
#include <string>

namespace partriemann {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (nonpositive density, bad
/// branch, rarefaction queried on the compressive side, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A bracketing root search failed. Carries the last bracket so callers can
/// report where the search gave up.
class NoRootError : public Error {
public:
    NoRootError(const std::string& what, double lo, double hi, double f_lo,
                double f_hi)
        : Error(what + " [bracket " + std::to_string(lo) + ", " +
                std::to_string(hi) + "; f = " + std::to_string(f_lo) + ", " +
                std::to_string(f_hi) + "]"),
          lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {}

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double f_lo() const { return f_lo_; }
    double f_hi() const { return f_hi_; }

private:
    double lo_, hi_, f_lo_, f_hi_;
};

} // namespace partriemann
