#ifndef CFORGE_ERRORS_HPP
#define CFORGE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cforge
{

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The lowest coefficient of a series is not of the form +-zeta^k.
struct NonUnitLeadingTerm : Error {
    using Error::Error;
};

// A theta/Pochhammer quotient has a pole away from z in Z (after pole-order absorption).
struct SpecHasResidualPole : Error {
    using Error::Error;
};

// Requested exponent lies at or beyond the truncation bound.
struct OutOfRange : Error {
    using Error::Error;
};

// Too few supported exponents in a progression to count as evidence.
struct InsufficientRange : Error {
    InsufficientRange(const std::string &what, std::size_t found, std::size_t required)
        : Error(what), found(found), required(required)
    {
    }
    std::size_t found;
    std::size_t required;
};

struct ParseError : Error {
    ParseError(std::size_t position, const std::string &message, std::vector<std::string> expected = {});
    std::size_t position;
    std::string message;
    std::vector<std::string> expected;
};

// Well-formed spec text describing a forbidden factor, e.g. poch(0,1;0).
struct SemanticError : Error {
    using Error::Error;
};

} // namespace cforge

#endif
