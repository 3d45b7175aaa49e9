#pragma once

#include <stdexcept>
#include <string>

namespace lpconj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (exponent mismatch,
/// out-of-range parameter, malformed descriptor values).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The input does not satisfy the hypothesis a construction relies on, e.g.
/// a weight sequence with inf |w_n| <= 1 handed to the doubling conjugacy.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (JSON or compact descriptor syntax).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace lpconj
