#ifndef FACTORCERT_ERRORS_HPP
#define FACTORCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace factorcert {

// Exit-code taxonomy used by the CLI:
//   0  verified / constructed
//   1  refuted (valid input, property fails) -- reported via verdicts, not thrown
//   2  malformed or inconsistent input
//   3  resource bound exceeded
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Matrix shape violations (non-square where square required, mismatched dims).
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Violated operation preconditions (m = 0, coefficient sum != 1, ...).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Certificate data fails its own invariants (non-unitary entry, bad weights).
class InvalidCertificateError : public Error {
public:
    explicit InvalidCertificateError(const std::string& msg) : Error(msg) {}
};

// Construction hypothesis fails on otherwise well-formed input (e.g. a mixture
// that does not tensor-factor). Maps to the "refuted" exit code, not "malformed".
class HypothesisError : public Error {
public:
    explicit HypothesisError(const std::string& msg) : Error(msg) {}
};

// Document syntax or schema violations.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t byte_offset = 0)
        : Error(msg), offset(byte_offset) {}
    std::size_t offset;
};

// Configured resource bound exceeded (max-dim, max-lcm).
class LimitError : public Error {
public:
    explicit LimitError(const std::string& msg) : Error(msg) {}
};

// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

// Configured bounds shared across operations.
struct Limits {
    std::size_t max_dim = 4096;
    long long max_lcm = 1000000;
};

} // namespace factorcert

#endif
