#ifndef CONSNET_ERROR_HPP
#define CONSNET_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace consnet {

/// Malformed arguments: unknown names, values outside a domain, out-of-range
/// parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called on data that violates its documented precondition
/// (e.g. asking for the root of a set that is not a subtree).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The request is well formed but exceeds what the exact algorithms accept.
/// Raised instead of answering heuristically.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Network file syntax or semantic error, tagged with a 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error(message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace consnet

#endif // CONSNET_ERROR_HPP
