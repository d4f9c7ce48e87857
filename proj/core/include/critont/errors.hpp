#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace critont {

enum class ErrorKind {
    parse,                 // malformed input text
    duplicate_key,         // identifier declared twice
    validation,            // structural invariant violated
    category_violation,    // parent/child in different categories
    cycle,                 // parent links form a cycle
    not_found,             // lookup miss
    missing_valueset,      // annotated OID absent from the valueset store
    unsupported_construct, // OWL construct outside the serializer subset
    argument,              // bad argument to an operation
    consistency,           // stores disagree with each other
    io,                    // file could not be read or written
};

const char* error_kind_name(ErrorKind kind);

// Single exception type for all toolkit failures. The kind drives CLI exit
// codes; line() is 0 when no input location applies.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::size_t line = 0)
        : std::runtime_error(std::move(message)), kind_(kind), line_(line) {}

    ErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    ErrorKind kind_;
    std::size_t line_;
};

[[noreturn]] inline void raise(ErrorKind kind, std::string message, std::size_t line = 0) {
    throw Error(kind, std::move(message), line);
}

} // namespace critont
