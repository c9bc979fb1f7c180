#pragma once

#include <stdexcept>
#include <string>

namespace touchtell {

// Error taxonomy shared across the library. CLI maps categories to exit codes.
enum class ErrorKind {
    Parse,       // malformed input text/bytes
    Validation,  // a stated invariant does not hold
    Range,       // value outside its documented bounds
    Domain,      // argument outside a function's domain
    Shape,       // dimension / size mismatch between related inputs
    Format,      // file-level format mismatch (wrong encoding, channels, ...)
    Framing,     // wire frame missing magic
    Integrity,   // wire frame checksum mismatch
    Length,      // wire buffer has the wrong byte count
    Size,        // input too small / too large for the operation
    Config,      // inconsistent configuration
    Degenerate,  // data carries no usable signal (zero variance, one class)
    Dependency,  // a required upstream artifact is missing
    Vocabulary,  // label outside the closed vocabulary
    Io,          // filesystem failure
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Range: return "range";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Shape: return "shape";
        case ErrorKind::Format: return "format";
        case ErrorKind::Framing: return "framing";
        case ErrorKind::Integrity: return "integrity";
        case ErrorKind::Length: return "length";
        case ErrorKind::Size: return "size";
        case ErrorKind::Config: return "config";
        case ErrorKind::Degenerate: return "degenerate";
        case ErrorKind::Dependency: return "dependency";
        case ErrorKind::Vocabulary: return "vocabulary";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace touchtell
