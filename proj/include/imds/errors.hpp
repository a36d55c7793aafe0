#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imds {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (model JSON, decomposition JSON, or a trace file).
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : Error(msg), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

// An identifier that does not resolve in its namespace, or clashes with one.
struct ResolveError : Error {
    using Error::Error;
};

struct NotPreparedError : Error {
    using Error::Error;
};

// The bounded pool of fresh tag or label names ran dry.
struct PoolExhaustedError : Error {
    PoolExhaustedError(const std::string& msg, bool tags) : Error(msg), tag_pool(tags) {}
    bool tag_pool;
};

struct BoundExceededError : Error {
    using Error::Error;
};

struct UniverseTooLargeError : Error {
    using Error::Error;
};

struct NotTerminalError : Error {
    using Error::Error;
};

struct TruncatedGraphError : Error {
    using Error::Error;
};

// Merging non-composable quotas, comparing processes across classes, and
// similar misuse of the component algebra.
struct IncompatibleError : Error {
    using Error::Error;
};

// A semantically broken model surfacing at runtime (e.g. a firing that sends
// a message to a node that never exists).
struct ModelError : Error {
    using Error::Error;
};

}  // namespace imds
