#pragma once

#include <stdexcept>
#include <string>

namespace gasplan {

// Input files violate a schema (bad column set, unparsable cell, bad value).
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// A row references an entity that does not exist.
struct LinkError : std::runtime_error {
    explicit LinkError(const std::string& msg) : std::runtime_error(msg) {}
};

// Scenario configuration is inconsistent with the system being built.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// The solver executable is missing or cannot be launched.
struct EnvironmentError : std::runtime_error {
    explicit EnvironmentError(const std::string& msg) : std::runtime_error(msg) {}
};

// The solver ran but its output could not be understood.
struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model emission failed (duplicate names and the like).
struct EmissionError : std::runtime_error {
    explicit EmissionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gasplan
