#pragma once

#include <stdexcept>
#include <string>

namespace bientropy {

/// Malformed external input (files, CSV cells, glyph blocks). Maps to CLI exit code 2;
/// plain std::invalid_argument (contract violations) maps to exit code 1.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bientropy
