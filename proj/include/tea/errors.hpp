#pragma once

#include <stdexcept>
#include <string>

namespace tea {

// Input that violates the CoNLL-U layout or the dependency-tree constraints.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexicon, schema or gold file that cannot be materialized.
class LoadError : public std::runtime_error {
public:
    explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller misuse: bad option values, mismatched key sets, empty samples.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tea
