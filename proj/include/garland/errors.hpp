#pragma once

#include <stdexcept>
#include <string>

namespace garland {

// Error taxonomy mirrors the CLI exit codes: parse (2), validation and
// purity (3), axiom/orientation/monodromy obstruction (4), numeric
// non-convergence (5).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PurityError : ValidationError {
    explicit PurityError(const std::string& msg) : ValidationError(msg) {}
};

struct AxiomError : std::runtime_error {
    explicit AxiomError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ObstructionError : AxiomError {
    // Inconsistent non-tree edge: cube c pairing cells b, b'.
    long long c, b, bPrime;
    ObstructionError(const std::string& msg, long long c_, long long b_, long long bp_)
        : AxiomError(msg), c(c_), b(b_), bPrime(bp_) {}
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace garland
