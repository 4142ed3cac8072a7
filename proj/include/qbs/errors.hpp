#pragma once

#include <stdexcept>
#include <string>

namespace qbs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar division by zero in Q(u).
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in Q(u)") {}
};

// Argument outside an operation's stated domain (k > n, a_{i,i} = 0 reflection, ...).
struct DomainError : Error {
    using Error::Error;
};

// A Borcherds-Cartan axiom failed during validation; `axiom` names it.
struct ValidationError : Error {
    std::string axiom;
    ValidationError(std::string ax, const std::string& what)
        : Error(what), axiom(std::move(ax)) {}
};

// A word or weight fell outside the registry's depth bound.
struct DepthExceeded : Error {
    DepthExceeded() : Error("weight height exceeds registry depth") {}
    explicit DepthExceeded(const std::string& w) : Error(w) {}
};

// A module is not fully contained within the truncation depth.
struct ModuleNotExhausted : Error {
    ModuleNotExhausted() : Error("module has nonzero weight spaces at the truncation boundary") {}
};

// Something a theorem guarantees failed to hold; indicates a bug, not bad input.
struct InternalInconsistency : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace qbs
