#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands built over different ring contexts.
struct MismatchedContext : Error {
    using Error::Error;
};

// Inversion of an element of positive valuation.
struct NotAUnit : Error {
    using Error::Error;
};

// Operation not defined for this extension kind (e.g. Frobenius on a
// ramified extension).
struct UnsupportedExtension : Error {
    using Error::Error;
};

// Composition right operand has a nonzero constant term.
struct NonzeroConstantTerm : Error {
    using Error::Error;
};

// Series has no compositional inverse (linear coefficient not a unit).
struct NotInvertible : Error {
    using Error::Error;
};

// Evaluation point of a truncated series must lie in the maximal ideal.
struct NotInMaximalIdeal : Error {
    using Error::Error;
};

// No unit coefficient up to the truncation order.
struct WeierstrassDegreeNotVisible : Error {
    using Error::Error;
};

// v(f(a0)) > 2 v(f'(a0)) fails at the starting point.
struct HenselConditionFailed : Error {
    using Error::Error;
};

struct ResidueFieldTooLarge : Error {
    using Error::Error;
};

struct TruncationTooSmall : Error {
    using Error::Error;
};

// f(x)^d has a term whose exponent is not divisible by d.
struct NotCondensable : Error {
    using Error::Error;
};

struct NotATorsionPoint : Error {
    using Error::Error;
};

struct NotAFixedPoint : Error {
    using Error::Error;
};

// w does not map the supplied root set into itself at precision.
struct NotRootStable : Error {
    using Error::Error;
};

// Internal working precision would exceed the configured limit.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// Bad JSON / inline input (CLI exit code 2).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace padic
