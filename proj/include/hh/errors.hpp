#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hh {

/// Invalid argument to a library operation (bad interval, bad exponent, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Expression text rejected by the parser. Carries the byte offset of the
/// failure and the set of tokens that would have been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
        : std::runtime_error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation left the real domain (log of a non-positive value, division by
/// zero, zero raised to a negative power, ...). The message names the
/// offending sub-expression.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature exhausted its evaluation budget. Carries the deepest
/// subinterval still under refinement when the budget ran out.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double deepest_lo, double deepest_hi)
        : std::runtime_error(what), deepest_lo_(deepest_lo), deepest_hi_(deepest_hi) {}

    double deepest_lo() const noexcept { return deepest_lo_; }
    double deepest_hi() const noexcept { return deepest_hi_; }

private:
    double deepest_lo_;
    double deepest_hi_;
};

} // namespace hh
