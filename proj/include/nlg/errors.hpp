#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlg {

/// Invalid numerical parameter (eps <= 0, p < 1, bad dimension, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Query outside the domain of definition of a function, e.g. evaluating a
/// jump field exactly on its discontinuity hyperplane.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A quadrature rule failed its build-time normalization check.
class RuleQualityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite integrand value at a quadrature node.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(std::size_t node, const std::string& what)
        : std::runtime_error(what + " (node " + std::to_string(node) + ")"), node_(node) {}
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

}  // namespace nlg
