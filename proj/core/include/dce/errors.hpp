#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dce {

/// Argument outside the physical domain of an operation (e.g. ω ≤ 0, ε ≥ 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// One step of the adaptive truncation loop.
struct TruncationStep {
    int half_width = 0;
    double commutator_defect = 0.0;
    double max_amplitude_change = 0.0;
};

/// The sideband ladder did not settle before the truncation cap was reached.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<TruncationStep> history)
        : std::runtime_error(what), history_(std::move(history)) {}

    const std::vector<TruncationStep>& history() const noexcept { return history_; }

private:
    std::vector<TruncationStep> history_;
};

/// Covariance matrix violating the uncertainty relation beyond tolerance.
class InvalidCovarianceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed quadrature record file or config document.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}

    /// 1-based line number of the offending input, 0 when not line-oriented.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Sample data from which no covariance can be estimated (e.g. a constant channel).
class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dce

namespace dce {

/// A sweep grid point failed; carries the point so no partial output is written.
class SweepError : public std::runtime_error {
public:
    SweepError(const std::string& what, std::size_t index, double value)
        : std::runtime_error(what), index_(index), value_(value) {}

    std::size_t index() const noexcept { return index_; }
    double value() const noexcept { return value_; }

private:
    std::size_t index_;
    double value_;
};

}  // namespace dce
