#pragma once

// Exception types shared across the library.  Numerical failure modes carry
// enough context (sample index, offending value, residual history) that a
// caller can report the condition without recomputing anything.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcf {

// A support vector failed positivity or strict convexity.  `index` is the
// worst offending sample and `value` the quantity that had to be positive.
class ConvexityViolation : public std::runtime_error {
public:
    ConvexityViolation(std::string field, int index, double value)
        : std::runtime_error("convexity violation: " + field + "[" +
                             std::to_string(index) + "] = " +
                             std::to_string(value) + ", must be > 0"),
          field_(std::move(field)),
          index_(index),
          value_(value) {}

    const std::string& field() const { return field_; }
    int index() const { return index_; }
    double value() const { return value_; }

private:
    std::string field_;
    int index_;
    double value_;
};

// An explicit flow step could not be completed within the permitted number
// of dt halvings.
class StepFailure : public std::runtime_error {
public:
    StepFailure(long step, double dt)
        : std::runtime_error("flow step " + std::to_string(step) +
                             " failed after halving dt down to " +
                             std::to_string(dt)),
          step_(step),
          dt_(dt) {}

    long step() const { return step_; }
    double dt() const { return dt_; }

private:
    long step_;
    double dt_;
};

// Newton iteration ran out of iterations or stalled.  `history` holds the
// residual max-norm after every evaluation, in order.
class NoConvergence : public std::runtime_error {
public:
    NoConvergence(std::string why, std::vector<double> history)
        : std::runtime_error("no convergence: " + why +
                             " (last residual " +
                             (history.empty() ? std::string("n/a")
                                              : std::to_string(history.back())) +
                             ")"),
          history_(std::move(history)) {}

    const std::vector<double>& history() const { return history_; }

private:
    std::vector<double> history_;
};

// The quadric fit's normal system is rank deficient.
class FitDegenerate : public std::runtime_error {
public:
    explicit FitDegenerate(const std::string& why)
        : std::runtime_error("quadric fit degenerate: " + why) {}
};

// The requested quantity is undefined for the given input.
class NotApplicable : public std::invalid_argument {
public:
    explicit NotApplicable(const std::string& why)
        : std::invalid_argument(why) {}
};

// Malformed experiment configuration or snapshot file.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& why)
        : std::runtime_error("config error: " + why) {}
};

}  // namespace gcf
