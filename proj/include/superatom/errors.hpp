#ifndef SUPERATOM_ERRORS_HPP
#define SUPERATOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace superatom {

// Configuration / input-file problems. The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric kernel failed to meet its accuracy contract (non-convergence,
// singular solve, ...). Carries the residual that was achieved.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// The biorthogonal mode sum is unreliable (near-degenerate spectrum).
class IllConditionedError : public std::runtime_error {
public:
    explicit IllConditionedError(const std::string& msg) : std::runtime_error(msg) {}
};

// Spectrum post-processing could not produce the requested quantity.
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter extraction failed (data inconsistent with the model).
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace superatom

#endif
