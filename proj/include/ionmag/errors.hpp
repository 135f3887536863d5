#pragma once

#include <stdexcept>
#include <string>

namespace ionmag {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration / precondition problems (CLI exit code 2).
struct ValidationError : Error {
    std::string key_path;
    ValidationError(std::string path, const std::string& msg)
        : Error(path.empty() ? msg : path + ": " + msg), key_path(std::move(path)) {}
};

struct ResonantDetuning : ValidationError {
    ResonantDetuning(const std::string& msg) : ValidationError("drive.mu", msg) {}
};

struct TooManySpins : ValidationError {
    TooManySpins(int n, int cap)
        : ValidationError("n_ions", "n = " + std::to_string(n) +
                                        " exceeds cap " + std::to_string(cap)) {}
};

struct DimensionMismatch : ValidationError {
    DimensionMismatch(const std::string& msg) : ValidationError("", msg) {}
};

// Numerical failures (CLI exit code 3).
struct NumericalError : Error {
    using Error::Error;
};

struct CoincidentIons : NumericalError {
    CoincidentIons(const std::string& msg) : NumericalError(msg) {}
};

struct NoConvergence : NumericalError {
    NoConvergence(const std::string& msg) : NumericalError(msg) {}
};

struct UnstableCrystal : NumericalError {
    UnstableCrystal(const std::string& msg) : NumericalError(msg) {}
};

struct StepNotConverged : NumericalError {
    StepNotConverged(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace ionmag
