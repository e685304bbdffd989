#pragma once

#include <stdexcept>
#include <string>

namespace dehaze {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

// File was readable but not a supported image format.
struct FormatError : Error {
    using Error::Error;
};

// Caller broke an interface contract (dimension mismatch etc.).
struct ContractError : Error {
    using Error::Error;
};

// Invalid configuration value; message names the offending field.
struct ConfigError : Error {
    using Error::Error;
};

// Input is degenerate for the requested operation (e.g. all-black image).
struct DegenerateInputError : Error {
    using Error::Error;
};

// Image lacks the structure an estimator needs; callers fall back.
struct InsufficientStructureError : Error {
    using Error::Error;
};

// A pipeline stage failed; message carries the stage name.
struct PipelineStageError : Error {
    PipelineStageError(const std::string& stage, const std::string& what)
        : Error(stage + ": " + what), stage_name(stage) {}
    std::string stage_name;
};

}  // namespace dehaze
