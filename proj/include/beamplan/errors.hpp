// SPDX-License-Identifier: Apache-2.0
//
// beamplan - beamwidth planning for mmWave cluster beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace beamplan {

// Configuration / input-file problems. The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Numeric / domain problems. The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class BracketError : public NumericError {
  public:
    using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
  public:
    using NumericError::NumericError;
};

class DegenerateInputError : public NumericError {
  public:
    using NumericError::NumericError;
};

// Thrown when a requested percentile is below the reachable floor.
class NoSolutionError : public NumericError {
  public:
    NoSolutionError(const std::string &msg, double floor_eta)
        : NumericError(msg), floor_eta(floor_eta) {}
    double floor_eta;
};

} // namespace beamplan
