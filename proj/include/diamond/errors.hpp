#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diamond {

using Index = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad files, bad flags, shape mismatches. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

// No three-paths (or wedges) exist, so there is nothing to sample from.
// The CLI maps this to exit code 3.
class InfeasibleSampling : public Error {
 public:
  using Error::Error;
};

}  // namespace diamond
