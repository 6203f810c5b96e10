#pragma once

#include <stdexcept>
#include <string>

namespace cwy {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Array length does not match the grid, or two fields disagree in size.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Requested band limit exceeds what a grid or coefficient set can resolve.
class BandLimitError : public Error {
 public:
  using Error::Error;
};

// Elliptic inversion asked to divide by a kernel mode whose content in the
// right-hand side is above tolerance.
class KernelObstruction : public Error {
 public:
  using Error::Error;
};

// Data is not in the center-of-mass frame (or has non-positive energy) and the
// caller required it.
class FrameError : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cwy
