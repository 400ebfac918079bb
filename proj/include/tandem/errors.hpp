#pragma once

#include <stdexcept>
#include <string>

namespace tandem {

// Parameter outside the domain of a function (k < 1, negative time, p outside [0,1], ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Result not representable in double precision.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Some node has utilization >= 1.
class UnstableNetwork : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A simulation finished without any samples for the requested statistic.
class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tandem
