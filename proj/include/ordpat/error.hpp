#pragma once

#include <stdexcept>
#include <string>

namespace ordpat {

/// Malformed input: bad vertex indices, duplicate edges, unparsable files.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation is not met (or cannot be certified).
class precondition_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An interval computation could not decide a comparison at the working precision.
class inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generated object failed its own structural verification; indicates a bug.
class construction_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ordpat
