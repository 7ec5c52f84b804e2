#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eulercert {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An image array that is not a bijection on 0..degree-1.
class MalformedPermutation : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class NotAMember : public Error {
 public:
  using Error::Error;
};

/// An enumeration or class-count bound was exceeded.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// A partial class function lacks values that an operation needs.
class InsufficientData : public Error {
 public:
  InsufficientData(const std::string& what, std::vector<std::string> missing)
      : Error(what + ": missing values on classes " + join(missing)),
        missing_(std::move(missing)) {}

  const std::vector<std::string>& missing_classes() const { return missing_; }

 private:
  static std::string join(const std::vector<std::string>& labels) {
    std::string out;
    for (const auto& l : labels) {
      if (!out.empty()) out += ", ";
      out += l;
    }
    return out;
  }
  std::vector<std::string> missing_;
};

/// A class function that cannot be a (virtual) character.
class InvalidCharacter : public Error {
 public:
  using Error::Error;
};

/// A theorem or construction was applied outside its hypotheses.
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

/// The poset realization is not a graph (p-rank at least three).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed amalgam data; the message carries a witness.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace eulercert
