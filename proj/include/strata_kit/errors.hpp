#pragma once

#include <stdexcept>
#include <string>

namespace sk {

// Domain error carrying the violated clause and where it was detected.
class Error : public std::runtime_error {
 public:
  Error(std::string clause, std::string location)
      : std::runtime_error(clause + " at " + location),
        clause_(std::move(clause)),
        location_(std::move(location)) {}

  const std::string& clause() const { return clause_; }
  const std::string& location() const { return location_; }

 private:
  std::string clause_;
  std::string location_;
};

// Not enough certain digits to decide.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Malformed input document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace sk
