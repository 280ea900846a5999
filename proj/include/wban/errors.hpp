#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wban {

// Base of every error the toolkit raises.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

// An invariant was violated; field() names the offending field.
class ValidationError : public Error {
public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class RateOutOfRange : public Error {
public:
  using Error::Error;
};

class MissingComputeProfile : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public Error {
public:
  using Error::Error;
};

class RangeError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class SingularProjection : public Error {
public:
  using Error::Error;
};

}  // namespace wban
