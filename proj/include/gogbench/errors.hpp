#pragma once

#include <stdexcept>
#include <string>

namespace gogbench {

// Base for every error raised by the workbench. The CLI maps subclasses onto
// exit codes, so new error classes should derive from the closest family.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

class BackendMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class IdentityBase : public Error {
 public:
  using Error::Error;
};

class ValidationFailed : public Error {
 public:
  using Error::Error;
};

class MalformedWord : public Error {
 public:
  using Error::Error;
};

class NotInBall : public Error {
 public:
  using Error::Error;
};

class UnknownTreeLocation : public Error {
 public:
  using Error::Error;
};

class EmptySelection : public Error {
 public:
  using Error::Error;
};

class EmptyEdgeSpace : public Error {
 public:
  using Error::Error;
};

class NotTypeS : public Error {
 public:
  using Error::Error;
};

class OutOfBall : public Error {
 public:
  using Error::Error;
};

class EmptyLine : public Error {
 public:
  using Error::Error;
};

class DisconnectedBase : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

// A sampled experiment was started without an explicit seed.
class MissingSeed : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

}  // namespace gogbench
