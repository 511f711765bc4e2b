#pragma once

#include <stdexcept>
#include <string>

namespace fuzztherest {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnresolvableRef : public Error {
 public:
  explicit UnresolvableRef(const std::string& ref)
      : Error("unresolvable $ref: " + ref), ref_(ref) {}
  const std::string& ref() const noexcept { return ref_; }

 private:
  std::string ref_;
};

class UnsupportedSchema : public Error {
 public:
  using Error::Error;
};

class UnsatisfiableConstraint : public Error {
 public:
  using Error::Error;
};

class EmptyScenario : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownOperation : public Error {
 public:
  explicit UnknownOperation(const std::string& operation_id)
      : Error("unknown operation: " + operation_id), operation_id_(operation_id) {}
  const std::string& operation_id() const noexcept { return operation_id_; }

 private:
  std::string operation_id_;
};

class InapplicableAction : public Error {
 public:
  using Error::Error;
};

class OutOfRangeStatus : public Error {
 public:
  explicit OutOfRangeStatus(int status)
      : Error("status code out of range: " + std::to_string(status)) {}
};

class MissingSample : public Error {
 public:
  using Error::Error;
};

class BindError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzztherest
