#pragma once

#include <stdexcept>
#include <string>

namespace cdc {

/// Base class for every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGenerator : public Error {
 public:
  explicit UnknownGenerator(const std::string& name)
      : Error("unknown generator '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Raised by typecheck; carries the offending subterm and both objects,
/// already rendered, so callers need not keep the term alive.
class TypeMismatch : public Error {
 public:
  TypeMismatch(std::string subterm, std::string expected, std::string actual,
               const std::string& what)
      : Error(what + ": in '" + subterm + "' expected " + expected + ", got " +
              actual),
        subterm_(std::move(subterm)),
        expected_(std::move(expected)),
        actual_(std::move(actual)) {}
  const std::string& subterm() const { return subterm_; }
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }

 private:
  std::string subterm_, expected_, actual_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t begin, std::size_t end)
      : Error(msg + " at " + std::to_string(begin) + ".." + std::to_string(end)),
        begin_(begin),
        end_(end) {}
  std::size_t begin() const { return begin_; }
  std::size_t end() const { return end_; }

 private:
  std::size_t begin_, end_;
};

class NotLinear : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class MissingBody : public Error {
 public:
  explicit MissingBody(const std::string& gen)
      : Error("generator '" + gen + "' has no numeric body") {}
};

class HigherOrderUnsupported : public Error {
 public:
  using Error::Error;
};

class RegistryError : public Error {
 public:
  using Error::Error;
};

/// A proof step whose rule did not match, or whose result differs from the
/// term the script expected.
class StepMismatch : public Error {
 public:
  StepMismatch(std::size_t index, std::string expected, std::string actual, const std::string& what)
      : Error("step " + std::to_string(index) + ": " + what + "; expected " + expected + ", got " + actual),
        index_(index),
        expected_(std::move(expected)),
        actual_(std::move(actual)) {}
  std::size_t index() const { return index_; }
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }

 private:
  std::size_t index_;
  std::string expected_, actual_;
};

class PathInvalid : public Error {
 public:
  PathInvalid(std::size_t index, const std::string& what)
      : Error("step " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

}  // namespace cdc
