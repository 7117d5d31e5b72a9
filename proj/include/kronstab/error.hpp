#pragma once

#include <stdexcept>
#include <string>

namespace kronstab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document; `path()` names the offending JSON location.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The chosen prime divides a denominator (or a determinant) of the data.
class BadReduction : public Error {
 public:
  BadReduction() : Error("bad reduction, choose another prime") {}
  explicit BadReduction(const std::string& what) : Error(what) {}
};

}  // namespace kronstab
