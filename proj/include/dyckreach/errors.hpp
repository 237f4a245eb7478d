#pragma once

#include <stdexcept>
#include <string>

namespace dyckreach {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NodeOutOfRange : Error {
  using Error::Error;
};

struct InvalidLabel : Error {
  using Error::Error;
};

struct DuplicateEdge : Error {
  using Error::Error;
};

struct MissingEdge : Error {
  using Error::Error;
};

struct NotARepresentative : Error {
  using Error::Error;
};

struct SameRepresentative : Error {
  using Error::Error;
};

struct GraphTooLarge : Error {
  using Error::Error;
};

struct SyntaxError : Error {
  SyntaxError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

}  // namespace dyckreach
