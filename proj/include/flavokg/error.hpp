#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flavokg {

// Base class for all failures raised by the library. Anything derived from
// Error is a data or stage failure; ConfigError is a usage problem.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure tied to a location in an input file. Line numbers are 1-based and
// count the header row.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message)
      : Error(format(file, line, message)),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& file, std::size_t line,
                            const std::string& message) {
    std::string out = file.empty() ? std::string("<input>") : file;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + message;
  }

  std::string file_;
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace flavokg
